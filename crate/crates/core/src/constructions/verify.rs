use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Construction, ConstructionKind};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::groups::{invariance_check, CellMove, Generator, GeneratorClass, InvarianceReport};
use crate::pointer::{random_symbol, PointerMatrix, TagGrid};

#[derive(Clone, Debug)]
pub struct InvarianceSummary {
    pub report: InvarianceReport,
    pub builder_inputs: usize,
    pub random_inputs: usize,
    /// Checks and violations of the pointer-blind cell moves.
    pub control: InvarianceReport,
}

impl InvarianceSummary {
    /// No violation, and the control was caught at least once.
    pub fn passed(&self) -> bool {
        self.report.passed() && !self.control.passed()
    }
}

impl Construction {
    /// A decodable input with random symbols and tags; almost always a 0-input.
    pub fn random_input(&self, rng: &mut ChaCha8Rng) -> Result<BitString> {
        let ConstructionKind::Pointer { geometry, sym, .. } = &self.kind else {
            return Err(Error::params(self.id.name(), "not a pointer construction"));
        };
        let (rows, cols) = (geometry.rows(), geometry.cols());
        let kind = geometry.scheme().matrix_type();
        let cells = (0..rows * cols).map(|_| random_symbol(rows, cols, kind, rng)).collect();
        let m = PointerMatrix::from_cells(rows, cols, kind, cells)?;
        let tags = (0..rows * cols).map(|_| sym.tags().choose(rng).copied()).collect();
        let t = TagGrid::from_tags(rows, cols, tags)?;
        self.encode_instance(&m, &t, rng)
    }
}

/// Runs every generator class `per_class` times on each of `builder` 1-inputs
/// and `random` decodable inputs, and a pointer-blind row-bit move on the
/// 1-inputs.
pub fn invariance_suite(
    c: &Construction,
    builder: usize,
    random: usize,
    per_class: usize,
    seed: u64,
) -> Result<InvarianceSummary> {
    let action = c.group()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inputs = Vec::with_capacity(builder + random);
    for _ in 0..builder {
        inputs.push(c.build_one_input(&mut rng)?.into_vec());
    }
    for _ in 0..random {
        inputs.push(c.random_input(&mut rng)?.into_vec());
    }
    let cells = action.geometry().cells();
    let mut cases = Vec::with_capacity(inputs.len());
    for _ in 0..inputs.len() {
        let mut gens = Vec::new();
        for class in GeneratorClass::ALL {
            for _ in 0..per_class {
                let cell = rng.gen_range(0..cells);
                if let Some(g) = action.random_generator(class, Some(cell), &mut rng) {
                    gens.push(g);
                }
            }
        }
        cases.push(gens);
    }
    let eval = |x: &[bool]| c.eval(x).unwrap_or(false);
    let report = invariance_check(&action, eval, &inputs, &cases);

    let l = action.geometry().scheme().log_n();
    let flip = action
        .cell_generators()
        .iter()
        .position(|g| g.mv == CellMove::Swap { start: 2 * (l - 1), half: 1 })
        .ok_or_else(|| Error::Scheme("no row-bit move".into()))?;
    let control_cases: Vec<Vec<Generator>> = (0..builder).map(|_| vec![Generator::NegativeControl(flip)]).collect();
    let control = invariance_check(&action, eval, &inputs[..builder], &control_cases);
    Ok(InvarianceSummary {
        report,
        builder_inputs: builder,
        random_inputs: random,
        control,
    })
}
