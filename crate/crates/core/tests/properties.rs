use std::sync::OnceLock;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use transitive::boolean::{make_named, BooleanFunction};
use transitive::codec::{decode_cell, encode_cell, random_valid_word, BlockOp, Scheme, SchemeKind};
use transitive::groups::{map_index, Generator, Geometry, GroupAction};
use transitive::measures::{measure_report, Measure};
use transitive::pointer::{a1_eval, build_instance, random_symbol, BuildOptions, MatrixType, Outer, PointerMatrix, Symmetry, Tag};
use transitive::{BitString, TruthTable};

fn action(kind: SchemeKind, n: usize) -> &'static GroupAction {
    static F1: OnceLock<GroupAction> = OnceLock::new();
    static F3: OnceLock<GroupAction> = OnceLock::new();
    let cell = match kind {
        SchemeKind::Dec240 => &F3,
        _ => &F1,
    };
    cell.get_or_init(|| GroupAction::new(Geometry::new(Scheme::new(kind, n).unwrap())).unwrap())
}

fn scheme_strategy() -> impl Strategy<Value = Scheme> {
    prop_oneof![
        Just(Scheme::new(SchemeKind::Dec96, 16).unwrap()),
        Just(Scheme::new(SchemeKind::Dec112, 16).unwrap()),
        Just(Scheme::new(SchemeKind::Dec240, 8).unwrap()),
        Just(Scheme::new(SchemeKind::Dec112, 32).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hex_and_bytes_roundtrip(bits in prop::collection::vec(any::<bool>(), 1..200)) {
        let b = BitString::new(bits);
        prop_assert_eq!(BitString::from_hex(&b.to_hex(), b.len()).unwrap(), b.clone());
        prop_assert_eq!(BitString::from_bytes(&b.to_bytes(), b.len()).unwrap(), b);
    }

    #[test]
    fn cells_survive_valid_rearrangements(scheme in scheme_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (rows, cols) = scheme.matrix_shape();
        let sym = random_symbol(rows, cols, scheme.matrix_type(), &mut rng);
        let tag = *scheme.tags().choose(&mut rng).unwrap();
        let mut w = encode_cell(&scheme, &sym, tag, Some(&mut rng)).unwrap().into_vec();
        random_valid_word(&scheme, &mut w, &mut rng);
        let d = decode_cell(&scheme, &w);
        prop_assert!(d.valid);
        prop_assert_eq!(d.symbol, sym);
        prop_assert_eq!(d.tag, tag);
    }

    #[test]
    fn single_bit_flips_invalidate_or_toggle_the_value(scheme in scheme_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (rows, cols) = scheme.matrix_shape();
        let sym = random_symbol(rows, cols, scheme.matrix_type(), &mut rng);
        let mut w = encode_cell(&scheme, &sym, Tag::Vdash, Some(&mut rng)).unwrap().into_vec();
        let i = rng.gen_range(0..w.len());
        w[i] = !w[i];
        let d = decode_cell(&scheme, &w);
        if d.valid {
            prop_assert_eq!(d.symbol, transitive::pointer::CellSymbol { value: !sym.value, ..sym });
            prop_assert_eq!(d.tag, Tag::Vdash);
        }
    }

    #[test]
    fn index_words_reach_their_targets(seed in any::<u64>(), three in any::<bool>()) {
        let a = if three { action(SchemeKind::Dec240, 8) } else { action(SchemeKind::Dec96, 16) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = rng.gen_range(0..a.len());
        let q = rng.gen_range(0..a.len());
        let w = map_index(a, p, q).unwrap();
        prop_assert_eq!(a.apply_word(&w, p), q);
    }

    #[test]
    fn block_moves_follow_their_slot_images(seed in any::<u64>()) {
        let a = action(SchemeKind::Dec96, 16);
        let geo = a.geometry();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = rng.gen_range(0..a.len());
        let at = geo.address(p);
        let op = if rng.gen() { BlockOp::Flip } else { BlockOp::SimpleSwap };
        let q = geo.address(a.apply(Generator::Block { cell: at.cell, part: at.part, op }, p));
        let (block, flipped) = op.slot_image(at.block);
        prop_assert_eq!((q.cell, q.part, q.block), (at.cell, at.part, block));
        prop_assert_eq!(q.offset, if flipped { at.offset ^ 1 } else { at.offset });
    }

    #[test]
    fn cell_generators_have_no_collisions_on_samples(seed in any::<u64>()) {
        let a = action(SchemeKind::Dec240, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Generator::Cell(rng.gen_range(0..a.cell_generators().len()));
        let sample: Vec<usize> = (0..a.len() / 100).map(|_| rng.gen_range(0..a.len())).collect();
        let mut seen = std::collections::HashMap::new();
        for &p in &sample {
            let q = a.apply(g, p);
            if let Some(prev) = seen.insert(q, p) {
                prop_assert_eq!(prev, p);
            }
        }
    }

    #[test]
    fn measures_ignore_variable_names(outputs in prop::collection::vec(any::<bool>(), 32), seed in any::<u64>()) {
        let t = TruthTable::new(5, outputs).unwrap();
        let mut perm: Vec<usize> = (0..5).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let ms = [Measure::D, Measure::S, Measure::Bs, Measure::C, Measure::Deg];
        let a = measure_report(&t, &ms).unwrap();
        let b = measure_report(&t.permute_vars(&perm), &ms).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn a1_ignores_row_and_column_order(seed in any::<u64>(), built in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = if built {
            build_instance(Outer::A1, Symmetry::Transpose, 4, 4, Tag::Vdash, BuildOptions::default(), &mut rng)
                .unwrap()
                .matrix
        } else {
            let cells = (0..16).map(|_| random_symbol(4, 4, MatrixType::Type1, &mut rng)).collect();
            PointerMatrix::from_cells(4, 4, MatrixType::Type1, cells).unwrap()
        };
        let mut rho: Vec<usize> = (0..4).collect();
        let mut gamma: Vec<usize> = (0..4).collect();
        rho.shuffle(&mut rng);
        gamma.shuffle(&mut rng);
        prop_assert_eq!(a1_eval(&m.permute(&rho, &gamma)), a1_eval(&m));
    }
}

#[test]
fn parity_of_parities_is_invariant_under_wreath_generators() {
    let p2 = make_named("PARITY", &[2]).unwrap();
    let f = transitive::boolean::compose(&p2, &p2);
    let t = f.truth_table().unwrap();
    // Swap the two blocks, and swap inside the first block.
    for perm in [[2, 3, 0, 1], [1, 0, 2, 3]] {
        assert_eq!(t.permute_vars(&perm), t);
    }
}

#[test]
fn parity_is_symmetric() {
    for n in 1..=4 {
        let t = BooleanFunction::parse(&format!("PARITY:{n}")).unwrap().truth_table().unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        for _ in 0..6 {
            perm.rotate_left(1);
            if n > 1 {
                perm.swap(0, n - 1);
            }
            assert_eq!(t.permute_vars(&perm), t);
        }
    }
}
