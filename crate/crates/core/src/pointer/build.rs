use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::eval::{mod_eval, Outer, Symmetry};
use super::matrix::{
    brick_rot_coord, BackPointer, BrickRotation, CellSymbol, Coord, MatrixType, PointerMatrix, Tag, TagGrid,
};
use crate::error::{Error, Result};

/// A positive Mod instance: the matrix, its tags (`None` marks cells meant to
/// be undecodable) and the accepting certificate in the matrix' own
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub matrix: PointerMatrix,
    pub tags: TagGrid,
    pub certificate: Vec<Coord>,
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Probability that a non-certificate cell is left undecodable.
    pub invalid_rate: f64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { invalid_rate: 0.1 }
    }
}

pub fn matrix_type(outer: Outer) -> MatrixType {
    match outer {
        Outer::A1 => MatrixType::Type1,
        _ => MatrixType::Type2,
    }
}

fn random_coord<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Coord {
    Coord::new(rng.gen_range(0..rows), rng.gen_range(0..cols))
}

fn random_back<R: Rng + ?Sized>(rows: usize, cols: usize, kind: MatrixType, rng: &mut R) -> Option<BackPointer> {
    if rng.gen_bool(0.2) {
        return None;
    }
    Some(match kind {
        MatrixType::Type1 => BackPointer::Column(rng.gen_range(0..cols)),
        MatrixType::Type2 => BackPointer::Cell(random_coord(rows, cols, rng)),
    })
}

/// A random symbol other than `(1,-,-,-)`.
pub fn random_symbol<R: Rng + ?Sized>(rows: usize, cols: usize, kind: MatrixType, rng: &mut R) -> CellSymbol {
    loop {
        let ptr = |rng: &mut R| (!rng.gen_bool(0.2)).then(|| random_coord(rows, cols, rng));
        let s = CellSymbol {
            value: rng.gen(),
            left: ptr(rng),
            right: ptr(rng),
            back: random_back(rows, cols, kind, rng),
        };
        if s != CellSymbol::ONE_NULL {
            return s;
        }
    }
}

/// Builds an instance accepted through the `branch` tag: marked column(s)
/// of `(1,-,-,-)` around each special element, a pointer tree from the
/// special element with leaf `j` in column `j` where that column is free,
/// and random fillers elsewhere.
pub fn build_instance<R: Rng + ?Sized>(
    outer: Outer,
    sym: Symmetry,
    rows: usize,
    cols: usize,
    branch: Tag,
    opts: BuildOptions,
    rng: &mut R,
) -> Result<Instance> {
    if !sym.tags().contains(&branch) {
        return Err(Error::Dimensions(format!("{branch:?} is not a branch of {sym:?}")));
    }
    if sym == Symmetry::Brick && cols != rows * rows {
        return Err(Error::Dimensions(format!("{rows}x{cols} has no brick view")));
    }
    if sym == Symmetry::Transpose && rows != cols {
        return Err(Error::Dimensions("transposed branches need a square matrix".into()));
    }
    let base = build_vdash(outer, sym, rows, cols, opts, rng)?;
    if branch == Tag::Vdash {
        return Ok(base);
    }
    // The branch evaluates a moved view; place the instance so that view is `base`.
    let n = rows;
    let place = |c: Coord| match (sym, branch) {
        (Symmetry::Transpose, _) => Coord::new(c.col, c.row),
        (Symmetry::Brick, Tag::Top) => brick_rot_coord(c, n, BrickRotation::Top),
        (Symmetry::Brick, _) => brick_rot_coord(c, n, BrickRotation::Dashv),
    };
    let (out_rows, out_cols) = match sym {
        Symmetry::Transpose => (cols, rows),
        Symmetry::Brick => (rows, cols),
    };
    let mut matrix = PointerMatrix::filled(out_rows, out_cols, base.matrix.kind(), CellSymbol::ZERO_NULL);
    let mut tags = TagGrid::filled(out_rows, out_cols, None);
    let cert: HashSet<Coord> = base.certificate.iter().copied().collect();
    for r in 0..base.matrix.rows() {
        for c in 0..base.matrix.cols() {
            let at = Coord::new(r, c);
            let to = place(at);
            matrix.set(to, *base.matrix.get(at));
            let t = match base.tags.get(at) {
                Some(_) if cert.contains(&at) => Some(branch),
                other => other,
            };
            tags.set(to, t);
        }
    }
    Ok(Instance {
        matrix,
        tags,
        certificate: base.certificate.iter().map(|&c| place(c)).collect(),
    })
}

fn build_vdash<R: Rng + ?Sized>(
    outer: Outer,
    sym: Symmetry,
    rows: usize,
    cols: usize,
    opts: BuildOptions,
    rng: &mut R,
) -> Result<Instance> {
    if !cols.is_power_of_two() || cols < 2 || rows < 2 {
        return Err(Error::Dimensions(format!(
            "need rows >= 2 and a power-of-two column count >= 2, got {rows}x{cols}"
        )));
    }
    let k = match outer {
        Outer::A3 { k } => k,
        _ => 1,
    };
    if k == 0 || k >= cols {
        return Err(Error::Dimensions(format!("{k} marked columns in {cols} columns")));
    }
    let depth = cols.trailing_zeros() as usize;
    let tree_cells = 2 * cols - 2;
    if (cols - k) * rows < tree_cells + (cols - k) {
        return Err(Error::Dimensions(format!(
            "{rows}x{cols} is too small for a tree with {cols} leaves"
        )));
    }
    let kind = matrix_type(outer);
    let mut m = PointerMatrix::filled(rows, cols, kind, CellSymbol::ZERO_NULL);
    let mut used: HashSet<Coord> = HashSet::new();

    let mut columns: Vec<usize> = (0..cols).collect();
    columns.shuffle(rng);
    let marked: Vec<usize> = columns[..k].to_vec();
    let is_marked = |c: usize| marked.contains(&c);
    let specials: Vec<Coord> = marked.iter().map(|&c| Coord::new(rng.gen_range(0..rows), c)).collect();
    for &b in &marked {
        for r in 0..rows {
            used.insert(Coord::new(r, b));
            m.set(Coord::new(r, b), CellSymbol::ONE_NULL);
        }
    }
    let mut free: Vec<Coord> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| Coord::new(r, c)))
        .filter(|c| !is_marked(c.col))
        .collect();
    free.shuffle(rng);

    // Leaves first, one per column where possible.
    let mut leaves = Vec::with_capacity(cols);
    for j in 0..cols {
        let leaf = if is_marked(j) {
            None
        } else {
            let mut rows_j: Vec<usize> = (0..rows).collect();
            rows_j.shuffle(rng);
            rows_j.into_iter().map(|r| Coord::new(r, j)).find(|c| !used.contains(c))
        };
        let leaf = match leaf {
            Some(c) => c,
            None => *free.iter().find(|c| !used.contains(c)).ok_or_else(|| {
                Error::Dimensions("ran out of cells for leaves".into())
            })?,
        };
        used.insert(leaf);
        leaves.push(leaf);
    }
    // Internal nodes by level; level d has 2^d nodes, the root is the special element.
    let mut levels: Vec<Vec<Coord>> = vec![vec![specials[0]]];
    for d in 1..depth {
        let mut level = Vec::with_capacity(1 << d);
        for _ in 0..1usize << d {
            let c = *free
                .iter()
                .find(|c| !used.contains(c))
                .ok_or_else(|| Error::Dimensions("ran out of cells for tree nodes".into()))?;
            used.insert(c);
            level.push(c);
        }
        levels.push(level);
    }
    levels.push(leaves.clone());

    let back_pick = |rng: &mut R| random_back(rows, cols, kind, rng);
    for d in 0..depth {
        for (p, &node) in levels[d].iter().enumerate() {
            let left = Some(levels[d + 1][2 * p]);
            let right = Some(levels[d + 1][2 * p + 1]);
            let targets: Vec<Coord> = if d == 0 { specials.clone() } else { vec![node] };
            for (i, &t) in targets.iter().enumerate() {
                let back = match (d, outer) {
                    (0, Outer::A3 { .. }) => Some(BackPointer::Cell(specials[(i + 1) % k])),
                    _ => back_pick(rng),
                };
                m.set(
                    t,
                    CellSymbol {
                        value: rng.gen(),
                        left,
                        right,
                        back,
                    },
                );
            }
        }
    }
    let special = specials[0];
    let mut pointing: Vec<bool> = (0..cols).map(|j| j < cols / 2).collect();
    pointing.shuffle(rng);
    for (j, &leaf) in leaves.iter().enumerate() {
        let back = match outer {
            Outer::A1 => BackPointer::Column(marked[0]),
            Outer::A2 if pointing[j] => BackPointer::Cell(special),
            Outer::A2 => loop {
                let c = random_coord(rows, cols, rng);
                if c != special {
                    break BackPointer::Cell(c);
                }
            },
            Outer::A3 { .. } => BackPointer::Cell(specials[rng.gen_range(0..k)]),
        };
        let ptr = |rng: &mut R| (!rng.gen_bool(0.3)).then(|| random_coord(rows, cols, rng));
        m.set(
            leaf,
            CellSymbol {
                value: false,
                left: ptr(rng),
                right: ptr(rng),
                back: Some(back),
            },
        );
    }

    let mut tags = TagGrid::filled(rows, cols, Some(Tag::Vdash));
    for r in 0..rows {
        for c in 0..cols {
            let at = Coord::new(r, c);
            if used.contains(&at) {
                continue;
            }
            if rng.gen_bool(opts.invalid_rate) {
                m.set(at, CellSymbol::ZERO_NULL);
                tags.set(at, None);
            } else {
                m.set(at, random_symbol(rows, cols, kind, rng));
                let ts = sym.tags();
                tags.set(at, Some(ts[rng.gen_range(0..ts.len())]));
            }
        }
    }
    let certificate = outer
        .certificate(&m)
        .ok_or_else(|| Error::Dimensions("builder produced a rejected matrix".into()))?;
    let cert: HashSet<Coord> = certificate.iter().copied().collect();
    for r in 0..rows {
        for c in 0..cols {
            let at = Coord::new(r, c);
            if cert.contains(&at) {
                tags.set(at, Some(Tag::Vdash));
            } else if used.contains(&at) {
                let ts = sym.tags();
                tags.set(at, Some(ts[rng.gen_range(0..ts.len())]));
            }
        }
    }
    let outcome = mod_eval(outer, sym, &m, &tags)?;
    if !outcome.accepting.contains(&Tag::Vdash) {
        return Err(Error::Dimensions("builder produced a rejected instance".into()));
    }
    Ok(Instance {
        matrix: m,
        tags,
        certificate,
    })
}
