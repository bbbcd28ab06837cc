use std::collections::BTreeSet;

use super::matrix::{BackPointer, BrickRotation, CellSymbol, Coord, PointerMatrix, Tag, TagGrid};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

/// `T(j)` for a 1-based leaf `j` of the balanced tree on `n` leaves: `j - 1`
/// in binary, most significant bit first, 0 meaning left.
pub fn path_sequence(j: usize, n: usize) -> Result<Vec<Direction>> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::Dimensions(format!("{n} leaves is not a power of two")));
    }
    if j == 0 || j > n {
        return Err(Error::Dimensions(format!("leaf {j} outside 1..={n}")));
    }
    let depth = n.trailing_zeros() as usize;
    Ok((0..depth)
        .rev()
        .map(|k| {
            if ((j - 1) >> k) & 1 == 1 {
                Direction::Right
            } else {
                Direction::Left
            }
        })
        .collect())
}

/// Columns with exactly one cell other than `(1,-,-,-)`, each with that cell.
pub fn find_marked_columns(m: &PointerMatrix) -> Vec<(usize, Coord)> {
    let mut out = Vec::new();
    for col in 0..m.cols() {
        let mut special = None;
        let mut count = 0;
        for row in 0..m.rows() {
            let c = Coord::new(row, col);
            if *m.get(c) != CellSymbol::ONE_NULL {
                count += 1;
                special = Some(c);
                if count > 1 {
                    break;
                }
            }
        }
        if count == 1 {
            out.push((col, special.unwrap()));
        }
    }
    out
}

/// Follows `T(j)` from `start`; `None` if a pointer on the way is null.
fn walk(m: &PointerMatrix, start: Coord, path: &[Direction], visited: &mut BTreeSet<Coord>) -> Option<Coord> {
    let mut at = start;
    visited.insert(at);
    for d in path {
        let s = m.get(at);
        at = match d {
            Direction::Left => s.left?,
            Direction::Right => s.right?,
        };
        if !m.contains(at) {
            return None;
        }
        visited.insert(at);
    }
    Some(at)
}

/// Walks every `T(j)` from `start`, returning the leaves in leaf order and
/// adding every visited cell to `cert`.
fn leaves(m: &PointerMatrix, start: Coord, cert: &mut BTreeSet<Coord>) -> Option<Vec<Coord>> {
    let n = m.cols();
    if !n.is_power_of_two() {
        return None;
    }
    let mut out = Vec::with_capacity(n);
    for j in 1..=n {
        let path = path_sequence(j, n).ok()?;
        out.push(walk(m, start, &path, cert)?);
    }
    Some(out)
}

fn column_cells(m: &PointerMatrix, col: usize, cert: &mut BTreeSet<Coord>) {
    for row in 0..m.rows() {
        cert.insert(Coord::new(row, col));
    }
}

/// The accepting cell set of `A1`, or `None` when `A1(m) = 0`.
pub fn a1_certificate(m: &PointerMatrix) -> Option<Vec<Coord>> {
    let marked = find_marked_columns(m);
    let [(b, special)] = marked[..] else { return None };
    let mut cert = BTreeSet::new();
    column_cells(m, b, &mut cert);
    for leaf in leaves(m, special, &mut cert)? {
        let s = m.get(leaf);
        if s.value || s.back != Some(BackPointer::Column(b)) {
            return None;
        }
    }
    Some(cert.into_iter().collect())
}

pub fn a1_eval(m: &PointerMatrix) -> bool {
    a1_certificate(m).is_some()
}

pub fn a2_certificate(m: &PointerMatrix) -> Option<Vec<Coord>> {
    let marked = find_marked_columns(m);
    let [(b, special)] = marked[..] else { return None };
    if !m.cols().is_multiple_of(2) {
        return None;
    }
    let mut cert = BTreeSet::new();
    column_cells(m, b, &mut cert);
    let mut back_edges = 0;
    for leaf in leaves(m, special, &mut cert)? {
        let s = m.get(leaf);
        if s.value {
            return None;
        }
        if s.back == Some(BackPointer::Cell(special)) {
            back_edges += 1;
        }
    }
    (back_edges == m.cols() / 2).then(|| cert.into_iter().collect())
}

pub fn a2_eval(m: &PointerMatrix) -> bool {
    a2_certificate(m).is_some()
}

pub fn a3_certificate(m: &PointerMatrix, k: usize) -> Option<Vec<Coord>> {
    let marked = find_marked_columns(m);
    if k == 0 || marked.len() != k {
        return None;
    }
    let specials: Vec<Coord> = marked.iter().map(|&(_, c)| c).collect();
    let first = m.get(specials[0]);
    if specials
        .iter()
        .any(|&c| m.get(c).left != first.left || m.get(c).right != first.right)
    {
        return None;
    }
    // One back-pointer cycle through all specials.
    let mut at = specials[0];
    let mut seen = BTreeSet::new();
    for _ in 0..k {
        if !seen.insert(at) {
            return None;
        }
        at = match m.get(at).back {
            Some(BackPointer::Cell(c)) if specials.contains(&c) => c,
            _ => return None,
        };
    }
    if at != specials[0] {
        return None;
    }
    let mut cert = BTreeSet::new();
    for &(b, _) in &marked {
        column_cells(m, b, &mut cert);
    }
    for leaf in leaves(m, specials[0], &mut cert)? {
        let s = m.get(leaf);
        if s.value {
            return None;
        }
        match s.back {
            Some(BackPointer::Cell(c)) if specials.contains(&c) => {}
            _ => return None,
        }
    }
    Some(cert.into_iter().collect())
}

pub fn a3_eval(m: &PointerMatrix, k: usize) -> bool {
    a3_certificate(m, k).is_some()
}

/// The base pointer function under a Mod wrapper.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outer {
    A1,
    A2,
    A3 { k: usize },
}

impl Outer {
    pub fn certificate(self, m: &PointerMatrix) -> Option<Vec<Coord>> {
        match self {
            Outer::A1 => a1_certificate(m),
            Outer::A2 => a2_certificate(m),
            Outer::A3 { k } => a3_certificate(m, k),
        }
    }
}

/// How the tagged branches see the matrix: transposed for `⊣` on square
/// matrices, or through the brick rotations on `n x n^2` matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Transpose,
    Brick,
}

impl Symmetry {
    pub fn tags(self) -> &'static [Tag] {
        match self {
            Symmetry::Transpose => &[Tag::Vdash, Tag::Dashv],
            Symmetry::Brick => &[Tag::Vdash, Tag::Top, Tag::Dashv],
        }
    }

    /// The matrix and tag grid the branch for `tag` evaluates.
    pub fn view(self, tag: Tag, m: &PointerMatrix, c: &TagGrid) -> Result<(PointerMatrix, TagGrid)> {
        match (self, tag) {
            (_, Tag::Vdash) => Ok((m.clone(), c.clone())),
            (Symmetry::Transpose, Tag::Dashv) => Ok((m.transpose(), c.transpose())),
            (Symmetry::Transpose, Tag::Top) => Err(Error::Dimensions("no ⊤ branch on a square matrix".into())),
            (Symmetry::Brick, Tag::Top) => Ok((
                m.brick_rot(BrickRotation::Dashv)?,
                c.brick_rot(BrickRotation::Dashv)?,
            )),
            (Symmetry::Brick, Tag::Dashv) => Ok((
                m.brick_rot(BrickRotation::Top)?,
                c.brick_rot(BrickRotation::Top)?,
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModOutcome {
    /// Every branch whose certificate exists with consistent tags.
    pub accepting: Vec<Tag>,
    /// Certificate cells of the first accepting branch, in that branch's view.
    pub certificate: Option<Vec<Coord>>,
}

impl ModOutcome {
    pub fn value(&self) -> bool {
        !self.accepting.is_empty()
    }
}

/// Evaluates every tagged branch. An undecodable cell (`None` tag) is
/// compatible with any branch.
pub fn mod_eval(outer: Outer, sym: Symmetry, m: &PointerMatrix, c: &TagGrid) -> Result<ModOutcome> {
    if m.rows() != c.rows() || m.cols() != c.cols() {
        return Err(Error::Dimensions("matrix and tag grid differ in shape".into()));
    }
    let mut out = ModOutcome {
        accepting: Vec::new(),
        certificate: None,
    };
    for &tag in sym.tags() {
        let (mv, cv) = sym.view(tag, m, c)?;
        if let Some(cert) = outer.certificate(&mv) {
            if cert.iter().all(|&x| cv.get(x).is_none_or(|t| t == tag)) {
                out.accepting.push(tag);
                if out.certificate.is_none() {
                    out.certificate = Some(cert);
                }
            }
        }
    }
    Ok(out)
}

pub fn mod_a1_eval(m: &PointerMatrix, c: &TagGrid) -> Result<bool> {
    Ok(mod_eval(Outer::A1, Symmetry::Transpose, m, c)?.value())
}

pub fn mod_a2_eval(m: &PointerMatrix, c: &TagGrid) -> Result<bool> {
    Ok(mod_eval(Outer::A2, Symmetry::Transpose, m, c)?.value())
}

pub fn mod_a3star_eval(m: &PointerMatrix, c: &TagGrid, k: usize) -> Result<bool> {
    Ok(mod_eval(Outer::A3 { k }, Symmetry::Brick, m, c)?.value())
}
