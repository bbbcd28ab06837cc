use std::collections::VecDeque;
use std::fmt;

use rand::Rng;

use crate::codec::{decode_pointer, encode_pointer, Axis, BlockOp, Scheme};
use crate::error::{Error, Result};

/// Where a bit of a composed input sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndexAddress {
    pub cell: usize,
    pub part: usize,
    pub block: usize,
    pub offset: usize,
}

/// Index layout of a matrix of cell codewords, cells in row-major order.
#[derive(Clone, Debug)]
pub struct Geometry {
    scheme: Scheme,
    rows: usize,
    cols: usize,
}

impl Geometry {
    pub fn new(scheme: Scheme) -> Geometry {
        let (rows, cols) = scheme.matrix_shape();
        Geometry { scheme, rows, cols }
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> usize {
        self.rows * self.cols
    }

    pub fn len(&self) -> usize {
        self.cells() * self.scheme.cell_len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn address(&self, idx: usize) -> IndexAddress {
        let cl = self.scheme.cell_len();
        let (part, block, offset) = self.scheme.address(idx % cl);
        IndexAddress {
            cell: idx / cl,
            part,
            block,
            offset,
        }
    }

    pub fn index(&self, a: IndexAddress) -> usize {
        a.cell * self.scheme.cell_len() + self.scheme.flat(a.part, a.block, a.offset)
    }

    /// 1-based per-axis indices `(row, col, brick)` of a cell.
    pub fn cell_coords(&self, cell: usize) -> [usize; 3] {
        let (row, col) = (cell / self.cols, cell % self.cols);
        let n = self.scheme.n();
        [row + 1, col % n + 1, col / n + 1]
    }

    pub fn cell_from_coords(&self, c: [usize; 3]) -> usize {
        let n = self.scheme.n();
        (c[0] - 1) * self.cols + (c[2] - 1) * n + (c[1] - 1)
    }
}

/// A move applied to every block of every cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellMove {
    /// Exchanges offsets `start..start+half` with `start+half..start+2*half`.
    Swap { start: usize, half: usize },
    Rotation1,
    Rotation2,
}

impl fmt::Display for CellMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellMove::Swap { start, half } => write!(f, "swap[{start},{half}]"),
            CellMove::Rotation1 => f.write_str("rot1"),
            CellMove::Rotation2 => f.write_str("rot2"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CellGenerator {
    pub mv: CellMove,
    /// Offset `o` of each block moves to `offset_map[o]`.
    pub offset_map: Vec<usize>,
    /// Cell `c` moves to `cell_map[c]`.
    pub cell_map: Vec<u32>,
}

impl CellGenerator {
    /// Whether the move carries offsets across segments.
    pub fn crosses_segments(&self, seg: usize) -> bool {
        match self.mv {
            CellMove::Swap { half, .. } => half >= seg,
            _ => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Exchanges parts `part` and `part + 1` of one cell.
    PartSwap { cell: usize, part: usize },
    Block { cell: usize, part: usize, op: BlockOp },
    /// Cell generator: moves cells and permutes offsets inside every block.
    Cell(usize),
    /// The cell movement of a cell generator without the offset permutation,
    /// so pointers are not updated. Not a symmetry; used as a control.
    NegativeControl(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorClass {
    PartSwap,
    SimpleBlockSwap,
    BlockFlip,
    /// Cell generators acting inside one segment.
    CellLocal,
    /// Cell generators exchanging segments: the root swap or rotations.
    CellGlobal,
}

impl GeneratorClass {
    pub const ALL: [GeneratorClass; 5] = [
        GeneratorClass::PartSwap,
        GeneratorClass::SimpleBlockSwap,
        GeneratorClass::BlockFlip,
        GeneratorClass::CellLocal,
        GeneratorClass::CellGlobal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorClass::PartSwap => "part-swap",
            GeneratorClass::SimpleBlockSwap => "simple-block-swap",
            GeneratorClass::BlockFlip => "block-flip",
            GeneratorClass::CellLocal => "cell-local",
            GeneratorClass::CellGlobal => "cell-global",
        }
    }
}

/// Generators of `Bt_k` as image arrays on `0..k`, root (Swap½) first.
pub fn bt_generators(k: usize) -> Result<Vec<Vec<usize>>> {
    if k < 2 || !k.is_power_of_two() {
        return Err(Error::params("Bt", format!("k = {k} is not a power of two >= 2")));
    }
    Ok(bt_nodes(0, k)
        .into_iter()
        .map(|(start, half)| {
            let mut img: Vec<usize> = (0..k).collect();
            for o in start..start + half {
                img[o] = o + half;
                img[o + half] = o;
            }
            img
        })
        .collect())
}

/// `(start, half)` of every internal node of the tree over `start..start+k`,
/// from the root down.
fn bt_nodes(start: usize, k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut half = k / 2;
    while half >= 1 {
        let mut s = start;
        while s < start + k {
            out.push((s, half));
            s += 2 * half;
        }
        half /= 2;
    }
    out
}

fn offset_map(mv: CellMove, bl: usize) -> Vec<usize> {
    (0..bl)
        .map(|o| match mv {
            CellMove::Swap { start, half } => {
                if o >= start && o < start + half {
                    o + half
                } else if o >= start + half && o < start + 2 * half {
                    o - half
                } else {
                    o
                }
            }
            CellMove::Rotation1 => (o + bl / 3) % bl,
            CellMove::Rotation2 => (o + 2 * bl / 3) % bl,
        })
        .collect()
}

/// Generator set of the transitive group on a composed input.
#[derive(Clone, Debug)]
pub struct GroupAction {
    geometry: Geometry,
    cell_gens: Vec<CellGenerator>,
}

impl GroupAction {
    pub fn new(geometry: Geometry) -> Result<GroupAction> {
        let s = geometry.scheme();
        let l = s.log_n();
        let seg = s.segment_len();
        let segments = s.segments();
        let mut moves = Vec::new();
        let per_segment = |moves: &mut Vec<CellMove>, base: usize| {
            if seg.is_power_of_two() {
                for (start, half) in bt_nodes(base, seg) {
                    moves.push(CellMove::Swap { start, half });
                }
            } else {
                for j in 0..l {
                    moves.push(CellMove::Swap {
                        start: base + 2 * j,
                        half: 1,
                    });
                }
                for j in 0..l.saturating_sub(1) {
                    moves.push(CellMove::Swap {
                        start: base + 2 * j,
                        half: 2,
                    });
                }
            }
        };
        if segments == 2 {
            moves.push(CellMove::Swap { start: 0, half: seg });
        } else {
            moves.push(CellMove::Rotation1);
            moves.push(CellMove::Rotation2);
        }
        for sgi in 0..segments {
            per_segment(&mut moves, sgi * seg);
        }
        let mut cell_gens = Vec::with_capacity(moves.len());
        for mv in moves {
            cell_gens.push(Self::cell_generator(&geometry, mv)?);
        }
        Ok(GroupAction { geometry, cell_gens })
    }

    /// Computes the cell movement of `mv` by moving every row, column and
    /// brick code and decoding the result.
    fn cell_generator(g: &Geometry, mv: CellMove) -> Result<CellGenerator> {
        let s = g.scheme();
        let bl = s.block_len();
        let segments = s.segments();
        let n = s.n();
        let omap = offset_map(mv, bl);
        let mut table = vec![[(0usize, 0usize); 3]; n + 1];
        for (axis_i, &axis) in Axis::ALL[..segments].iter().enumerate() {
            for (l, row) in table.iter_mut().enumerate().skip(1) {
                let code = encode_pointer(axis, l, s.log_n(), segments)?;
                let mut moved = vec![false; bl];
                for (o, &b) in code.iter().enumerate() {
                    moved[omap[o]] = b;
                }
                let (to_axis, to_l) = decode_pointer(&moved, segments).map_err(|e| {
                    Error::Scheme(format!("{mv} sends a pointer code to a non-code: {e}"))
                })?;
                row[axis_i] = (to_axis as usize, to_l);
            }
        }
        let mut cell_map = Vec::with_capacity(g.cells());
        let mut hit = vec![false; g.cells()];
        for cell in 0..g.cells() {
            let c = g.cell_coords(cell);
            let mut out = [1usize; 3];
            let mut filled = [false; 3];
            for a in 0..segments {
                let (ta, tl) = table[c[a]][a];
                if filled[ta] {
                    return Err(Error::Scheme(format!("{mv} merges two axes")));
                }
                filled[ta] = true;
                out[ta] = tl;
            }
            let to = g.cell_from_coords(out);
            if hit[to] {
                return Err(Error::Scheme(format!("{mv} is not a bijection on cells")));
            }
            hit[to] = true;
            cell_map.push(to as u32);
        }
        Ok(CellGenerator {
            mv,
            offset_map: omap,
            cell_map,
        })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn len(&self) -> usize {
        self.geometry.len()
    }

    pub fn is_empty(&self) -> bool {
        self.geometry.is_empty()
    }

    pub fn cell_generators(&self) -> &[CellGenerator] {
        &self.cell_gens
    }

    pub(crate) fn find_cell_move(&self, mv: CellMove) -> Option<usize> {
        self.cell_gens.iter().position(|g| g.mv == mv)
    }

    pub fn class(&self, g: Generator) -> GeneratorClass {
        match g {
            Generator::PartSwap { .. } => GeneratorClass::PartSwap,
            Generator::Block { op: BlockOp::SimpleSwap, .. } => GeneratorClass::SimpleBlockSwap,
            Generator::Block { op: BlockOp::Flip, .. } => GeneratorClass::BlockFlip,
            Generator::Cell(i) | Generator::NegativeControl(i) => {
                if self.cell_gens[i].crosses_segments(self.geometry.scheme().segment_len()) {
                    GeneratorClass::CellGlobal
                } else {
                    GeneratorClass::CellLocal
                }
            }
        }
    }

    /// Every generator: per-cell part swaps and block moves, then the cell
    /// generators.
    pub fn generators(&self) -> Vec<Generator> {
        let parts = self.geometry.scheme().parts();
        let mut out = Vec::new();
        for cell in 0..self.geometry.cells() {
            for part in 0..parts - 1 {
                out.push(Generator::PartSwap { cell, part });
            }
            for part in 0..parts {
                for op in [BlockOp::SimpleSwap, BlockOp::Flip] {
                    out.push(Generator::Block { cell, part, op });
                }
            }
        }
        out.extend((0..self.cell_gens.len()).map(Generator::Cell));
        out
    }

    /// A random generator of `class`; local generators act on `cell` when given.
    pub fn random_generator<R: Rng + ?Sized>(
        &self,
        class: GeneratorClass,
        cell: Option<usize>,
        rng: &mut R,
    ) -> Option<Generator> {
        let parts = self.geometry.scheme().parts();
        let cell = cell.unwrap_or_else(|| rng.gen_range(0..self.geometry.cells()));
        match class {
            GeneratorClass::PartSwap => Some(Generator::PartSwap {
                cell,
                part: rng.gen_range(0..parts - 1),
            }),
            GeneratorClass::SimpleBlockSwap => Some(Generator::Block {
                cell,
                part: rng.gen_range(0..parts),
                op: BlockOp::SimpleSwap,
            }),
            GeneratorClass::BlockFlip => Some(Generator::Block {
                cell,
                part: rng.gen_range(0..parts),
                op: BlockOp::Flip,
            }),
            GeneratorClass::CellLocal | GeneratorClass::CellGlobal => {
                let pool: Vec<usize> = (0..self.cell_gens.len())
                    .filter(|&i| self.class(Generator::Cell(i)) == class)
                    .collect();
                (!pool.is_empty()).then(|| Generator::Cell(pool[rng.gen_range(0..pool.len())]))
            }
        }
    }

    pub fn apply(&self, g: Generator, idx: usize) -> usize {
        let geo = &self.geometry;
        let a = geo.address(idx);
        let moved = match g {
            Generator::PartSwap { cell, part } => {
                if a.cell != cell {
                    return idx;
                }
                let p = if a.part == part {
                    part + 1
                } else if a.part == part + 1 {
                    part
                } else {
                    return idx;
                };
                IndexAddress { part: p, ..a }
            }
            Generator::Block { cell, part, op } => {
                if a.cell != cell || a.part != part {
                    return idx;
                }
                let (block, flipped) = op.slot_image(a.block);
                IndexAddress {
                    block,
                    offset: if flipped { a.offset ^ 1 } else { a.offset },
                    ..a
                }
            }
            Generator::Cell(i) => {
                let cg = &self.cell_gens[i];
                IndexAddress {
                    cell: cg.cell_map[a.cell] as usize,
                    offset: cg.offset_map[a.offset],
                    ..a
                }
            }
            Generator::NegativeControl(i) => IndexAddress {
                cell: self.cell_gens[i].cell_map[a.cell] as usize,
                ..a
            },
        };
        geo.index(moved)
    }

    pub fn apply_word(&self, word: &[Generator], idx: usize) -> usize {
        word.iter().fold(idx, |p, &g| self.apply(g, p))
    }

    /// `y[g(p)] = x[p]`.
    pub fn apply_input(&self, g: Generator, x: &[bool]) -> Vec<bool> {
        let mut y = x.to_vec();
        let range = match g {
            Generator::PartSwap { cell, .. } | Generator::Block { cell, .. } => {
                let cl = self.geometry.scheme().cell_len();
                cell * cl..(cell + 1) * cl
            }
            _ => 0..x.len(),
        };
        for p in range {
            y[self.apply(g, p)] = x[p];
        }
        y
    }

    /// Image array of `g` when the domain is at most `2^17` indices.
    pub fn materialize(&self, g: Generator) -> Option<Vec<u32>> {
        (self.len() <= 1 << 17).then(|| (0..self.len()).map(|p| self.apply(g, p) as u32).collect())
    }

    /// Generators that can move `idx`: those of its own cell and part, and
    /// all cell generators.
    pub fn generators_at(&self, idx: usize, out: &mut Vec<Generator>) {
        out.clear();
        let a = self.geometry.address(idx);
        let parts = self.geometry.scheme().parts();
        if a.part > 0 {
            out.push(Generator::PartSwap {
                cell: a.cell,
                part: a.part - 1,
            });
        }
        if a.part + 1 < parts {
            out.push(Generator::PartSwap {
                cell: a.cell,
                part: a.part,
            });
        }
        for op in [BlockOp::SimpleSwap, BlockOp::Flip] {
            out.push(Generator::Block {
                cell: a.cell,
                part: a.part,
                op,
            });
        }
        out.extend((0..self.cell_gens.len()).map(Generator::Cell));
    }

    /// Size of the orbit of `start` under all generators, by BFS.
    pub fn orbit(&self, start: usize) -> usize {
        self.orbit_from(&[start])
    }

    /// Size of the union of the orbits of `seeds`.
    pub fn orbit_from(&self, seeds: &[usize]) -> usize {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        let mut count = 0;
        for &s in seeds {
            if !seen[s] {
                seen[s] = true;
                count += 1;
                queue.push_back(s);
            }
        }
        let mut gens = Vec::new();
        while let Some(p) = queue.pop_front() {
            self.generators_at(p, &mut gens);
            for &g in &gens {
                let q = self.apply(g, p);
                if !seen[q] {
                    seen[q] = true;
                    count += 1;
                    queue.push_back(q);
                }
            }
        }
        count
    }
}

/// Orbit size of `start` under permutations given as image arrays.
pub fn orbit(gens: &[Vec<usize>], start: usize, n: usize) -> usize {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut count = 1;
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g[p];
            if !seen[q] {
                seen[q] = true;
                count += 1;
                queue.push_back(q);
            }
        }
    }
    count
}
