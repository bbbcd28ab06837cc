use std::fmt;

use crate::error::{Error, Result};

/// A cell position, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub row: usize,
    pub col: usize,
}

impl Coord {
    pub fn new(row: usize, col: usize) -> Self {
        Coord { row, col }
    }
}

/// Back pointers address a column in type-1 matrices and a cell in type-2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BackPointer {
    Column(usize),
    Cell(Coord),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellSymbol {
    pub value: bool,
    pub left: Option<Coord>,
    pub right: Option<Coord>,
    pub back: Option<BackPointer>,
}

impl CellSymbol {
    /// `(1, -, -, -)`, the filler of marked columns.
    pub const ONE_NULL: CellSymbol = CellSymbol {
        value: true,
        left: None,
        right: None,
        back: None,
    };

    /// `(0, -, -, -)`, what undecodable cells read as.
    pub const ZERO_NULL: CellSymbol = CellSymbol {
        value: false,
        left: None,
        right: None,
        back: None,
    };
}

/// Cell tags, printed `>`, `^`, `<`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Vdash,
    Top,
    Dashv,
}

impl Tag {
    pub fn to_char(self) -> char {
        match self {
            Tag::Vdash => '>',
            Tag::Top => '^',
            Tag::Dashv => '<',
        }
    }

    pub fn from_char(c: char) -> Option<Tag> {
        match c {
            '>' => Some(Tag::Vdash),
            '^' => Some(Tag::Top),
            '<' => Some(Tag::Dashv),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixType {
    Type1,
    Type2,
}

/// Which cyclic brick rotation: `Top` sends `(r,c,b)` to `(b,r,c)`,
/// `Dashv` sends `(r,c,b)` to `(c,b,r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BrickRotation {
    Top,
    Dashv,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointerMatrix {
    rows: usize,
    cols: usize,
    kind: MatrixType,
    cells: Vec<CellSymbol>,
}

impl PointerMatrix {
    pub fn filled(rows: usize, cols: usize, kind: MatrixType, sym: CellSymbol) -> Self {
        PointerMatrix {
            rows,
            cols,
            kind,
            cells: vec![sym; rows * cols],
        }
    }

    pub fn from_cells(rows: usize, cols: usize, kind: MatrixType, cells: Vec<CellSymbol>) -> Result<Self> {
        if cells.len() != rows * cols {
            return Err(Error::Dimensions(format!(
                "{} cells for a {rows}x{cols} matrix",
                cells.len()
            )));
        }
        Ok(PointerMatrix {
            rows,
            cols,
            kind,
            cells,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> MatrixType {
        self.kind
    }

    pub fn cells(&self) -> &[CellSymbol] {
        &self.cells
    }

    pub fn get(&self, c: Coord) -> &CellSymbol {
        &self.cells[c.row * self.cols + c.col]
    }

    pub fn set(&mut self, c: Coord, sym: CellSymbol) {
        self.cells[c.row * self.cols + c.col] = sym;
    }

    pub fn get_mut(&mut self, c: Coord) -> &mut CellSymbol {
        &mut self.cells[c.row * self.cols + c.col]
    }

    pub fn contains(&self, c: Coord) -> bool {
        c.row < self.rows && c.col < self.cols
    }

    /// Positions move, contents stay as they are.
    pub fn transpose(&self) -> PointerMatrix {
        let mut cells = Vec::with_capacity(self.cells.len());
        for r in 0..self.cols {
            for c in 0..self.rows {
                cells.push(*self.get(Coord::new(c, r)));
            }
        }
        PointerMatrix {
            rows: self.cols,
            cols: self.rows,
            kind: self.kind,
            cells,
        }
    }

    /// Whether the matrix is `n x n^2`, viewed as `n` bricks of `n x n`.
    pub fn has_brick_view(&self) -> bool {
        self.cols == self.rows * self.rows
    }

    pub fn brick_rot(&self, which: BrickRotation) -> Result<PointerMatrix> {
        if !self.has_brick_view() {
            return Err(Error::Dimensions(format!(
                "{}x{} has no brick view",
                self.rows, self.cols
            )));
        }
        let mut out = self.clone();
        for r in 0..self.rows {
            for col in 0..self.cols {
                let to = brick_rot_coord(Coord::new(r, col), self.rows, which);
                out.set(to, *self.get(Coord::new(r, col)));
            }
        }
        Ok(out)
    }

    /// Applies row permutation `rho` and column permutation `gamma`
    /// (old index -> new index) and rewrites pointers to follow their targets.
    pub fn permute(&self, rho: &[usize], gamma: &[usize]) -> PointerMatrix {
        let map = |c: Coord| Coord::new(rho[c.row], gamma[c.col]);
        let mut out = self.clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let s = self.get(Coord::new(r, c));
                let moved = CellSymbol {
                    value: s.value,
                    left: s.left.map(map),
                    right: s.right.map(map),
                    back: s.back.map(|b| match b {
                        BackPointer::Column(j) => BackPointer::Column(gamma[j]),
                        BackPointer::Cell(x) => BackPointer::Cell(map(x)),
                    }),
                };
                out.set(map(Coord::new(r, c)), moved);
            }
        }
        out
    }

    /// One line per cell: `r c : V (lr,lc) (rr,rc) (b)`, 1-based, `-` for a
    /// null pointer; preceded by a `matrix <rows> <cols> <type>` header.
    pub fn to_text(&self) -> String {
        let kind = match self.kind {
            MatrixType::Type1 => "type1",
            MatrixType::Type2 => "type2",
        };
        let mut s = format!("matrix {} {} {kind}\n", self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                s.push_str(&format!("{} {} : {}\n", r + 1, c + 1, self.get(Coord::new(r, c))));
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<PointerMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<&str> = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?
            .split_whitespace()
            .collect();
        let (rows, cols, kind) = match header.as_slice() {
            ["matrix", r, c, k] => {
                let r: usize = r.parse().map_err(|_| Error::Parse("bad row count".into()))?;
                let c: usize = c.parse().map_err(|_| Error::Parse("bad column count".into()))?;
                let k = match *k {
                    "type1" => MatrixType::Type1,
                    "type2" => MatrixType::Type2,
                    other => return Err(Error::Parse(format!("bad matrix type `{other}`"))),
                };
                (r, c, k)
            }
            _ => return Err(Error::Parse("expected `matrix <rows> <cols> <type>`".into())),
        };
        let mut m = PointerMatrix::filled(rows, cols, kind, CellSymbol::ZERO_NULL);
        let mut seen = vec![false; rows * cols];
        for line in lines {
            let (pos, body) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("missing `:` in `{line}`")))?;
            let pos: Vec<usize> = pos
                .split_whitespace()
                .map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad position in `{line}`"))))
                .collect::<Result<_>>()?;
            let at = match pos.as_slice() {
                [r, c] if *r >= 1 && *c >= 1 && *r <= rows && *c <= cols => Coord::new(r - 1, c - 1),
                _ => return Err(Error::Parse(format!("bad position in `{line}`"))),
            };
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::Parse(format!("expected 4 fields in `{line}`")));
            }
            let value = match fields[0] {
                "0" => false,
                "1" => true,
                other => return Err(Error::Parse(format!("bad value `{other}`"))),
            };
            let left = parse_coord(fields[1], rows, cols)?;
            let right = parse_coord(fields[2], rows, cols)?;
            let back = match (fields[3], kind) {
                ("-", _) => None,
                (f, MatrixType::Type1) => {
                    let j: usize = f
                        .trim_start_matches('(')
                        .trim_end_matches(')')
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad column pointer `{f}`")))?;
                    if j == 0 || j > cols {
                        return Err(Error::Parse(format!("column pointer `{f}` out of range")));
                    }
                    Some(BackPointer::Column(j - 1))
                }
                (f, MatrixType::Type2) => parse_coord(f, rows, cols)?.map(BackPointer::Cell),
            };
            m.set(at, CellSymbol { value, left, right, back });
            seen[at.row * cols + at.col] = true;
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Parse("some cells are missing".into()));
        }
        Ok(m)
    }
}

fn parse_coord(f: &str, rows: usize, cols: usize) -> Result<Option<Coord>> {
    if f == "-" {
        return Ok(None);
    }
    let inner = f
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad pointer `{f}`")))?;
    let (r, c) = inner
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("bad pointer `{f}`")))?;
    let r: usize = r.trim().parse().map_err(|_| Error::Parse(format!("bad pointer `{f}`")))?;
    let c: usize = c.trim().parse().map_err(|_| Error::Parse(format!("bad pointer `{f}`")))?;
    if r == 0 || c == 0 || r > rows || c > cols {
        return Err(Error::Parse(format!("pointer `{f}` out of range")));
    }
    Ok(Some(Coord::new(r - 1, c - 1)))
}

/// Brick view of an `n x n^2` matrix: column `b*n + c` of row `r` is `(r,c,b)`.
pub fn brick_of(c: Coord, n: usize) -> (usize, usize, usize) {
    (c.row, c.col % n, c.col / n)
}

pub fn from_brick(r: usize, c: usize, b: usize, n: usize) -> Coord {
    Coord::new(r, b * n + c)
}

pub fn brick_rot_coord(x: Coord, n: usize, which: BrickRotation) -> Coord {
    let (r, c, b) = brick_of(x, n);
    match which {
        BrickRotation::Top => from_brick(b, r, c, n),
        BrickRotation::Dashv => from_brick(c, b, r, n),
    }
}

/// Per-cell tags; `None` marks a cell that did not decode and so matches
/// any tag requirement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TagGrid {
    rows: usize,
    cols: usize,
    tags: Vec<Option<Tag>>,
}

impl TagGrid {
    pub fn filled(rows: usize, cols: usize, tag: Option<Tag>) -> Self {
        TagGrid {
            rows,
            cols,
            tags: vec![tag; rows * cols],
        }
    }

    pub fn from_tags(rows: usize, cols: usize, tags: Vec<Option<Tag>>) -> Result<Self> {
        if tags.len() != rows * cols {
            return Err(Error::Dimensions("tag grid size mismatch".into()));
        }
        Ok(TagGrid { rows, cols, tags })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, c: Coord) -> Option<Tag> {
        self.tags[c.row * self.cols + c.col]
    }

    pub fn set(&mut self, c: Coord, t: Option<Tag>) {
        self.tags[c.row * self.cols + c.col] = t;
    }

    pub fn transpose(&self) -> TagGrid {
        let mut out = TagGrid::filled(self.cols, self.rows, None);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(Coord::new(c, r), self.get(Coord::new(r, c)));
            }
        }
        out
    }

    pub fn brick_rot(&self, which: BrickRotation) -> Result<TagGrid> {
        if self.cols != self.rows * self.rows {
            return Err(Error::Dimensions("tag grid has no brick view".into()));
        }
        let mut out = self.clone();
        for r in 0..self.rows {
            for col in 0..self.cols {
                let x = Coord::new(r, col);
                out.set(brick_rot_coord(x, self.rows, which), self.get(x));
            }
        }
        Ok(out)
    }

    /// One row per line over `>`, `^`, `<`, with `.` for undecoded cells.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                s.push(self.get(Coord::new(r, c)).map_or('.', Tag::to_char));
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<TagGrid> {
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let rows = lines.len();
        let cols = lines.first().map_or(0, |l| l.trim().chars().count());
        let mut tags = Vec::with_capacity(rows * cols);
        for l in &lines {
            let l = l.trim();
            if l.chars().count() != cols {
                return Err(Error::Parse("ragged tag grid".into()));
            }
            for ch in l.chars() {
                tags.push(match ch {
                    '.' => None,
                    c => Some(Tag::from_char(c).ok_or_else(|| Error::Parse(format!("bad tag `{c}`")))?),
                });
            }
        }
        Ok(TagGrid { rows, cols, tags })
    }
}

/// `V (lr,lc) (rr,rc) (b)`, 1-based, `-` for a null pointer.
impl fmt::Display for CellSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coord = |c: Option<Coord>| match c {
            None => "-".to_string(),
            Some(c) => format!("({},{})", c.row + 1, c.col + 1),
        };
        let back = match self.back {
            None => "-".to_string(),
            Some(BackPointer::Column(j)) => format!("({})", j + 1),
            Some(BackPointer::Cell(x)) => coord(Some(x)),
        };
        write!(f, "{} {} {} {}", self.value as u8, coord(self.left), coord(self.right), back)
    }
}

impl fmt::Display for PointerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
