use std::collections::{HashMap, VecDeque};

use super::action::{CellMove, Generator, GroupAction};
use crate::codec::BlockOp;
use crate::error::{Error, Result};

struct WordBuilder<'a> {
    action: &'a GroupAction,
    word: Vec<Generator>,
    at: usize,
}

impl WordBuilder<'_> {
    fn push(&mut self, g: Generator) {
        self.at = self.action.apply(g, self.at);
        self.word.push(g);
    }

    fn cell_move(&mut self, mv: CellMove) -> Result<()> {
        let i = self
            .action
            .find_cell_move(mv)
            .ok_or_else(|| Error::Scheme(format!("no cell generator {mv}")))?;
        self.push(Generator::Cell(i));
        Ok(())
    }
}

/// A generator word sending index `p` to index `q`.
///
/// The offset is moved into the target segment and pair slot first, then
/// pair flips fix the residue bits of every cell coordinate, adjacent part
/// swaps fix the part, and a short search over block moves fixes block and
/// the offset inside the pair. The true address is recomputed after every
/// generator.
pub fn map_index(action: &GroupAction, p: usize, q: usize) -> Result<Vec<Generator>> {
    let geo = action.geometry();
    if p >= geo.len() || q >= geo.len() {
        return Err(Error::Dimensions(format!("index outside 0..{}", geo.len())));
    }
    let s = geo.scheme();
    let seg = s.segment_len();
    let segments = s.segments();
    let l = s.log_n();
    let n = s.n();
    let target = geo.address(q);
    let mut b = WordBuilder {
        action,
        word: Vec::new(),
        at: p,
    };

    // Segment.
    let t_seg = target.offset / seg;
    for _ in 0..segments {
        let cur = geo.address(b.at).offset / seg;
        if cur == t_seg {
            break;
        }
        if segments == 2 {
            b.cell_move(CellMove::Swap { start: 0, half: seg })?;
        } else {
            b.cell_move(CellMove::Rotation1)?;
        }
    }

    // Pair slot inside the segment.
    let base = t_seg * seg;
    let t_pair = (target.offset - base) / 2;
    if seg.is_power_of_two() {
        let mut h = seg / 2;
        while h >= 2 {
            let rel = geo.address(b.at).offset - base;
            if (rel ^ (target.offset - base)) & h != 0 {
                b.cell_move(CellMove::Swap {
                    start: base + (rel & !(2 * h - 1)),
                    half: h,
                })?;
            }
            h /= 2;
        }
    } else {
        loop {
            let pair = (geo.address(b.at).offset - base) / 2;
            if pair == t_pair {
                break;
            }
            let j = if pair < t_pair { pair } else { pair - 1 };
            b.cell_move(CellMove::Swap {
                start: base + 2 * j,
                half: 2,
            })?;
        }
    }

    // Cell: flip residue bit `L-1-j` of axis `a` with the pair flip at pair `j`
    // of segment `a`.
    let want = geo.cell_coords(target.cell);
    for a in 0..segments {
        let have = geo.cell_coords(geo.address(b.at).cell);
        let diff = (have[a] % n) ^ (want[a] % n);
        for bit in 0..l {
            if diff >> bit & 1 == 1 {
                b.cell_move(CellMove::Swap {
                    start: a * seg + 2 * (l - 1 - bit),
                    half: 1,
                })?;
            }
        }
    }

    // Part.
    loop {
        let a = geo.address(b.at);
        if a.part == target.part {
            break;
        }
        let part = if a.part < target.part { a.part } else { a.part - 1 };
        b.push(Generator::PartSwap { cell: a.cell, part });
    }

    // Block and the offset parity.
    let a = geo.address(b.at);
    let goal = (target.block, target.offset);
    let mut prev: HashMap<(usize, usize), ((usize, usize), BlockOp)> = HashMap::new();
    let start = (a.block, a.offset);
    let mut queue = VecDeque::from([start]);
    let mut seen = vec![start];
    while let Some(st) = queue.pop_front() {
        if st == goal {
            break;
        }
        for op in [BlockOp::SimpleSwap, BlockOp::Flip] {
            let (blk, fl) = op.slot_image(st.0);
            let next = (blk, if fl { st.1 ^ 1 } else { st.1 });
            if !seen.contains(&next) {
                seen.push(next);
                prev.insert(next, (st, op));
                queue.push_back(next);
            }
        }
    }
    let mut ops = Vec::new();
    let mut cur = goal;
    while cur != start {
        let (p, op) = *prev
            .get(&cur)
            .ok_or_else(|| Error::Scheme("block moves cannot reach the target slot".into()))?;
        ops.push(op);
        cur = p;
    }
    for op in ops.into_iter().rev() {
        b.push(Generator::Block {
            cell: a.cell,
            part: a.part,
            op,
        });
    }

    if b.at != q {
        return Err(Error::Scheme(format!("word from {p} ends at {} instead of {q}", b.at)));
    }
    Ok(b.word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{Scheme, SchemeKind};
    use crate::groups::Geometry;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn words_reach_targets() {
        for (kind, n) in [(SchemeKind::Dec96, 16), (SchemeKind::Dec112, 16), (SchemeKind::Dec240, 8)] {
            let a = GroupAction::new(Geometry::new(Scheme::new(kind, n).unwrap())).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..200 {
                let p = rng.gen_range(0..a.len());
                let q = rng.gen_range(0..a.len());
                let w = map_index(&a, p, q).unwrap();
                assert_eq!(a.apply_word(&w, p), q);
            }
            assert!(map_index(&a, 5, 5).unwrap().is_empty());
        }
    }

    #[test]
    fn same_part_uses_block_moves_only() {
        let a = GroupAction::new(Geometry::new(Scheme::new(SchemeKind::Dec96, 16).unwrap())).unwrap();
        let bl = a.geometry().scheme().block_len();
        let w = map_index(&a, 3, 3 + 2 * bl).unwrap();
        assert!(!w.is_empty());
        assert!(w.iter().all(|g| matches!(g, Generator::Block { .. })));
    }
}
