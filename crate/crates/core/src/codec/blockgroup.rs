//! The group generated by the two block-level moves acting on the four
//! blocks of a part.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

/// Generators of the block group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockOp {
    /// `(B1,B2,B3,B4) -> (B3,B4,B1,B2)`.
    SimpleSwap,
    /// `(B1,B2,B3,B4) -> (B2,B1,flip B3,flip B4)`.
    Flip,
}

impl BlockOp {
    /// Where the content of `slot` lands, and whether it is flipped there.
    pub fn slot_image(self, slot: usize) -> (usize, bool) {
        match self {
            BlockOp::SimpleSwap => ((slot + 2) % 4, false),
            BlockOp::Flip => match slot {
                0 => (1, false),
                1 => (0, false),
                s => (s, true),
            },
        }
    }
}

/// A group element: slot `s` holds block `source[s]`, flipped iff `flipped[s]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockElement {
    pub source: [u8; 4],
    pub flipped: [bool; 4],
}

impl BlockElement {
    pub const IDENTITY: BlockElement = BlockElement {
        source: [0, 1, 2, 3],
        flipped: [false; 4],
    };

    /// This element followed by `op`.
    pub fn then(self, op: BlockOp) -> BlockElement {
        let mut out = self;
        for s in 0..4 {
            let (t, f) = op.slot_image(s);
            out.source[t] = self.source[s];
            out.flipped[t] = self.flipped[s] ^ f;
        }
        out
    }
}

pub struct BlockGroup {
    pub elements: Vec<BlockElement>,
    by_source: HashMap<[u8; 4], BlockElement>,
    unique: bool,
}

impl BlockGroup {
    fn generate() -> BlockGroup {
        let mut elements = vec![BlockElement::IDENTITY];
        let mut queue = VecDeque::from([BlockElement::IDENTITY]);
        while let Some(e) = queue.pop_front() {
            for op in [BlockOp::SimpleSwap, BlockOp::Flip] {
                let next = e.then(op);
                if !elements.contains(&next) {
                    elements.push(next);
                    queue.push_back(next);
                }
            }
        }
        let mut by_source = HashMap::new();
        let mut unique = true;
        for &e in &elements {
            if let Some(prev) = by_source.insert(e.source, e) {
                unique &= prev == e;
            }
        }
        BlockGroup {
            elements,
            by_source,
            unique,
        }
    }

    pub fn get() -> &'static BlockGroup {
        static GROUP: OnceLock<BlockGroup> = OnceLock::new();
        GROUP.get_or_init(BlockGroup::generate)
    }

    /// Whether each slot arrangement determines its flips.
    pub fn flips_are_determined(&self) -> bool {
        self.unique
    }

    pub fn by_source(&self, source: [u8; 4]) -> Option<BlockElement> {
        self.by_source.get(&source).copied()
    }

    /// A shortest word of generators realizing `target` from the identity.
    pub fn word_for(&self, target: BlockElement) -> Option<Vec<BlockOp>> {
        let mut prev: HashMap<BlockElement, (BlockElement, BlockOp)> = HashMap::new();
        let mut queue = VecDeque::from([BlockElement::IDENTITY]);
        let mut seen = vec![BlockElement::IDENTITY];
        while let Some(e) = queue.pop_front() {
            if e == target {
                let mut word = Vec::new();
                let mut cur = e;
                while cur != BlockElement::IDENTITY {
                    let (p, op) = prev[&cur];
                    word.push(op);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for op in [BlockOp::SimpleSwap, BlockOp::Flip] {
                let next = e.then(op);
                if !seen.contains(&next) {
                    seen.push(next);
                    prev.insert(next, (e, op));
                    queue.push_back(next);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_with_unique_flips() {
        let g = BlockGroup::get();
        assert_eq!(g.elements.len(), 8);
        assert!(g.flips_are_determined());
    }

    #[test]
    fn involutions() {
        for op in [BlockOp::SimpleSwap, BlockOp::Flip] {
            assert_eq!(BlockElement::IDENTITY.then(op).then(op), BlockElement::IDENTITY);
        }
    }

    #[test]
    fn second_flip_form() {
        let e = BlockElement::IDENTITY
            .then(BlockOp::SimpleSwap)
            .then(BlockOp::Flip)
            .then(BlockOp::SimpleSwap);
        assert_eq!(e.source, [0, 1, 3, 2]);
        assert_eq!(e.flipped, [true, true, false, false]);
    }

    #[test]
    fn words_realize_elements() {
        let g = BlockGroup::get();
        for &e in &g.elements {
            let word = g.word_for(e).unwrap();
            let got = word.iter().fold(BlockElement::IDENTITY, |acc, &op| acc.then(op));
            assert_eq!(got, e);
        }
    }
}
