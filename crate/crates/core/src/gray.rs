//! Streaming Hamilton-path generator for the rotation graph of n-vertex
//! k-ary trees.
//!
//! The ordering is the inductive zigzag: the path over (n-1)-vertex trees is
//! expanded by replacing its i-th tree with the children sequence of the new
//! largest vertex, reversed on odd i and forward on even i. Each vertex owns
//! a precomputed step sequence for its current run; a step `-s` is a
//! down-rotation by s, `+s` an up-rotation by s. Suffix reversals of a
//! children sequence show up as a single entry with |s| > 1, which only
//! happens for k >= 3.

use std::collections::VecDeque;

use crate::error::{contract, Result};
use crate::kary::{Direction, KAryTree, Rotation, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    Forward,
    Backward,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }
}

/// Signed rotation run for one vertex.
#[derive(Debug, Clone, Default)]
pub struct StepSequence {
    steps: VecDeque<i32>,
}

impl StepSequence {
    fn plain(len: usize, sign: i32) -> StepSequence {
        StepSequence {
            steps: std::iter::repeat(sign).take(len).collect(),
        }
    }

    /// Forward run of length m-1 whose suffix of length r is reversed:
    /// (-1)^(m-1-r), -r, (+1)^(r-1).
    fn forward_with_suffix(m: usize, r: usize) -> StepSequence {
        let mut steps = VecDeque::with_capacity(m - 1);
        steps.extend(std::iter::repeat(-1).take(m - 1 - r));
        steps.push_back(-(r as i32));
        steps.extend(std::iter::repeat(1).take(r - 1));
        StepSequence { steps }
    }

    /// Reverse traversal of a children sequence whose suffix of length r is
    /// reversed: (-1)^(r-1), +r, (+1)^(m-1-r).
    fn backward_with_suffix(m: usize, r: usize) -> StepSequence {
        let mut steps = VecDeque::with_capacity(m - 1);
        steps.extend(std::iter::repeat(-1).take(r - 1));
        steps.push_back(r as i32);
        steps.extend(std::iter::repeat(1).take(m - 1 - r));
        StepSequence { steps }
    }

    fn pop(&mut self) -> Option<i32> {
        self.steps.pop_front()
    }

    fn peek(&self) -> Option<i32> {
        self.steps.front().copied()
    }

    fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// What a pending rotation looks like from the level of a larger vertex:
/// which suffix reversal, if any, it forces there. A rotation of pivot b
/// interacts with the children sequence of vertex v only when b = v-1,
/// because b is then the end of the rightmost branch that v's insertions
/// walk; rotations of smaller pivots leave the insertion point alone.
#[derive(Debug, Clone, Copy)]
struct MoveInfo {
    pivot: Vertex,
    down: bool,
    /// Suffix length r: the step count, plus one unless the end of the move
    /// closer to the parent position is the parent position itself.
    r: usize,
}

pub struct KaryGray {
    tree: KAryTree,
    k: usize,
    n: usize,
    dirs: Vec<Dir>,
    seqs: Vec<StepSequence>,
    started: bool,
}

impl KaryGray {
    pub fn new(k: usize, n: usize) -> Result<KaryGray> {
        contract!(k >= 2, "arity must be at least 2");
        contract!(n >= 1, "need at least one vertex");
        let mut tree = KAryTree::single(k);
        for v in 1..n {
            tree.insert_leaf(v as Vertex, 2);
        }
        let mut gen = KaryGray {
            tree,
            k,
            n,
            dirs: vec![Dir::Backward; n + 1],
            seqs: vec![StepSequence::default(); n + 1],
            started: false,
        };
        for v in 2..=n {
            let m = gen.tree.frame_under(v as Vertex - 1).len();
            gen.seqs[v] = StepSequence::plain(m - 1, 1);
        }
        Ok(gen)
    }

    pub fn tree(&self) -> &KAryTree {
        &self.tree
    }

    /// Total number of trees this generator will emit.
    pub fn total(&self) -> num_bigint::BigUint {
        crate::oracle::count_kary(self.n, self.k)
    }

    fn move_info(&self, pivot: Vertex, step: i32) -> MoveInfo {
        let k = self.k;
        let sigma = step.unsigned_abs() as usize;
        let down = step < 0;
        let tree = &self.tree;
        let above_end = if down {
            // a dive starts from the parent position
            tree.child(pivot, 1).is_some()
        } else {
            let p = match tree.parent_slot(pivot) {
                Some(p) => p,
                None => panic!(
                    "move_info: pivot {pivot} step {step} has no parent in {}",
                    tree.encode()
                ),
            };
            // a climb ends in the parent position
            p + sigma == k + 1
        };
        let r = if above_end { sigma } else { sigma + 1 };
        MoveInfo { pivot, down, r }
    }

    /// Step sequence for a fresh run of vertex `v`, given the rotation at
    /// the junction this block touches with its reversed-suffix end.
    fn fresh_seq(&self, v: usize, dir: Dir, junction: Option<MoveInfo>) -> StepSequence {
        let m = self.tree.frame_under(v as Vertex - 1).len();
        match dir {
            Dir::Backward => match junction {
                Some(info)
                    if info.down && info.r >= 2 && info.pivot as usize == v - 1 =>
                {
                    StepSequence::backward_with_suffix(m, info.r)
                }
                _ => StepSequence::plain(m - 1, 1),
            },
            Dir::Forward => match junction {
                Some(info)
                    if !info.down && info.r >= 2 && info.pivot as usize == v - 1 =>
                {
                    StepSequence::forward_with_suffix(m, info.r)
                }
                _ => StepSequence::plain(m - 1, -1),
            },
        }
    }

    /// Next move of the path over vertices smaller than `v`, if any.
    fn peek_below(&self, v: usize) -> Option<(Vertex, i32)> {
        (2..v)
            .rev()
            .find(|&w| !self.seqs[w].is_empty())
            .map(|w| (w as Vertex, self.seqs[w].peek().unwrap()))
    }

    /// Advances to the next tree, returning the rotation that produced it,
    /// or `None` once the path is exhausted.
    pub fn next_rotation(&mut self) -> Option<Rotation> {
        self.started = true;
        let v = (2..=self.n).rev().find(|&v| !self.seqs[v].is_empty())?;
        let step = self.seqs[v].pop().unwrap();
        let rot = Rotation {
            pivot: v as Vertex,
            dir: if step < 0 {
                Direction::Down
            } else {
                Direction::Up
            },
            steps: step.unsigned_abs() as usize,
        };
        let applied = self.move_info(rot.pivot, step);
        self.tree.apply(rot);
        for w in v + 1..=self.n {
            self.dirs[w] = self.dirs[w].flip();
            let junction = match self.dirs[w] {
                // the block that just ended met this move at its tail
                Dir::Backward => Some(applied),
                // a forward block is modified by the junction at its far end
                Dir::Forward => {
                    let peeked = if w == v + 1 {
                        self.peek_below(w)
                    } else {
                        self.seqs[w - 1].peek().map(|s| (w as Vertex - 1, s))
                    };
                    peeked.map(|(pivot, s)| self.move_info(pivot, s))
                }
            };
            self.seqs[w] = self.fresh_seq(w, self.dirs[w], junction);
        }
        Some(rot)
    }

    /// Largest |step| remaining anywhere; diagnostic for the k=2 invariant
    /// that no suffix reversals occur.
    pub fn max_pending_step(&self) -> usize {
        self.seqs
            .iter()
            .flat_map(|s| s.steps.iter())
            .map(|s| s.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }
}

/// Outcome of checking a stream of canonical encodings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayReport {
    pub count: usize,
    pub distinct: bool,
    pub adjacent: bool,
    /// Per-line parse failures (line number, message).
    pub errors: Vec<(usize, String)>,
}

/// Validates a snapshot stream: total count, distinctness, and rotation
/// adjacency of consecutive entries per the oracle predicate.
pub fn verify_gray<I, S>(lines: I, k: usize) -> GrayReport
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut seen = std::collections::HashSet::new();
    let mut prev: Option<KAryTree> = None;
    let mut report = GrayReport {
        count: 0,
        distinct: true,
        adjacent: true,
        errors: Vec::new(),
    };
    for (i, line) in lines.into_iter().enumerate() {
        let line = line.as_ref().trim();
        if line.is_empty() {
            continue;
        }
        match KAryTree::decode(line, k) {
            Ok(tree) => {
                report.count += 1;
                if !seen.insert(line.to_string()) {
                    report.distinct = false;
                }
                if let Some(p) = &prev {
                    if !crate::oracle::rotation_adjacent(p, &tree) {
                        report.adjacent = false;
                    }
                }
                prev = Some(tree);
            }
            Err(e) => report.errors.push((i + 1, e.to_string())),
        }
    }
    report
}
