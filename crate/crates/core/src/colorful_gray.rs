//! Streaming Hamilton-path generator for the flip graph of colorful
//! triangulations under the alternating red/blue coloring.
//!
//! A colorful triangulation is the pair (reduced quadrangulation, one
//! monochromatic diagonal per quadrangle). The reduced graph is the rotation
//! graph of ternary trees, so the ternary Gray code walks it; inside each
//! fiber the 2^q diagonal choices form a hypercube, traversed end to end by
//! a laceable path whose exit vertex is pinned (two bits) by the next
//! colorful flip. Odd N runs the same machinery behind an artificial point
//! N+1 whose quadrangle always contains points 1 and N and whose bit (the
//! monochromatic edge (1,N)) never changes; the artificial quadrangle is
//! steered around point 1 by a zigzag over the edges incident to it.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::colorful::{is_colorful, parity_colors};
use crate::cube::{cube_path, CubePathSpec};
use crate::dissection::{Diagonal, Dissection};
use crate::error::{contract, Error, Result};
use crate::gray::KaryGray;
use crate::kary::KAryTree;

/// One flip in the emitted stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorfulFlip {
    pub remove: Diagonal,
    pub insert: Diagonal,
}

impl std::fmt::Display for ColorfulFlip {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "flip {}-{} -> {}-{}",
            self.remove.0, self.remove.1, self.insert.0, self.insert.1
        )
    }
}

/// Endpoint constraint a pending colorful flip places on the fiber cube:
/// these two monochromatic diagonals must be present when the flip fires.
#[derive(Debug, Clone, Default)]
pub struct ConnectorConstraint {
    pub required: Vec<(usize, Diagonal)>,
}

/// Reduced state over the (possibly virtual) polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ReducedState {
    /// sorted diagonals of the reduced dissection
    diagonals: Vec<Diagonal>,
    /// quadrangle corners (ascending = ccw) indexed by tree label - 1
    quads: Vec<[usize; 4]>,
    /// the artificial quadrangle for odd N
    artificial: Option<[usize; 4]>,
}

pub struct GenColorful {
    n_points: usize,
    q: usize,
    odd: bool,
    kary: KaryGray,
    /// triangle position 1..=d and block direction (odd N only)
    j: usize,
    d: usize,
    tri_forward: bool,
    state: ReducedState,
    /// monochromatic diagonal currently placed in each labeled quadrangle
    placed: Vec<Diagonal>,
    /// triangulation as emitted so far
    current: BTreeSet<Diagonal>,
    queue: std::collections::VecDeque<ColorfulFlip>,
    exhausted: bool,
    finished: bool,
    emitted: u64,
}

fn is_blue(p: usize) -> bool {
    p % 2 == 0
}

/// The red-red and blue-blue diagonals of a quadrangle with alternating
/// corner colors.
fn quad_pair(quad: &[usize; 4]) -> (Diagonal, Diagonal) {
    let d1 = (quad[0].min(quad[2]), quad[0].max(quad[2]));
    let d2 = (quad[1].min(quad[3]), quad[1].max(quad[3]));
    debug_assert_eq!(is_blue(d1.0), is_blue(d1.1));
    debug_assert_eq!(is_blue(d2.0), is_blue(d2.1));
    if is_blue(d1.0) {
        (d2, d1)
    } else {
        (d1, d2)
    }
}

impl GenColorful {
    /// Generator for N >= 8. Smaller N is served by [`colorful_path`].
    pub fn new(n_points: usize) -> Result<GenColorful> {
        contract!(n_points >= 8, "streaming generator needs N >= 8");
        contract!(n_points <= 120, "fiber bits exceed the u64 cube");
        let odd = n_points % 2 == 1;
        let q = if odd {
            (n_points - 3) / 2
        } else {
            (n_points - 2) / 2
        };
        let kary = KaryGray::new(3, q)?;
        let mut gen = GenColorful {
            n_points,
            q,
            odd,
            kary,
            j: 1,
            d: 1,
            tri_forward: false,
            state: ReducedState {
                diagonals: Vec::new(),
                quads: Vec::new(),
                artificial: None,
            },
            placed: Vec::new(),
            current: BTreeSet::new(),
            queue: std::collections::VecDeque::new(),
            exhausted: false,
            finished: false,
            emitted: 1,
        };
        if odd {
            gen.d = gen.degree_at_one();
            gen.j = gen.d; // first block is reversed: start at the far end
        }
        gen.state = gen.reduced_state()?;
        gen.placed = gen
            .state
            .quads
            .iter()
            .map(|quad| quad_pair(quad).0)
            .collect();
        gen.current = gen
            .state
            .diagonals
            .iter()
            .copied()
            .chain(gen.placed.iter().copied())
            .collect();
        Ok(gen)
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Number of triangulations the full stream contains.
    pub fn total(&self) -> BigUint {
        crate::oracle::count_colorful(self.n_points)
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    /// The artificial quadrangle of the odd-N configuration, if any.
    pub fn artificial_quad(&self) -> Option<[usize; 4]> {
        self.state.artificial
    }

    /// The monochromatic edge that is never flipped for odd N.
    pub fn frozen_edge(&self) -> Option<Diagonal> {
        self.odd.then_some((1, self.n_points))
    }

    /// Current triangulation of the real N-gon.
    pub fn current_triangulation(&self) -> Dissection {
        Dissection::triangulation(self.n_points, self.current.iter().copied().collect())
            .expect("stream state is a triangulation")
    }

    pub fn next_flip(&mut self) -> Option<ColorfulFlip> {
        if let Some(flip) = self.queue.pop_front() {
            self.apply_emitted(flip);
            return Some(flip);
        }
        if self.finished {
            return None;
        }
        if let Err(e) = self.plan_batch() {
            panic!("generator invariant broken: {e}");
        }
        let flip = self.queue.pop_front()?;
        self.apply_emitted(flip);
        Some(flip)
    }

    fn apply_emitted(&mut self, flip: ColorfulFlip) {
        let removed = self.current.remove(&flip.remove);
        debug_assert!(removed, "removed diagonal was present");
        let inserted = self.current.insert(flip.insert);
        debug_assert!(inserted, "inserted diagonal was absent");
        self.emitted += 1;
    }

    // ------------------------------------------------------------------
    // Planning
    // ------------------------------------------------------------------

    /// Queues the cube path through the current fiber plus, unless the
    /// reduced path is exhausted, the colorful connector flip.
    fn plan_batch(&mut self) -> Result<()> {
        debug_assert!(self.queue.is_empty());
        let old_state = self.state.clone();
        let transition = self.advance_reduced()?;
        let (exit_constraint, connector) = match &transition {
            Some(flip) => (
                self.constraints_for(&old_state, *flip)?,
                Some(*flip),
            ),
            None => (ConnectorConstraint::default(), None),
        };
        self.queue_cube_path(&old_state, &exit_constraint)?;
        if let Some(flip) = connector {
            self.queue.push_back(flip);
            self.reassign_placed()?;
        } else {
            self.finished = true;
        }
        Ok(())
    }

    /// Hamilton path of the fiber cube from the current bits to an exit
    /// vertex satisfying the constraint, emitted as diagonal flips.
    fn queue_cube_path(&mut self, state: &ReducedState, constraint: &ConnectorConstraint) -> Result<()> {
        let q = self.q;
        let mut cur = 0u64;
        for (i, quad) in state.quads.iter().enumerate() {
            let (_, bb) = quad_pair(quad);
            if self.placed[i] == bb {
                cur |= 1 << i;
            }
        }
        let mut exit = cur;
        let mut pinned = 0u64;
        for &(label, edge) in &constraint.required {
            let (rr, bb) = quad_pair(&state.quads[label - 1]);
            contract!(
                edge == rr || edge == bb,
                "constraint edge {:?} is not a diagonal of quadrangle {}",
                edge,
                label
            );
            let bit = 1u64 << (label - 1);
            pinned |= bit;
            if edge == bb {
                exit |= bit;
            } else {
                exit &= !bit;
            }
        }
        if (cur ^ exit).count_ones() % 2 == 0 {
            let free = (0..q)
                .find(|i| pinned & (1 << i) == 0)
                .expect("q >= 3 leaves a free bit");
            exit ^= 1 << free;
        }
        let dist = (cur ^ exit).count_ones();
        assert!(dist == 1 || dist == 3, "cube endpoints at distance {dist}");
        let path = cube_path(CubePathSpec {
            dim: q,
            start: cur,
            end: exit,
        })?;
        for w in path.windows(2) {
            let changed = (w[0] ^ w[1]).trailing_zeros() as usize;
            let (rr, bb) = quad_pair(&state.quads[changed]);
            let now_blue = w[1] & (1 << changed) != 0;
            let (remove, insert) = if now_blue { (rr, bb) } else { (bb, rr) };
            debug_assert_eq!(self.placed[changed], remove);
            self.placed[changed] = insert;
            self.queue.push_back(ColorfulFlip { remove, insert });
        }
        Ok(())
    }

    /// After a connector the two affected quadrangles may trade labels;
    /// re-derive which placed diagonal lives in which quadrangle.
    fn reassign_placed(&mut self) -> Result<()> {
        let placed_set: BTreeSet<Diagonal> = self.placed.iter().copied().collect();
        for (i, quad) in self.state.quads.iter().enumerate() {
            let (rr, bb) = quad_pair(quad);
            let inside = match (placed_set.contains(&rr), placed_set.contains(&bb)) {
                (true, false) => rr,
                (false, true) => bb,
                _ => {
                    return Err(Error::Contract(format!(
                        "quadrangle {} holds none or both of its diagonals",
                        i + 1
                    )))
                }
            };
            self.placed[i] = inside;
        }
        Ok(())
    }

    // ------------------------------------------------------------------
    // Reduced layer
    // ------------------------------------------------------------------

    /// Advances the reduced path by one state and returns the colorful flip
    /// between the old and new reduced dissections, or `None` at the end.
    fn advance_reduced(&mut self) -> Result<Option<ColorfulFlip>> {
        if self.exhausted {
            return Ok(None);
        }
        let old = self.state.diagonals.clone();
        if self.odd {
            if self.tri_forward && self.j < self.d {
                self.j += 1;
            } else if !self.tri_forward && self.j > 1 {
                self.j -= 1;
            } else if self.kary.next_rotation().is_some() {
                self.d = self.degree_at_one();
                self.tri_forward = !self.tri_forward;
                self.j = if self.tri_forward { 1 } else { self.d };
            } else {
                self.exhausted = true;
                return Ok(None);
            }
        } else if self.kary.next_rotation().is_none() {
            self.exhausted = true;
            return Ok(None);
        }
        self.state = self.reduced_state()?;
        let new = &self.state.diagonals;
        let removed: Vec<Diagonal> = old.iter().copied().filter(|d| !new.contains(d)).collect();
        let inserted: Vec<Diagonal> = new.iter().copied().filter(|d| !old.contains(d)).collect();
        contract!(
            removed.len() == 1 && inserted.len() == 1,
            "reduced transition is not a single flip"
        );
        Ok(Some(ColorfulFlip {
            remove: removed[0],
            insert: inserted[0],
        }))
    }

    /// Degree of point 1 in the quadrangulation dual to the current tree.
    fn degree_at_one(&self) -> usize {
        let dis = Dissection::from_tree(self.kary.tree()).expect("tree dualizes");
        2 + dis.diagonals().iter().filter(|d| d.0 == 1).count()
    }

    fn reduced_state(&self) -> Result<ReducedState> {
        let tree: &KAryTree = self.kary.tree();
        let dis = Dissection::from_tree(tree)?;
        let (_, faces) = dis.dual_shape_faces();
        if !self.odd {
            let mut quads = Vec::with_capacity(faces.len());
            for f in &faces {
                let mut c: [usize; 4] = [f[0], f[1], f[2], f[3]];
                c.sort_unstable();
                quads.push(c);
            }
            return Ok(ReducedState {
                diagonals: dis.diagonals().to_vec(),
                quads,
                artificial: None,
            });
        }
        // odd N: lift the (N-1)-gon quadrangulation behind the artificial
        // point N+1, the triangle sitting at edge j around point 1
        let n = self.n_points;
        let mut ring: Vec<usize> = dis
            .diagonals()
            .iter()
            .filter(|d| d.0 == 1)
            .map(|d| d.1)
            .collect();
        ring.push(2);
        ring.push(n - 1);
        ring.sort_unstable();
        debug_assert_eq!(ring.len(), self.d);
        let j = self.j;
        let idx = |p: usize| ring.iter().position(|&x| x == p).map(|i| i + 1);
        // lift a corner of a face at point 1
        let lift_face = |f: &[usize]| -> [usize; 4] {
            let mut out = [0usize; 4];
            let has_one = f.contains(&1);
            if !has_one {
                for (o, &p) in out.iter_mut().zip(f.iter()) {
                    *o = p;
                }
            } else {
                let mut nbrs: Vec<usize> = f.iter().copied().filter(|&p| p != 1).collect();
                nbrs.sort_unstable();
                // the two ring edges of this face are its extreme corners
                let hi = idx(*nbrs.last().unwrap());
                let keep_one = matches!(hi, Some(h) if h <= j);
                for (o, &p) in out.iter_mut().zip(f.iter()) {
                    *o = if p == 1 {
                        if keep_one {
                            1
                        } else {
                            n
                        }
                    } else {
                        p
                    };
                }
            }
            out.sort_unstable();
            out
        };
        let quads: Vec<[usize; 4]> = faces.iter().map(|f| lift_face(f)).collect();
        let mut diagonals: Vec<Diagonal> = dis
            .diagonals()
            .iter()
            .copied()
            .filter(|d| d.0 != 1)
            .collect();
        for (i, &p) in ring.iter().enumerate() {
            let i = i + 1;
            if i >= 2 && i <= j {
                diagonals.push((1, p));
            }
            if i >= j && i + 1 <= self.d {
                diagonals.push((p, n));
            }
        }
        diagonals.sort_unstable();
        let artificial = [1, ring[j - 1], n, n + 1];
        Ok(ReducedState {
            diagonals,
            quads,
            artificial: Some(artificial),
        })
    }

    /// The two monochromatic diagonals a connector flip requires, as labels
    /// into the old state's quadrangles. The frozen artificial pair (1,N)
    /// is satisfied by construction and dropped.
    fn constraints_for(&self, state: &ReducedState, flip: ColorfulFlip) -> Result<ConnectorConstraint> {
        let mut sides: Vec<Vec<usize>> = Vec::new();
        let contains_edge = |f: &[usize], e: Diagonal| {
            let m = f.len();
            (0..m).any(|i| {
                let a = f[i];
                let b = f[(i + 1) % m];
                (a.min(b), a.max(b)) == e
            })
        };
        for quad in &state.quads {
            if contains_edge(quad, flip.remove) {
                sides.push(quad.to_vec());
            }
        }
        if let Some(art) = &state.artificial {
            if contains_edge(art, flip.remove) {
                sides.push(art.to_vec());
            }
        }
        contract!(sides.len() == 2, "removed edge must bound two faces");
        let mut hexagon: Vec<usize> = sides.concat();
        hexagon.sort_unstable();
        hexagon.dedup();
        contract!(hexagon.len() == 6, "merged face is not a hexagon");
        let pos = |p: usize| hexagon.iter().position(|&x| x == p).unwrap();
        let mut constraint = ConnectorConstraint::default();
        for &w in &[flip.insert.0, flip.insert.1] {
            let i = pos(w);
            let prev = hexagon[(i + 5) % 6];
            let next = hexagon[(i + 1) % 6];
            let adjacent = if prev == flip.remove.0 || next == flip.remove.0 {
                flip.remove.0
            } else {
                debug_assert!(prev == flip.remove.1 || next == flip.remove.1);
                flip.remove.1
            };
            let partner = if adjacent == flip.remove.0 {
                flip.remove.1
            } else {
                flip.remove.0
            };
            let edge = (w.min(partner), w.max(partner));
            if self.odd && edge == (1, self.n_points) {
                continue; // the frozen artificial bit
            }
            let label = state
                .quads
                .iter()
                .position(|quad| {
                    let (rr, bb) = quad_pair(quad);
                    rr == edge || bb == edge
                })
                .map(|i| i + 1)
                .ok_or_else(|| {
                    Error::Contract(format!("constraint edge {edge:?} fits no quadrangle"))
                })?;
            constraint.required.push((label, edge));
        }
        Ok(constraint)
    }
}

/// Full Hamilton path of the colorful flip graph, covering the small cases:
/// brute-force paths for N in {4,5,7}, the single node for N = 3, an error
/// for N = 6 (no Hamilton path exists), and the streaming generator from
/// N = 8 on.
pub fn colorful_path(n_points: usize) -> Result<Vec<Dissection>> {
    contract!(n_points >= 3, "need at least a triangle");
    if n_points >= 8 {
        let mut gen = GenColorful::new(n_points)?;
        let mut out = vec![gen.current_triangulation()];
        while gen.next_flip().is_some() {
            out.push(gen.current_triangulation());
        }
        return Ok(out);
    }
    if n_points == 3 {
        return Ok(vec![Dissection::triangulation(3, vec![])?]);
    }
    if n_points == 6 {
        return Err(Error::Domain(
            "no Hamilton path exists for N = 6".to_string(),
        ));
    }
    let colors = parity_colors(n_points);
    let objects: Vec<String> = crate::oracle::enumerate_triangulations(n_points)
        .into_iter()
        .filter(|t| is_colorful(t, &colors))
        .map(|t| t.to_text())
        .collect();
    let graph = crate::oracle::FlipGraph::build(objects, |s| {
        let d = Dissection::from_text(s, 2).unwrap();
        d.flips()
            .into_iter()
            .filter(|(_, n)| is_colorful(n, &colors))
            .map(|(_, n)| n.to_text())
            .collect()
    })?;
    match crate::oracle::hamilton_path(&graph, None, 1 << 24) {
        crate::oracle::Search::Found(path) => path
            .into_iter()
            .map(|i| Dissection::from_text(&graph.nodes[i], 2))
            .collect(),
        _ => Err(Error::Domain(format!(
            "no Hamilton path found for N = {n_points}"
        ))),
    }
}

/// True when the flip touches a monochromatic edge (a fiber move) rather
/// than a colorful one (a reduced move).
pub fn is_mono_flip(flip: &ColorfulFlip) -> bool {
    let mono = |d: Diagonal| is_blue(d.0) == is_blue(d.1);
    debug_assert_eq!(mono(flip.remove), mono(flip.insert));
    mono(flip.remove)
}
