//! Triangulations under the alternating three-coloring, where the flip
//! operation is the twist: the rotation of an inner triangle surrounded by
//! three triangles. On the dual binary tree a twist is the local exchange
//! [[[A,B],[C,D]],E] <-> [A,[[B,C],[D,E]]].

use crate::dissection::{faces_of, Diagonal, Dissection};
use crate::error::{contract, Error, Result};
use crate::kary::{KAryTree, Shape};
use crate::oracle::FlipGraph;

/// Binary-tree form of a three-colorful triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriColorTriangulation {
    pub n_points: usize,
    pub tree: Shape,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistDir {
    Left,
    Right,
}

/// A twist: where, and which way the inner triangle turns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twist {
    /// path from the root, false = left, true = right
    pub address: Vec<bool>,
    pub dir: TwistDir,
}

impl std::fmt::Display for Twist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let addr: String = if self.address.is_empty() {
            "-".to_string()
        } else {
            self.address
                .iter()
                .map(|&b| if b { 'R' } else { 'L' })
                .collect()
        };
        let d = match self.dir {
            TwistDir::Left => 'L',
            TwistDir::Right => 'R',
        };
        write!(f, "twist {addr} {d}")
    }
}

/// Point color under the alternating red/blue/green pattern.
pub fn tri_color(point: usize) -> u8 {
    ((point - 1) % 3) as u8
}

/// Every triangle carries all three colors.
pub fn is_three_colorful(t: &Dissection) -> bool {
    t.faces().iter().all(|f| {
        let mut seen = [false; 3];
        for &p in f {
            seen[tri_color(p) as usize] = true;
        }
        seen.iter().all(|&s| s)
    })
}

impl TriColorTriangulation {
    pub fn from_dissection(d: &Dissection) -> Result<TriColorTriangulation> {
        contract!(d.arity() == 2, "need a triangulation");
        contract!(
            is_three_colorful(d),
            "triangle without all three colors present"
        );
        Ok(TriColorTriangulation {
            n_points: d.n_points(),
            tree: d.to_tree().shape(),
        })
    }

    pub fn to_dissection(&self) -> Result<Dissection> {
        let tree = KAryTree::from_shape(&self.tree, 2);
        Dissection::from_tree(&tree)
    }

    pub fn encode(&self) -> String {
        KAryTree::from_shape(&self.tree, 2).encode()
    }

    pub fn decode(s: &str, n_points: usize) -> Result<TriColorTriangulation> {
        let tree = KAryTree::decode(s, 2)?;
        contract!(
            tree.len() + 2 == n_points,
            "tree size does not match the polygon"
        );
        Ok(TriColorTriangulation {
            n_points,
            tree: tree.shape(),
        })
    }

    /// For N divisible by 3 every vertex at odd depth has two children.
    pub fn odd_depth_property(&self) -> bool {
        fn rec(s: &Shape, depth: usize) -> bool {
            match s {
                Shape::Empty => true,
                Shape::Node(ch) => {
                    if depth % 2 == 1 {
                        let both = !matches!(ch[0], Shape::Empty) && !matches!(ch[1], Shape::Empty);
                        if !both {
                            return false;
                        }
                    }
                    ch.iter().all(|c| rec(c, depth + 1))
                }
            }
        }
        rec(&self.tree, 0)
    }

    pub fn apply_twist(&self, twist: &Twist) -> Result<TriColorTriangulation> {
        let tree = twist_shape(&self.tree, &twist.address, twist.dir)?;
        Ok(TriColorTriangulation {
            n_points: self.n_points,
            tree,
        })
    }

    /// Every applicable twist.
    pub fn twists(&self) -> Vec<Twist> {
        let mut out = Vec::new();
        let mut addr = Vec::new();
        collect_twists(&self.tree, &mut addr, &mut out);
        out
    }
}

fn node(s: &Shape) -> Option<(&Shape, &Shape)> {
    match s {
        Shape::Empty => None,
        Shape::Node(ch) => Some((&ch[0], &ch[1])),
    }
}

fn mk(left: Shape, right: Shape) -> Shape {
    Shape::Node(vec![left, right])
}

/// Right-twist of [[A,B],[C,D]],E] into [A,[[B,C],[D,E]]]; applicable when
/// the left child of the root has two children. Left-twist is the inverse.
fn twist_at(s: &Shape, dir: TwistDir) -> Result<Shape> {
    let (l, r) = node(s).ok_or_else(|| Error::Contract("twist at an empty subtree".into()))?;
    match dir {
        TwistDir::Right => {
            let (p, q) = node(l).ok_or_else(|| Error::Contract("no left child".into()))?;
            let (a, b) = node(p).ok_or_else(|| Error::Contract("left-left child missing".into()))?;
            let (c, d) = node(q).ok_or_else(|| Error::Contract("left-right child missing".into()))?;
            Ok(mk(
                a.clone(),
                mk(mk(b.clone(), c.clone()), mk(d.clone(), r.clone())),
            ))
        }
        TwistDir::Left => {
            let (sfst, t) = node(r).ok_or_else(|| Error::Contract("no right child".into()))?;
            let (b, c) = node(sfst).ok_or_else(|| Error::Contract("right-left child missing".into()))?;
            let (d, e) = node(t).ok_or_else(|| Error::Contract("right-right child missing".into()))?;
            Ok(mk(
                mk(mk(l.clone(), b.clone()), mk(c.clone(), d.clone())),
                e.clone(),
            ))
        }
    }
}

fn twist_shape(root: &Shape, address: &[bool], dir: TwistDir) -> Result<Shape> {
    if address.is_empty() {
        return twist_at(root, dir);
    }
    let (l, r) = node(root).ok_or_else(|| Error::Contract("address leaves the tree".into()))?;
    let (go_right, rest) = (address[0], &address[1..]);
    Ok(if go_right {
        mk(l.clone(), twist_shape(r, rest, dir)?)
    } else {
        mk(twist_shape(l, rest, dir)?, r.clone())
    })
}

fn collect_twists(s: &Shape, addr: &mut Vec<bool>, out: &mut Vec<Twist>) {
    let (l, r) = match node(s) {
        Some(lr) => lr,
        None => return,
    };
    if let Some((p, q)) = node(l) {
        if node(p).is_some() && node(q).is_some() {
            out.push(Twist {
                address: addr.clone(),
                dir: TwistDir::Right,
            });
        }
    }
    if let Some((sf, t)) = node(r) {
        if node(sf).is_some() && node(t).is_some() {
            out.push(Twist {
                address: addr.clone(),
                dir: TwistDir::Left,
            });
        }
    }
    addr.push(false);
    collect_twists(l, addr, out);
    addr.pop();
    addr.push(true);
    collect_twists(r, addr, out);
    addr.pop();
}

/// The normal form: every even-depth vertex has only a left child, every
/// odd-depth vertex two children with a childless right child.
pub fn t0(n_vertices: usize) -> Shape {
    fn even(m: usize) -> Shape {
        if m == 0 {
            return Shape::Empty;
        }
        mk(odd(m - 1), Shape::Empty)
    }
    fn odd(m: usize) -> Shape {
        if m == 0 {
            return Shape::Empty;
        }
        assert!(m >= 2, "odd-depth unit needs at least two vertices");
        mk(even(m - 2), mk(Shape::Empty, Shape::Empty))
    }
    even(n_vertices)
}

/// Twist sequence carrying `t` to the normal form T_0, following the spine:
/// clear the right child of each even-depth vertex, make the right child of
/// the odd-depth vertex below it childless, descend left.
pub fn normalize_to_t0(t: &TriColorTriangulation) -> Result<Vec<Twist>> {
    contract!(
        t.n_points % 3 == 0,
        "normalization needs N divisible by 3"
    );
    contract!(
        t.odd_depth_property(),
        "input violates the odd-depth degree property"
    );
    let mut cur = t.tree.clone();
    let mut out: Vec<Twist> = Vec::new();
    let mut base: Vec<bool> = Vec::new(); // address of the current even vertex
    loop {
        even_fix(&mut cur, &base, &mut out)?;
        let here = subtree(&cur, &base);
        if node(here).map_or(true, |(l, _)| matches!(l, Shape::Empty)) {
            break;
        }
        odd_fix(&mut cur, &base, &mut out)?;
        base.push(false);
        base.push(false);
    }
    Ok(out)
}

fn subtree<'a>(s: &'a Shape, addr: &[bool]) -> &'a Shape {
    let mut cur = s;
    for &step in addr {
        let (l, r) = node(cur).expect("address inside the tree");
        cur = if step { r } else { l };
    }
    cur
}

fn push_twist(cur: &mut Shape, addr: &[bool], dir: TwistDir, out: &mut Vec<Twist>) -> Result<()> {
    let twist = Twist {
        address: addr.to_vec(),
        dir,
    };
    *cur = twist_shape(cur, &twist.address, dir)?;
    out.push(twist);
    Ok(())
}

/// Left-twists at `addr` until the vertex there has no right child.
fn even_fix(cur: &mut Shape, addr: &[bool], out: &mut Vec<Twist>) -> Result<()> {
    loop {
        let here = subtree(cur, addr);
        match node(here) {
            Some((_, r)) if !matches!(r, Shape::Empty) => {
                push_twist(cur, addr, TwistDir::Left, out)?;
            }
            _ => return Ok(()),
        }
    }
}

/// Makes the right child of the odd vertex below `x_addr` childless,
/// temporarily borrowing the parent as in the connectivity proof.
fn odd_fix(cur: &mut Shape, x_addr: &[bool], out: &mut Vec<Twist>) -> Result<()> {
    // v = x.left, w = v.right
    let mut w_addr = x_addr.to_vec();
    w_addr.push(false);
    w_addr.push(true);
    even_fix(cur, &w_addr, out)?;
    if matches!(subtree(cur, &w_addr), Shape::Empty) {
        return Err(Error::Contract("odd vertex lost its right child".into()));
    }
    if node(subtree(cur, &w_addr)).map_or(false, |(l, _)| matches!(l, Shape::Empty)) {
        return Ok(()); // already childless
    }
    push_twist(cur, x_addr, TwistDir::Right, out)?;
    let mut inner = x_addr.to_vec();
    inner.push(true);
    inner.push(false);
    even_fix(cur, &inner, out)?;
    push_twist(cur, x_addr, TwistDir::Left, out)?;
    Ok(())
}

/// All three-colorful triangulations of the N-gon.
pub fn enumerate_tricolor(n_points: usize) -> Vec<Dissection> {
    crate::oracle::enumerate_triangulations(n_points)
        .into_iter()
        .filter(is_three_colorful)
        .collect()
}

/// The twist graph H_N on three-colorful triangulations.
pub fn build_hn(n_points: usize) -> Result<FlipGraph> {
    contract!(n_points >= 6, "twists need at least a hexagon");
    let objects: Vec<String> = enumerate_tricolor(n_points)
        .iter()
        .map(|d| {
            TriColorTriangulation::from_dissection(d)
                .expect("filtered to be colorful")
                .encode()
        })
        .collect();
    FlipGraph::build(objects, move |s| {
        let t = TriColorTriangulation::decode(s, n_points).unwrap();
        t.twists()
            .iter()
            .map(|w| t.apply_twist(w).unwrap().encode())
            .collect()
    })
}

/// Twist neighbors computed on the triangulation itself: rotate an inner
/// triangle surrounded by three triangles.
pub fn triangulation_twist_neighbors(d: &Dissection) -> Vec<Dissection> {
    let n = d.n_points();
    let faces = faces_of(n, d.diagonals());
    let is_diag = |a: usize, b: usize| d.has_diagonal((a.min(b), a.max(b)));
    let mut out = Vec::new();
    for f in &faces {
        let (a, b, c) = (f[0], f[1], f[2]);
        if !(is_diag(a, b) && is_diag(b, c) && is_diag(a, c)) {
            continue;
        }
        // far corners of the three neighboring triangles
        let far = |x: usize, y: usize| -> usize {
            faces
                .iter()
                .find(|g| {
                    g.contains(&x) && g.contains(&y) && !(g.contains(&a) && g.contains(&b) && g.contains(&c))
                })
                .map(|g| *g.iter().find(|&&p| p != x && p != y).unwrap())
                .expect("inner diagonal bounds a second triangle")
        };
        let (x, y, z) = (far(a, b), far(b, c), far(a, c));
        let mut diagonals: Vec<Diagonal> = d
            .diagonals()
            .iter()
            .copied()
            .filter(|&e| {
                e != (a.min(b), a.max(b)) && e != (b.min(c), b.max(c)) && e != (a.min(c), a.max(c))
            })
            .collect();
        diagonals.push((x.min(y), x.max(y)));
        diagonals.push((y.min(z), y.max(z)));
        diagonals.push((x.min(z), x.max(z)));
        out.push(Dissection::triangulation(n, diagonals).expect("twist keeps a triangulation"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_has_two_colorful_triangulations() {
        let c = enumerate_tricolor(6);
        assert_eq!(c.len(), 2);
        for d in &c {
            let t = TriColorTriangulation::from_dissection(d).unwrap();
            assert!(t.odd_depth_property());
        }
    }

    #[test]
    fn twist_inverse_pair() {
        let c = enumerate_tricolor(9);
        assert_eq!(c.len(), 9);
        for d in &c {
            let t = TriColorTriangulation::from_dissection(d).unwrap();
            for w in t.twists() {
                let u = t.apply_twist(&w).unwrap();
                assert!(u.odd_depth_property());
                let back = Twist {
                    address: w.address.clone(),
                    dir: match w.dir {
                        TwistDir::Left => TwistDir::Right,
                        TwistDir::Right => TwistDir::Left,
                    },
                };
                assert_eq!(u.apply_twist(&back).unwrap(), t);
            }
        }
    }

    #[test]
    fn tree_twists_match_triangulation_twists() {
        for n in [6usize, 9] {
            for d in enumerate_tricolor(n) {
                let t = TriColorTriangulation::from_dissection(&d).unwrap();
                let via_tree: std::collections::BTreeSet<String> = t
                    .twists()
                    .iter()
                    .map(|w| t.apply_twist(w).unwrap().encode())
                    .collect();
                let via_faces: std::collections::BTreeSet<String> =
                    triangulation_twist_neighbors(&d)
                        .iter()
                        .map(|x| TriColorTriangulation::from_dissection(x).unwrap().encode())
                        .collect();
                assert_eq!(via_tree, via_faces, "N={n} at {}", d.to_text());
            }
        }
    }

    #[test]
    fn twist_rediagonalizes_one_hexagon() {
        // a twist exchanges exactly the three diagonals of one inner
        // triangle for the three of the rotated one
        for d in enumerate_tricolor(9) {
            for next in triangulation_twist_neighbors(&d) {
                let removed: Vec<_> = d
                    .diagonals()
                    .iter()
                    .filter(|x| !next.diagonals().contains(x))
                    .collect();
                let inserted: Vec<_> = next
                    .diagonals()
                    .iter()
                    .filter(|x| !d.diagonals().contains(x))
                    .collect();
                assert_eq!(removed.len(), 3);
                assert_eq!(inserted.len(), 3);
                // each triple forms a triangle on the same six points
                let tri_points = |edges: &[&(usize, usize)]| {
                    let mut p: Vec<usize> =
                        edges.iter().flat_map(|e| [e.0, e.1]).collect();
                    p.sort_unstable();
                    p.dedup();
                    p
                };
                assert_eq!(tri_points(&removed).len(), 3);
                assert_eq!(tri_points(&inserted).len(), 3);
            }
        }
    }

    #[test]
    fn t0_shape_is_normal() {
        for n in [6usize, 9, 12] {
            let shape = t0(n - 2);
            let t = TriColorTriangulation {
                n_points: n,
                tree: shape,
            };
            assert!(t.odd_depth_property());
            assert!(normalize_to_t0(&t).unwrap().is_empty());
        }
    }

    #[test]
    fn normalize_reaches_t0_everywhere_at_nine() {
        let target = t0(7);
        for d in enumerate_tricolor(9) {
            let t = TriColorTriangulation::from_dissection(&d).unwrap();
            let twists = normalize_to_t0(&t).unwrap();
            // replay
            let mut cur = t.clone();
            for w in &twists {
                cur = cur.apply_twist(w).unwrap();
                assert!(cur.odd_depth_property());
            }
            assert_eq!(cur.tree, target);
        }
    }

    #[test]
    fn hn_connected_for_six_and_nine() {
        assert!(build_hn(6).unwrap().is_connected());
        let h9 = build_hn(9).unwrap();
        assert_eq!(h9.len(), 9);
        assert!(h9.is_connected());
    }

    #[test]
    fn rejects_normalization_off_multiples_of_three() {
        let c = enumerate_tricolor(8);
        if let Some(d) = c.first() {
            let t = TriColorTriangulation::from_dissection(d).unwrap();
            assert!(normalize_to_t0(&t).is_err());
        }
    }
}
