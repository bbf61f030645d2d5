//! Dissections of a convex polygon into (k+1)-gons, flips, and the duality
//! with k-ary trees.
//!
//! Points are 1..=N counterclockwise on a circle. The dual tree is rooted by
//! looking through the outer edge (N,1); within a face seen through its
//! parent edge, child slots are numbered so that descending the rightmost
//! branch hugs the low-numbered points (a fan from point 1 is the tree whose
//! rightmost branch carries every vertex).

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{contract, Error, Result};
use crate::kary::{KAryTree, Shape};

pub type Diagonal = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dissection {
    n_points: usize,
    k: usize,
    diagonals: Vec<Diagonal>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DissectionFlip {
    pub remove: Diagonal,
    pub insert: Diagonal,
}

pub fn crossing(a: Diagonal, b: Diagonal) -> bool {
    let (p, q) = a;
    let (r, s) = b;
    (p < r && r < q && q < s) || (r < p && p < s && s < q)
}

fn norm(d: Diagonal) -> Diagonal {
    if d.0 <= d.1 {
        d
    } else {
        (d.1, d.0)
    }
}

/// Interior faces of the non-crossing chord set, each as a counterclockwise
/// corner list starting at its smallest point. Works for mixed face sizes.
pub fn faces_of(n_points: usize, diagonals: &[Diagonal]) -> Vec<Vec<usize>> {
    let n = n_points;
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let add = |a: usize, b: usize, nbrs: &mut Vec<Vec<usize>>| {
        nbrs[a].push(b);
        nbrs[b].push(a);
    };
    for p in 1..=n {
        add(p, p % n + 1, &mut nbrs);
    }
    for &(a, b) in diagonals {
        add(a, b, &mut nbrs);
    }
    // ccw order around p: ascending (q - p) mod n
    for (p, list) in nbrs.iter_mut().enumerate().skip(1) {
        list.sort_by_key(|&q| (q + n - p) % n);
        list.dedup();
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for p in 1..=n {
        edges.push((p, p % n + 1));
    }
    for &(a, b) in diagonals {
        edges.push((a, b));
        edges.push((b, a));
    }
    let mut seen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let mut faces = Vec::new();
    for start in edges {
        if seen.contains(&start) {
            continue;
        }
        let mut face = Vec::new();
        let (mut u, mut v) = start;
        loop {
            seen.insert((u, v));
            face.push(u);
            // predecessor of u in the ccw neighbor order of v
            let list = &nbrs[v];
            let i = list.iter().position(|&w| w == u).expect("edge endpoint");
            let w = list[(i + list.len() - 1) % list.len()];
            u = v;
            v = w;
            if (u, v) == start {
                break;
            }
        }
        let min_pos = face
            .iter()
            .enumerate()
            .min_by_key(|&(_, &p)| p)
            .map(|(i, _)| i)
            .unwrap();
        face.rotate_left(min_pos);
        faces.push(face);
    }
    faces.sort();
    faces
}

impl Dissection {
    /// Validated constructor: diagonals must be non-crossing chords that cut
    /// the N-gon into (k+1)-gons.
    pub fn new(n_points: usize, k: usize, mut diagonals: Vec<Diagonal>) -> Result<Dissection> {
        contract!(k >= 2, "arity must be at least 2");
        contract!(n_points >= 3, "need at least a triangle");
        contract!(
            (n_points - 2) % (k - 1) == 0,
            "an {n_points}-gon has no dissection into {}-gons",
            k + 1
        );
        let n_faces = (n_points - 2) / (k - 1);
        for d in diagonals.iter_mut() {
            *d = norm(*d);
            contract!(
                d.0 >= 1 && d.1 <= n_points && d.0 != d.1,
                "diagonal {:?} out of range",
                d
            );
            let adjacent = d.1 - d.0 == 1 || (d.0 == 1 && d.1 == n_points);
            contract!(!adjacent, "({},{}) is a boundary edge", d.0, d.1);
        }
        diagonals.sort();
        let before = diagonals.len();
        diagonals.dedup();
        contract!(before == diagonals.len(), "duplicate diagonal");
        contract!(
            diagonals.len() == n_faces - 1,
            "expected {} diagonals, got {}",
            n_faces - 1,
            diagonals.len()
        );
        for (i, &a) in diagonals.iter().enumerate() {
            for &b in &diagonals[i + 1..] {
                contract!(!crossing(a, b), "diagonals {:?} and {:?} cross", a, b);
            }
        }
        let d = Dissection {
            n_points,
            k,
            diagonals,
        };
        for f in d.faces() {
            contract!(
                f.len() == k + 1,
                "face {:?} is not a {}-gon",
                f,
                k + 1
            );
        }
        Ok(d)
    }

    pub fn triangulation(n_points: usize, diagonals: Vec<Diagonal>) -> Result<Dissection> {
        Dissection::new(n_points, 2, diagonals)
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn has_diagonal(&self, d: Diagonal) -> bool {
        self.diagonals.binary_search(&norm(d)).is_ok()
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        faces_of(self.n_points, &self.diagonals)
    }

    /// The two faces sharing a diagonal.
    pub fn faces_at(&self, d: Diagonal) -> Vec<Vec<usize>> {
        let d = norm(d);
        self.faces()
            .into_iter()
            .filter(|f| {
                let m = f.len();
                (0..m).any(|i| {
                    let e = norm((f[i], f[(i + 1) % m]));
                    e == d
                })
            })
            .collect()
    }

    /// Applies a flip after checking it is legal: the removed diagonal is
    /// present and the inserted one re-splits the merged 2k-gon.
    pub fn apply_flip(&self, flip: &DissectionFlip) -> Result<Dissection> {
        let rem = norm(flip.remove);
        let ins = norm(flip.insert);
        contract!(self.has_diagonal(rem), "diagonal {:?} not present", rem);
        let merged = self.merged_polygon(rem)?;
        let m = merged.len();
        let pos = |p: usize| -> Result<usize> {
            merged
                .iter()
                .position(|&q| q == p)
                .ok_or_else(|| Error::Contract(format!("{p} is not a corner of the merged 2k-gon")))
        };
        let (i, j) = (pos(ins.0)?, pos(ins.1)?);
        let span = (j + m - i) % m;
        contract!(
            span == self.k && ins != rem,
            "({},{}) does not split the 2k-gon into two {}-gons",
            ins.0,
            ins.1,
            self.k + 1
        );
        let mut diagonals: Vec<Diagonal> = self
            .diagonals
            .iter()
            .copied()
            .filter(|&d| d != rem)
            .collect();
        diagonals.push(ins);
        Dissection::new(self.n_points, self.k, diagonals)
    }

    /// Corners of the 2k-gon obtained by removing `d`, counterclockwise.
    fn merged_polygon(&self, d: Diagonal) -> Result<Vec<usize>> {
        let fs = self.faces_at(d);
        contract!(fs.len() == 2, "diagonal {:?} does not bound two faces", d);
        let mut corners: BTreeSet<usize> = BTreeSet::new();
        for f in &fs {
            corners.extend(f.iter().copied());
        }
        Ok(corners.into_iter().collect())
    }

    /// All legal flips together with their results.
    pub fn flips(&self) -> Vec<(DissectionFlip, Dissection)> {
        let mut out = Vec::new();
        for &rem in &self.diagonals {
            let merged = self.merged_polygon(rem).expect("valid dissection");
            let m = merged.len();
            debug_assert_eq!(m, 2 * self.k);
            for i in 0..self.k {
                let ins = norm((merged[i], merged[i + self.k]));
                if ins == rem {
                    continue;
                }
                let flip = DissectionFlip {
                    remove: rem,
                    insert: ins,
                };
                let next = self.apply_flip(&flip).expect("re-split is legal");
                out.push((flip, next));
            }
        }
        out
    }

    // ------------------------------------------------------------------
    // Duality with k-ary trees
    // ------------------------------------------------------------------

    /// Dual k-ary tree, rooted through the outer edge (N,1).
    pub fn to_tree(&self) -> KAryTree {
        let (shape, _) = self.dual_shape_faces();
        KAryTree::from_shape(&shape, self.k)
    }

    /// Dual shape plus, per vertex in canonical label order, the corners of
    /// its face (ccw starting at the parent edge).
    pub fn dual_shape_faces(&self) -> (Shape, Vec<Vec<usize>>) {
        let faces = self.faces();
        let mut edge_face = std::collections::HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            let m = f.len();
            for i in 0..m {
                let e = norm((f[i], f[(i + 1) % m]));
                edge_face.entry(e).or_insert_with(Vec::new).push(fi);
            }
        }
        let root_edge = norm((self.n_points, 1));
        let root_face = edge_face[&root_edge][0];

        struct Ctx<'a> {
            faces: &'a [Vec<usize>],
            edge_face: &'a std::collections::HashMap<Diagonal, Vec<usize>>,
            k: usize,
            n_points: usize,
            ordered: Vec<Vec<usize>>,
        }
        /// Face `fi` seen through parent edge (u,v); emits faces into
        /// `ordered` in canonical label order (first subtree, self, rest).
        fn build(ctx: &mut Ctx, fi: usize, u: usize, v: usize) -> Shape {
            let f = &ctx.faces[fi];
            let m = f.len();
            let start = f.iter().position(|&p| p == u).expect("parent corner");
            debug_assert_eq!(f[(start + 1) % m], v);
            let corners: Vec<usize> = (0..m).map(|i| f[(start + i) % m]).collect();
            let k = ctx.k;
            let mut children = vec![Shape::Empty; k];
            for slot in 1..=k {
                // child edge behind 1-based slot i is edge k-i of the ccw
                // edge list following v
                let e = k - slot;
                let (x, y) = (corners[e + 1], corners[(e + 2) % m]);
                let edge = norm((x, y));
                let is_boundary = edge.1 - edge.0 == 1 || (edge.0 == 1 && edge.1 == ctx.n_points);
                let child = if is_boundary {
                    Shape::Empty
                } else {
                    let across = ctx.edge_face[&edge]
                        .iter()
                        .copied()
                        .find(|&g| g != fi)
                        .expect("diagonal bounds two faces");
                    // the child sees the shared edge reversed
                    build(ctx, across, y, x)
                };
                if slot == 1 {
                    ctx.ordered.push(corners.clone());
                }
                children[slot - 1] = child;
            }
            Shape::Node(children)
        }
        let mut ctx = Ctx {
            faces: &faces,
            edge_face: &edge_face,
            k: self.k,
            n_points: self.n_points,
            ordered: Vec::new(),
        };
        let shape = build(&mut ctx, root_face, self.n_points, 1);
        (shape, ctx.ordered)
    }

    /// Dissection dual to a tree.
    pub fn from_tree(tree: &KAryTree) -> Result<Dissection> {
        contract!(!tree.is_empty(), "empty tree has no dissection");
        let k = tree.arity();
        let n_points = (k - 1) * tree.len() + 2;
        let shape = tree.shape();
        let mut diagonals = Vec::new();
        // place(shape, u, v): face seen through (u,v), arc v..u ccw
        fn place(
            shape: &Shape,
            u: usize,
            v: usize,
            k: usize,
            n_points: usize,
            diagonals: &mut Vec<Diagonal>,
        ) {
            let children = match shape {
                Shape::Empty => return,
                Shape::Node(ch) => ch,
            };
            // corners w_0 = v, w_1, ..., w_{k-1}, then u; edge e_{j} =
            // (w_{j-1}, w_j) carries the subtree in slot k+1-j
            let mut w = v;
            for j in 1..=k {
                let slot = k - j; // 0-based slot of subtree behind e_j
                let sub = &children[slot];
                let next_w = if j == k {
                    u
                } else {
                    w + (k - 1) * sub.size() + 1
                };
                let lo = w.min(next_w);
                let hi = w.max(next_w);
                let is_boundary = hi - lo == 1 || (lo == 1 && hi == n_points);
                if !is_boundary {
                    diagonals.push((lo, hi));
                }
                place(sub, next_w, w, k, n_points, diagonals);
                w = next_w;
            }
        }
        place(&shape, n_points, 1, k, n_points, &mut diagonals);
        Dissection::new(n_points, k, diagonals)
    }

    // ------------------------------------------------------------------
    // Text and SVG formats
    // ------------------------------------------------------------------

    /// `N=8; 1-3, 3-5, 5-7` (diagonals sorted).
    pub fn to_text(&self) -> String {
        let mut s = format!("N={};", self.n_points);
        for (i, d) in self.diagonals.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, " {}-{}", d.0, d.1);
        }
        s
    }

    pub fn from_text(text: &str, k: usize) -> Result<Dissection> {
        let text = text.trim();
        let rest = text
            .strip_prefix("N=")
            .ok_or_else(|| Error::Parse("expected leading N=<points>".into()))?;
        let (n_str, diag_str) = match rest.split_once(';') {
            Some((a, b)) => (a, b),
            None => (rest, ""),
        };
        let n_points: usize = n_str
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad point count: {e}")))?;
        let mut diagonals = Vec::new();
        for part in diag_str.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (a, b) = part
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("bad diagonal '{part}'")))?;
            let a: usize = a
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad point '{a}': {e}")))?;
            let b: usize = b
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad point '{b}': {e}")))?;
            diagonals.push((a, b));
        }
        Dissection::new(n_points, k, diagonals)
    }

    /// Standalone SVG: unit circle, labeled points, chords. `colors[i]` (if
    /// given) paints point i+1.
    pub fn to_svg(&self, colors: Option<&[&str]>) -> String {
        let n = self.n_points as f64;
        let size = 420.0;
        let c = size / 2.0;
        let r = c - 30.0;
        let pt = |p: usize| {
            let ang = std::f64::consts::PI / 2.0 + 2.0 * std::f64::consts::PI * (p as f64 - 1.0) / n;
            (c + r * ang.cos(), c - r * ang.sin())
        };
        let mut s = String::new();
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
        );
        let _ = writeln!(
            s,
            "  <circle cx=\"{c}\" cy=\"{c}\" r=\"{r}\" fill=\"none\" stroke=\"#bbb\"/>"
        );
        for &(a, b) in &self.diagonals {
            let (x1, y1) = pt(a);
            let (x2, y2) = pt(b);
            let _ = writeln!(
                s,
                "  <line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"#333\" stroke-width=\"1.5\"/>"
            );
        }
        for p in 1..=self.n_points {
            let (x, y) = pt(p);
            let fill = colors
                .and_then(|cs| cs.get(p - 1))
                .copied()
                .unwrap_or("#444");
            let _ = writeln!(s, "  <circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"6\" fill=\"{fill}\"/>");
            let lx = c + (r + 16.0) * (x - c) / r;
            let ly = c + (r + 16.0) * (y - c) / r;
            let _ = writeln!(
                s,
                "  <text x=\"{lx:.1}\" y=\"{ly:.1}\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"middle\">{p}</text>"
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
