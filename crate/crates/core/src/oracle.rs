//! Brute-force ground truth at desk scale: object enumeration, flip-graph
//! construction, Hamiltonicity and connectivity decisions, spanning trees of
//! the tuple graphs G(a,d), and exact counting.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::dissection::{faces_of, Diagonal, Dissection};
use crate::error::{contract, Result};
use crate::kary::KAryTree;

// ----------------------------------------------------------------------
// Rotation adjacency (structural oracle predicate)
// ----------------------------------------------------------------------

/// True when the two trees differ in exactly one rotation, i.e. in subtrees
/// R^i and R^j sharing the same T_1,...,T_{2k-1}. Labels are ignored.
pub fn rotation_adjacent(a: &KAryTree, b: &KAryTree) -> bool {
    if a.arity() != b.arity() || a.len() != b.len() || a.len() == 0 {
        return false;
    }
    let (ra, rb) = (a.root().unwrap(), b.root().unwrap());
    adjacent_at(a, ra, b, rb)
}

fn subtree_eq(a: &KAryTree, va: Option<u32>, b: &KAryTree, vb: Option<u32>) -> bool {
    match (va, vb) {
        (None, None) => true,
        (Some(x), Some(y)) => (1..=a.arity()).all(|s| subtree_eq(a, a.child(x, s), b, b.child(y, s))),
        _ => false,
    }
}

fn adjacent_at(a: &KAryTree, va: u32, b: &KAryTree, vb: u32) -> bool {
    if rotation_site(a, va, b, vb) {
        return true;
    }
    // otherwise the difference must be confined to a single child pair
    let k = a.arity();
    let mut diff = None;
    for s in 1..=k {
        let (ca, cb) = (a.child(va, s), b.child(vb, s));
        if !subtree_eq(a, ca, b, cb) {
            if diff.is_some() {
                return false;
            }
            match (ca, cb) {
                (Some(x), Some(y)) => diff = Some((x, y)),
                _ => return false,
            }
        }
    }
    match diff {
        Some((x, y)) => adjacent_at(a, x, b, y),
        None => false,
    }
}

/// Do the subtrees rooted here decompose as R^i and R^j (i != j) over a
/// common tuple T_1..T_{2k-1}?
fn rotation_site(a: &KAryTree, va: u32, b: &KAryTree, vb: u32) -> bool {
    let k = a.arity();
    let extract = |t: &KAryTree, v: u32, i: usize| -> Option<Vec<Option<u32>>> {
        let g = t.child(v, i)?;
        let mut tuple = Vec::with_capacity(2 * k - 1);
        for s in 1..i {
            tuple.push(t.child(v, s));
        }
        for s in 1..=k {
            tuple.push(t.child(g, s));
        }
        for s in i + 1..=k {
            tuple.push(t.child(v, s));
        }
        Some(tuple)
    };
    for i in 1..=k {
        let ta = match extract(a, va, i) {
            Some(t) => t,
            None => continue,
        };
        for j in 1..=k {
            if i == j {
                continue;
            }
            if let Some(tb) = extract(b, vb, j) {
                if ta
                    .iter()
                    .zip(tb.iter())
                    .all(|(&x, &y)| subtree_eq(a, x, b, y))
                {
                    return true;
                }
            }
        }
    }
    false
}

// ----------------------------------------------------------------------
// Enumeration
// ----------------------------------------------------------------------

/// All triangulations of the N-gon.
pub fn enumerate_triangulations(n_points: usize) -> Vec<Dissection> {
    enumerate_dissections(n_points, 2)
}

/// All dissections of the N-gon into (k+1)-gons, canonically sorted.
pub fn enumerate_dissections(n_points: usize, k: usize) -> Vec<Dissection> {
    assert!(k >= 2 && n_points >= 3);
    assert_eq!((n_points - 2) % (k - 1), 0, "incompatible N and k");
    // sub-polygon on consecutive points lo..=hi closed by the edge (lo,hi)
    fn rec(lo: usize, hi: usize, k: usize, out: &mut Vec<Vec<Diagonal>>) {
        if hi - lo < 2 {
            out.push(Vec::new());
            return;
        }
        // the face containing edge (lo,hi): choose its k-1 remaining corners
        let mut corners = Vec::with_capacity(k - 1);
        choose_corners(lo, hi, k - 1, &mut corners, out);
    }
    fn choose_corners(
        lo: usize,
        hi: usize,
        need: usize,
        corners: &mut Vec<usize>,
        out: &mut Vec<Vec<Diagonal>>,
    ) {
        if need == 0 {
            // face corners: lo, corners..., hi; recurse between them
            let mut all = vec![lo];
            all.extend(corners.iter().copied());
            all.push(hi);
            let k = all.len() - 1;
            let mut sub_results: Vec<Vec<Vec<Diagonal>>> = Vec::with_capacity(k);
            for w in all.windows(2) {
                let mut sub = Vec::new();
                rec(w[0], w[1], k, &mut sub);
                sub_results.push(sub);
            }
            let mut acc: Vec<Vec<Diagonal>> = vec![Vec::new()];
            for (idx, w) in all.windows(2).enumerate() {
                let mut next = Vec::new();
                let span_edge = if w[1] - w[0] >= 2 { Some((w[0], w[1])) } else { None };
                for base in &acc {
                    for sub in &sub_results[idx] {
                        let mut v = base.clone();
                        if let Some(e) = span_edge {
                            v.push(e);
                        }
                        v.extend(sub.iter().copied());
                        next.push(v);
                    }
                }
                acc = next;
            }
            out.extend(acc);
            return;
        }
        let start = corners.last().copied().unwrap_or(lo) + 1;
        for c in start..hi {
            corners.push(c);
            choose_corners(lo, hi, need - 1, corners, out);
            corners.pop();
        }
    }
    let mut raw = Vec::new();
    rec(1, n_points, k, &mut raw);
    let mut result = Vec::new();
    for mut diags in raw {
        diags.sort();
        if let Ok(d) = Dissection::new(n_points, k, diags) {
            result.push(d);
        }
    }
    result.sort();
    result.dedup();
    result
}

// ----------------------------------------------------------------------
// Flip graph
// ----------------------------------------------------------------------

/// Adjacency structure over canonically encoded objects.
#[derive(Debug, Clone)]
pub struct FlipGraph {
    pub nodes: Vec<String>,
    pub adj: Vec<Vec<usize>>,
}

impl FlipGraph {
    /// Builds the graph induced on `objects` by a neighbor generator.
    /// Neighbors outside the object set are dropped, so induced subgraphs
    /// come out naturally. Duplicate objects are rejected.
    pub fn build<F>(mut objects: Vec<String>, mut neighbors: F) -> Result<FlipGraph>
    where
        F: FnMut(&str) -> Vec<String>,
    {
        objects.sort();
        let before = objects.len();
        objects.dedup();
        contract!(before == objects.len(), "duplicate encodings in node set");
        let index: HashMap<&str, usize> = objects
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut adj = vec![Vec::new(); objects.len()];
        for (i, obj) in objects.iter().enumerate() {
            for nb in neighbors(obj) {
                if let Some(&j) = index.get(nb.as_str()) {
                    if i != j {
                        adj[i].push(j);
                    }
                }
            }
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        // symmetry check
        for (i, l) in adj.iter().enumerate() {
            for &j in l {
                contract!(adj[j].contains(&i), "asymmetric adjacency");
            }
        }
        Ok(FlipGraph {
            nodes: objects,
            adj,
        })
    }

    /// Builds from an explicit symmetric predicate (quadratic; for
    /// cross-checks on small sets).
    pub fn build_with_predicate<F>(mut objects: Vec<String>, adjacent: F) -> Result<FlipGraph>
    where
        F: Fn(&str, &str) -> bool,
    {
        objects.sort();
        let before = objects.len();
        objects.dedup();
        contract!(before == objects.len(), "duplicate encodings in node set");
        let mut adj = vec![Vec::new(); objects.len()];
        for i in 0..objects.len() {
            for j in i + 1..objects.len() {
                if adjacent(&objects[i], &objects[j]) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        Ok(FlipGraph {
            nodes: objects,
            adj,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree_profile(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        self.bfs_reach(0) == self.len()
    }

    fn bfs_reach(&self, start: usize) -> usize {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut count = 0;
        while let Some(v) = queue.pop_front() {
            count += 1;
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        count
    }

    /// Two-coloring if the graph is bipartite.
    fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color = vec![None; self.len()];
        for s in 0..self.len() {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].unwrap();
                for &w in &self.adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cv);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    /// DOT export with stable node ordering.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{node}\"];");
        }
        for (i, l) in self.adj.iter().enumerate() {
            for &j in l {
                if i < j {
                    let _ = writeln!(s, "  n{i} -- n{j};");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

// ----------------------------------------------------------------------
// Hamilton path / cycle search
// ----------------------------------------------------------------------

/// Search outcome; `Undecided` only when the node-expansion budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search {
    Found(Vec<usize>),
    None,
    Undecided,
}

impl Search {
    pub fn found(&self) -> bool {
        matches!(self, Search::Found(_))
    }
}

/// Candidate orderings for the branching step; instances differ wildly in
/// which one finds a walk quickly, so searches run a portfolio of both.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Order {
    Canonical,
    MinDegree,
}

struct Searcher<'g> {
    g: &'g FlipGraph,
    visited: Vec<bool>,
    path: Vec<usize>,
    budget: u64,
    expansions: u64,
    /// two-coloring of the underlying graph, -1 for auxiliary vertices
    bipartition: Option<Vec<i8>>,
    /// the walk must end at a neighbor of this vertex (cycle closure)
    close_to: usize,
    /// adjacency bitmap of `close_to`
    end_ok: Vec<bool>,
    order: Order,
    scratch: Scratch,
}

/// Outcome of constraint propagation at a search node.
struct Propagated {
    /// admissible next moves: (degree after propagation, global vertex)
    candidates: Vec<(usize, usize)>,
    /// when the current vertex has a forced edge, the move it dictates
    forced: Option<usize>,
}

/// Reusable buffers for the per-node propagation.
#[derive(Default)]
struct Scratch {
    pos: Vec<u32>,
    unvisited: Vec<usize>,
    ends: Vec<(u32, u32)>,
    start: Vec<u32>,
    slot: Vec<u32>,
    inc_flat: Vec<u32>,
    alive: Vec<bool>,
    forced: Vec<bool>,
    deg: Vec<u32>,
    forced_cnt: Vec<u32>,
    dsu: Vec<u32>,
    queued: Vec<bool>,
    queue: VecDeque<u32>,
    to_force: Vec<u32>,
    shed: Vec<u32>,
    disc: Vec<u32>,
    low: Vec<u32>,
    tout: Vec<u32>,
    state: Vec<u8>,
    stack: Vec<(u32, u32, u32)>,
}

fn dsu_find(dsu: &mut [u32], x: u32) -> u32 {
    let mut r = x;
    while dsu[r as usize] != r {
        r = dsu[r as usize];
    }
    let mut c = x;
    while dsu[c as usize] != r {
        let next = dsu[c as usize];
        dsu[c as usize] = r;
        c = next;
    }
    r
}

impl<'g> Searcher<'g> {
    fn new(g: &'g FlipGraph, budget: u64, close_to: usize, order: Order) -> Searcher<'g> {
        let bipartition = g
            .bipartition()
            .map(|classes| classes.into_iter().map(|c| c as i8).collect());
        let mut end_ok = vec![false; g.len()];
        for &w in &g.adj[close_to] {
            end_ok[w] = true;
        }
        Searcher {
            g,
            visited: vec![false; g.len()],
            path: Vec::with_capacity(g.len()),
            budget,
            expansions: 0,
            bipartition,
            close_to,
            end_ok,
            order,
            scratch: Scratch::default(),
        }
    }

    /// Degree-two forcing with edge deletion, run to a fixed point over the
    /// remaining problem: the unvisited vertices plus the current vertex
    /// and a virtual terminal encoding the end rule. Every unvisited vertex
    /// must be passed through (two incident walk edges), the endpoints take
    /// exactly one. Afterwards the surviving graph is checked structurally:
    /// everything reachable, neither endpoint a cut vertex, and any inner
    /// cut vertex splitting into exactly two sides with the terminal
    /// beyond it. Returns `None` on contradiction.
    fn propagate(&mut self, current: usize) -> Option<Propagated> {
        let s = &mut self.scratch;
        let m = s.unvisited.len();
        let cur = m as u32;
        let ter = m as u32 + 1;
        let total = m + 2;
        s.pos.clear();
        s.pos.resize(self.g.len(), u32::MAX);
        for (i, &v) in s.unvisited.iter().enumerate() {
            s.pos[v] = i as u32;
        }
        s.ends.clear();
        for (i, &v) in s.unvisited.iter().enumerate() {
            let i = i as u32;
            for &w in &self.g.adj[v] {
                if w == current {
                    s.ends.push((i, cur));
                } else {
                    let j = s.pos[w];
                    if j != u32::MAX && i < j {
                        s.ends.push((i, j));
                    }
                }
            }
            if self.end_ok[v] {
                s.ends.push((i, ter));
            }
        }
        let e_total = s.ends.len();
        s.start.clear();
        s.start.resize(total + 1, 0);
        for &(a, b) in &s.ends {
            s.start[a as usize + 1] += 1;
            s.start[b as usize + 1] += 1;
        }
        for i in 0..total {
            s.start[i + 1] += s.start[i];
        }
        s.slot.clear();
        s.slot.extend_from_slice(&s.start);
        s.inc_flat.clear();
        s.inc_flat.resize(2 * e_total, 0);
        for (id, &(a, b)) in s.ends.iter().enumerate() {
            s.inc_flat[s.slot[a as usize] as usize] = id as u32;
            s.slot[a as usize] += 1;
            s.inc_flat[s.slot[b as usize] as usize] = id as u32;
            s.slot[b as usize] += 1;
        }
        macro_rules! inc {
            ($x:expr) => {
                s.inc_flat[s.start[$x as usize] as usize..s.start[$x as usize + 1] as usize]
            };
        }
        s.alive.clear();
        s.alive.resize(e_total, true);
        s.forced.clear();
        s.forced.resize(e_total, false);
        s.deg.clear();
        for x in 0..total {
            s.deg.push(s.start[x + 1] - s.start[x]);
        }
        s.forced_cnt.clear();
        s.forced_cnt.resize(total, 0);
        s.dsu.clear();
        s.dsu.extend(0..total as u32);
        let mut comp_size = vec![1u32; total];
        let cap = |v: u32| if (v as usize) < m { 2u32 } else { 1 };
        let mut forced_total = 0usize;
        s.queue.clear();
        s.queue.extend(0..total as u32);
        s.queued.clear();
        s.queued.resize(total, true);
        loop {
        while let Some(v) = s.queue.pop_front() {
            s.queued[v as usize] = false;
            if s.deg[v as usize] < cap(v) {
                return None;
            }
            if s.deg[v as usize] > cap(v) {
                continue;
            }
            s.to_force.clear();
            for &e in &inc![v] {
                if s.alive[e as usize] && !s.forced[e as usize] {
                    s.to_force.push(e);
                }
            }
            for ti in 0..s.to_force.len() {
                let e = s.to_force[ti];
                if !s.alive[e as usize] || s.forced[e as usize] {
                    continue;
                }
                s.forced[e as usize] = true;
                forced_total += 1;
                let (a, b) = s.ends[e as usize];
                let (ra, rb) = (dsu_find(&mut s.dsu, a), dsu_find(&mut s.dsu, b));
                if ra == rb {
                    return None; // closes a premature cycle
                }
                comp_size[rb as usize] += comp_size[ra as usize];
                s.dsu[ra as usize] = rb;
                for x in [a, b] {
                    s.forced_cnt[x as usize] += 1;
                    if s.forced_cnt[x as usize] > cap(x) {
                        return None;
                    }
                    // saturated by forcing: shed every other edge
                    if s.forced_cnt[x as usize] == cap(x) {
                        s.shed.clear();
                        for &f in &inc![x] {
                            if s.alive[f as usize] && !s.forced[f as usize] {
                                s.shed.push(f);
                            }
                        }
                        for si in 0..s.shed.len() {
                            let f = s.shed[si];
                            s.alive[f as usize] = false;
                            let (p, q) = s.ends[f as usize];
                            s.deg[p as usize] -= 1;
                            s.deg[q as usize] -= 1;
                            for y in [p, q] {
                                if !s.queued[y as usize] {
                                    s.queued[y as usize] = true;
                                    s.queue.push_back(y);
                                }
                            }
                        }
                    }
                    if !s.queued[x as usize] {
                        s.queued[x as usize] = true;
                        s.queue.push_back(x);
                    }
                }
            }
        }
        // an alive edge closing a forced chain, or joining the two endpoint
        // chains without spanning everything, can never be used: shed it
        // and keep propagating
        let rcur = dsu_find(&mut s.dsu, cur);
        let rter = dsu_find(&mut s.dsu, ter);
        let mut shed_any = false;
        for e in 0..e_total {
            if !s.alive[e] || s.forced[e] {
                continue;
            }
            let (a, b) = s.ends[e];
            let (ra, rb) = (dsu_find(&mut s.dsu, a), dsu_find(&mut s.dsu, b));
            let closes_cycle = ra == rb;
            let premature_join = ((ra == rcur && rb == rter) || (ra == rter && rb == rcur))
                && (comp_size[rcur as usize] + comp_size[rter as usize]) as usize != total;
            if closes_cycle || premature_join {
                s.alive[e] = false;
                s.deg[a as usize] -= 1;
                s.deg[b as usize] -= 1;
                for y in [a, b] {
                    if !s.queued[y as usize] {
                        s.queued[y as usize] = true;
                        s.queue.push_back(y);
                    }
                }
                shed_any = true;
            }
        }
        if !shed_any {
            break;
        }
        } // outer stabilization loop
        // a forced chain joining current and terminal must span everything
        if dsu_find(&mut s.dsu, cur) == dsu_find(&mut s.dsu, ter) && forced_total < m + 1 {
            return None;
        }
        // structural checks on the surviving graph, rooted at current
        {
            s.disc.clear();
            s.disc.resize(total, 0);
            s.low.clear();
            s.low.resize(total, 0);
            s.tout.clear();
            s.tout.resize(total, 0);
            s.state.clear();
            s.state.resize(total, 0);
            let mut timer = 1u32;
            let mut reached = 0usize;
            let mut root_children = 0usize;
            s.stack.clear();
            s.stack.push((cur, u32::MAX, s.start[cur as usize]));
            while !s.stack.is_empty() {
                let top = s.stack.len() - 1;
                let (x, parent) = (s.stack[top].0, s.stack[top].1);
                if s.state[x as usize] == 0 {
                    s.state[x as usize] = 1;
                    s.disc[x as usize] = timer;
                    s.low[x as usize] = timer;
                    timer += 1;
                    reached += 1;
                }
                let mut pushed = false;
                while s.stack[top].2 < s.start[x as usize + 1] {
                    let e = s.inc_flat[s.stack[top].2 as usize];
                    s.stack[top].2 += 1;
                    if !s.alive[e as usize] {
                        continue;
                    }
                    let (a, b) = s.ends[e as usize];
                    let y = if a == x { b } else { a };
                    if s.state[y as usize] == 0 {
                        let sy = s.start[y as usize];
                        s.stack.push((y, x, sy));
                        pushed = true;
                        break;
                    } else if y != parent {
                        s.low[x as usize] = s.low[x as usize].min(s.disc[y as usize]);
                    }
                }
                if pushed {
                    continue;
                }
                s.state[x as usize] = 2;
                s.tout[x as usize] = timer;
                s.stack.pop();
                if let Some(&(p, _, _)) = s.stack.last() {
                    s.low[p as usize] = s.low[p as usize].min(s.low[x as usize]);
                    if s.low[x as usize] >= s.disc[p as usize] {
                        if p == cur {
                            root_children += 1;
                            if root_children >= 2 {
                                return None;
                            }
                        } else if p == ter {
                            return None;
                        } else {
                            // the terminal must sit beyond the cut
                            let inside = s.disc[x as usize] <= s.disc[ter as usize]
                                && s.disc[ter as usize] < s.tout[x as usize];
                            if !inside {
                                return None;
                            }
                        }
                    }
                }
            }
            if reached != total {
                return None;
            }
        }
        let mut candidates = Vec::new();
        let mut forced_move = None;
        for &e in &inc![cur] {
            if !s.alive[e as usize] {
                continue;
            }
            let (a, b) = s.ends[e as usize];
            let i = if a == cur { b } else { a };
            let v = s.unvisited[i as usize];
            if s.forced[e as usize] {
                forced_move = Some(v);
            }
            candidates.push((s.deg[i as usize] as usize, v));
        }
        match self.order {
            Order::Canonical => candidates.sort_unstable_by_key(|&(_, w)| w),
            Order::MinDegree => candidates.sort_unstable(),
        }
        Some(Propagated {
            candidates,
            forced: forced_move,
        })
    }

    /// Class-balance cutoff for bipartite graphs. Only applies once every
    /// remaining vertex carries a class (the auxiliary hub does not).
    fn prune(&self, current: usize) -> bool {
        if let Some(classes) = &self.bipartition {
            if classes[current] >= 0 {
                let mut same = 0i64;
                let mut opposite = 0i64;
                for &v in &self.scratch.unvisited {
                    if classes[v] < 0 {
                        return false;
                    }
                    if classes[v] == classes[current] {
                        same += 1;
                    } else {
                        opposite += 1;
                    }
                }
                if opposite < same || opposite > same + 1 {
                    return true;
                }
            }
        }
        false
    }

    fn dfs(&mut self, v: usize) -> Search {
        if self.path.len() == self.g.len() {
            if self.end_ok[v] {
                return Search::Found(self.path.clone());
            }
            return Search::None;
        }
        self.expansions += 1;
        if self.expansions > self.budget {
            return Search::Undecided;
        }
        self.scratch.unvisited.clear();
        for u in 0..self.g.len() {
            if !self.visited[u] {
                self.scratch.unvisited.push(u);
            }
        }
        if self.prune(v) {
            return Search::None;
        }
        let analysis = match self.propagate(v) {
            Some(a) => a,
            None => return Search::None,
        };
        let moves: Vec<usize> = match analysis.forced {
            Some(w) => vec![w],
            None => analysis.candidates.iter().map(|&(_, w)| w).collect(),
        };
        let mut undecided = false;
        for w in moves {
            self.visited[w] = true;
            self.path.push(w);
            match self.dfs(w) {
                Search::Found(p) => return Search::Found(p),
                Search::Undecided => undecided = true,
                Search::None => {}
            }
            self.path.pop();
            self.visited[w] = false;
        }
        if undecided {
            Search::Undecided
        } else {
            Search::None
        }
    }
}

/// Hamilton path search with optional fixed endpoints (node indices). Runs
/// as a cycle search through an auxiliary vertex joined to the admissible
/// endpoints, so one traversal covers every start.
pub fn hamilton_path(g: &FlipGraph, endpoints: Option<(usize, usize)>, budget: u64) -> Search {
    let n = g.len();
    if n == 0 {
        return Search::None;
    }
    if n == 1 {
        return Search::Found(vec![0]);
    }
    let degree_one = g.adj.iter().filter(|l| l.len() <= 1).count();
    if g.adj.iter().any(|l| l.is_empty()) || degree_one > 2 || !g.is_connected() {
        return Search::None;
    }
    if let Some((s, e)) = endpoints {
        if s == e || s >= n || e >= n {
            return Search::None;
        }
    }
    let base_classes = g.bipartition();
    if let Some(classes) = &base_classes {
        let a = classes.iter().filter(|&&c| c).count() as i64;
        let b = n as i64 - a;
        if (a - b).abs() > 1 {
            return Search::None;
        }
    }
    // a Hamilton cycle found cheaply settles the free-endpoint case
    if endpoints.is_none() {
        if let Search::Found(cycle) = hamilton_cycle(g, (budget / 8).max(1 << 16)) {
            return Search::Found(cycle);
        }
    }
    // auxiliary vertex n adjacent to the admissible endpoints
    let mut aug = g.clone();
    let hub: Vec<usize> = match endpoints {
        Some((s, e)) => vec![s, e],
        None => (0..n).collect(),
    };
    aug.nodes.push(String::new());
    aug.adj.push(hub.clone());
    for &v in &hub {
        aug.adj[v].push(n);
    }
    let aug_classes = base_classes.map(|classes| {
        let mut c: Vec<i8> = classes.into_iter().map(|x| x as i8).collect();
        c.push(-1);
        c
    });
    // root the cycle search at a minimum-degree original vertex: the hub
    // has huge degree and would explode the root branching
    let root = (0..n).min_by_key(|&v| (aug.adj[v].len(), v)).unwrap();
    let result = portfolio(budget, |order, slice| {
        let mut searcher = Searcher::new(&aug, slice, root, order);
        searcher.bipartition = aug_classes.clone();
        searcher.visited[root] = true;
        searcher.path.push(root);
        searcher.dfs(root)
    });
    match result {
        Search::Found(cycle) => {
            // rotate the hub to the front and drop it
            let at = cycle.iter().position(|&v| v == n).unwrap();
            let mut walk: Vec<usize> = cycle[at + 1..]
                .iter()
                .chain(cycle[..at].iter())
                .copied()
                .collect();
            if let Some((s, _)) = endpoints {
                if walk[0] != s {
                    walk.reverse();
                }
            }
            debug_assert!(validate_walk(g, &walk, false));
            Search::Found(walk)
        }
        other => other,
    }
}

/// Runs budget-doubling rounds alternating the candidate orderings until
/// one run finds a walk, one run exhausts (a definitive no), or the total
/// budget is spent.
fn portfolio<F>(budget: u64, mut run: F) -> Search
where
    F: FnMut(Order, u64) -> Search,
{
    let mut slice: u64 = 1 << 15;
    let mut spent: u64 = 0;
    loop {
        for order in [Order::Canonical, Order::MinDegree] {
            let run_budget = slice.min(budget - spent);
            match run(order, run_budget) {
                Search::Found(w) => return Search::Found(w),
                Search::None => return Search::None,
                Search::Undecided => {}
            }
            spent += run_budget;
            if spent >= budget {
                return Search::Undecided;
            }
        }
        slice = slice.saturating_mul(16);
    }
}

/// Hamilton cycle search.
pub fn hamilton_cycle(g: &FlipGraph, budget: u64) -> Search {
    let n = g.len();
    if n < 3 {
        return Search::None;
    }
    if g.adj.iter().any(|l| l.len() <= 1) || !g.is_connected() {
        return Search::None;
    }
    if let Some(classes) = g.bipartition() {
        let a = classes.iter().filter(|&&c| c).count();
        if 2 * a != n {
            return Search::None;
        }
    }
    let root = (0..n).min_by_key(|&v| (g.adj[v].len(), v)).unwrap();
    portfolio(budget, |order, slice| {
        let mut searcher = Searcher::new(g, slice, root, order);
        searcher.visited[root] = true;
        searcher.path.push(root);
        searcher.dfs(root)
    })
}

/// Validates that a claimed walk is a Hamilton path (or cycle) of `g`.
pub fn validate_walk(g: &FlipGraph, walk: &[usize], cycle: bool) -> bool {
    if walk.len() != g.len() {
        return false;
    }
    let distinct: HashSet<_> = walk.iter().collect();
    if distinct.len() != walk.len() {
        return false;
    }
    for w in walk.windows(2) {
        if !g.adj[w[0]].contains(&w[1]) {
            return false;
        }
    }
    if cycle && g.len() > 1 && !g.adj[*walk.last().unwrap()].contains(&walk[0]) {
        return false;
    }
    true
}

// ----------------------------------------------------------------------
// G(a,d) and its low-degree spanning tree
// ----------------------------------------------------------------------

/// Graph on non-decreasing a-tuples over {1..d}; tuples adjacent when they
/// differ in a single entry by one.
#[derive(Debug, Clone)]
pub struct GadGraph {
    pub a: usize,
    pub d: usize,
    pub vertices: Vec<Vec<usize>>,
    pub adj: Vec<Vec<usize>>,
}

impl GadGraph {
    pub fn new(a: usize, d: usize) -> GadGraph {
        assert!(a >= 1 && d >= 1);
        let mut vertices = Vec::new();
        let mut cur = vec![1; a];
        loop {
            vertices.push(cur.clone());
            // next non-decreasing tuple
            let mut i = a;
            loop {
                if i == 0 {
                    break;
                }
                if cur[i - 1] < d {
                    cur[i - 1] += 1;
                    for j in i..a {
                        cur[j] = cur[i - 1];
                    }
                    break;
                }
                i -= 1;
            }
            if i == 0 {
                break;
            }
        }
        let index: HashMap<Vec<usize>, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for (i, v) in vertices.iter().enumerate() {
            for pos in 0..a {
                for delta in [-1i64, 1] {
                    let nv = v[pos] as i64 + delta;
                    if nv < 1 || nv > d as i64 {
                        continue;
                    }
                    let mut w = v.clone();
                    w[pos] = nv as usize;
                    if w.windows(2).all(|p| p[0] <= p[1]) {
                        if let Some(&j) = index.get(&w) {
                            if !adj[i].contains(&j) {
                                adj[i].push(j);
                            }
                        }
                    }
                }
            }
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        GadGraph {
            a,
            d,
            vertices,
            adj,
        }
    }
}

/// Spanning tree of G(a,d) with maximum degree at most 3; the extremal
/// tuples 1^a and d^a have tree-degree at most 1. Returned as edges between
/// tuples.
pub fn gad_spanning_tree(a: usize, d: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    assert!(a >= 1 && d >= 1);
    if a == 1 {
        return (1..d).map(|i| (vec![i], vec![i + 1])).collect();
    }
    let mut edges = Vec::new();
    for i in 1..=d {
        // H_i: tuples starting with i, remainder a G(a-1, d-i+1) over values i..=d
        let sub = gad_spanning_tree(a - 1, d - i + 1);
        for (u, v) in sub {
            let lift = |t: Vec<usize>| -> Vec<usize> {
                let mut out = vec![i];
                out.extend(t.into_iter().map(|x| x + i - 1));
                out
            };
            edges.push((lift(u), lift(v)));
        }
        if i < d {
            let mut u = vec![i];
            u.extend(std::iter::repeat(d).take(a - 1));
            let mut v = vec![i + 1];
            v.extend(std::iter::repeat(d).take(a - 1));
            edges.push((u, v));
        }
    }
    edges
}

// ----------------------------------------------------------------------
// Exact counting
// ----------------------------------------------------------------------

fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..r.min(n - r) {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of k-ary trees with n vertices: C(kn, n) / ((k-1)n + 1).
pub fn count_kary(n: usize, k: usize) -> BigUint {
    assert!(k >= 2);
    binomial(k * n, n) / BigUint::from((k - 1) * n + 1)
}

/// Number of pairs of ternary trees with n vertices in total:
/// C(3n+1, n) / (n+1).
pub fn count_ternary_pairs(n: usize) -> BigUint {
    binomial(3 * n + 1, n) / BigUint::from(n + 1)
}

/// Number of colorful triangulations of the N-gon under the alternating
/// red/blue coloring.
pub fn count_colorful(n_points: usize) -> BigUint {
    assert!(n_points >= 3);
    if n_points % 2 == 0 {
        let q = (n_points - 2) / 2;
        BigUint::from(2u32).pow(q as u32) * count_kary(q, 3)
    } else {
        let q = (n_points - 3) / 2;
        BigUint::from(2u32).pow(q as u32) * count_ternary_pairs(q)
    }
}

/// Number of three-colorful triangulations of the N-gon (N divisible by 3):
/// pairs of 4-ary trees with p = (N-3)/3 vertices, C(4p+2, p) / (2p+1).
pub fn count_tricolor(n_points: usize) -> Result<BigUint> {
    contract!(
        n_points >= 3 && n_points % 3 == 0,
        "closed form requires N divisible by 3"
    );
    let p = (n_points - 3) / 3;
    Ok(binomial(4 * p + 2, p) / BigUint::from(2 * p + 1))
}

// ----------------------------------------------------------------------
// Colorful enumeration helpers shared by tables and tests
// ----------------------------------------------------------------------

/// Triangles of a triangulation given by diagonals.
pub fn triangles_of(n_points: usize, diagonals: &[Diagonal]) -> Vec<Vec<usize>> {
    faces_of(n_points, diagonals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kary::{Direction, Rotation};

    #[test]
    fn adjacency_binary_example() {
        let a = KAryTree::decode("(((..)(..))(..))", 2).unwrap();
        let b = KAryTree::decode("((..)((..)(..)))", 2).unwrap();
        assert!(rotation_adjacent(&a, &b));
        assert!(!rotation_adjacent(&a, &a));
        let c = KAryTree::decode("((((..).).).)", 2).unwrap();
        assert!(!rotation_adjacent(&a, &c));
    }

    #[test]
    fn adjacency_matches_rotations() {
        let t = KAryTree::decode("((...)(...)(.(...).))", 3).unwrap();
        for pivot in 1..=t.len() as u32 {
            for steps in 1..3 {
                for dir in [Direction::Up, Direction::Down] {
                    let mut u = t.clone();
                    if u.rotate(Rotation { pivot, dir, steps }).is_ok() {
                        assert!(rotation_adjacent(&t, &u), "pivot {pivot} {dir:?} {steps}");
                    }
                }
            }
        }
    }

    #[test]
    fn triangulation_counts() {
        assert_eq!(enumerate_triangulations(3).len(), 1);
        assert_eq!(enumerate_triangulations(4).len(), 2);
        assert_eq!(enumerate_triangulations(5).len(), 5);
        assert_eq!(enumerate_triangulations(8).len(), 132);
        assert_eq!(enumerate_dissections(8, 3).len(), 12);
        assert_eq!(enumerate_dissections(11, 4).len(), 22);
    }

    #[test]
    fn g5_is_a_five_cycle() {
        let objs: Vec<String> = enumerate_triangulations(5)
            .iter()
            .map(|d| d.to_text())
            .collect();
        let g = FlipGraph::build(objs, |s| {
            let d = Dissection::from_text(s, 2).unwrap();
            d.flips().into_iter().map(|(_, n)| n.to_text()).collect()
        })
        .unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g.degree_profile(), vec![2; 5]);
        assert!(g.is_connected());
        assert!(hamilton_cycle(&g, 1 << 20).found());
    }

    #[test]
    fn complete_graph_for_two_vertex_trees() {
        // G_{2k, k+1} is K_k
        for k in [3usize, 4, 5] {
            let objs: Vec<String> = enumerate_dissections(2 * k, k)
                .iter()
                .map(|d| d.to_text())
                .collect();
            let g = FlipGraph::build(objs, move |s| {
                let d = Dissection::from_text(s, k).unwrap();
                d.flips().into_iter().map(|(_, n)| n.to_text()).collect()
            })
            .unwrap();
            assert_eq!(g.len(), k);
            assert_eq!(g.edge_count(), k * (k - 1) / 2);
        }
    }

    #[test]
    fn gad_structure() {
        let g = GadGraph::new(3, 4);
        assert_eq!(g.vertices.len(), 20); // C(6,3)
        let tree = gad_spanning_tree(3, 4);
        assert_eq!(tree.len(), g.vertices.len() - 1);
        let mut deg: HashMap<&Vec<usize>, usize> = HashMap::new();
        for (u, v) in &tree {
            *deg.entry(u).or_default() += 1;
            *deg.entry(v).or_default() += 1;
            // every tree edge is a graph edge
            let iu = g.vertices.iter().position(|x| x == u).unwrap();
            let iv = g.vertices.iter().position(|x| x == v).unwrap();
            assert!(g.adj[iu].contains(&iv));
        }
        assert!(deg.values().all(|&d| d <= 3));
        assert!(deg[&vec![1, 1, 1]] <= 1);
        assert!(deg[&vec![4, 4, 4]] <= 1);
        // path case
        assert_eq!(gad_spanning_tree(1, 6).len(), 5);
        assert!(gad_spanning_tree(1, 1).is_empty());
    }

    #[test]
    fn connectivity_edge_cases() {
        let empty = FlipGraph::build(Vec::new(), |_| Vec::new()).unwrap();
        assert!(!empty.is_connected());
        let isolated =
            FlipGraph::build(vec!["a".into(), "b".into()], |_| Vec::new()).unwrap();
        assert!(!isolated.is_connected());
        assert_eq!(isolated.degree_profile(), vec![0, 0]);
        let single = FlipGraph::build(vec!["a".into()], |_| Vec::new()).unwrap();
        assert!(single.is_connected());
    }

    #[test]
    fn count_table_spot_checks() {
        assert_eq!(count_kary(3, 2), BigUint::from(5u32));
        assert_eq!(count_kary(7, 4), BigUint::from(53820u32));
        assert_eq!(count_kary(10, 10), BigUint::from(190223180840u64));
        assert_eq!(count_ternary_pairs(3), BigUint::from(30u32));
        assert_eq!(count_colorful(8), BigUint::from(96u32));
        assert_eq!(count_colorful(9), BigUint::from(240u32));
        assert_eq!(count_tricolor(6).unwrap(), BigUint::from(2u32));
        assert_eq!(count_tricolor(9).unwrap(), BigUint::from(9u32));
        assert_eq!(count_tricolor(12).unwrap(), BigUint::from(52u32));
    }
}
