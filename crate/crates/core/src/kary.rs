//! Mutable k-ary trees with persistent vertex labels and the clean
//! rotation calculus that the Gray-code generator is built on.
//!
//! A tree on vertices `1..=n` stores a flat child table with `k` slots per
//! vertex. Labels follow the search-order rule: for `[T_1,...,T_k]` the first
//! subtree carries the smallest labels, then the root, then `T_2`, and so on.
//! Clean rotations preserve this labelling, which is what lets the generator
//! address "the vertex inserted i-th" forever after.

use crate::error::{contract, Error, Result};

pub type Vertex = u32;

const NONE: u32 = 0;

/// A rotation of the pivot vertex, always the larger endpoint of the
/// rotated edge. `steps` is between 1 and k-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rotation {
    pub pivot: Vertex,
    pub dir: Direction,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

impl Rotation {
    pub fn inverse(self) -> Rotation {
        Rotation {
            pivot: self.pivot,
            dir: match self.dir {
                Direction::Up => Direction::Down,
                Direction::Down => Direction::Up,
            },
            steps: self.steps,
        }
    }
}

impl std::fmt::Display for Rotation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d = match self.dir {
            Direction::Up => "up",
            Direction::Down => "down",
        };
        write!(f, "{} {} {}", self.pivot, d, self.steps)
    }
}

/// Path from the root: which child slot to descend into at each level.
/// Slots are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubtreeAddress(pub Vec<usize>);

impl SubtreeAddress {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One vertex of the rightmost branch together with the number of empty
/// slots to the right of its branch child (k-1 at the branch end).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameEntry {
    pub vertex: Vertex,
    pub lambda: usize,
}

/// Decomposition of a tree along its rightmost branch. Entry `i` describes
/// the subtree rooted at the i-th branch vertex; the children sequence
/// obtained by inserting a new largest vertex has `len()` members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChildrenFrame {
    pub entries: Vec<FrameEntry>,
}

impl ChildrenFrame {
    /// Length of the children sequence this frame induces.
    pub fn len(&self) -> usize {
        self.entries.iter().map(|e| e.lambda + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Unlabeled tree shape, used when building trees from external data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Empty,
    Node(Vec<Shape>),
}

impl Shape {
    pub fn size(&self) -> usize {
        match self {
            Shape::Empty => 0,
            Shape::Node(ch) => 1 + ch.iter().map(Shape::size).sum::<usize>(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct KAryTree {
    k: usize,
    n: usize,
    /// `(n+1) * k` slots, row 0 unused; 0 encodes an empty slot.
    children: Vec<u32>,
    parent: Vec<u32>,
    /// 0-based slot of a vertex within its parent.
    pslot: Vec<u32>,
    root: u32,
    writes: u64,
}

impl PartialEq for KAryTree {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.n == other.n && self.same_shape(other)
    }
}
impl Eq for KAryTree {}

impl KAryTree {
    /// The empty tree (n = 0).
    pub fn empty(k: usize) -> KAryTree {
        assert!(k >= 2, "arity must be at least 2");
        KAryTree {
            k,
            n: 0,
            children: vec![NONE; k],
            parent: vec![NONE],
            pslot: vec![0],
            root: NONE,
            writes: 0,
        }
    }

    /// The one-vertex tree `[eps^k]`.
    pub fn single(k: usize) -> KAryTree {
        let mut t = KAryTree::empty(k);
        t.push_vertex();
        t.root = 1;
        t
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn root(&self) -> Option<Vertex> {
        if self.root == NONE {
            None
        } else {
            Some(self.root)
        }
    }

    /// Child in 1-based slot `slot`, if any.
    pub fn child(&self, v: Vertex, slot: usize) -> Option<Vertex> {
        debug_assert!((1..=self.k).contains(&slot));
        let c = self.children[v as usize * self.k + slot - 1];
        if c == NONE {
            None
        } else {
            Some(c)
        }
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        let p = self.parent[v as usize];
        if p == NONE {
            None
        } else {
            Some(p)
        }
    }

    /// 1-based slot of `v` within its parent.
    pub fn parent_slot(&self, v: Vertex) -> Option<usize> {
        self.parent(v).map(|_| self.pslot[v as usize] as usize + 1)
    }

    /// Total number of child-slot writes performed so far.
    pub fn write_count(&self) -> u64 {
        self.writes
    }

    fn push_vertex(&mut self) -> Vertex {
        self.n += 1;
        self.children.extend(std::iter::repeat(NONE).take(self.k));
        self.parent.push(NONE);
        self.pslot.push(0);
        self.n as Vertex
    }

    /// Writes `c` into slot `slot` of `v`, keeping parent pointers in sync.
    /// No-op writes are skipped and not counted.
    fn set_child(&mut self, v: Vertex, slot: usize, c: u32) {
        let idx = v as usize * self.k + slot - 1;
        if self.children[idx] == c {
            return;
        }
        self.children[idx] = c;
        self.writes += 1;
        if c != NONE {
            self.parent[c as usize] = v;
            self.pslot[c as usize] = slot as u32 - 1;
        }
    }

    /// Re-attaches `v` where `old` used to live (parent slot or root).
    fn replace_at(&mut self, old_parent: u32, old_slot: usize, v: Vertex) {
        if old_parent == NONE {
            self.root = v;
            self.parent[v as usize] = NONE;
        } else {
            self.set_child(old_parent, old_slot, v);
        }
    }

    /// Appends vertex n+1 as a childless leaf in slot `slot` of `v`.
    pub(crate) fn insert_leaf(&mut self, v: Vertex, slot: usize) -> Vertex {
        debug_assert!(self.child(v, slot).is_none());
        let m = self.push_vertex();
        self.set_child(v, slot, m);
        m
    }

    /// Appends vertex n+1 in place of `v`, with `v` as its first child.
    pub(crate) fn insert_above(&mut self, v: Vertex) -> Vertex {
        let p = self.parent[v as usize];
        let ps = self.pslot[v as usize] as usize + 1;
        let m = self.push_vertex();
        self.replace_at(p, ps, m);
        self.set_child(m, 1, v);
        m
    }

    // ------------------------------------------------------------------
    // Rotation calculus
    // ------------------------------------------------------------------

    /// Applies a clean rotation after validating it. A down-rotation of a
    /// pivot whose first child is nonempty dives into that child; otherwise
    /// the pivot shifts left among its parent's slots. Up-rotations are the
    /// inverse moves.
    pub fn rotate(&mut self, r: Rotation) -> Result<()> {
        let k = self.k;
        contract!(
            r.pivot >= 1 && (r.pivot as usize) <= self.n,
            "pivot {} out of range",
            r.pivot
        );
        contract!(
            (1..=k - 1).contains(&r.steps),
            "steps {} outside 1..={}",
            r.steps,
            k - 1
        );
        match r.dir {
            Direction::Down => {
                if self.child(r.pivot, 1).is_none() {
                    let t = self
                        .parent_slot(r.pivot)
                        .ok_or_else(|| Error::Contract("down-rotation of a childless root".into()))?;
                    contract!(
                        t >= r.steps + 2,
                        "down-rotation by {} from slot {} lands outside the tree",
                        r.steps,
                        t
                    );
                }
            }
            Direction::Up => {
                let s = self
                    .parent_slot(r.pivot)
                    .ok_or_else(|| Error::Contract("up-rotation of the root".into()))?;
                contract!(s >= 2, "up-rotation of a first child");
                contract!(
                    s + r.steps <= k + 1,
                    "up-rotation by {} from slot {} overshoots",
                    r.steps,
                    s
                );
            }
        }
        self.apply(r);
        Ok(())
    }

    /// Unchecked fast path used by the generator.
    pub(crate) fn apply(&mut self, r: Rotation) {
        let b = r.pivot;
        match r.dir {
            Direction::Down => match self.child(b, 1) {
                Some(a) => self.dive(b, a, r.steps),
                None => self.shift_left(b, r.steps),
            },
            Direction::Up => {
                let s = self.pslot[b as usize] as usize + 1;
                if s + r.steps == self.k + 1 {
                    self.climb(b, r.steps);
                } else {
                    self.shift_right(b, r.steps);
                }
            }
        }
    }

    fn slots(&self, v: Vertex) -> Vec<u32> {
        let base = v as usize * self.k;
        self.children[base..base + self.k].to_vec()
    }

    /// Down-rotation with the pivot above: the pivot descends into slot
    /// `k+1-steps` of its first child `a`, which takes the pivot's place.
    fn dive(&mut self, b: Vertex, a: Vertex, steps: usize) {
        let k = self.k;
        let s = k + 1 - steps;
        let bp = self.parent[b as usize];
        let bs = self.pslot[b as usize] as usize + 1;
        let a_ch = self.slots(a);
        let b_ch = self.slots(b);
        self.replace_at(bp, bs, a);
        // new pivot children: a's old slots s..=k, then pivot's old 2..=s
        for (w, i) in (s..=k).enumerate() {
            self.set_child(b, w + 1, a_ch[i - 1]);
        }
        for (w, i) in (2..=s).enumerate() {
            self.set_child(b, steps + 1 + w, b_ch[i - 1]);
        }
        self.set_child(a, s, b);
        for i in s + 1..=k {
            self.set_child(a, i, b_ch[i - 1]);
        }
    }

    /// Inverse of `dive`: the pivot at slot `s = k+1-steps` of its parent
    /// climbs above it, absorbing the parent's trailing subtrees.
    fn climb(&mut self, b: Vertex, steps: usize) {
        let k = self.k;
        let a = self.parent[b as usize];
        let s = self.pslot[b as usize] as usize + 1;
        debug_assert_eq!(s + steps, k + 1);
        let ap = self.parent[a as usize];
        let asl = self.pslot[a as usize] as usize + 1;
        let a_ch = self.slots(a);
        let b_ch = self.slots(b);
        self.replace_at(ap, asl, b);
        for (w, i) in (s..=k).enumerate() {
            self.set_child(a, i, b_ch[w]);
        }
        self.set_child(b, 1, a);
        for (w, i) in (2..=s).enumerate() {
            self.set_child(b, i, b_ch[steps + w]);
        }
        for i in s + 1..=k {
            self.set_child(b, i, a_ch[i - 1]);
        }
    }

    /// Down-rotation of a childless-first-slot pivot: it moves from slot `t`
    /// to slot `t-steps` of the same parent, adopting the subtrees it passes
    /// and relinquishing its own rightmost ones.
    fn shift_left(&mut self, b: Vertex, steps: usize) {
        let k = self.k;
        let a = self.parent[b as usize];
        let t = self.pslot[b as usize] as usize + 1;
        let s = t - steps;
        debug_assert!(s >= 2);
        let a_ch = self.slots(a);
        let b_ch = self.slots(b);
        // new pivot children: a's old s..=t-1, then pivot's old 1..=k-steps
        for (w, i) in (s..=t - 1).enumerate() {
            self.set_child(b, w + 1, a_ch[i - 1]);
        }
        for i in 1..=k - steps {
            self.set_child(b, steps + i, b_ch[i - 1]);
        }
        self.set_child(a, s, b);
        for (w, i) in (s + 1..=t).enumerate() {
            self.set_child(a, i, b_ch[k - steps + w]);
        }
    }

    /// Inverse of `shift_left`.
    fn shift_right(&mut self, b: Vertex, steps: usize) {
        let k = self.k;
        let a = self.parent[b as usize];
        let s = self.pslot[b as usize] as usize + 1;
        let t = s + steps;
        debug_assert!(t <= k);
        let a_ch = self.slots(a);
        let b_ch = self.slots(b);
        for (w, i) in (s..=t - 1).enumerate() {
            self.set_child(a, i, b_ch[w]);
        }
        self.set_child(a, t, b);
        for i in 1..=k - steps {
            self.set_child(b, i, b_ch[steps + i - 1]);
        }
        for (w, i) in (k - steps + 1..=k).enumerate() {
            self.set_child(b, i, a_ch[s + w]);
        }
    }

    // ------------------------------------------------------------------
    // Rightmost branch and children sequences
    // ------------------------------------------------------------------

    /// Rightmost branch of the whole tree.
    pub fn rightmost_branch(&self) -> Result<SubtreeAddress> {
        contract!(self.n >= 1, "rightmost branch of the empty tree");
        let mut addr = Vec::new();
        let mut v = self.root;
        loop {
            let mut next = None;
            for slot in (2..=self.k).rev() {
                if let Some(c) = self.child(v, slot) {
                    next = Some((slot, c));
                    break;
                }
            }
            match next {
                Some((slot, c)) => {
                    addr.push(slot);
                    v = c;
                }
                None => return Ok(SubtreeAddress(addr)),
            }
        }
    }

    pub fn resolve(&self, addr: &SubtreeAddress) -> Option<Vertex> {
        let mut v = self.root()?;
        for &slot in &addr.0 {
            v = self.child(v, slot)?;
        }
        Some(v)
    }

    /// Rightmost-branch decomposition of the subtree induced by the vertices
    /// with label at most `limit`. Vertices above the limit count as empty;
    /// this is how the generator reads the tree "as it was" before the
    /// larger vertices were inserted.
    pub(crate) fn frame_under(&self, limit: Vertex) -> ChildrenFrame {
        let mut entries = Vec::new();
        let mut v = self.root;
        while v != NONE && v > limit {
            v = self.children[v as usize * self.k];
        }
        if v == NONE {
            return ChildrenFrame { entries };
        }
        loop {
            let mut next = None;
            for slot in (2..=self.k).rev() {
                match self.child(v, slot) {
                    Some(c) if c <= limit => {
                        next = Some((slot, c));
                        break;
                    }
                    _ => {}
                }
            }
            match next {
                Some((slot, c)) => {
                    entries.push(FrameEntry {
                        vertex: v,
                        lambda: self.k - slot,
                    });
                    v = c;
                }
                None => {
                    entries.push(FrameEntry {
                        vertex: v,
                        lambda: self.k - 1,
                    });
                    return ChildrenFrame { entries };
                }
            }
        }
    }

    /// Frame of the whole tree.
    pub fn children_frame(&self) -> ChildrenFrame {
        self.frame_under(self.n as Vertex)
    }

    /// All trees obtained by inserting vertex n+1 along the rightmost
    /// branch, in children-sequence order: consecutive members differ in a
    /// clean rotation of the new vertex.
    pub fn children_sequence(&self) -> Vec<KAryTree> {
        if self.n == 0 {
            return vec![KAryTree::single(self.k)];
        }
        let frame = self.children_frame();
        let mut out = Vec::with_capacity(frame.len());
        for entry in &frame.entries {
            let mut t = self.clone();
            t.insert_above(entry.vertex);
            out.push(t);
            for j in (1..=entry.lambda).rev() {
                let mut t = self.clone();
                t.insert_leaf(entry.vertex, self.k - entry.lambda + j);
                out.push(t);
            }
        }
        out
    }

    // ------------------------------------------------------------------
    // Encodings
    // ------------------------------------------------------------------

    /// Canonical bracket encoding: empty subtree "."; vertex "(" followed by
    /// the k child encodings followed by ")".
    pub fn encode(&self) -> String {
        fn rec(t: &KAryTree, v: u32, out: &mut String) {
            if v == NONE {
                out.push('.');
                return;
            }
            out.push('(');
            for slot in 1..=t.k {
                rec(t, t.children[v as usize * t.k + slot - 1], out);
            }
            out.push(')');
        }
        let mut s = String::new();
        rec(self, self.root, &mut s);
        s
    }

    /// Parses the canonical bracket encoding, assigning search-order labels.
    pub fn decode(s: &str, k: usize) -> Result<KAryTree> {
        contract!(k >= 2, "arity must be at least 2");
        let bytes = s.as_bytes();
        fn rec(bytes: &[u8], pos: &mut usize, k: usize) -> Result<Shape> {
            match bytes.get(*pos) {
                Some(b'.') => {
                    *pos += 1;
                    Ok(Shape::Empty)
                }
                Some(b'(') => {
                    *pos += 1;
                    let mut ch = Vec::with_capacity(k);
                    for _ in 0..k {
                        ch.push(rec(bytes, pos, k)?);
                    }
                    if bytes.get(*pos) != Some(&b')') {
                        return Err(Error::Parse(format!(
                            "expected ')' at byte {} (wrong slot count?)",
                            *pos
                        )));
                    }
                    *pos += 1;
                    Ok(Shape::Node(ch))
                }
                other => Err(Error::Parse(format!(
                    "unexpected {:?} at byte {}",
                    other.map(|b| *b as char),
                    *pos
                ))),
            }
        }
        let mut pos = 0;
        let shape = rec(bytes, &mut pos, k)?;
        if pos != bytes.len() {
            return Err(Error::Parse(format!("trailing input at byte {pos}")));
        }
        Ok(KAryTree::from_shape(&shape, k))
    }

    /// Builds a tree from a shape, assigning canonical labels: the first
    /// subtree gets the smallest labels, then the root, then the rest.
    pub fn from_shape(shape: &Shape, k: usize) -> KAryTree {
        let n = shape.size();
        let mut t = KAryTree::empty(k);
        for _ in 0..n {
            t.push_vertex();
        }
        fn assign(t: &mut KAryTree, shape: &Shape, next: &mut u32) -> u32 {
            match shape {
                Shape::Empty => NONE,
                Shape::Node(ch) => {
                    let first = assign(t, &ch[0], next);
                    let v = *next;
                    *next += 1;
                    if first != NONE {
                        t.set_child(v, 1, first);
                    }
                    for (i, c) in ch.iter().enumerate().skip(1) {
                        let w = assign(t, c, next);
                        if w != NONE {
                            t.set_child(v, i + 1, w);
                        }
                    }
                    v
                }
            }
        }
        let mut next = 1;
        let root = assign(&mut t, shape, &mut next);
        t.root = root;
        t.writes = 0;
        t
    }

    pub fn shape(&self) -> Shape {
        fn rec(t: &KAryTree, v: u32) -> Shape {
            if v == NONE {
                return Shape::Empty;
            }
            Shape::Node(
                (1..=t.k)
                    .map(|s| rec(t, t.children[v as usize * t.k + s - 1]))
                    .collect(),
            )
        }
        rec(self, self.root)
    }

    fn same_shape(&self, other: &KAryTree) -> bool {
        fn rec(a: &KAryTree, va: u32, b: &KAryTree, vb: u32) -> bool {
            if (va == NONE) != (vb == NONE) {
                return false;
            }
            if va == NONE {
                return true;
            }
            (1..=a.k).all(|s| {
                rec(
                    a,
                    a.children[va as usize * a.k + s - 1],
                    b,
                    b.children[vb as usize * b.k + s - 1],
                )
            })
        }
        rec(self, self.root, other, other.root)
    }

    /// Alternate bit-exact format: one integer per vertex in preorder, the
    /// bitmask of occupied child slots (bit i-1 for slot i).
    pub fn preorder_code(&self) -> Vec<u32> {
        fn rec(t: &KAryTree, v: u32, out: &mut Vec<u32>) {
            if v == NONE {
                return;
            }
            let mut mask = 0u32;
            for slot in 1..=t.k {
                if t.children[v as usize * t.k + slot - 1] != NONE {
                    mask |= 1 << (slot - 1);
                }
            }
            out.push(mask);
            for slot in 1..=t.k {
                rec(t, t.children[v as usize * t.k + slot - 1], out);
            }
        }
        let mut out = Vec::with_capacity(self.n);
        rec(self, self.root, &mut out);
        out
    }

    pub fn from_preorder_code(code: &[u32], k: usize) -> Result<KAryTree> {
        contract!(k >= 2 && k <= 32, "arity out of range");
        fn rec(code: &[u32], pos: &mut usize, k: usize) -> Result<Shape> {
            if *pos >= code.len() {
                return Err(Error::Parse("preorder code ended early".into()));
            }
            let mask = code[*pos];
            *pos += 1;
            if mask >> k != 0 {
                return Err(Error::Parse(format!("mask {mask:#b} exceeds arity {k}")));
            }
            let mut ch = Vec::with_capacity(k);
            for slot in 0..k {
                if mask & (1 << slot) != 0 {
                    ch.push(rec(code, pos, k)?);
                } else {
                    ch.push(Shape::Empty);
                }
            }
            Ok(Shape::Node(ch))
        }
        if code.is_empty() {
            return Ok(KAryTree::empty(k));
        }
        let mut pos = 0;
        let shape = rec(code, &mut pos, k)?;
        if pos != code.len() {
            return Err(Error::Parse("trailing preorder entries".into()));
        }
        Ok(KAryTree::from_shape(&shape, k))
    }

    /// True when every vertex label matches the canonical search-order
    /// labelling. Clean rotations keep this invariant.
    pub fn has_canonical_labels(&self) -> bool {
        fn rec(t: &KAryTree, v: u32, next: &mut u32) -> bool {
            if v == NONE {
                return true;
            }
            if !rec(t, t.children[v as usize * t.k], next) {
                return false;
            }
            if v != *next {
                return false;
            }
            *next += 1;
            for slot in 2..=t.k {
                if !rec(t, t.children[v as usize * t.k + slot - 1], next) {
                    return false;
                }
            }
            true
        }
        let mut next = 1;
        rec(self, self.root, &mut next)
    }

    /// Size of the subtree rooted at `v`.
    pub fn subtree_size(&self, v: Vertex) -> usize {
        let mut stack = vec![v];
        let mut count = 0;
        while let Some(x) = stack.pop() {
            count += 1;
            for slot in 1..=self.k {
                if let Some(c) = self.child(x, slot) {
                    stack.push(c);
                }
            }
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str, k: usize) -> KAryTree {
        KAryTree::decode(s, k).unwrap()
    }

    #[test]
    fn encode_decode_basics() {
        assert_eq!(KAryTree::single(2).encode(), "(..)");
        assert_eq!(t("((...)..)", 3).encode(), "((...)..)");
        assert_eq!(KAryTree::empty(4).encode(), ".");
        assert!(KAryTree::decode("(.)", 2).is_err());
        assert!(KAryTree::decode("(..", 2).is_err());
        assert!(KAryTree::decode("(..)x", 2).is_err());
    }

    #[test]
    fn preorder_roundtrip() {
        for s in ["(..)", "((..)(..))", "(.(..))", "."] {
            let tree = t(s, 2);
            let code = tree.preorder_code();
            let back = KAryTree::from_preorder_code(&code, 2).unwrap();
            assert_eq!(tree, back);
        }
        // occupancy matters, not just counts
        let a = t("((...)..)", 3);
        let b = t("(.(...).)", 3);
        assert_ne!(a.preorder_code(), b.preorder_code());
    }

    #[test]
    fn binary_root_down_rotation() {
        // [[A,B],C] with A,B,C leaves: root label is 4, down 1 step -> [A,[B,C]]
        let mut tree = t("(((..)(..))(..))", 2);
        assert!(tree.has_canonical_labels());
        let root = tree.root().unwrap();
        assert_eq!(root, 4);
        tree.rotate(Rotation {
            pivot: root,
            dir: Direction::Down,
            steps: 1,
        })
        .unwrap();
        assert_eq!(tree.encode(), "((..)((..)(..)))");
        assert!(tree.has_canonical_labels());
    }

    #[test]
    fn ternary_down_two_steps() {
        // R^1 = [[A,B,C],D,E] -> down 2 -> R^2 = [A,[B,C,D],E]
        let leaf = "(...)";
        let inner = format!("({leaf}{leaf}{leaf})");
        let r1 = format!("({inner}{leaf}{leaf})");
        let mut tree = t(&r1, 3);
        let root = tree.root().unwrap();
        tree.rotate(Rotation {
            pivot: root,
            dir: Direction::Down,
            steps: 2,
        })
        .unwrap();
        let expected = format!("({leaf}({leaf}{leaf}{leaf}){leaf})");
        assert_eq!(tree.encode(), expected);
    }

    #[test]
    fn clean_multistep_rotation_keeps_labels() {
        // with T_3 empty the 2-step rotation is clean: labels survive
        let leaf = "(...)";
        let inner = format!("({leaf}{leaf}.)");
        let mut tree = t(&format!("({inner}{leaf}{leaf})"), 3);
        let root = tree.root().unwrap();
        let down = Rotation {
            pivot: root,
            dir: Direction::Down,
            steps: 2,
        };
        tree.rotate(down).unwrap();
        assert_eq!(tree.encode(), format!("({leaf}({leaf}.{leaf}){leaf})"));
        assert!(tree.has_canonical_labels());
        tree.rotate(down.inverse()).unwrap();
        assert!(tree.has_canonical_labels());
    }

    #[test]
    fn rotation_involution() {
        let samples = [
            ("((.((..)(..)))(..))", 2usize),
            ("((...)(...)(.(...).))", 3usize),
        ];
        for (s, k) in samples {
            let orig = t(s, k);
            for pivot in 1..=orig.len() as Vertex {
                for steps in 1..k {
                    let mut tree = orig.clone();
                    let down = Rotation {
                        pivot,
                        dir: Direction::Down,
                        steps,
                    };
                    if tree.rotate(down).is_ok() {
                        tree.rotate(down.inverse()).unwrap();
                        assert_eq!(tree, orig, "pivot {pivot} steps {steps} on {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn rightmost_branch_cases() {
        assert!(KAryTree::single(3).rightmost_branch().unwrap().is_empty());
        assert!(KAryTree::empty(2).rightmost_branch().is_err());
        // k=3, T = [eps, [eps,eps,[eps^3]], eps] -> (2,3)
        let tree = t("(.(..(...)).)", 3);
        assert_eq!(tree.rightmost_branch().unwrap(), SubtreeAddress(vec![2, 3]));
        // left path: every vertex only a first child
        let tree = t("(((..).).)", 2);
        assert!(tree.rightmost_branch().unwrap().is_empty());
    }

    #[test]
    fn children_sequence_two_vertices() {
        let seq = KAryTree::single(2).children_sequence();
        assert_eq!(seq.len(), 2);
        assert_eq!(seq[0].encode(), "((..).)");
        assert_eq!(seq[1].encode(), "(.(..))");
    }

    #[test]
    fn children_sequence_adjacent_and_clean() {
        // consecutive members differ in one clean rotation of the new vertex
        for (s, k) in [("(.(..))", 2usize), ("(.(..(...)).)", 3usize), ("(...)", 3usize)] {
            let tree = t(s, k);
            let seq = tree.children_sequence();
            let frame = tree.children_frame();
            assert_eq!(seq.len(), frame.len());
            for w in seq.windows(2) {
                assert!(crate::oracle::rotation_adjacent(&w[0], &w[1]));
            }
            for m in &seq {
                assert!(m.has_canonical_labels());
            }
            // final block has exactly k members rooted at the branch end
            assert_eq!(frame.entries.last().unwrap().lambda + 1, k);
        }
    }

    #[test]
    fn empty_tree_children_sequence() {
        let seq = KAryTree::empty(3).children_sequence();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq[0].encode(), "(...)");
    }
}
