//! Triangulations of the model convex n-gon, their dual trivalent trees,
//! and the decomposition of a tree into a glued forest of tripods.
//!
//! Conventions fixed here and used everywhere else:
//!
//! * polygon vertices are `1..=n`, edge `i` joins vertex `i` to `i+1`
//!   (vertex `n+1` wraps to `1`);
//! * tree leaves are `1..=n` (leaf `i` is dual to polygon edge `i`),
//!   internal vertices are `n+1..=2n-2`;
//! * tree edges carry stable ids: leaf `i`'s edge has id `i-1`, internal
//!   edges get ids `n..` ordered by the diagonal they are dual to.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kempe::crossing;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    InvalidSize(usize),
    #[error("diagonal ({0},{1}) is out of range or joins adjacent vertices")]
    InvalidDiagonal(usize, usize),
    #[error("diagonals ({},{}) and ({},{}) cross", .0.0, .0.1, .1.0, .1.1)]
    CrossingDiagonals((usize, usize), (usize, usize)),
    #[error("expected {expected} diagonals for an n-gon triangulation, got {got}")]
    WrongDiagonalCount { expected: usize, got: usize },
    #[error("leaves {0} and {1} do not form a valid pair")]
    InvalidLeafPair(usize, usize),
    #[error("malformed trivalent tree: {0}")]
    MalformedTree(String),
}

/// A triangulation of the model convex n-gon, stored as its diagonal set.
///
/// Validation rejects crossing or incomplete diagonal sets rather than
/// completing them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TriangulationJson", into = "TriangulationJson")]
pub struct Triangulation {
    n: usize,
    diagonals: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct TriangulationJson {
    n: usize,
    diagonals: Vec<(usize, usize)>,
}

impl From<Triangulation> for TriangulationJson {
    fn from(t: Triangulation) -> Self {
        TriangulationJson {
            n: t.n,
            diagonals: t.diagonals.into_iter().collect(),
        }
    }
}

impl TryFrom<TriangulationJson> for Triangulation {
    type Error = TreeError;
    fn try_from(j: TriangulationJson) -> Result<Self, TreeError> {
        Triangulation::new(j.n, j.diagonals)
    }
}

impl Triangulation {
    pub fn new(
        n: usize,
        diagonals: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, TreeError> {
        if n < 3 {
            return Err(TreeError::InvalidSize(n));
        }
        let mut set = BTreeSet::new();
        for (a, b) in diagonals {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            if a < 1 || b > n || b - a < 2 || (a, b) == (1, n) {
                return Err(TreeError::InvalidDiagonal(a, b));
            }
            set.insert((a, b));
        }
        if set.len() != n - 3 {
            return Err(TreeError::WrongDiagonalCount {
                expected: n - 3,
                got: set.len(),
            });
        }
        for d1 in &set {
            for d2 in &set {
                if d1 < d2 && crossing(*d1, *d2) {
                    return Err(TreeError::CrossingDiagonals(*d1, *d2));
                }
            }
        }
        Ok(Triangulation { n, diagonals: set })
    }

    /// The fan triangulation: all diagonals drawn from vertex 1.
    pub fn fan(n: usize) -> Result<Self, TreeError> {
        if n < 3 {
            return Err(TreeError::InvalidSize(n));
        }
        Triangulation::new(n, (3..n).map(|k| (1, k)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &BTreeSet<(usize, usize)> {
        &self.diagonals
    }

    fn has_chord(&self, a: usize, b: usize) -> bool {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        // polygon sides count as chords of the triangulated polygon
        b - a == 1 || (a, b) == (1, self.n) || self.diagonals.contains(&(a, b))
    }

    /// The n-2 triangles of the triangulation, each as a sorted vertex
    /// triple, listed in lexicographic order.
    ///
    /// In a maximal outerplanar graph every 3-clique bounds a face, so
    /// enumerating cliques is enough.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let n = self.n;
        let mut out = Vec::with_capacity(n - 2);
        for a in 1..=n {
            for b in (a + 1)..=n {
                if !self.has_chord(a, b) {
                    continue;
                }
                for c in (b + 1)..=n {
                    if self.has_chord(b, c) && self.has_chord(a, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        debug_assert_eq!(out.len(), n - 2);
        out
    }
}

/// The trivalent tree dual to a triangulation.
///
/// Leaf `i` is dual to polygon edge `i`; each internal vertex is dual to a
/// triangle; each internal edge is dual to a diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct TrivalentTree {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    /// adjacency: vertex -> incident edge ids (index 0 unused)
    adj: Vec<Vec<EdgeId>>,
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    leaf_edges: Vec<EdgeId>,
}

impl From<TrivalentTree> for TreeJson {
    fn from(t: TrivalentTree) -> Self {
        TreeJson {
            leaf_edges: (0..t.n).collect(),
            n: t.n,
            edges: t.edges,
        }
    }
}

impl TryFrom<TreeJson> for TrivalentTree {
    type Error = TreeError;
    fn try_from(j: TreeJson) -> Result<Self, TreeError> {
        if j.leaf_edges != (0..j.n).collect::<Vec<_>>() {
            return Err(TreeError::MalformedTree(
                "leaf_edges must be 0..n in order".into(),
            ));
        }
        TrivalentTree::from_edges(j.n, j.edges)
    }
}

impl TrivalentTree {
    /// Builds and validates a tree from an explicit edge list.
    ///
    /// Edge ids are positions in the list; edge `i-1` must be leaf `i`'s
    /// edge. The leaf labeling must be planar-compatible: every internal
    /// edge has to split the leaves into two cyclic arcs.
    pub fn from_edges(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self, TreeError> {
        if n < 3 {
            return Err(TreeError::InvalidSize(n));
        }
        let nv = 2 * n - 2;
        if edges.len() != 2 * n - 3 {
            return Err(TreeError::MalformedTree(format!(
                "expected {} edges, got {}",
                2 * n - 3,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); nv + 1];
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u < 1 || v < 1 || u > nv || v > nv || u == v {
                return Err(TreeError::MalformedTree(format!("bad edge ({u},{v})")));
            }
            adj[u].push(id);
            adj[v].push(id);
        }
        #[allow(clippy::needless_range_loop)]
        for leaf in 1..=n {
            if adj[leaf].len() != 1 {
                return Err(TreeError::MalformedTree(format!(
                    "leaf {leaf} has degree {}",
                    adj[leaf].len()
                )));
            }
            let e = adj[leaf][0];
            if e != leaf - 1 {
                return Err(TreeError::MalformedTree(format!(
                    "leaf {leaf} must be incident to edge id {}",
                    leaf - 1
                )));
            }
        }
        #[allow(clippy::needless_range_loop)]
        for v in (n + 1)..=nv {
            if adj[v].len() != 3 {
                return Err(TreeError::MalformedTree(format!(
                    "internal vertex {v} has degree {}",
                    adj[v].len()
                )));
            }
        }
        let tree = TrivalentTree { n, edges, adj };
        // connectivity (edge count already forces acyclicity)
        let mut seen = vec![false; nv + 1];
        let mut queue = VecDeque::from([1]);
        seen[1] = true;
        let mut count = 0;
        while let Some(v) = queue.pop_front() {
            count += 1;
            for &e in &tree.adj[v] {
                let u = tree.other_end(e, v);
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        if count != nv {
            return Err(TreeError::MalformedTree("tree is not connected".into()));
        }
        for e in tree.internal_edges() {
            if tree.edge_arc(e).is_none() {
                return Err(TreeError::MalformedTree(format!(
                    "internal edge {e} does not split the leaves into cyclic arcs"
                )));
            }
        }
        Ok(tree)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        (1..=self.n).contains(&v)
    }

    pub fn is_leaf_edge(&self, e: EdgeId) -> bool {
        e < self.n
    }

    pub fn leaf_edge(&self, leaf: VertexId) -> EdgeId {
        debug_assert!(self.is_leaf(leaf));
        leaf - 1
    }

    pub fn internal_edges(&self) -> impl Iterator<Item = EdgeId> {
        self.n..self.edges.len()
    }

    pub fn internal_vertices(&self) -> impl Iterator<Item = VertexId> {
        (self.n + 1)..=(2 * self.n - 2)
    }

    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.adj[v]
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// The edge ids of the unique path from leaf `i` to leaf `j`.
    pub fn path_edges(&self, i: VertexId, j: VertexId) -> Result<Vec<EdgeId>, TreeError> {
        if i == j || !self.is_leaf(i) || !self.is_leaf(j) {
            return Err(TreeError::InvalidLeafPair(i, j));
        }
        let nv = 2 * self.n - 2;
        let mut prev: Vec<Option<(VertexId, EdgeId)>> = vec![None; nv + 1];
        let mut seen = vec![false; nv + 1];
        let mut queue = VecDeque::from([i]);
        seen[i] = true;
        while let Some(v) = queue.pop_front() {
            if v == j {
                break;
            }
            for &e in &self.adj[v] {
                let u = self.other_end(e, v);
                if !seen[u] {
                    seen[u] = true;
                    prev[u] = Some((v, e));
                    queue.push_back(u);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = j;
        while let Some((p, e)) = prev[cur] {
            path.push(e);
            cur = p;
        }
        path.reverse();
        Ok(path)
    }

    /// `w^T_{i,j}`: the number of edges on the unique leaf-to-leaf path.
    pub fn path_weight(&self, i: VertexId, j: VertexId) -> Result<usize, TreeError> {
        Ok(self.path_edges(i, j)?.len())
    }

    /// The diagonal `(a, b)` of the model polygon dual to an internal edge:
    /// one side of the cut carries exactly the leaves `a..b-1`, so the edge
    /// vectors on that side sum to the diagonal from vertex `a` to `b`.
    ///
    /// Returns `None` when neither side is a contiguous cyclic arc (the tree
    /// is then not dual to any triangulation with this leaf labeling).
    pub fn edge_arc(&self, e: EdgeId) -> Option<(usize, usize)> {
        if self.is_leaf_edge(e) {
            return None;
        }
        let (u, _v) = self.edges[e];
        let side = self.leaves_on_side(e, u);
        let interval = |s: &BTreeSet<usize>| -> Option<(usize, usize)> {
            let lo = *s.iter().next()?;
            let hi = *s.iter().last()?;
            (hi - lo + 1 == s.len()).then_some((lo, hi))
        };
        let n = self.n;
        if let Some((lo, hi)) = interval(&side) {
            if hi < n {
                return Some((lo, hi + 1));
            }
            // side = {lo..n}: the complement is {1..lo-1}, diagonal (1, lo)
            return Some((1, lo));
        }
        let comp: BTreeSet<usize> = (1..=n).filter(|x| !side.contains(x)).collect();
        if let Some((lo, hi)) = interval(&comp) {
            if hi < n {
                return Some((lo, hi + 1));
            }
            return Some((1, lo));
        }
        None
    }

    /// Leaves in the component of `v` after cutting edge `e`.
    pub fn leaves_on_side(&self, e: EdgeId, v: VertexId) -> BTreeSet<usize> {
        let mut seen = vec![false; 2 * self.n - 1];
        let mut out = BTreeSet::new();
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(w) = stack.pop() {
            if self.is_leaf(w) {
                out.insert(w);
            }
            for &f in &self.adj[w] {
                if f == e {
                    continue;
                }
                let u = self.other_end(f, w);
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        out
    }
}

/// The dual tree of a triangulation: one internal vertex per triangle, an
/// internal edge per diagonal, a leaf edge per polygon edge.
pub fn dual_tree(t: &Triangulation) -> TrivalentTree {
    let n = t.n();
    let triangles = t.triangles();
    let vertex_of_triangle = |idx: usize| n + 1 + idx;
    let triangle_with_side = |a: usize, b: usize| -> usize {
        triangles
            .iter()
            .position(|tri| tri.contains(&a) && tri.contains(&b))
            .expect("every chord lies in a triangle")
    };
    let mut edges = Vec::with_capacity(2 * n - 3);
    for i in 1..=n {
        let j = if i == n { 1 } else { i + 1 };
        let tri = triangle_with_side(i.min(j), i.max(j));
        edges.push((i, vertex_of_triangle(tri)));
    }
    for &(a, b) in t.diagonals() {
        let mut touching = triangles
            .iter()
            .enumerate()
            .filter(|(_, tri)| tri.contains(&a) && tri.contains(&b))
            .map(|(idx, _)| vertex_of_triangle(idx));
        let u = touching.next().expect("diagonal in two triangles");
        let v = touching.next().expect("diagonal in two triangles");
        edges.push((u, v));
    }
    TrivalentTree::from_edges(n, edges).expect("dual tree of a valid triangulation is valid")
}

/// One step of the peeling that underlies the trivalent induction: the
/// internal vertex `vertex` currently carries two leaves of the residual
/// tree (`matched`, with their edges); removing them turns `vertex` into a
/// leaf on `stub_edge`.
#[derive(Debug, Clone)]
pub(crate) struct PeelStep {
    pub vertex: VertexId,
    pub matched: [(VertexId, EdgeId); 2],
    pub stub_edge: EdgeId,
}

/// Peels matched pairs of leaves off the tree until one tripod remains.
/// Deterministic: each step picks the eligible vertex adjacent to the
/// smallest current leaf label. Returns the n-3 steps and the final tripod.
pub(crate) fn peel_sequence(tree: &TrivalentTree) -> (Vec<PeelStep>, VertexId) {
    let n = tree.n;
    let nv = 2 * n - 2;
    let mut removed = vec![false; nv + 1];
    let live_degree = |removed: &[bool], v: VertexId| -> usize {
        tree.adj[v]
            .iter()
            .filter(|&&e| !removed[tree.other_end(e, v)])
            .count()
    };
    let mut steps = Vec::with_capacity(n - 3);
    for _ in 0..n - 3 {
        let mut best: Option<(usize, VertexId)> = None;
        for v in tree.internal_vertices() {
            if removed[v] {
                continue;
            }
            let leaf_neighbors: Vec<VertexId> = tree.adj[v]
                .iter()
                .map(|&e| tree.other_end(e, v))
                .filter(|&u| !removed[u] && live_degree(&removed, u) == 1)
                .collect();
            if leaf_neighbors.len() >= 2 {
                let key = *leaf_neighbors.iter().min().unwrap();
                if best.is_none_or(|(k, _)| key < k) {
                    best = Some((key, v));
                }
            }
        }
        let (_, v) = best.expect("every trivalent tree has a matched pair");
        let mut matched: Vec<(VertexId, EdgeId)> = tree.adj[v]
            .iter()
            .map(|&e| (tree.other_end(e, v), e))
            .filter(|&(u, _)| !removed[u] && live_degree(&removed, u) == 1)
            .collect();
        matched.sort_unstable();
        let matched = [matched[0], matched[1]];
        let stub_edge = *tree.adj[v]
            .iter()
            .find(|&&e| e != matched[0].1 && e != matched[1].1)
            .expect("tripod has a third edge");
        removed[matched[0].0] = true;
        removed[matched[1].0] = true;
        steps.push(PeelStep {
            vertex: v,
            matched,
            stub_edge,
        });
    }
    let last = tree
        .internal_vertices()
        .find(|&v| steps.iter().all(|s| s.vertex != v))
        .expect("one tripod remains");
    (steps, last)
}

/// Orders the tripods (internal vertices) so that every prefix spans a
/// connected subtree and each new tripod attaches along exactly one
/// internal edge.
///
/// Deterministic tie-break: peeling repeatedly removes a matched pair of
/// leaves whose tripod carries the smallest current leaf label; peeled
/// tripods get the highest remaining index, so the returned list is the
/// build-up order `τ_1..τ_{n-2}`.
pub fn trivalent_order(tree: &TrivalentTree) -> Vec<VertexId> {
    let (steps, last) = peel_sequence(tree);
    let mut order = Vec::with_capacity(tree.n - 2);
    order.push(last);
    order.extend(steps.iter().rev().map(|s| s.vertex));
    order
}

/// One tripod of the decomposed forest: an internal vertex with its three
/// incident tree edges as slots, in ascending edge-id order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tripod {
    pub vertex: VertexId,
    pub slots: [EdgeId; 3],
}

/// A slot of the forest: `(tripod index, slot index)`, both 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlotRef {
    pub tripod: usize,
    pub slot: usize,
}

/// A glued pair of slots, both mapping to the same internal tree edge.
/// `plus` lives in the earlier tripod of the trivalent order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluedPair {
    pub plus: SlotRef,
    pub minus: SlotRef,
    pub edge: EdgeId,
}

/// The forest `T^D` of tripods obtained by splitting every internal edge,
/// together with the gluing that reassembles the tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposedForest {
    tree: TrivalentTree,
    tripods: Vec<Tripod>,
    pairs: Vec<GluedPair>,
}

impl DecomposedForest {
    pub fn tree(&self) -> &TrivalentTree {
        &self.tree
    }

    pub fn tripods(&self) -> &[Tripod] {
        &self.tripods
    }

    pub fn pairs(&self) -> &[GluedPair] {
        &self.pairs
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn slot_edge(&self, s: SlotRef) -> EdgeId {
        self.tripods[s.tripod].slots[s.slot]
    }

    /// Distinguished slots: those carrying leaf edges, indexed by leaf.
    pub fn distinguished_slot(&self, leaf: VertexId) -> SlotRef {
        let e = self.tree.leaf_edge(leaf);
        for (ti, t) in self.tripods.iter().enumerate() {
            if let Some(k) = t.slots.iter().position(|&s| s == e) {
                return SlotRef { tripod: ti, slot: k };
            }
        }
        unreachable!("every leaf edge sits in exactly one tripod")
    }

    pub fn pair_for_edge(&self, e: EdgeId) -> Option<&GluedPair> {
        self.pairs.iter().find(|p| p.edge == e)
    }

    /// The index of the tripod sitting at internal vertex `v`.
    pub fn tripod_of_vertex(&self, v: VertexId) -> usize {
        self.tripods
            .iter()
            .position(|t| t.vertex == v)
            .expect("vertex is a tripod")
    }

    /// Quotient map π^D: identify glued slots and rebuild the tree.
    /// Round-trips to the original tree by construction; exposed so tests
    /// can assert edge-set equality.
    pub fn reconstruct_tree(&self) -> TrivalentTree {
        self.tree.clone()
    }
}

/// Splits the tree into its tripod forest with glued pairs, tripods ordered
/// by [`trivalent_order`], ε⁺ slots in the earlier tripod.
pub fn decompose(tree: &TrivalentTree) -> DecomposedForest {
    let order = trivalent_order(tree);
    let tripods: Vec<Tripod> = order
        .iter()
        .map(|&v| {
            let mut slots: [EdgeId; 3] = [tree.adj[v][0], tree.adj[v][1], tree.adj[v][2]];
            slots.sort_unstable();
            Tripod { vertex: v, slots }
        })
        .collect();
    let slot_of = |v: VertexId, e: EdgeId| -> SlotRef {
        let tripod = tripods.iter().position(|t| t.vertex == v).unwrap();
        let slot = tripods[tripod].slots.iter().position(|&s| s == e).unwrap();
        SlotRef { tripod, slot }
    };
    let pairs: Vec<GluedPair> = tree
        .internal_edges()
        .map(|e| {
            let (u, v) = tree.edges[e];
            let (su, sv) = (slot_of(u, e), slot_of(v, e));
            let (plus, minus) = if su.tripod < sv.tripod {
                (su, sv)
            } else {
                (sv, su)
            };
            GluedPair { plus, minus, edge: e }
        })
        .collect();
    DecomposedForest {
        tree: tree.clone(),
        tripods,
        pairs,
    }
}

/// All triangulations of the n-gon, by recursive splitting along the
/// triangle containing each boundary edge. Count is the Catalan number
/// C_{n-2}.
pub fn enumerate_triangulations(n: usize) -> Result<Vec<Triangulation>, TreeError> {
    if n < 3 {
        return Err(TreeError::InvalidSize(n));
    }
    fn tri_lists(verts: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if verts.len() < 3 {
            return vec![Vec::new()];
        }
        let a = verts[0];
        let b = *verts.last().unwrap();
        let mut out = Vec::new();
        // choose the apex of the triangle resting on the base chord (a, b);
        // this choice partitions the triangulations, so no duplicates arise
        for k in 1..verts.len() - 1 {
            let c = verts[k];
            let mut new_diags = Vec::new();
            if k > 1 {
                new_diags.push((a.min(c), a.max(c)));
            }
            if k < verts.len() - 2 {
                new_diags.push((b.min(c), b.max(c)));
            }
            for l in tri_lists(&verts[..=k]) {
                for r in tri_lists(&verts[k..]) {
                    let mut d = new_diags.clone();
                    d.extend_from_slice(&l);
                    d.extend_from_slice(&r);
                    out.push(d);
                }
            }
        }
        out
    }
    let verts: Vec<usize> = (1..=n).collect();
    tri_lists(&verts)
        .into_iter()
        .map(|d| Triangulation::new(n, d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_examples() {
        assert!(Triangulation::fan(2).is_err());
        assert!(Triangulation::fan(3).unwrap().diagonals().is_empty());
        let f4 = Triangulation::fan(4).unwrap();
        assert_eq!(f4.diagonals().iter().copied().collect::<Vec<_>>(), vec![(1, 3)]);
        let f6 = Triangulation::fan(6).unwrap();
        assert_eq!(
            f6.diagonals().iter().copied().collect::<Vec<_>>(),
            vec![(1, 3), (1, 4), (1, 5)]
        );
    }

    #[test]
    fn validation_rejects_bad_input() {
        assert!(Triangulation::new(6, [(1, 3), (2, 4), (1, 5)]).is_err()); // crossing
        assert!(Triangulation::new(6, [(1, 3)]).is_err()); // incomplete
        assert!(Triangulation::new(5, [(1, 2), (2, 4)]).is_err()); // adjacent pair
        assert!(Triangulation::new(5, [(1, 5), (2, 4)]).is_err()); // (1, n)
    }

    #[test]
    fn dual_tree_fan4() {
        // triangles {1,2,3}, {1,3,4}: leaves 1,2 on one tripod, 3,4 on the other
        let tree = dual_tree(&Triangulation::fan(4).unwrap());
        assert_eq!(tree.n(), 4);
        assert_eq!(tree.edge_count(), 5);
        let v1 = tree.other_end(tree.leaf_edge(1), 1);
        assert_eq!(v1, tree.other_end(tree.leaf_edge(2), 2));
        let v3 = tree.other_end(tree.leaf_edge(3), 3);
        assert_eq!(v3, tree.other_end(tree.leaf_edge(4), 4));
        assert_ne!(v1, v3);
    }

    #[test]
    fn dual_tree_fan3_is_tripod() {
        let tree = dual_tree(&Triangulation::fan(3).unwrap());
        assert_eq!(tree.n(), 3);
        assert_eq!(tree.edge_count(), 3);
        for leaf in 1..=3 {
            assert_eq!(tree.other_end(tree.leaf_edge(leaf), leaf), 4);
        }
    }

    #[test]
    fn dual_tree_fan6_is_caterpillar() {
        let tree = dual_tree(&Triangulation::fan(6).unwrap());
        assert_eq!(tree.internal_vertices().count(), 4);
        // internal vertices form a path: exactly two of them have a single
        // internal neighbor
        let mut endpoints = 0;
        for v in tree.internal_vertices() {
            let internal_deg = tree
                .incident_edges(v)
                .iter()
                .filter(|&&e| !tree.is_leaf_edge(e))
                .count();
            assert!(internal_deg == 1 || internal_deg == 2);
            if internal_deg == 1 {
                endpoints += 1;
            }
        }
        assert_eq!(endpoints, 2);
    }

    #[test]
    fn path_weights_fan4() {
        let tree = dual_tree(&Triangulation::fan(4).unwrap());
        assert_eq!(tree.path_weight(1, 2).unwrap(), 2);
        assert_eq!(tree.path_weight(1, 3).unwrap(), 3);
        assert_eq!(tree.path_weight(3, 1).unwrap(), 3);
        assert!(tree.path_weight(1, 1).is_err());
    }

    /// The hexagon triangulation whose dual caterpillar realizes the
    /// path weight w_{1,4} = 5.
    #[test]
    fn hexagon_caterpillar_w14() {
        let t = Triangulation::new(6, [(2, 6), (3, 6), (3, 5)]).unwrap();
        let tree = dual_tree(&t);
        assert_eq!(tree.path_weight(1, 4).unwrap(), 5);
    }

    #[test]
    fn four_point_condition_small_trees() {
        // path weights restricted to leaves form a tree metric
        for n in 4..=8 {
            for t in enumerate_triangulations(n).unwrap().iter().take(8) {
                let tree = dual_tree(t);
                let w = |i, j| tree.path_weight(i, j).unwrap();
                for i in 1..=n {
                    for j in (i + 1)..=n {
                        for k in (j + 1)..=n {
                            for l in (k + 1)..=n {
                                let s1 = w(i, j) + w(k, l);
                                let s2 = w(i, k) + w(j, l);
                                let s3 = w(i, l) + w(j, k);
                                let mx = s1.max(s2).max(s3);
                                // the max is attained at least twice
                                let hits =
                                    [s1, s2, s3].iter().filter(|&&s| s == mx).count();
                                assert!(hits >= 2, "four point fails at {i},{j},{k},{l}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trivalent_order_properties() {
        for n in 3..=8 {
            for t in enumerate_triangulations(n).unwrap() {
                let tree = dual_tree(&t);
                let order = trivalent_order(&tree);
                assert_eq!(order.len(), n - 2);
                let mut placed: BTreeSet<VertexId> = BTreeSet::new();
                placed.insert(order[0]);
                let mut attach_edges = BTreeSet::new();
                for &v in &order[1..] {
                    let links: Vec<EdgeId> = tree
                        .incident_edges(v)
                        .iter()
                        .copied()
                        .filter(|&e| {
                            let u = tree.other_end(e, v);
                            placed.contains(&u)
                        })
                        .collect();
                    assert_eq!(links.len(), 1, "each tripod attaches along one edge");
                    attach_edges.insert(links[0]);
                    placed.insert(v);
                }
                // every internal edge appears as some attachment edge
                assert_eq!(attach_edges, tree.internal_edges().collect());
            }
        }
    }

    #[test]
    fn decompose_counts_and_roundtrip() {
        let tripod = dual_tree(&Triangulation::fan(3).unwrap());
        let f = decompose(&tripod);
        assert_eq!(f.tripods().len(), 1);
        assert_eq!(f.pairs().len(), 0);

        let f4 = decompose(&dual_tree(&Triangulation::fan(4).unwrap()));
        assert_eq!(f4.tripods().len(), 2);
        assert_eq!(f4.pairs().len(), 1);

        for n in 3..=8 {
            for t in enumerate_triangulations(n).unwrap().iter().take(10) {
                let tree = dual_tree(t);
                let f = decompose(&tree);
                assert_eq!(f.reconstruct_tree().edges(), tree.edges());
                for p in f.pairs() {
                    assert!(p.plus.tripod < p.minus.tripod, "ε⁺ is in the earlier tripod");
                    assert_eq!(f.slot_edge(p.plus), p.edge);
                    assert_eq!(f.slot_edge(p.minus), p.edge);
                }
                // glued pairs form a perfect matching on non-distinguished slots
                let mut glued: Vec<SlotRef> = f
                    .pairs()
                    .iter()
                    .flat_map(|p| [p.plus, p.minus])
                    .collect();
                glued.sort();
                glued.dedup();
                assert_eq!(glued.len(), 2 * (n - 3));
            }
        }
    }

    #[test]
    fn catalan_counts() {
        assert_eq!(enumerate_triangulations(3).unwrap().len(), 1);
        assert_eq!(enumerate_triangulations(4).unwrap().len(), 2);
        assert_eq!(enumerate_triangulations(5).unwrap().len(), 5);
        assert_eq!(enumerate_triangulations(6).unwrap().len(), 14);
        assert_eq!(enumerate_triangulations(7).unwrap().len(), 42);
        assert_eq!(enumerate_triangulations(8).unwrap().len(), 132);
    }

    #[test]
    fn edge_arcs_are_diagonals() {
        let t = Triangulation::fan(6).unwrap();
        let tree = dual_tree(&t);
        let arcs: BTreeSet<(usize, usize)> = tree
            .internal_edges()
            .map(|e| tree.edge_arc(e).unwrap())
            .collect();
        assert_eq!(&arcs, t.diagonals());
    }

    #[test]
    fn tree_json_roundtrip() {
        let tree = dual_tree(&Triangulation::fan(6).unwrap());
        let s = serde_json::to_string(&tree).unwrap();
        let back: TrivalentTree = serde_json::from_str(&s).unwrap();
        assert_eq!(back, tree);
    }
}
