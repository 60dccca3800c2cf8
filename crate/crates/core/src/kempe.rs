//! Kempe graphs (noncrossing chord multigraphs), induced tree weightings,
//! the admissibility criterion, and the graded semigroup product `∗_T`.
//!
//! A Kempe graph on cyclically ordered vertices `1..=n` is a multiset of
//! chords drawn as straight segments, no two of which cross. These label a
//! monomial basis of the Plücker coordinate ring; the tree weighting they
//! induce is admissible (even parity and triangle inequalities at every
//! internal vertex), and that correspondence is a bijection. The product
//! `G1 ∗_T G2` is computed through the weighting side, where it is plain
//! addition.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{self, EdgeId, TreeError, TrivalentTree, VertexId};

#[derive(Debug, Error)]
pub enum KempeError {
    #[error("chord ({0},{1}) is invalid on {2} vertices")]
    InvalidChord(usize, usize, usize),
    #[error("chords ({},{}) and ({},{}) cross", .0.0, .0.1, .1.0, .1.1)]
    CrossingChords((usize, usize), (usize, usize)),
    #[error("graph has {graph} vertices but tree has {tree} leaves")]
    SizeMismatch { graph: usize, tree: usize },
    #[error("weightings live on different trees")]
    TreeMismatch,
    #[error("weighting is not admissible at internal vertex {0}")]
    NotAdmissible(VertexId),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Two chords cross exactly when their endpoints interleave:
/// `i < k < j < l` after sorting each chord.
pub fn crossing(c1: (usize, usize), c2: (usize, usize)) -> bool {
    let (i, j) = if c1.0 < c1.1 { c1 } else { (c1.1, c1.0) };
    let (k, l) = if c2.0 < c2.1 { c2 } else { (c2.1, c2.0) };
    (i < k && k < j && j < l) || (k < i && i < l && l < j)
}

/// A noncrossing chord multigraph on `n` cyclically ordered vertices.
///
/// Chords are stored as a sorted `(i, j) -> multiplicity` map with `i < j`,
/// so equality and hashing are structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "KempeJson", into = "KempeJson")]
pub struct KempeGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), u64>,
}

#[derive(Serialize, Deserialize)]
struct KempeJson {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
}

impl From<KempeGraph> for KempeJson {
    fn from(g: KempeGraph) -> Self {
        KempeJson {
            n: g.n,
            edges: g.edges.into_iter().map(|((i, j), m)| (i, j, m)).collect(),
        }
    }
}

impl TryFrom<KempeJson> for KempeGraph {
    type Error = KempeError;
    fn try_from(j: KempeJson) -> Result<Self, KempeError> {
        KempeGraph::new(j.n, j.edges.into_iter().map(|(i, j, m)| ((i, j), m)))
    }
}

impl fmt::Display for KempeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, ((i, j), m)) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            if *m == 1 {
                write!(f, "{i}{j}")?;
            } else {
                write!(f, "{i}{j}^{m}")?;
            }
        }
        write!(f, "}}")
    }
}

impl KempeGraph {
    pub fn new(
        n: usize,
        chords: impl IntoIterator<Item = ((usize, usize), u64)>,
    ) -> Result<Self, KempeError> {
        let mut edges: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for ((a, b), m) in chords {
            if m == 0 {
                continue;
            }
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            if a < 1 || b > n || a == b {
                return Err(KempeError::InvalidChord(a, b, n));
            }
            *edges.entry((a, b)).or_insert(0) += m;
        }
        let support: Vec<(usize, usize)> = edges.keys().copied().collect();
        for (x, c1) in support.iter().enumerate() {
            for c2 in &support[x + 1..] {
                if crossing(*c1, *c2) {
                    return Err(KempeError::CrossingChords(*c1, *c2));
                }
            }
        }
        Ok(KempeGraph { n, edges })
    }

    pub fn empty(n: usize) -> Self {
        KempeGraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    /// Single-chord graph; these generate the semigroup in degree one.
    pub fn single(n: usize, i: usize, j: usize) -> Result<Self, KempeError> {
        KempeGraph::new(n, [((i, j), 1)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chords(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.edges
    }

    /// Total edge count with multiplicity.
    pub fn degree(&self) -> u64 {
        self.edges.values().sum()
    }

    /// Valence vector `(v_1..v_n)`.
    pub fn multidegree(&self) -> Vec<u64> {
        let mut v = vec![0u64; self.n];
        for (&(i, j), &m) in &self.edges {
            v[i - 1] += m;
            v[j - 1] += m;
        }
        v
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// `w^T(m_G) = Σ multiplicities × path weights`: the Speyer–Sturmfels
/// weight of the monomial labeled by `g`.
pub fn graph_weight(g: &KempeGraph, tree: &TrivalentTree) -> Result<u64, KempeError> {
    if g.n() != tree.n() {
        return Err(KempeError::SizeMismatch {
            graph: g.n(),
            tree: tree.n(),
        });
    }
    let mut total = 0u64;
    for (&(i, j), &m) in g.chords() {
        total += m * tree.path_weight(i, j)? as u64;
    }
    Ok(total)
}

/// A nonnegative integer weighting of the edges of a trivalent tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WeightingJson", into = "WeightingJson")]
pub struct EdgeWeighting {
    tree: TrivalentTree,
    w: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct WeightingJson {
    tree: TrivalentTree,
    w: BTreeMap<String, u64>,
}

impl From<EdgeWeighting> for WeightingJson {
    fn from(e: EdgeWeighting) -> Self {
        WeightingJson {
            w: e.w
                .iter()
                .enumerate()
                .map(|(id, &x)| (id.to_string(), x))
                .collect(),
            tree: e.tree,
        }
    }
}

impl TryFrom<WeightingJson> for EdgeWeighting {
    type Error = KempeError;
    fn try_from(j: WeightingJson) -> Result<Self, KempeError> {
        let mut w = vec![0u64; j.tree.edge_count()];
        for (key, value) in j.w {
            let id: EdgeId = key
                .parse()
                .map_err(|_| KempeError::TreeMismatch)?;
            if id >= w.len() {
                return Err(KempeError::TreeMismatch);
            }
            w[id] = value;
        }
        EdgeWeighting::new(j.tree, w)
    }
}

impl EdgeWeighting {
    pub fn new(tree: TrivalentTree, w: Vec<u64>) -> Result<Self, KempeError> {
        if w.len() != tree.edge_count() {
            return Err(KempeError::SizeMismatch {
                graph: w.len(),
                tree: tree.edge_count(),
            });
        }
        Ok(EdgeWeighting { tree, w })
    }

    pub fn zero(tree: TrivalentTree) -> Self {
        let w = vec![0; tree.edge_count()];
        EdgeWeighting { tree, w }
    }

    pub fn tree(&self) -> &TrivalentTree {
        &self.tree
    }

    pub fn weights(&self) -> &[u64] {
        &self.w
    }

    pub fn weight(&self, e: EdgeId) -> u64 {
        self.w[e]
    }

    /// Pointwise sum; the semigroup operation on admissible weightings.
    pub fn add(&self, other: &EdgeWeighting) -> Result<EdgeWeighting, KempeError> {
        if self.tree != other.tree {
            return Err(KempeError::TreeMismatch);
        }
        let w = self
            .w
            .iter()
            .zip(&other.w)
            .map(|(a, b)| a + b)
            .collect();
        Ok(EdgeWeighting {
            tree: self.tree.clone(),
            w,
        })
    }

    /// Total weight `Σ_e w(e)`, which equals `w^T(m_G)` for `w = w_G`.
    pub fn total(&self) -> u64 {
        self.w.iter().sum()
    }

    /// Half the sum of the leaf-edge weights; matches `deg(G)` under the
    /// bijection.
    pub fn degree(&self) -> u64 {
        let leaf_sum: u64 = (0..self.tree.n()).map(|e| self.w[e]).sum();
        debug_assert!(leaf_sum.is_multiple_of(2) || self.admissibility_violation().is_some());
        leaf_sum / 2
    }

    /// The first internal vertex violating parity or a triangle
    /// inequality, if any.
    pub fn admissibility_violation(&self) -> Option<VertexId> {
        self.tree.internal_vertices().find(|&v| {
            let es = self.tree.incident_edges(v);
            let (a, b, c) = (self.w[es[0]], self.w[es[1]], self.w[es[2]]);
            (a + b + c) % 2 != 0 || a + b < c || a + c < b || b + c < a
        })
    }
}

/// Parity plus (non-strict) triangle inequalities at every internal vertex.
pub fn is_admissible(w: &EdgeWeighting) -> bool {
    w.admissibility_violation().is_none()
}

/// The weighting `w_G`: each tree edge counts the chords (with
/// multiplicity) whose leaf-to-leaf path passes through it.
pub fn induced_weighting(g: &KempeGraph, tree: &TrivalentTree) -> Result<EdgeWeighting, KempeError> {
    if g.n() != tree.n() {
        return Err(KempeError::SizeMismatch {
            graph: g.n(),
            tree: tree.n(),
        });
    }
    let mut w = vec![0u64; tree.edge_count()];
    for (&(i, j), &m) in g.chords() {
        for e in tree.path_edges(i, j)? {
            w[e] += m;
        }
    }
    EdgeWeighting::new(tree.clone(), w)
}

/// Local chord counts at one internal vertex with incident edge weights
/// `(n1, n2, n3)`: `x_{ij} = (n_i + n_j - n_k) / 2`.
fn local_arcs(n1: u64, n2: u64, n3: u64) -> Option<(u64, u64, u64)> {
    let total = n1 + n2 + n3;
    if !total.is_multiple_of(2) || n1 + n2 < n3 || n1 + n3 < n2 || n2 + n3 < n1 {
        return None;
    }
    Some((
        (n1 + n2 - n3) / 2,
        (n1 + n3 - n2) / 2,
        (n2 + n3 - n1) / 2,
    ))
}

/// The unique Kempe graph whose induced weighting is `w`.
///
/// Reconstruction peels matched leaf pairs off the tree, solving the local
/// arc counts at each tripod, then expands back: the strands through a
/// merged pair of leaves are split by their cyclic arc position, which is
/// the only noncrossing choice.
pub fn weighting_to_kempe(w: &EdgeWeighting) -> Result<KempeGraph, KempeError> {
    if let Some(v) = w.admissibility_violation() {
        return Err(KempeError::NotAdmissible(v));
    }
    let tree = w.tree();
    let n = tree.n();
    let (steps, last) = tree::peel_sequence(tree);

    // cyclic interval of original leaf positions occupied by each current
    // leaf label (original leaf or stub vertex)
    let nv = 2 * n - 2;
    let mut interval: Vec<Option<(usize, usize)>> = vec![None; nv + 1];
    #[allow(clippy::needless_range_loop)]
    for leaf in 1..=n {
        interval[leaf] = Some((leaf, leaf));
    }

    struct Expansion {
        stub: VertexId,
        // (label, local chord count to the stub edge), first part cyclically
        first: (VertexId, u64),
        second: (VertexId, u64),
        direct: u64, // chords joining the two parts
    }

    let mut expansions: Vec<Expansion> = Vec::with_capacity(steps.len());
    for step in &steps {
        let [(la, ea), (lb, eb)] = step.matched;
        let (na, nb, ne) = (w.weight(ea), w.weight(eb), w.weight(step.stub_edge));
        let (x_ab, x_ae, x_be) =
            local_arcs(na, nb, ne).ok_or(KempeError::NotAdmissible(step.vertex))?;
        let (alo, ahi) = interval[la].expect("matched label has an interval");
        let (blo, bhi) = interval[lb].expect("matched label has an interval");
        // which part comes first in the cyclic order
        let (first, second, lo, hi) = if ahi % n + 1 == blo {
            ((la, x_ae), (lb, x_be), alo, bhi)
        } else {
            debug_assert_eq!(bhi % n + 1, alo, "matched leaves are cyclically adjacent");
            ((lb, x_be), (la, x_ae), blo, ahi)
        };
        interval[step.vertex] = Some((lo, hi));
        expansions.push(Expansion {
            stub: step.vertex,
            first,
            second,
            direct: x_ab,
        });
    }

    // base tripod: local arcs between its three surviving leaves
    let mut chords: BTreeMap<(VertexId, VertexId), u64> = BTreeMap::new();
    let add_chord = |map: &mut BTreeMap<(VertexId, VertexId), u64>, a: VertexId, b, m: u64| {
        if m > 0 {
            let key = if a < b { (a, b) } else { (b, a) };
            *map.entry(key).or_insert(0) += m;
        }
    };
    {
        let es = tree.incident_edges(last);
        let leaves: Vec<VertexId> = es.iter().map(|&e| tree.other_end(e, last)).collect();
        let (n1, n2, n3) = (w.weight(es[0]), w.weight(es[1]), w.weight(es[2]));
        let (x12, x13, x23) = local_arcs(n1, n2, n3).ok_or(KempeError::NotAdmissible(last))?;
        add_chord(&mut chords, leaves[0], leaves[1], x12);
        add_chord(&mut chords, leaves[0], leaves[2], x13);
        add_chord(&mut chords, leaves[1], leaves[2], x23);
    }

    // expand stubs in reverse creation order
    for exp in expansions.iter().rev() {
        let (_, hi) = interval[exp.stub].unwrap();
        // strand endpoints at the stub, with multiplicity, sorted by cyclic
        // distance from just past the stub's interval
        let mut incident: Vec<((VertexId, VertexId), u64)> = Vec::new();
        chords.retain(|&(a, b), &mut m| {
            if a == exp.stub || b == exp.stub {
                incident.push(((a, b), m));
                false
            } else {
                true
            }
        });
        let mut endpoints: Vec<(usize, VertexId, u64)> = incident
            .into_iter()
            .map(|((a, b), m)| {
                let other = if a == exp.stub { b } else { a };
                let (olo, _) = interval[other].expect("endpoint label has an interval");
                let key = (olo + n - (hi % n + 1)) % n;
                (key, other, m)
            })
            .collect();
        endpoints.sort_unstable();
        // nearest endpoints past the interval go to the second part, the
        // rest to the first
        let (second_label, mut second_quota) = exp.second;
        let (first_label, first_quota) = exp.first;
        let mut assigned_first = 0u64;
        for (_, other, m) in endpoints {
            let to_second = m.min(second_quota);
            add_chord(&mut chords, second_label, other, to_second);
            second_quota -= to_second;
            add_chord(&mut chords, first_label, other, m - to_second);
            assigned_first += m - to_second;
        }
        debug_assert_eq!(second_quota, 0, "strand counts match the stub weight");
        debug_assert_eq!(assigned_first, first_quota);
        add_chord(&mut chords, first_label, second_label, exp.direct);
    }

    let g = KempeGraph::new(n, chords)?;
    debug_assert_eq!(&induced_weighting(&g, tree).unwrap(), w);
    Ok(g)
}

/// `G1 ∗_T G2`: the unique Kempe graph whose weighting is
/// `w_{G1} + w_{G2}`. Equals the leading term of the straightened product.
pub fn star_product(
    g1: &KempeGraph,
    g2: &KempeGraph,
    tree: &TrivalentTree,
) -> Result<KempeGraph, KempeError> {
    let w1 = induced_weighting(g1, tree)?;
    let w2 = induced_weighting(g2, tree)?;
    weighting_to_kempe(&w1.add(&w2)?)
}

/// Membership in the r-subsemigroup: returns `N` when
/// `multidegree(g) = N·r`, `None` otherwise.
pub fn r_membership(g: &KempeGraph, r: &[u64]) -> Option<u64> {
    if r.len() != g.n() {
        return None;
    }
    let v = g.multidegree();
    let mut quotient: Option<u64> = None;
    for (vi, ri) in v.iter().zip(r) {
        if *ri == 0 {
            if *vi != 0 {
                return None;
            }
            continue;
        }
        if vi % ri != 0 {
            return None;
        }
        let q = vi / ri;
        match quotient {
            None => quotient = Some(q),
            Some(prev) if prev != q => return None,
            _ => {}
        }
    }
    // all-zero valence (in particular the empty graph) has degree 0
    Some(quotient.unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{dual_tree, enumerate_triangulations, Triangulation};

    fn fan_tree(n: usize) -> TrivalentTree {
        dual_tree(&Triangulation::fan(n).unwrap())
    }

    #[test]
    fn crossing_examples() {
        assert!(crossing((1, 3), (2, 4)));
        assert!(!crossing((1, 2), (3, 4)));
        assert!(!crossing((1, 4), (2, 3)));
        assert!(!crossing((1, 3), (1, 3))); // equal chords never interleave
        assert!(!crossing((1, 3), (3, 5))); // shared endpoint
    }

    #[test]
    fn graph_weight_examples() {
        // caterpillar hexagon tree realizing w_{1,4} = 5
        let t = Triangulation::new(6, [(2, 6), (3, 6), (3, 5)]).unwrap();
        let tree = dual_tree(&t);
        let g = KempeGraph::single(6, 1, 4).unwrap();
        assert_eq!(graph_weight(&g, &tree).unwrap(), 5);

        assert_eq!(graph_weight(&KempeGraph::empty(6), &tree).unwrap(), 0);

        let tree4 = fan_tree(4);
        let g = KempeGraph::new(4, [((1, 3), 1), ((2, 4), 1)]);
        // {13, 24} cross, so this is not Kempe; weigh the chords separately
        assert!(g.is_err());
        let w13 = graph_weight(&KempeGraph::single(4, 1, 3).unwrap(), &tree4).unwrap();
        let w24 = graph_weight(&KempeGraph::single(4, 2, 4).unwrap(), &tree4).unwrap();
        assert_eq!(w13 + w24, 6);
    }

    #[test]
    fn induced_weighting_examples() {
        let tree = fan_tree(4);
        let g12 = KempeGraph::single(4, 1, 2).unwrap();
        let w = induced_weighting(&g12, &tree).unwrap();
        assert_eq!(w.weight(tree.leaf_edge(1)), 1);
        assert_eq!(w.weight(tree.leaf_edge(2)), 1);
        assert_eq!(w.weight(tree.leaf_edge(3)), 0);
        assert_eq!(w.weight(tree.leaf_edge(4)), 0);
        assert_eq!(w.weight(4), 0); // internal edge

        let g13 = KempeGraph::single(4, 1, 3).unwrap();
        let w = induced_weighting(&g13, &tree).unwrap();
        assert_eq!(w.weight(tree.leaf_edge(1)), 1);
        assert_eq!(w.weight(tree.leaf_edge(3)), 1);
        assert_eq!(w.weight(tree.leaf_edge(2)), 0);
        assert_eq!(w.weight(4), 1);

        let w = induced_weighting(&KempeGraph::empty(4), &tree).unwrap();
        assert!(w.weights().iter().all(|&x| x == 0));
    }

    #[test]
    fn admissibility_tripod() {
        let tree = fan_tree(3);
        let ok = EdgeWeighting::new(tree.clone(), vec![1, 1, 2]).unwrap();
        assert!(is_admissible(&ok));
        let odd = EdgeWeighting::new(tree.clone(), vec![1, 1, 1]).unwrap();
        assert!(!is_admissible(&odd));
        let tri = EdgeWeighting::new(tree, vec![3, 1, 1]).unwrap();
        assert!(!is_admissible(&tri));
    }

    #[test]
    fn weighting_to_kempe_examples() {
        let tree = fan_tree(3);
        let zero = EdgeWeighting::zero(tree.clone());
        assert!(weighting_to_kempe(&zero).unwrap().is_empty());

        // tripod weighting (1,1,2) -> arcs x12=0, x13=1, x23=1
        let w = EdgeWeighting::new(tree.clone(), vec![1, 1, 2]).unwrap();
        let g = weighting_to_kempe(&w).unwrap();
        let expected = KempeGraph::new(3, [((1, 3), 1), ((2, 3), 1)]).unwrap();
        assert_eq!(g, expected);

        let bad = EdgeWeighting::new(tree, vec![1, 1, 1]).unwrap();
        match weighting_to_kempe(&bad) {
            Err(KempeError::NotAdmissible(v)) => assert_eq!(v, 4),
            other => panic!("expected NotAdmissible, got {other:?}"),
        }

        // round trip through a chord with an internal path
        let tree4 = fan_tree(4);
        let g13 = KempeGraph::single(4, 1, 3).unwrap();
        let w = induced_weighting(&g13, &tree4).unwrap();
        assert_eq!(weighting_to_kempe(&w).unwrap(), g13);
    }

    #[test]
    fn star_product_examples() {
        let tree = fan_tree(4);
        let e = KempeGraph::empty(4);
        assert_eq!(star_product(&e, &e, &tree).unwrap(), e);

        // the two Plücker terms of Z13·Z24 weigh 4 and 6; the unique max is {14, 23}
        let g13 = KempeGraph::single(4, 1, 3).unwrap();
        let g24 = KempeGraph::single(4, 2, 4).unwrap();
        let star = star_product(&g13, &g24, &tree).unwrap();
        let expected = KempeGraph::new(4, [((1, 4), 1), ((2, 3), 1)]).unwrap();
        assert_eq!(star, expected);
        assert_eq!(graph_weight(&star, &tree).unwrap(), 6);

        // noncrossing pieces concatenate
        let g12 = KempeGraph::single(4, 1, 2).unwrap();
        let g34 = KempeGraph::single(4, 3, 4).unwrap();
        let star = star_product(&g12, &g34, &tree).unwrap();
        let expected = KempeGraph::new(4, [((1, 2), 1), ((3, 4), 1)]).unwrap();
        assert_eq!(star, expected);
    }

    #[test]
    fn r_membership_examples() {
        let e = KempeGraph::empty(4);
        assert_eq!(r_membership(&e, &[1, 1, 1, 1]), Some(0));
        assert_eq!(r_membership(&e, &[2, 0, 1, 5]), Some(0));

        let m = KempeGraph::new(4, [((1, 2), 1), ((3, 4), 1)]).unwrap();
        assert_eq!(r_membership(&m, &[1, 1, 1, 1]), Some(1));

        let g13 = KempeGraph::single(4, 1, 3).unwrap();
        assert_eq!(r_membership(&g13, &[1, 1, 1, 1]), None);
    }

    /// Exhaustive bijection check on small trees: every Kempe graph round
    /// trips through its weighting, and the weighting correspondence is a
    /// semigroup homomorphism.
    #[test]
    fn bijection_exhaustive_small() {
        for n in 3..=6 {
            let graphs = crate::sampling::enumerate_kempe(n, 3);
            for t in enumerate_triangulations(n).unwrap() {
                let tree = dual_tree(&t);
                for g in &graphs {
                    let w = induced_weighting(g, &tree).unwrap();
                    assert!(is_admissible(&w));
                    assert_eq!(&weighting_to_kempe(&w).unwrap(), g);
                    assert_eq!(w.degree(), g.degree());
                    assert_eq!(w.total(), graph_weight(g, &tree).unwrap());
                }
            }
        }
    }

    #[test]
    fn weighting_json_is_an_edge_id_map() {
        let tree = fan_tree(4);
        let g13 = KempeGraph::single(4, 1, 3).unwrap();
        let w = induced_weighting(&g13, &tree).unwrap();
        let value = serde_json::to_value(&w).unwrap();
        assert_eq!(value["w"]["0"], serde_json::json!(1));
        assert_eq!(value["w"]["2"], serde_json::json!(1));
        assert_eq!(value["w"]["4"], serde_json::json!(1));
        assert_eq!(value["w"]["1"], serde_json::json!(0));
        let back: EdgeWeighting = serde_json::from_value(value).unwrap();
        assert_eq!(back, w);
    }

    /// The bijection at the largest exhaustive range: all graphs of degree
    /// up to 4 on 8 vertices, against the fan tree and one zigzag tree.
    #[test]
    fn bijection_exhaustive_n8_deg4() {
        let graphs = crate::sampling::enumerate_kempe(8, 4);
        let zigzag = Triangulation::new(8, [(2, 8), (3, 8), (3, 7), (4, 7), (4, 6)]).unwrap();
        for tree in [fan_tree(8), dual_tree(&zigzag)] {
            for g in &graphs {
                let w = induced_weighting(g, &tree).unwrap();
                assert!(is_admissible(&w));
                assert_eq!(&weighting_to_kempe(&w).unwrap(), g);
            }
        }
    }

    #[test]
    fn star_product_is_weighting_addition() {
        let n = 6;
        let graphs = crate::sampling::enumerate_kempe(n, 2);
        let tree = fan_tree(n);
        for g1 in graphs.iter().take(40) {
            for g2 in graphs.iter().take(40) {
                let star = star_product(g1, g2, &tree).unwrap();
                let w1 = induced_weighting(g1, &tree).unwrap();
                let w2 = induced_weighting(g2, &tree).unwrap();
                assert_eq!(
                    induced_weighting(&star, &tree).unwrap(),
                    w1.add(&w2).unwrap()
                );
                assert_eq!(star.degree(), g1.degree() + g2.degree());
                // commutative
                assert_eq!(&star_product(g2, g1, &tree).unwrap(), &star);
            }
        }
    }
}
