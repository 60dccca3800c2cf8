//! The Plücker bracket algebra of Gr(2,n): three-term straightening into
//! the Kempe basis, tree-weight initial forms of the quadric relations, and
//! the tripod exponent semigroup of the degenerate toric fiber.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kempe::{crossing, EdgeWeighting, KempeError, KempeGraph};
use crate::tree::{DecomposedForest, SlotRef, TreeError, TrivalentTree, VertexId};

#[derive(Debug, Error)]
pub enum PlueckerError {
    #[error("quadric indices must satisfy i < j < k < l")]
    NonSortedQuadric,
    #[error("expected a binomial initial form, got {0} terms")]
    NonBinomial(usize),
    #[error("leaves {0} and {1} do not define a bracket")]
    InvalidBracket(usize, usize),
    #[error("exponents do not satisfy the gluing equations at pair {0}")]
    GluingViolation(usize),
    #[error(transparent)]
    Kempe(#[from] KempeError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A monomial in the Plücker coordinates `Z_{ij}`, stored as a sorted
/// exponent map. Unlike [`KempeGraph`], crossings are allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PlueckerMonomial {
    n: usize,
    exps: BTreeMap<(usize, usize), u64>,
}

impl fmt::Display for PlueckerMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, ((i, j), e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            write!(f, "Z{i}{j}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl PlueckerMonomial {
    pub fn one(n: usize) -> Self {
        PlueckerMonomial {
            n,
            exps: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn exponents(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.exps
    }

    pub fn mul_bracket(&mut self, i: usize, j: usize, e: u64) {
        if e > 0 {
            let key = if i < j { (i, j) } else { (j, i) };
            *self.exps.entry(key).or_insert(0) += e;
        }
    }

    pub fn div_bracket(&mut self, i: usize, j: usize) {
        let key = if i < j { (i, j) } else { (j, i) };
        match self.exps.get_mut(&key) {
            Some(e) if *e > 1 => *e -= 1,
            Some(_) => {
                self.exps.remove(&key);
            }
            None => panic!("dividing by absent bracket Z{i}{j}"),
        }
    }

    pub fn degree(&self) -> u64 {
        self.exps.values().sum()
    }

    /// `w^T(m) = Σ exponent × path weight`.
    pub fn weight(&self, tree: &TrivalentTree) -> Result<u64, PlueckerError> {
        let mut total = 0;
        for (&(i, j), &e) in &self.exps {
            total += e * tree.path_weight(i, j)? as u64;
        }
        Ok(total)
    }

    pub fn is_noncrossing(&self) -> bool {
        let support: Vec<(usize, usize)> = self.exps.keys().copied().collect();
        support
            .iter()
            .enumerate()
            .all(|(x, c1)| support[x + 1..].iter().all(|c2| !crossing(*c1, *c2)))
    }

    pub fn to_kempe(&self) -> Result<KempeGraph, KempeError> {
        KempeGraph::new(self.n, self.exps.iter().map(|(&c, &m)| (c, m)))
    }

    pub fn from_kempe(g: &KempeGraph) -> Self {
        PlueckerMonomial {
            n: g.n(),
            exps: g.chords().clone(),
        }
    }

    /// First crossing pair in lexicographic `(i1, j1, i2, j2)` order,
    /// normalized so that `i1 < i2 < j1 < j2`.
    fn smallest_crossing(&self) -> Option<(usize, usize, usize, usize)> {
        let support: Vec<(usize, usize)> = self.exps.keys().copied().collect();
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (x, &(a, b)) in support.iter().enumerate() {
            for &(c, d) in &support[x + 1..] {
                if crossing((a, b), (c, d)) {
                    let tup = if a < c { (a, b, c, d) } else { (c, d, a, b) };
                    if best.is_none_or(|t| tup < t) {
                        best = Some(tup);
                    }
                }
            }
        }
        best
    }

    /// Evaluates the monomial on a 2×n matrix given by columns, brackets
    /// being 2×2 minors.
    pub fn eval(&self, cols: &[(Complex64, Complex64)]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (&(i, j), &e) in &self.exps {
            let minor = cols[i - 1].0 * cols[j - 1].1 - cols[j - 1].0 * cols[i - 1].1;
            for _ in 0..e {
                acc *= minor;
            }
        }
        acc
    }
}

/// An integer combination of bracket monomials. For straightening output
/// every key is noncrossing (a Kempe basis element); initial forms may keep
/// a crossing monomial. Coefficients are always nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BracketCombination {
    terms: BTreeMap<PlueckerMonomial, i64>,
}

impl fmt::Display for BracketCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.unsigned_abs();
            if a != 1 {
                write!(f, "{a}·")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl BracketCombination {
    pub fn add_term(&mut self, m: PlueckerMonomial, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<PlueckerMonomial, i64> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, cols: &[(Complex64, Complex64)]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, &c)| m.eval(cols) * c as f64)
            .sum()
    }
}

/// Expands `m_{G1}·m_{G2}` in the Kempe basis by repeatedly applying the
/// three-term relation `Z_{i1,j1}Z_{i2,j2} = Z_{i1,i2}Z_{j1,j2} +
/// Z_{i1,j2}Z_{i2,j1}` to the lexicographically smallest crossing pair.
///
/// Each application strictly decreases `(Σ span, -Σ span²)` over the chords
/// lexicographically, so the recursion terminates.
pub fn straighten(g1: &KempeGraph, g2: &KempeGraph) -> Result<BracketCombination, PlueckerError> {
    if g1.n() != g2.n() {
        return Err(PlueckerError::Kempe(KempeError::SizeMismatch {
            graph: g1.n(),
            tree: g2.n(),
        }));
    }
    let mut product = PlueckerMonomial::from_kempe(g1);
    for (&(i, j), &m) in g2.chords() {
        product.mul_bracket(i, j, m);
    }
    let mut memo: HashMap<PlueckerMonomial, BTreeMap<PlueckerMonomial, u64>> = HashMap::new();
    let expanded = expand(&product, &mut memo);
    let mut out = BracketCombination::default();
    for (m, c) in expanded {
        debug_assert!(m.is_noncrossing());
        out.add_term(m, c as i64);
    }
    Ok(out)
}

fn expand(
    m: &PlueckerMonomial,
    memo: &mut HashMap<PlueckerMonomial, BTreeMap<PlueckerMonomial, u64>>,
) -> BTreeMap<PlueckerMonomial, u64> {
    if let Some(hit) = memo.get(m) {
        return hit.clone();
    }
    let result = match m.smallest_crossing() {
        None => BTreeMap::from([(m.clone(), 1u64)]),
        Some((i1, j1, i2, j2)) => {
            let mut base = m.clone();
            base.div_bracket(i1, j1);
            base.div_bracket(i2, j2);
            let mut parallel = base.clone();
            parallel.mul_bracket(i1, i2, 1);
            parallel.mul_bracket(j1, j2, 1);
            let mut nested = base;
            nested.mul_bracket(i1, j2, 1);
            nested.mul_bracket(i2, j1, 1);
            let mut acc = expand(&parallel, memo);
            for (k, c) in expand(&nested, memo) {
                *acc.entry(k).or_insert(0) += c;
            }
            acc
        }
    };
    memo.insert(m.clone(), result.clone());
    result
}

/// The unique maximal-weight term of the straightened product together with
/// its weight. By the leading-term theorem its coefficient is 1, its weight
/// is `w^T(G1) + w^T(G2)`, and it equals `G1 ∗_T G2`.
pub fn leading_term(
    g1: &KempeGraph,
    g2: &KempeGraph,
    tree: &TrivalentTree,
) -> Result<(KempeGraph, u64), PlueckerError> {
    let expansion = straighten(g1, g2)?;
    let mut best: Option<(u64, &PlueckerMonomial)> = None;
    for m in expansion.terms().keys() {
        let w = m.weight(tree)?;
        if best.is_none_or(|(bw, _)| w > bw) {
            best = Some((w, m));
        }
    }
    let (w, m) = best.expect("straightening of nonempty graphs is nonempty");
    Ok((m.to_kempe()?, w))
}

/// The terms of maximal `w^T` of the Plücker quadric
/// `Z_{ij}Z_{kl} - Z_{ik}Z_{jl} + Z_{il}Z_{jk}`, signs retained.
///
/// For a trivalent tree exactly two of the three monomials tie at the
/// maximum; anything else is reported as a structural error.
pub fn initial_form(
    quadric: (usize, usize, usize, usize),
    tree: &TrivalentTree,
) -> Result<BracketCombination, PlueckerError> {
    let (i, j, k, l) = quadric;
    if !(i < j && j < k && k < l) || i < 1 || l > tree.n() {
        return Err(PlueckerError::NonSortedQuadric);
    }
    let term = |a: usize, b: usize, c: usize, d: usize| {
        let mut m = PlueckerMonomial::one(tree.n());
        m.mul_bracket(a, b, 1);
        m.mul_bracket(c, d, 1);
        m
    };
    let monomials = [
        (term(i, j, k, l), 1i64),
        (term(i, k, j, l), -1i64),
        (term(i, l, j, k), 1i64),
    ];
    let weights: Vec<u64> = monomials
        .iter()
        .map(|(m, _)| m.weight(tree))
        .collect::<Result<_, _>>()?;
    let max = *weights.iter().max().unwrap();
    let mut out = BracketCombination::default();
    for ((m, c), w) in monomials.into_iter().zip(&weights) {
        if *w == max {
            out.add_term(m, c);
        }
    }
    if out.len() != 2 {
        return Err(PlueckerError::NonBinomial(out.len()));
    }
    Ok(out)
}

/// An element of the tripod exponent semigroup: per tripod, arc counts
/// `x_{01}, x_{02}, x_{12}` between its three slots, subject to the gluing
/// equations (slot weights agree across glued pairs).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripodExponents {
    forest: DecomposedForest,
    x: Vec<[u64; 3]>,
}

impl TripodExponents {
    pub fn zero(forest: DecomposedForest) -> Self {
        let x = vec![[0; 3]; forest.tripods().len()];
        TripodExponents { forest, x }
    }

    pub fn new(forest: DecomposedForest, x: Vec<[u64; 3]>) -> Result<Self, PlueckerError> {
        let t = TripodExponents { forest, x };
        match t.gluing_violation() {
            None => Ok(t),
            Some(p) => Err(PlueckerError::GluingViolation(p)),
        }
    }

    pub fn forest(&self) -> &DecomposedForest {
        &self.forest
    }

    /// `[x_{01}, x_{02}, x_{12}]` for each tripod, slot-pair order.
    pub fn exponents(&self) -> &[[u64; 3]] {
        &self.x
    }

    pub fn bump(&mut self, tripod: usize, s: usize, t: usize) {
        let idx = match (s.min(t), s.max(t)) {
            (0, 1) => 0,
            (0, 2) => 1,
            (1, 2) => 2,
            _ => panic!("slots must be distinct in 0..3"),
        };
        self.x[tripod][idx] += 1;
    }

    /// `w_{(τ,k)}(x) = x_{kj} + x_{km}`: arcs using slot `k`.
    pub fn slot_weight(&self, s: SlotRef) -> u64 {
        let [x01, x02, x12] = self.x[s.tripod];
        match s.slot {
            0 => x01 + x02,
            1 => x01 + x12,
            2 => x02 + x12,
            _ => panic!("slot out of range"),
        }
    }

    fn gluing_violation(&self) -> Option<usize> {
        self.forest
            .pairs()
            .iter()
            .position(|p| self.slot_weight(p.plus) != self.slot_weight(p.minus))
    }

    pub fn satisfies_gluing(&self) -> bool {
        self.gluing_violation().is_none()
    }

    /// Half the sum of the distinguished slot weights.
    pub fn degree(&self) -> u64 {
        let total: u64 = (1..=self.forest.n())
            .map(|leaf| self.slot_weight(self.forest.distinguished_slot(leaf)))
            .sum();
        debug_assert_eq!(total % 2, 0);
        total / 2
    }

    pub fn add(&self, other: &TripodExponents) -> Result<TripodExponents, PlueckerError> {
        if self.forest != other.forest {
            return Err(PlueckerError::Kempe(KempeError::TreeMismatch));
        }
        let x = self
            .x
            .iter()
            .zip(&other.x)
            .map(|(a, b)| [a[0] + b[0], a[1] + b[1], a[2] + b[2]])
            .collect();
        TripodExponents::new(self.forest.clone(), x)
    }
}

/// `Φ(Z_{ij}) = Z_{γ(ij)}`: the product of one bracket per tripod along the
/// leaf path, recorded as exponents. Always degree 1.
pub fn phi(
    i: VertexId,
    j: VertexId,
    forest: &DecomposedForest,
) -> Result<TripodExponents, PlueckerError> {
    let tree = forest.tree();
    if i == j || !tree.is_leaf(i) || !tree.is_leaf(j) {
        return Err(PlueckerError::InvalidBracket(i, j));
    }
    let path = tree.path_edges(i, j)?;
    let mut out = TripodExponents::zero(forest.clone());
    let mut v = tree.other_end(path[0], i);
    for pair in path.windows(2) {
        let tripod = forest.tripod_of_vertex(v);
        let slots = forest.tripods()[tripod].slots;
        let s = slots.iter().position(|&e| e == pair[0]).unwrap();
        let t = slots.iter().position(|&e| e == pair[1]).unwrap();
        out.bump(tripod, s, t);
        v = tree.other_end(pair[1], v);
    }
    debug_assert!(out.satisfies_gluing());
    Ok(out)
}

/// Per-tripod solve `x_{st} = (N_s + N_t - N_u)/2`; the gluing equations
/// hold automatically because glued slots share one tree-edge weight.
pub fn exponents_from_weighting(
    w: &EdgeWeighting,
    forest: &DecomposedForest,
) -> Result<TripodExponents, PlueckerError> {
    if let Some(v) = w.admissibility_violation() {
        return Err(PlueckerError::Kempe(KempeError::NotAdmissible(v)));
    }
    let x = forest
        .tripods()
        .iter()
        .map(|t| {
            let [n0, n1, n2] = [
                w.weight(t.slots[0]),
                w.weight(t.slots[1]),
                w.weight(t.slots[2]),
            ];
            [
                (n0 + n1 - n2) / 2,
                (n0 + n2 - n1) / 2,
                (n1 + n2 - n0) / 2,
            ]
        })
        .collect();
    TripodExponents::new(forest.clone(), x)
}

/// Inverse of [`exponents_from_weighting`]: read each tree edge's weight
/// off a slot weight.
pub fn weighting_from_exponents(x: &TripodExponents) -> Result<EdgeWeighting, PlueckerError> {
    let forest = x.forest();
    let tree = forest.tree();
    let mut w = vec![0u64; tree.edge_count()];
    for leaf in 1..=tree.n() {
        let slot = forest.distinguished_slot(leaf);
        w[tree.leaf_edge(leaf)] = x.slot_weight(slot);
    }
    for p in forest.pairs() {
        w[p.edge] = x.slot_weight(p.plus);
    }
    Ok(EdgeWeighting::new(tree.clone(), w)?)
}
