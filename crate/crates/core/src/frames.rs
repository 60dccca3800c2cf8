//! Imploded spin-frames on edges and diagonals: the `[g, λϖ₁] ↔ C²`
//! dictionary, triangle closing, ρ-flip normalization, extension of an
//! edge framing to the decomposed forest and restriction back, torus
//! actions on frames, and the frame-level bending lift.

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polygon::{hopf, FramedPolygon, Polygon};
use crate::tree::{DecomposedForest, EdgeId, SlotRef, VertexId};

#[derive(Debug, Error)]
pub enum FrameError {
    #[error("edge framing does not close: residual {0:.3e}")]
    NotClosed(f64),
    #[error("framing must be normalized first")]
    MustNormalizeFirst,
    #[error("level condition violated: residual {0:.3e}")]
    LevelViolation(f64),
    #[error("bending is undefined: λ = {0:.3e} at the requested edge")]
    UndefinedBend(f64),
    #[error("edge {0} is not an internal edge of the forest")]
    UnknownEdge(EdgeId),
    #[error("phase vector entries must be unit complex numbers")]
    NotUnitPhase,
    #[error("expected {expected} frames, got {got}")]
    SizeMismatch { expected: usize, got: usize },
}

/// An element of SU(2), stored as the first column `(a, b)` of the matrix
/// `[[a, -b̄], [b, ā]]`; equivalently the unit quaternion `a + b·j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2 {
    pub a: Complex64,
    pub b: Complex64,
}

/// `ρ = [[0, 1], [-1, 0]]`, the order-4 element with `ρ ϖ₁ ρ⁻¹ = -ϖ₁`.
pub const RHO: Su2 = Su2 {
    a: Complex64::new(0.0, 0.0),
    b: Complex64::new(-1.0, 0.0),
};

impl Su2 {
    pub const IDENTITY: Su2 = Su2 {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
    };

    pub fn new(a: Complex64, b: Complex64) -> Self {
        Su2 { a, b }
    }

    /// Quaternion components `[w, x, y, z]` with `a = w + xi`, `b = y + zi`.
    pub fn quaternion(&self) -> [f64; 4] {
        [self.a.re, self.a.im, self.b.re, self.b.im]
    }

    pub fn from_quaternion(q: [f64; 4]) -> Self {
        Su2 {
            a: Complex64::new(q[0], q[1]),
            b: Complex64::new(q[2], q[3]),
        }
    }

    pub fn to_matrix(&self) -> [[Complex64; 2]; 2] {
        [[self.a, -self.b.conj()], [self.b, self.a.conj()]]
    }

    pub fn mul(&self, rhs: &Su2) -> Su2 {
        Su2 {
            a: self.a * rhs.a - self.b.conj() * rhs.b,
            b: self.b * rhs.a + self.a.conj() * rhs.b,
        }
    }

    pub fn inv(&self) -> Su2 {
        Su2 {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    /// Right multiplication by the diagonal torus element `diag(c, c̄)`.
    pub fn right_phase(&self, c: Complex64) -> Su2 {
        Su2 {
            a: self.a * c,
            b: self.b * c,
        }
    }

    pub fn norm(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr()).sqrt()
    }

    pub fn renormalized(&self) -> Su2 {
        let n = self.norm();
        Su2 {
            a: self.a / n,
            b: self.b / n,
        }
    }

    pub fn distance(&self, other: &Su2) -> f64 {
        ((self.a - other.a).norm_sqr() + (self.b - other.b).norm_sqr()).sqrt()
    }
}

/// The unit vector `f(Ad*_g(ϖ₁))` scaled to norm one: the axis a frame
/// points along. Identity maps to `(1,0,0)` and `ρ` to `(-1,0,0)`;
/// right-multiplying by `ρ` negates the axis.
pub fn ad_star(g: &Su2) -> Vector3<f64> {
    4.0 * hopf(g.a, g.b)
}

/// A canonical SU(2) lift of a unit direction: `ad_star` is a section
/// inverse. The first column gets a real nonnegative first entry when
/// possible, else a real nonnegative second entry.
pub fn hopf_section(dir: Vector3<f64>) -> Su2 {
    let a = ((1.0 + dir.x) / 2.0).max(0.0).sqrt();
    if a > 0.0 {
        Su2 {
            a: Complex64::new(a, 0.0),
            b: Complex64::new(dir.y, dir.z) / (2.0 * a),
        }
    } else {
        Su2 {
            a: Complex64::new(0.0, 0.0),
            b: Complex64::new(1.0, 0.0),
        }
    }
}

/// An imploded spin-frame `[g, λϖ₁]`: a unit quaternion and a nonnegative
/// scale. All frames with `λ = 0` are the single imploded point, which is
/// what equality implements.
#[derive(Debug, Clone, Copy)]
pub struct SpinFrame {
    pub g: Su2,
    pub lambda: f64,
}

impl PartialEq for SpinFrame {
    fn eq(&self, other: &Self) -> bool {
        if self.lambda == 0.0 && other.lambda == 0.0 {
            return true;
        }
        self.lambda == other.lambda && self.g == other.g
    }
}

impl SpinFrame {
    pub const ZERO: SpinFrame = SpinFrame {
        g: Su2::IDENTITY,
        lambda: 0.0,
    };

    pub fn new(g: Su2, lambda: f64) -> Self {
        SpinFrame { g, lambda }
    }

    /// The C² point `√(2λ)·(first column of g)`.
    pub fn c2(&self) -> (Complex64, Complex64) {
        let s = (2.0 * self.lambda).sqrt();
        (self.g.a * s, self.g.b * s)
    }

    /// Inverse dictionary: `λ = (|z|² + |w|²)/2`, `g` the normalized column.
    pub fn from_c2(z: Complex64, w: Complex64) -> Self {
        let norm_sq = z.norm_sqr() + w.norm_sqr();
        if norm_sq == 0.0 {
            return SpinFrame::ZERO;
        }
        let s = norm_sq.sqrt();
        SpinFrame {
            g: Su2::new(z / s, w / s),
            lambda: norm_sq / 2.0,
        }
    }

    /// The carried edge vector `F(c2) = (λ/2)·ad_star(g)`, of length `λ/2`.
    pub fn vector(&self) -> Vector3<f64> {
        (2.0 * self.lambda) * hopf(self.g.a, self.g.b)
    }

    /// Left action of SU(2).
    pub fn act(&self, h: &Su2) -> SpinFrame {
        SpinFrame {
            g: h.mul(&self.g),
            lambda: self.lambda,
        }
    }
}

/// Closes a spin-framed triangle: given the frames of two sides, returns
/// a third frame with `v₁ + v₂ + v₃ = 0`. `λ₃` is uniquely determined;
/// the torus ambiguity of `g₃` in the generic case is resolved by the
/// canonical [`hopf_section`] lift.
pub fn close_triangle(f1: &SpinFrame, f2: &SpinFrame) -> SpinFrame {
    match (f1.lambda == 0.0, f2.lambda == 0.0) {
        (true, true) => SpinFrame::ZERO,
        (false, true) => SpinFrame::new(f1.g.mul(&RHO), f1.lambda),
        (true, false) => SpinFrame::new(f2.g.mul(&RHO), f2.lambda),
        (false, false) => {
            let u = -(f1.vector() + f2.vector());
            let norm = u.norm();
            if norm == 0.0 {
                SpinFrame::ZERO
            } else {
                SpinFrame::new(hopf_section(u / norm), 2.0 * norm)
            }
        }
    }
}

/// Hamiltonian data for one slot of a framing: `λ` against twice the
/// length of the geometric object the slot is dual to.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlotHamiltonian {
    pub slot: SlotRef,
    pub edge: EdgeId,
    /// Leaf index, or the diagonal pair for internal edges.
    pub kind: SlotKind,
    pub lambda: f64,
    /// `2 × edge length` for leaves, `2 × diagonal length` for internal
    /// edges, measured on the restricted polygon.
    pub geometric: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlotKind {
    Leaf(VertexId),
    Diagonal(usize, usize),
}

/// Spin frames on every slot of a decomposed forest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FramingJson", into = "FramingJson")]
pub struct ForestFraming {
    forest: DecomposedForest,
    frames: Vec<[SpinFrame; 3]>,
}

#[derive(Serialize, Deserialize)]
struct FramingJson {
    forest: DecomposedForest,
    frames: Vec<SlotFrameJson>,
}

#[derive(Serialize, Deserialize)]
struct SlotFrameJson {
    slot: (usize, usize),
    g: [f64; 4],
    lambda: f64,
}

impl From<ForestFraming> for FramingJson {
    fn from(t: ForestFraming) -> Self {
        let frames = t
            .frames
            .iter()
            .enumerate()
            .flat_map(|(ti, fs)| {
                fs.iter().enumerate().map(move |(k, f)| SlotFrameJson {
                    slot: (ti, k),
                    g: f.g.quaternion(),
                    lambda: f.lambda,
                })
            })
            .collect();
        FramingJson {
            forest: t.forest,
            frames,
        }
    }
}

impl TryFrom<FramingJson> for ForestFraming {
    type Error = FrameError;
    fn try_from(j: FramingJson) -> Result<Self, FrameError> {
        let nt = j.forest.tripods().len();
        if j.frames.len() != 3 * nt {
            return Err(FrameError::SizeMismatch {
                expected: 3 * nt,
                got: j.frames.len(),
            });
        }
        let mut frames = vec![[SpinFrame::ZERO; 3]; nt];
        for sf in j.frames {
            let (t, k) = sf.slot;
            if t >= nt || k >= 3 {
                return Err(FrameError::SizeMismatch {
                    expected: 3 * nt,
                    got: usize::MAX,
                });
            }
            frames[t][k] = SpinFrame::new(Su2::from_quaternion(sf.g), sf.lambda);
        }
        Ok(ForestFraming {
            forest: j.forest,
            frames,
        })
    }
}

impl ForestFraming {
    pub fn forest(&self) -> &DecomposedForest {
        &self.forest
    }

    pub fn frame(&self, s: SlotRef) -> &SpinFrame {
        &self.frames[s.tripod][s.slot]
    }

    pub fn set_frame(&mut self, s: SlotRef, f: SpinFrame) {
        self.frames[s.tripod][s.slot] = f;
    }

    pub fn leaf_frame(&self, leaf: VertexId) -> &SpinFrame {
        self.frame(self.forest.distinguished_slot(leaf))
    }

    pub fn n(&self) -> usize {
        self.forest.n()
    }

    /// `max λ + 1`, the scale all tolerances are measured against.
    pub fn lambda_scale(&self) -> f64 {
        self.frames
            .iter()
            .flatten()
            .map(|f| f.lambda)
            .fold(0.0, f64::max)
            + 1.0
    }

    /// Momentum residual of each tripod: `‖Σ_k v_k‖`.
    pub fn tripod_residuals(&self) -> Vec<f64> {
        self.frames
            .iter()
            .map(|fs| fs.iter().map(SpinFrame::vector).sum::<Vector3<f64>>().norm())
            .collect()
    }

    /// `|λ_{ε⁺} − λ_{ε⁻}|` per glued pair: the T_d⁻ momentum residual.
    pub fn pair_mismatches(&self) -> Vec<f64> {
        self.forest
            .pairs()
            .iter()
            .map(|p| (self.frame(p.plus).lambda - self.frame(p.minus).lambda).abs())
            .collect()
    }

    pub fn max_tripod_residual(&self) -> f64 {
        self.tripod_residuals().into_iter().fold(0.0, f64::max)
    }

    pub fn max_pair_mismatch(&self) -> f64 {
        self.pair_mismatches().into_iter().fold(0.0, f64::max)
    }

    /// ρ-flip condition `g_{ε⁻} = g_{ε⁺}·ρ` at every glued pair carrying
    /// positive λ.
    pub fn is_normalized(&self, tol: f64) -> bool {
        self.forest.pairs().iter().all(|p| {
            let (fp, fm) = (self.frame(p.plus), self.frame(p.minus));
            fp.lambda.min(fm.lambda) <= tol || fm.g.distance(&fp.g.mul(&RHO)) <= tol
        })
    }

    /// The n distinguished-slot frames, in leaf order. Requires a
    /// normalized framing at both momentum levels; the returned edge
    /// framing closes.
    pub fn restrict_to_leaves(&self) -> Result<Vec<SpinFrame>, FrameError> {
        let tol = 1e-9 * self.lambda_scale();
        if !self.is_normalized(tol) {
            return Err(FrameError::MustNormalizeFirst);
        }
        let residual = self.max_tripod_residual().max(self.max_pair_mismatch());
        if residual > tol {
            return Err(FrameError::LevelViolation(residual));
        }
        Ok((1..=self.n()).map(|leaf| *self.leaf_frame(leaf)).collect())
    }

    /// The polygon carried by the leaf frames.
    pub fn leaf_polygon(&self) -> Polygon {
        Polygon::new((1..=self.n()).map(|l| self.leaf_frame(l).vector()).collect())
    }
}

/// Extends a closed imploded spin framing of the polygon edges to a
/// normalized, level-zero framing of the whole forest.
///
/// Follows the trivalent induction in reverse: each tripod whose two outer
/// slots are framed gets closed off, and the frame crosses the cut as
/// `(g·ρ⁻¹, λ)` so the ρ-flip convention holds exactly.
pub fn extend_framing(
    edges: &[SpinFrame],
    forest: &DecomposedForest,
) -> Result<ForestFraming, FrameError> {
    let n = forest.n();
    if edges.len() != n {
        return Err(FrameError::SizeMismatch {
            expected: n,
            got: edges.len(),
        });
    }
    let scale = edges.iter().map(|f| f.lambda).fold(0.0, f64::max) + 1.0;
    let closure = edges.iter().map(SpinFrame::vector).sum::<Vector3<f64>>();
    if closure.norm() > 1e-9 * scale {
        return Err(FrameError::NotClosed(closure.norm()));
    }

    let mut frames = vec![[SpinFrame::ZERO; 3]; forest.tripods().len()];
    let mut filled = vec![[false; 3]; forest.tripods().len()];
    for leaf in 1..=n {
        let s = forest.distinguished_slot(leaf);
        frames[s.tripod][s.slot] = edges[leaf - 1];
        filled[s.tripod][s.slot] = true;
    }
    let rho_inv = RHO.inv();
    for k in (1..forest.tripods().len()).rev() {
        let pair = forest
            .pairs()
            .iter()
            .find(|p| p.minus.tripod == k)
            .expect("every later tripod attaches along one pair");
        let att = pair.minus.slot;
        let others: Vec<usize> = (0..3).filter(|&s| s != att).collect();
        debug_assert!(filled[k][others[0]] && filled[k][others[1]]);
        let f3 = close_triangle(&frames[k][others[0]], &frames[k][others[1]]);
        frames[k][att] = f3;
        filled[k][att] = true;
        frames[pair.plus.tripod][pair.plus.slot] =
            SpinFrame::new(f3.g.mul(&rho_inv), f3.lambda);
        filled[pair.plus.tripod][pair.plus.slot] = true;
    }
    let framing = ForestFraming {
        forest: forest.clone(),
        frames,
    };
    debug_assert!(framing.max_tripod_residual() <= 1e-8 * scale);
    Ok(framing)
}

/// Normalizes a tripod-closed framing by the ρ-flip walk along the
/// trivalent order. Returns the normalized framing and the per-tripod
/// SU(2) witness `f` with `f·T = T'`.
pub fn normalize(t: &ForestFraming) -> (ForestFraming, Vec<Su2>) {
    let mut out = t.clone();
    let mut witness = vec![Su2::IDENTITY; t.forest.tripods().len()];
    #[allow(clippy::needless_range_loop)]
    for k in 1..t.forest.tripods().len() {
        let pair = t
            .forest
            .pairs()
            .iter()
            .find(|p| p.minus.tripod == k)
            .expect("attachment pair");
        let fp = *out.frame(pair.plus);
        let fm = *out.frame(pair.minus);
        if fp.lambda > 0.0 && fm.lambda > 0.0 {
            let f = fp.g.mul(&RHO).mul(&fm.g.inv()).renormalized();
            for s in 0..3 {
                out.frames[k][s] = out.frames[k][s].act(&f);
            }
            witness[k] = f;
        }
    }
    (out, witness)
}

/// Right action of the edge torus: leaf frame `i` becomes `g·diag(t_i, t̄_i)`.
/// The underlying polygon is unchanged.
pub fn edge_rotate_edges(
    edges: &[SpinFrame],
    phases: &[Complex64],
) -> Result<Vec<SpinFrame>, FrameError> {
    if edges.len() != phases.len() {
        return Err(FrameError::SizeMismatch {
            expected: edges.len(),
            got: phases.len(),
        });
    }
    if phases.iter().any(|c| (c.norm() - 1.0).abs() > 1e-9) {
        return Err(FrameError::NotUnitPhase);
    }
    Ok(edges
        .iter()
        .zip(phases)
        .map(|(f, &c)| SpinFrame::new(f.g.right_phase(c), f.lambda))
        .collect())
}

/// Edge rotation on a full framing: only the distinguished slots move.
pub fn edge_rotate(t: &ForestFraming, phases: &[Complex64]) -> Result<ForestFraming, FrameError> {
    if phases.len() != t.n() {
        return Err(FrameError::SizeMismatch {
            expected: t.n(),
            got: phases.len(),
        });
    }
    if phases.iter().any(|c| (c.norm() - 1.0).abs() > 1e-9) {
        return Err(FrameError::NotUnitPhase);
    }
    let mut out = t.clone();
    for leaf in 1..=t.n() {
        let s = t.forest.distinguished_slot(leaf);
        let f = out.frames[s.tripod][s.slot];
        out.frames[s.tripod][s.slot] = SpinFrame::new(f.g.right_phase(phases[leaf - 1]), f.lambda);
    }
    Ok(out)
}

/// The grading action `t_e(c)` for real `c > 0`: every leaf column of the
/// framed matrix scales by `c`, so leaf λ's scale by `c²` and the
/// perimeter by `c²`. Internal slots are untouched; degree-1 invariants
/// (the bracket products along leaf paths) scale by `c²`.
pub fn grading_scale(t: &ForestFraming, c: f64) -> ForestFraming {
    let mut out = t.clone();
    for leaf in 1..=t.n() {
        let s = t.forest.distinguished_slot(leaf);
        let f = out.frames[s.tripod][s.slot];
        out.frames[s.tripod][s.slot] = SpinFrame::new(f.g, c * c * f.lambda);
    }
    out
}

/// The frame-level bending flow at an internal edge: with `t = e^{iθ/2}`
/// the restricted polygon bends by `θ` about that edge's diagonal (the
/// double cover `t ↦ t²`).
///
/// The ε⁺ slot absorbs `diag(t̄, t)` on the right; the whole ε⁻ side is
/// then rotated by `h = g_{ε⁻} diag(t, t̄) g_{ε⁻}⁻¹`, which keeps the
/// result normalized and moves only one side of the polygon.
pub fn bend_lift(
    t: &ForestFraming,
    edge: EdgeId,
    phase: Complex64,
) -> Result<ForestFraming, FrameError> {
    if (phase.norm() - 1.0).abs() > 1e-9 {
        return Err(FrameError::NotUnitPhase);
    }
    let pair = t
        .forest
        .pair_for_edge(edge)
        .ok_or(FrameError::UnknownEdge(edge))?
        .clone();
    let tol = 1e-9 * t.lambda_scale();
    let lam = t.frame(pair.minus).lambda.min(t.frame(pair.plus).lambda);
    if lam <= tol {
        return Err(FrameError::UndefinedBend(lam));
    }
    // tripods on the ε⁻ side of the cut edge
    let tree = t.forest.tree();
    let minus_vertex = t.forest.tripods()[pair.minus.tripod].vertex;
    let moving: Vec<usize> = {
        let mut side = Vec::new();
        let mut stack = vec![minus_vertex];
        let mut seen = vec![false; 2 * t.n() - 1];
        seen[minus_vertex] = true;
        while let Some(v) = stack.pop() {
            if !tree.is_leaf(v) {
                side.push(t.forest.tripod_of_vertex(v));
            }
            for &e in tree.incident_edges(v) {
                if e == edge {
                    continue;
                }
                let u = tree.other_end(e, v);
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        side
    };
    let g_minus = t.frame(pair.minus).g;
    let h = g_minus
        .mul(&Su2::new(phase, Complex64::new(0.0, 0.0)))
        .mul(&g_minus.inv())
        .renormalized();
    let mut out = t.clone();
    {
        let fp = out.frames[pair.plus.tripod][pair.plus.slot];
        out.frames[pair.plus.tripod][pair.plus.slot] =
            SpinFrame::new(fp.g.right_phase(phase.conj()), fp.lambda);
    }
    for ti in moving {
        for s in 0..3 {
            out.frames[ti][s] = out.frames[ti][s].act(&h);
        }
    }
    Ok(out)
}

/// The Hamiltonian ledger: per slot, `λ` next to twice the length of the
/// polygon edge (distinguished slots) or diagonal (internal slots) of the
/// restricted polygon.
pub fn hamiltonians(t: &ForestFraming) -> Vec<SlotHamiltonian> {
    let polygon = t.leaf_polygon();
    let tree = t.forest.tree();
    let mut out = Vec::new();
    for leaf in 1..=t.n() {
        let slot = t.forest.distinguished_slot(leaf);
        out.push(SlotHamiltonian {
            slot,
            edge: tree.leaf_edge(leaf),
            kind: SlotKind::Leaf(leaf),
            lambda: t.frame(slot).lambda,
            geometric: 2.0 * polygon.edges()[leaf - 1].norm(),
        });
    }
    for pair in t.forest.pairs() {
        let (a, b) = tree.edge_arc(pair.edge).expect("internal edge has an arc");
        let len = polygon.arc_sum(a, b).norm();
        for slot in [pair.plus, pair.minus] {
            out.push(SlotHamiltonian {
                slot,
                edge: pair.edge,
                kind: SlotKind::Diagonal(a, b),
                lambda: t.frame(slot).lambda,
                geometric: 2.0 * len,
            });
        }
    }
    out
}

/// Lifts a polygon to a closed edge framing through the Hopf section,
/// with an independent random phase per edge. Zero edges lift to the
/// imploded point.
pub fn lift_polygon(p: &Polygon, rng: &mut rand_chacha::ChaCha8Rng) -> Vec<SpinFrame> {
    p.edges()
        .iter()
        .map(|e| {
            let len = e.norm();
            if len == 0.0 {
                SpinFrame::ZERO
            } else {
                let g = hopf_section(e / len).right_phase(crate::sampling::random_phase(rng));
                SpinFrame::new(g, 2.0 * len)
            }
        })
        .collect()
}

/// The 2×n matrix whose columns are the C² points of an edge framing.
pub fn framed_matrix(edges: &[SpinFrame]) -> FramedPolygon {
    FramedPolygon::new(edges.iter().map(SpinFrame::c2).collect())
}
