//! Euclidean polygon geometry: the Hopf map from spin-framed edges to
//! vectors in R³, zero-momentum 2×n matrices, closed polygons and their
//! diagonals, bending flows, the momentum cone D_n, and Kamiyama–Yoshida
//! stratum detection and canonicalization.

use std::collections::BTreeSet;

use nalgebra::{Rotation3, Unit, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{dual_tree, Triangulation};

#[derive(Debug, Error)]
pub enum PolygonError {
    #[error("vertices {0} and {1} are adjacent or equal; no diagonal")]
    InvalidDiagonal(usize, usize),
    #[error("side-length vector has a negative entry")]
    NegativeLength,
    #[error("side lengths violate the cone inequality 2·r_i ≤ Σ r_j")]
    Infeasible,
    #[error("bending is undefined: the diagonal has length {0:.3e} below tolerance")]
    UndefinedBend(f64),
    #[error("matrix momentum residual {0:.3e} exceeds tolerance; polygon does not close")]
    NotClosed(f64),
    #[error("matrix has rank < 2")]
    DegenerateInput,
    #[error("polygon has {polygon} edges but the triangulation expects {expected}")]
    SizeMismatch { polygon: usize, expected: usize },
}

/// The Hopf map `F(z,w) = ¼(z z̄ − w w̄, 2 Re(w z̄), 2 Im(w z̄))`.
///
/// Its image is the edge vector carried by the spin-framed edge `(z, w)`;
/// the norm identity `‖F(z,w)‖ = (|z|² + |w|²)/4` is exact.
pub fn hopf(z: Complex64, w: Complex64) -> Vector3<f64> {
    let wz = w * z.conj();
    Vector3::new(
        0.25 * (z.norm_sqr() - w.norm_sqr()),
        0.5 * wz.re,
        0.5 * wz.im,
    )
}

/// A 2×n complex matrix whose columns are imploded spin-framed edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "FramedJson", into = "FramedJson")]
pub struct FramedPolygon {
    cols: Vec<(Complex64, Complex64)>,
}

#[derive(Serialize, Deserialize)]
struct FramedJson {
    cols: Vec<[[f64; 2]; 2]>,
}

impl From<FramedPolygon> for FramedJson {
    fn from(a: FramedPolygon) -> Self {
        FramedJson {
            cols: a
                .cols
                .iter()
                .map(|(z, w)| [[z.re, z.im], [w.re, w.im]])
                .collect(),
        }
    }
}

impl From<FramedJson> for FramedPolygon {
    fn from(j: FramedJson) -> Self {
        FramedPolygon {
            cols: j
                .cols
                .into_iter()
                .map(|[[zr, zi], [wr, wi]]| (Complex64::new(zr, zi), Complex64::new(wr, wi)))
                .collect(),
        }
    }
}

/// The momentum residual of the diagonal SU(2) action: a traceless
/// Hermitian 2×2 matrix `[[d, c], [c̄, -d]]`. It vanishes exactly when the
/// two rows of the matrix are orthogonal and of equal length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Momentum {
    pub d: f64,
    pub c: Complex64,
}

impl Su2Momentum {
    pub fn norm(&self) -> f64 {
        (2.0 * self.d * self.d + 2.0 * self.c.norm_sqr()).sqrt()
    }
}

impl FramedPolygon {
    pub fn new(cols: Vec<(Complex64, Complex64)>) -> Self {
        FramedPolygon { cols }
    }

    pub fn n(&self) -> usize {
        self.cols.len()
    }

    pub fn cols(&self) -> &[(Complex64, Complex64)] {
        &self.cols
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.cols
            .iter()
            .map(|(z, w)| z.norm_sqr() + w.norm_sqr())
            .sum()
    }

    /// `μ_G(A) = ½ [[(‖Z‖²−‖W‖²)/2, Z·W̄], [W·Z̄, ...]]` where Z, W are the
    /// rows.
    pub fn mu_su2(&self) -> Su2Momentum {
        let mut zz = 0.0;
        let mut ww = 0.0;
        let mut zw = Complex64::new(0.0, 0.0);
        for (z, w) in &self.cols {
            zz += z.norm_sqr();
            ww += w.norm_sqr();
            zw += z * w.conj();
        }
        Su2Momentum {
            d: 0.25 * (zz - ww),
            c: 0.5 * zw,
        }
    }

    /// `μ_{T_n}(A) = (‖C_1‖²/2, …, ‖C_n‖²/2)`: half squared column norms.
    pub fn mu_torus(&self) -> Vec<f64> {
        self.cols
            .iter()
            .map(|(z, w)| 0.5 * (z.norm_sqr() + w.norm_sqr()))
            .collect()
    }

    /// Plücker coordinate `Z_{ij}`: the 2×2 minor on columns `i`, `j`
    /// (1-based).
    pub fn bracket(&self, i: usize, j: usize) -> Complex64 {
        let (zi, wi) = self.cols[i - 1];
        let (zj, wj) = self.cols[j - 1];
        zi * wj - zj * wi
    }

    /// Replaces the rows by an orthogonal equal-norm pair spanning the same
    /// row space, preserving the Frobenius norm. All 2×2 minors scale by a
    /// common factor.
    pub fn project_to_zero_level(&self) -> Result<FramedPolygon, PolygonError> {
        // Gram matrix G = A·A*
        let mut g11 = 0.0;
        let mut g22 = 0.0;
        let mut g12 = Complex64::new(0.0, 0.0);
        for (z, w) in &self.cols {
            g11 += z.norm_sqr();
            g22 += w.norm_sqr();
            g12 += z * w.conj();
        }
        let tr = g11 + g22;
        let det = g11 * g22 - g12.norm_sqr();
        if det <= 1e-24 * tr * tr {
            return Err(PolygonError::DegenerateInput);
        }
        // Hermitian square root: √G = (G + √det·I)/√(tr + 2√det)
        let sd = det.sqrt();
        let denom = (tr + 2.0 * sd).sqrt();
        let s11 = (g11 + sd) / denom;
        let s22 = (g22 + sd) / denom;
        let s12 = g12 / denom;
        // inverse of √G, then rescale rows to share the norm √(tr/2)
        let dets = sd;
        let scale = (tr / 2.0).sqrt();
        let m11 = scale * s22 / dets;
        let m12 = -s12 * (scale / dets);
        let m22 = scale * s11 / dets;
        let m21 = -s12.conj() * (scale / dets);
        let cols = self
            .cols
            .iter()
            .map(|&(z, w)| (m11 * z + m12 * w, m21 * z + m22 * w))
            .collect();
        Ok(FramedPolygon { cols })
    }

    /// The closed polygon `(F(C_1), …, F(C_n))`. Requires the SU(2)
    /// momentum residual to be small relative to the matrix scale.
    pub fn edges_of(&self) -> Result<Polygon, PolygonError> {
        let residual = self.mu_su2().norm();
        let scale = 0.5 * self.frobenius_sq() + 1.0;
        if residual > 1e-9 * scale {
            return Err(PolygonError::NotClosed(residual));
        }
        Ok(Polygon::new(
            self.cols.iter().map(|&(z, w)| hopf(z, w)).collect(),
        ))
    }
}

/// A closed polygon in R³ given by its edge vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "PolygonJson", into = "PolygonJson")]
pub struct Polygon {
    edges: Vec<Vector3<f64>>,
}

#[derive(Serialize, Deserialize)]
struct PolygonJson {
    edges: Vec<[f64; 3]>,
}

impl From<Polygon> for PolygonJson {
    fn from(p: Polygon) -> Self {
        PolygonJson {
            edges: p.edges.iter().map(|e| [e.x, e.y, e.z]).collect(),
        }
    }
}

impl From<PolygonJson> for Polygon {
    fn from(j: PolygonJson) -> Self {
        Polygon {
            edges: j.edges.into_iter().map(Vector3::from).collect(),
        }
    }
}

impl Polygon {
    pub fn new(edges: Vec<Vector3<f64>>) -> Self {
        Polygon { edges }
    }

    pub fn n(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vector3<f64>] {
        &self.edges
    }

    pub fn closure_residual(&self) -> f64 {
        self.edges.iter().sum::<Vector3<f64>>().norm()
    }

    pub fn side_lengths(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.norm()).collect()
    }

    pub fn perimeter(&self) -> f64 {
        self.edges.iter().map(|e| e.norm()).sum()
    }

    /// Vertices `p_1 = 0`, `p_{k+1} = p_k + e_k` (n entries).
    pub fn vertices(&self) -> Vec<Vector3<f64>> {
        let mut out = Vec::with_capacity(self.n());
        let mut p = Vector3::zeros();
        for e in &self.edges {
            out.push(p);
            p += e;
        }
        out
    }

    /// The diagonal vector `p_b − p_a = e_a + … + e_{b−1}` for nonadjacent
    /// vertices `a < b`.
    pub fn diagonal(&self, a: usize, b: usize) -> Result<Vector3<f64>, PolygonError> {
        let n = self.n();
        if a < 1 || b <= a || b > n || b - a < 2 || (a, b) == (1, n) {
            return Err(PolygonError::InvalidDiagonal(a, b));
        }
        Ok(self.arc_sum(a, b))
    }

    /// `e_a + … + e_{b−1}` without the adjacency validation; used
    /// internally where the arc is known to come from a tree edge.
    pub(crate) fn arc_sum(&self, a: usize, b: usize) -> Vector3<f64> {
        (a..b).map(|k| self.edges[k - 1]).sum()
    }

    pub fn diagonal_length(&self, a: usize, b: usize) -> Result<f64, PolygonError> {
        Ok(self.diagonal(a, b)?.norm())
    }

    /// Bends the polygon: edges `e_a..e_{b−1}` rotate about the diagonal
    /// `(a, b)` by `theta` (right-hand rule about `p_b − p_a`); everything
    /// else stays put. Closure, side lengths, and the bent diagonal are
    /// preserved.
    pub fn bend(&self, a: usize, b: usize, theta: f64) -> Result<Polygon, PolygonError> {
        let d = self.diagonal(a, b)?;
        let tol = 1e-8 * self.perimeter();
        if d.norm() <= tol {
            return Err(PolygonError::UndefinedBend(d.norm()));
        }
        let rot = Rotation3::from_axis_angle(&Unit::new_normalize(d), theta);
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(idx, e)| {
                let i = idx + 1;
                if (a..b).contains(&i) {
                    rot * e
                } else {
                    *e
                }
            })
            .collect();
        Ok(Polygon { edges })
    }

    /// Bending on Kamiyama–Yoshida classes: a zero diagonal fixes the
    /// point, so the flow acts as the identity there.
    pub fn bend_ky(&self, a: usize, b: usize, theta: f64) -> Result<Polygon, PolygonError> {
        match self.bend(a, b, theta) {
            Ok(p) => Ok(p),
            Err(PolygonError::UndefinedBend(_)) => Ok(self.clone()),
            Err(e) => Err(e),
        }
    }
}

/// Membership in the cone `D_n = { r ≥ 0 : 2 r_i ≤ Σ_j r_j }` of feasible
/// side-length vectors.
pub fn in_cone_dn(r: &[f64]) -> Result<bool, PolygonError> {
    in_cone_dn_slack(r, 0.0)
}

/// Same inequalities with additive slack, for testing sampled data.
pub fn in_cone_dn_slack(r: &[f64], slack: f64) -> Result<bool, PolygonError> {
    if r.iter().any(|&x| x < 0.0) {
        return Err(PolygonError::NegativeLength);
    }
    let total: f64 = r.iter().sum();
    Ok(r.iter().all(|&x| 2.0 * x <= total + slack))
}

/// The subset of a triangulation's diagonals that vanish on a polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumSignature {
    pub triangulation: Triangulation,
    pub zero_diagonals: BTreeSet<(usize, usize)>,
}

/// Diagonals of `t` shorter than `tol × perimeter`. A fully collapsed
/// polygon sits in the deepest stratum.
pub fn stratum_signature(
    p: &Polygon,
    t: &Triangulation,
    tol: f64,
) -> Result<StratumSignature, PolygonError> {
    if p.n() != t.n() {
        return Err(PolygonError::SizeMismatch {
            polygon: p.n(),
            expected: t.n(),
        });
    }
    let perimeter = p.perimeter();
    let zero_diagonals = t
        .diagonals()
        .iter()
        .copied()
        .filter(|&(a, b)| perimeter == 0.0 || p.arc_sum(a, b).norm() < tol * perimeter)
        .collect();
    Ok(StratumSignature {
        triangulation: t.clone(),
        zero_diagonals,
    })
}

/// Canonical representative of the T-congruence class of `p`.
///
/// Splits the edges into groups along the vanished diagonals of the
/// stratum and rotates each group to a canonical frame: first nonzero edge
/// along +x, first off-axis edge into the half-plane y > 0. Groups of
/// zero edges stay zero; collinear groups skip the second normalization.
pub fn ky_canonicalize(p: &Polygon, t: &Triangulation, tol: f64) -> Result<Polygon, PolygonError> {
    let sig = stratum_signature(p, t, tol)?;
    let tree = dual_tree(t);
    let cut: BTreeSet<usize> = tree
        .internal_edges()
        .filter(|&e| {
            let arc = tree.edge_arc(e).expect("internal edge has an arc");
            sig.zero_diagonals.contains(&arc)
        })
        .collect();

    // leaves per connected component of the split forest
    let n = p.n();
    let nv = 2 * n - 2;
    let mut comp = vec![usize::MAX; nv + 1];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for start in 1..=nv {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = groups.len();
        groups.push(Vec::new());
        let mut stack = vec![start];
        comp[start] = id;
        while let Some(v) = stack.pop() {
            if tree.is_leaf(v) {
                groups[id].push(v);
            }
            for &e in tree.incident_edges(v) {
                if cut.contains(&e) {
                    continue;
                }
                let u = tree.other_end(e, v);
                if comp[u] == usize::MAX {
                    comp[u] = id;
                    stack.push(u);
                }
            }
        }
        groups[id].sort_unstable();
    }

    let scale = tol * p.perimeter();
    let mut edges = p.edges().to_vec();
    for group in groups.iter().filter(|g| !g.is_empty()) {
        let members: Vec<Vector3<f64>> = group.iter().map(|&leaf| edges[leaf - 1]).collect();
        let Some(first) = members.iter().find(|e| e.norm() > scale) else {
            continue; // all-zero group stays as zeros
        };
        let r1 = rotation_to_x(first);
        let rotated: Vec<Vector3<f64>> = members.iter().map(|e| r1 * e).collect();
        let r2 = rotated
            .iter()
            .find(|e| (e.y * e.y + e.z * e.z).sqrt() > scale)
            .map(|e| {
                let phi = e.z.atan2(e.y);
                Rotation3::from_axis_angle(&Vector3::x_axis(), -phi)
            })
            .unwrap_or_else(Rotation3::identity);
        for (&leaf, e) in group.iter().zip(rotated) {
            edges[leaf - 1] = r2 * e;
        }
    }
    Ok(Polygon::new(edges))
}

/// A rotation carrying `v` to the positive x-axis.
fn rotation_to_x(v: &Vector3<f64>) -> Rotation3<f64> {
    let u = Unit::new_normalize(*v);
    match Rotation3::rotation_between(&u, &Vector3::x_axis()) {
        Some(r) => r,
        // antipodal: any half-turn perpendicular to x works
        None => Rotation3::from_axis_angle(&Vector3::y_axis(), std::f64::consts::PI),
    }
}

/// Samples a closed polygon with prescribed side lengths: random unit
/// directions, then projected gradient descent with backtracking line
/// search on `‖Σ r_i u_i‖²`, run to residual 1e-12 of the perimeter
/// (capped at 10⁴ iterations per start).
pub fn sample_linkage(r: &[f64], seed: u64) -> Result<Polygon, PolygonError> {
    if !in_cone_dn(r)? {
        return Err(PolygonError::Infeasible);
    }
    let total: f64 = r.iter().sum();
    if total == 0.0 {
        return Ok(Polygon::new(vec![Vector3::zeros(); r.len()]));
    }
    let w: Vec<f64> = r.iter().map(|x| x / total).collect();
    for restart in 0..8 {
        if let Some(units) = descend(&w, seed.wrapping_add(restart)) {
            let edges = units
                .into_iter()
                .zip(r)
                .map(|(u, &len)| u * len)
                .collect();
            return Ok(Polygon::new(edges));
        }
    }
    Err(PolygonError::Infeasible)
}

fn descend(w: &[f64], seed: u64) -> Option<Vec<Vector3<f64>>> {
    let mut rng = crate::sampling::rng(seed);
    let n = w.len();
    let mut u: Vec<Vector3<f64>> = (0..n)
        .map(|_| crate::sampling::random_unit_vector(&mut rng))
        .collect();
    let closure = |u: &[Vector3<f64>]| -> Vector3<f64> {
        u.iter().zip(w).map(|(ui, &wi)| ui * wi).sum()
    };
    let mut step = 1.0;
    for _ in 0..10_000 {
        let s = closure(&u);
        let f = s.norm_squared();
        if s.norm() <= 1e-12 {
            return Some(u);
        }
        // spherical gradient of ‖s‖² at u_i is 2 w_i (s − (s·u_i) u_i)
        let grad: Vec<Vector3<f64>> = u
            .iter()
            .zip(w)
            .map(|(ui, &wi)| (s - ui * s.dot(ui)) * (2.0 * wi))
            .collect();
        let gnorm2: f64 = grad.iter().map(|g| g.norm_squared()).sum();
        if gnorm2 < 1e-300 {
            return None; // stuck at a collinear critical point
        }
        step *= 2.0;
        loop {
            let trial: Vec<Vector3<f64>> = u
                .iter()
                .zip(&grad)
                .map(|(ui, g)| {
                    let v = ui - g * step;
                    let norm = v.norm();
                    if norm > 0.0 {
                        v / norm
                    } else {
                        *ui
                    }
                })
                .collect();
            if closure(&trial).norm_squared() <= f - 0.25 * step * gnorm2 {
                u = trial;
                break;
            }
            step *= 0.5;
            if step < 1e-18 {
                return None;
            }
        }
    }
    (closure(&u).norm() <= 1e-12).then_some(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use approx::assert_relative_eq;
    use rand::Rng;

    #[test]
    fn hopf_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(hopf(one, zero), Vector3::new(0.25, 0.0, 0.0));
        assert_eq!(hopf(zero, one), Vector3::new(-0.25, 0.0, 0.0));
        assert_eq!(hopf(one, one), Vector3::new(0.0, 0.5, 0.0));
    }

    #[test]
    fn hopf_norm_identity() {
        let mut rng = sampling::rng(1);
        for _ in 0..1000 {
            let z = sampling::random_complex(&mut rng);
            let w = sampling::random_complex(&mut rng);
            let expected = 0.25 * (z.norm_sqr() + w.norm_sqr());
            assert_relative_eq!(hopf(z, w).norm(), expected, max_relative = 1e-14);
        }
    }

    #[test]
    fn hopf_fiber_is_a_phase() {
        let mut rng = sampling::rng(2);
        for _ in 0..200 {
            let z = sampling::random_complex(&mut rng);
            let w = sampling::random_complex(&mut rng);
            let c = sampling::random_phase(&mut rng);
            assert_relative_eq!(
                (hopf(c * z, c * w) - hopf(z, w)).norm(),
                0.0,
                epsilon = 1e-14
            );
            // reverse: equal images force a common phase
            let (z2, w2) = (c * z, c * w);
            let recovered = if z.norm() > w.norm() { z2 / z } else { w2 / w };
            assert_relative_eq!(recovered.norm(), 1.0, max_relative = 1e-12);
            assert_relative_eq!((z2 - recovered * z).norm(), 0.0, epsilon = 1e-12);
            assert_relative_eq!((w2 - recovered * w).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn mu_su2_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let id = FramedPolygon::new(vec![(one, zero), (zero, one)]);
        assert!(id.mu_su2().norm() < 1e-15);
        let parallel = FramedPolygon::new(vec![(one, one), (zero, zero)]);
        assert!(parallel.mu_su2().norm() > 0.1);
    }

    #[test]
    fn projection_reaches_zero_level() {
        let mut rng = sampling::rng(3);
        for n in 2..=8 {
            let a = FramedPolygon::new(
                (0..n)
                    .map(|_| {
                        (
                            sampling::random_complex(&mut rng),
                            sampling::random_complex(&mut rng),
                        )
                    })
                    .collect(),
            );
            let p = a.project_to_zero_level().unwrap();
            assert!(p.mu_su2().norm() < 1e-12 * p.frobenius_sq().max(1.0));
            assert_relative_eq!(p.frobenius_sq(), a.frobenius_sq(), max_relative = 1e-12);
            // minors proportional to the originals
            let mut ratio: Option<Complex64> = None;
            for i in 1..=n {
                for j in (i + 1)..=n {
                    let orig = a.bracket(i, j);
                    if orig.norm() > 1e-9 {
                        let r = p.bracket(i, j) / orig;
                        if let Some(r0) = ratio {
                            assert_relative_eq!((r - r0).norm(), 0.0, epsilon = 1e-9);
                        } else {
                            ratio = Some(r);
                        }
                    }
                }
            }
            // idempotence
            let pp = p.project_to_zero_level().unwrap();
            for (c1, c2) in pp.cols().iter().zip(p.cols()) {
                assert_relative_eq!((c1.0 - c2.0).norm(), 0.0, epsilon = 1e-12);
                assert_relative_eq!((c1.1 - c2.1).norm(), 0.0, epsilon = 1e-12);
            }
        }
        // rank 1 fails
        let one = Complex64::new(1.0, 0.0);
        let rank1 = FramedPolygon::new(vec![(one, one), (one, one)]);
        assert!(rank1.project_to_zero_level().is_err());
    }

    #[test]
    fn edges_of_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let a = FramedPolygon::new(vec![(one, zero), (zero, one)]);
        let p = a.edges_of().unwrap();
        assert_eq!(p.edges()[0], Vector3::new(0.25, 0.0, 0.0));
        assert_eq!(p.edges()[1], Vector3::new(-0.25, 0.0, 0.0));

        let mut rng = sampling::rng(4);
        for _ in 0..50 {
            let a = FramedPolygon::new(
                (0..6)
                    .map(|_| {
                        (
                            sampling::random_complex(&mut rng),
                            sampling::random_complex(&mut rng),
                        )
                    })
                    .collect(),
            )
            .project_to_zero_level()
            .unwrap();
            let p = a.edges_of().unwrap();
            assert!(p.closure_residual() < 1e-10 * p.perimeter().max(1.0));
            // side lengths are quarter squared column norms
            for (edge, (z, w)) in p.edges().iter().zip(a.cols()) {
                assert_relative_eq!(
                    edge.norm(),
                    0.25 * (z.norm_sqr() + w.norm_sqr()),
                    max_relative = 1e-12
                );
            }
            // μ_torus doubles the side lengths
            for (mu, edge) in a.mu_torus().iter().zip(p.edges()) {
                assert_relative_eq!(*mu, 2.0 * edge.norm(), max_relative = 1e-12);
            }
            // phase scaling of a column fixes the polygon
            let mut cols = a.cols().to_vec();
            let c = sampling::random_phase(&mut rng);
            cols[2] = (c * cols[2].0, c * cols[2].1);
            let p2 = FramedPolygon::new(cols).edges_of().unwrap();
            for (e1, e2) in p.edges().iter().zip(p2.edges()) {
                assert_relative_eq!((e1 - e2).norm(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn ggms_identity() {
        let mut rng = sampling::rng(5);
        for _ in 0..100 {
            let a = FramedPolygon::new(
                (0..5)
                    .map(|_| {
                        (
                            sampling::random_complex(&mut rng),
                            sampling::random_complex(&mut rng),
                        )
                    })
                    .collect(),
            )
            .project_to_zero_level()
            .unwrap();
            let fro = a.frobenius_sq();
            for i in 1..=5 {
                let lhs = a.mu_torus()[i - 1];
                let mut sum = 0.0;
                for j in 1..=5 {
                    if j != i {
                        sum += a.bracket(i.min(j), i.max(j)).norm_sqr();
                    }
                }
                assert_relative_eq!(lhs, sum / fro, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn diagonal_examples() {
        // unit square in the plane
        let square = Polygon::new(vec![
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
            Vector3::new(-1.0, 0.0, 0.0),
            Vector3::new(0.0, -1.0, 0.0),
        ]);
        assert_relative_eq!(
            square.diagonal_length(1, 3).unwrap(),
            2.0_f64.sqrt(),
            max_relative = 1e-15
        );
        assert!(square.diagonal(1, 2).is_err());
        assert!(square.diagonal(1, 4).is_err()); // (1, n) is a side

        // degenerate 2-gon: the vertex separation equals a side length
        let twogon = Polygon::new(vec![
            Vector3::new(0.25, 0.0, 0.0),
            Vector3::new(-0.25, 0.0, 0.0),
        ]);
        let verts = twogon.vertices();
        assert_relative_eq!((verts[1] - verts[0]).norm(), 0.25, max_relative = 1e-15);
    }

    #[test]
    fn bend_square() {
        let square = Polygon::new(vec![
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
            Vector3::new(-1.0, 0.0, 0.0),
            Vector3::new(0.0, -1.0, 0.0),
        ]);
        let identity = square.bend(1, 3, 0.0).unwrap();
        assert_eq!(identity, square);

        let full = square.bend(1, 3, std::f64::consts::TAU).unwrap();
        for (e1, e2) in full.edges().iter().zip(square.edges()) {
            assert_relative_eq!((e1 - e2).norm(), 0.0, epsilon = 1e-12);
        }

        // θ = π reflects the moving pair through the diagonal line
        let flipped = square.bend(1, 3, std::f64::consts::PI).unwrap();
        assert_relative_eq!(flipped.closure_residual(), 0.0, epsilon = 1e-12);
        for (f, s) in flipped.side_lengths().iter().zip(square.side_lengths()) {
            assert_relative_eq!(f, &s, max_relative = 1e-12);
        }
        assert_relative_eq!(
            flipped.edges()[0].dot(&Vector3::new(0.0, 1.0, 0.0)),
            1.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            flipped.diagonal_length(1, 3).unwrap(),
            2.0_f64.sqrt(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn bend_preserves_invariants() {
        let mut rng = sampling::rng(6);
        for _ in 0..100 {
            let p = sampling::random_closed_polygon(7, &mut rng);
            let theta = 4.0 * (rng.random::<f64>() - 0.5) * std::f64::consts::PI;
            let q = p.bend(2, 5, theta).unwrap();
            assert!(q.closure_residual() < 1e-9 * p.perimeter());
            for (a, b) in p.side_lengths().iter().zip(q.side_lengths()) {
                assert_relative_eq!(a, &b, max_relative = 1e-9);
            }
            assert_relative_eq!(
                p.diagonal_length(2, 5).unwrap(),
                q.diagonal_length(2, 5).unwrap(),
                max_relative = 1e-9
            );
            // diagonal nested inside the moving part is preserved too
            assert_relative_eq!(
                p.diagonal_length(3, 5).unwrap(),
                q.diagonal_length(3, 5).unwrap(),
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn bend_commutes_for_noncrossing_diagonals() {
        let mut rng = sampling::rng(7);
        for _ in 0..50 {
            let p = sampling::random_closed_polygon(8, &mut rng);
            let t1 = rng.random::<f64>() * 2.0;
            let t2 = rng.random::<f64>() * 2.0;
            // (1,3) and (4,7) are disjoint; (1,4) nests (2,4)... use noncrossing pairs
            let ab = (1, 3);
            let cd = (4, 7);
            let q1 = p.bend(ab.0, ab.1, t1).unwrap().bend(cd.0, cd.1, t2).unwrap();
            let q2 = p.bend(cd.0, cd.1, t2).unwrap().bend(ab.0, ab.1, t1).unwrap();
            for (e1, e2) in q1.edges().iter().zip(q2.edges()) {
                assert!((e1 - e2).norm() < 1e-9 * p.perimeter());
            }
        }
    }

    #[test]
    fn cone_membership() {
        assert!(in_cone_dn(&[1.0, 1.0, 1.0, 1.0]).unwrap());
        assert!(!in_cone_dn(&[3.0, 1.0, 1.0]).unwrap());
        assert!(in_cone_dn(&[2.0, 1.0, 1.0]).unwrap()); // boundary
        assert!(in_cone_dn(&[]).unwrap());
        assert!(in_cone_dn(&[-1.0, 2.0]).is_err());

        let mut rng = sampling::rng(8);
        for _ in 0..500 {
            let p = sampling::random_closed_polygon(6, &mut rng);
            assert!(in_cone_dn_slack(&p.side_lengths(), 1e-12).unwrap());
        }
    }

    #[test]
    fn sample_linkage_examples() {
        let tri = sample_linkage(&[1.0, 1.0, 1.0], 0).unwrap();
        assert!(tri.closure_residual() < 1e-9);
        for len in tri.side_lengths() {
            assert_relative_eq!(len, 1.0, epsilon = 1e-9);
        }

        let hex = sample_linkage(&[1.0; 6], 7).unwrap();
        assert!(hex.closure_residual() < 1e-9);
        for len in hex.side_lengths() {
            assert_relative_eq!(len, 1.0, epsilon = 1e-9);
        }

        assert!(matches!(
            sample_linkage(&[3.0, 1.0, 1.0], 0),
            Err(PolygonError::Infeasible)
        ));
    }

    #[test]
    fn stratum_detection() {
        let t = Triangulation::fan(6).unwrap();
        let mut rng = sampling::rng(9);
        let generic = sampling::random_closed_polygon(6, &mut rng);
        let sig = stratum_signature(&generic, &t, 1e-8).unwrap();
        assert!(sig.zero_diagonals.is_empty());

        let bowtie = sampling::bowtie_hexagon(&mut rng);
        let sig = stratum_signature(&bowtie, &t, 1e-8).unwrap();
        assert_eq!(
            sig.zero_diagonals.iter().copied().collect::<Vec<_>>(),
            vec![(1, 4)]
        );

        let collapsed = Polygon::new(vec![Vector3::zeros(); 6]);
        let sig = stratum_signature(&collapsed, &t, 1e-8).unwrap();
        assert_eq!(&sig.zero_diagonals, t.diagonals());
    }

    #[test]
    fn ky_canonicalization() {
        let t = Triangulation::fan(6).unwrap();
        let mut rng = sampling::rng(10);

        // global rotations collapse to one representative
        let p = sampling::random_closed_polygon(6, &mut rng);
        let rot = Rotation3::from_axis_angle(
            &Unit::new_normalize(sampling::random_unit_vector(&mut rng)),
            1.234,
        );
        let q = Polygon::new(p.edges().iter().map(|e| rot * e).collect());
        let cp = ky_canonicalize(&p, &t, 1e-8).unwrap();
        let cq = ky_canonicalize(&q, &t, 1e-8).unwrap();
        for (e1, e2) in cp.edges().iter().zip(cq.edges()) {
            assert!((e1 - e2).norm() < 1e-9 * p.perimeter());
        }

        // idempotent
        let cc = ky_canonicalize(&cp, &t, 1e-8).unwrap();
        for (e1, e2) in cc.edges().iter().zip(cp.edges()) {
            assert!((e1 - e2).norm() < 1e-9 * p.perimeter());
        }

        // bowties with different relative orientations are all congruent
        let b1 = sampling::bowtie_hexagon(&mut rng);
        let b2 = sampling::bowtie_hexagon(&mut rng);
        let c1 = ky_canonicalize(&b1, &t, 1e-8).unwrap();
        let c2 = ky_canonicalize(&b2, &t, 1e-8).unwrap();
        for (e1, e2) in c1.edges().iter().zip(c2.edges()) {
            assert!((e1 - e2).norm() < 1e-9);
        }
    }
}
