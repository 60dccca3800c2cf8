//! Verification suites: property-based checks anchored at a few exact
//! fixed points. The CLI `verify` subcommand and the acceptance test
//! target both run these.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::frames::{
    bend_lift, extend_framing, hamiltonians, lift_polygon, SlotKind,
};
use crate::kempe::{graph_weight, induced_weighting, star_product, weighting_to_kempe};
use crate::pluecker::{
    exponents_from_weighting, initial_form, phi, straighten, weighting_from_exponents,
    PlueckerMonomial, TripodExponents,
};
use crate::polygon::{
    in_cone_dn_slack, ky_canonicalize, sample_linkage, stratum_signature, FramedPolygon, Polygon,
    PolygonError,
};
use crate::sampling;
use crate::tree::{decompose, dual_tree, enumerate_triangulations, Triangulation};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(mut self, other: Report) -> Report {
        self.cases += other.cases;
        self.failures.extend(other.failures);
        self
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub threads: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: 0, // 0 = per-suite default
            trials: 0,
            seed: 0,
            tol: 1e-9,
            threads: default_threads(),
        }
    }
}

/// Worker count: `TORIC_THREADS` if set, else available parallelism.
pub fn default_threads() -> usize {
    std::env::var("TORIC_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        })
}

pub const SUITES: &[&str] = &[
    "semigroup",
    "initial-ideal",
    "hopf",
    "bending",
    "frames",
    "strata",
];

#[derive(Debug, thiserror::Error)]
#[error("unknown suite {0:?}; expected one of semigroup, initial-ideal, hopf, bending, frames, strata, all")]
pub struct UnknownSuite(pub String);

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<Report, UnknownSuite> {
    match name {
        "semigroup" => Ok(semigroup_suite(cfg)),
        "initial-ideal" => Ok(initial_ideal_suite(cfg)),
        "hopf" => Ok(hopf_suite(cfg)),
        "bending" => Ok(bending_suite(cfg)),
        "frames" => Ok(frames_suite(cfg)),
        "strata" => Ok(strata_suite(cfg)),
        "all" => {
            let mut report = Report {
                suite: "all".into(),
                cases: 0,
                failures: Vec::new(),
            };
            for s in SUITES {
                report = report.merge(run_suite(s, cfg)?);
            }
            Ok(report)
        }
        other => Err(UnknownSuite(other.to_string())),
    }
}

/// Fans `trials` independent checks across worker threads; each trial
/// derives its own generator from the base seed, so the report does not
/// depend on the thread count.
fn parallel_trials<F>(trials: usize, seed: u64, threads: usize, f: F) -> Vec<String>
where
    F: Fn(usize, &mut ChaCha8Rng) -> Result<(), String> + Sync,
{
    let threads = threads.max(1).min(trials.max(1));
    let mut failures: Vec<(usize, String)> = Vec::new();
    std::thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = (0..threads)
            .map(|worker| {
                scope.spawn(move || {
                    let mut local = Vec::new();
                    let mut idx = worker;
                    while idx < trials {
                        let mut rng = sampling::rng(seed ^ (0x9e3779b97f4a7c15u64.wrapping_mul(idx as u64 + 1)));
                        if let Err(msg) = f(idx, &mut rng) {
                            local.push((idx, format!("trial {idx}: {msg}")));
                        }
                        idx += threads;
                    }
                    local
                })
            })
            .collect();
        for h in handles {
            failures.extend(h.join().expect("verification worker panicked"));
        }
    });
    failures.sort();
    failures.into_iter().map(|(_, m)| m).collect()
}

/// Leading-term theorem, hexagon fixed points, and the bijection /
/// semigroup isomorphism chain. Exact integer checks throughout.
pub fn semigroup_suite(cfg: &VerifyConfig) -> Report {
    leading_term_report(cfg)
        .merge(hexagon_fixed_points_report())
        .merge(bijection_report(cfg))
        .merge(iso_chain_report(cfg))
}

/// Unique leading term of coefficient one at additive weight, equal to
/// `∗_T`: exhaustively over every triangulation and degree-1 pair, then on
/// random pairs of degree up to 3.
pub fn leading_term_report(cfg: &VerifyConfig) -> Report {
    let n_max = if cfg.n_max == 0 { 7 } else { cfg.n_max.min(8) };
    let mut cases = 0;
    let mut failures = Vec::new();

    for n in 4..=n_max.min(7) {
        for t in enumerate_triangulations(n).expect("n >= 3") {
            let tree = dual_tree(&t);
            let chords: Vec<(usize, usize)> = (1..=n)
                .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
                .collect();
            for &c1 in &chords {
                for &c2 in &chords {
                    cases += 1;
                    let g1 = crate::kempe::KempeGraph::single(n, c1.0, c1.1).unwrap();
                    let g2 = crate::kempe::KempeGraph::single(n, c2.0, c2.1).unwrap();
                    if let Err(msg) = check_leading_term(&g1, &g2, &tree) {
                        failures.push(format!("degree-1 pair {c1:?}·{c2:?} on {t:?}: {msg}"));
                    }
                }
            }
        }
    }

    // random pairs of degree <= 3 on random triangulations of 6..=8 vertices
    let trials = if cfg.trials == 0 { 500 } else { cfg.trials };
    cases += trials;
    failures.extend(parallel_trials(trials, cfg.seed, cfg.threads, |idx, rng| {
        let n = 6 + idx % 3;
        let t = sampling::random_triangulation(n, rng);
        let tree = dual_tree(&t);
        let g1 = sampling::random_kempe(n, 1 + rng.random_range(0..3), rng);
        let g2 = sampling::random_kempe(n, 1 + rng.random_range(0..3), rng);
        check_leading_term(&g1, &g2, &tree)
    }));

    Report {
        suite: "semigroup/leading-term".into(),
        cases,
        failures,
    }
}

/// Two hexagon fixed points: `w_{1,4} = 5` on the caterpillar dual to the
/// triangulation {26, 36, 35}, and the 3-tripod decomposition of
/// `Φ(Z_14)` on the symmetric tree dual to {13, 35, 15}.
pub fn hexagon_fixed_points_report() -> Report {
    let mut cases = 0;
    let mut failures = Vec::new();

    // the caterpillar path weight...
    cases += 1;
    let caterpillar = dual_tree(&Triangulation::new(6, [(2, 6), (3, 6), (3, 5)]).unwrap());
    if caterpillar.path_weight(1, 4).unwrap() != 5 {
        failures.push("hexagon caterpillar: w_{1,4} != 5".into());
    }
    // ...and the 3-tripod bracket decomposition on the symmetric tree
    cases += 1;
    let symmetric = decompose(&dual_tree(
        &Triangulation::new(6, [(1, 3), (3, 5), (1, 5)]).unwrap(),
    ));
    match phi(1, 4, &symmetric) {
        Ok(x) => {
            let touched = x
                .exponents()
                .iter()
                .filter(|t| t.iter().sum::<u64>() > 0)
                .count();
            if touched != 3 || x.degree() != 1 {
                failures.push(format!(
                    "symmetric hexagon: Φ(Z_14) touches {touched} tripods at degree {}",
                    x.degree()
                ));
            }
        }
        Err(e) => failures.push(format!("Φ(Z_14) failed: {e}")),
    }

    Report {
        suite: "semigroup/hexagon".into(),
        cases,
        failures,
    }
}

/// Exhaustive graph ↔ weighting round trips on small trees.
pub fn bijection_report(cfg: &VerifyConfig) -> Report {
    let n_max = if cfg.n_max == 0 { 7 } else { cfg.n_max.min(8) };
    let mut cases = 0;
    let mut failures = Vec::new();

    for n in 3..=n_max.min(7) {
        let graphs = sampling::enumerate_kempe(n, 3);
        let mut trees = vec![dual_tree(&Triangulation::fan(n).unwrap())];
        let mut rng = sampling::rng(cfg.seed);
        if n <= 6 {
            trees = enumerate_triangulations(n)
                .unwrap()
                .iter()
                .map(dual_tree)
                .collect();
        } else {
            for _ in 0..3 {
                trees.push(dual_tree(&sampling::random_triangulation(n, &mut rng)));
            }
        }
        for tree in &trees {
            for g in &graphs {
                cases += 1;
                let w = induced_weighting(g, tree).unwrap();
                if crate::kempe::is_admissible(&w) {
                    match weighting_to_kempe(&w) {
                        Ok(back) if &back == g => {}
                        Ok(back) => {
                            failures.push(format!("bijection: {g} -> w -> {back}"));
                        }
                        Err(e) => failures.push(format!("bijection: {g}: {e}")),
                    }
                } else {
                    failures.push(format!("induced weighting of {g} not admissible"));
                }
            }
        }
    }

    Report {
        suite: "semigroup/bijection".into(),
        cases,
        failures,
    }
}

/// The isomorphism chain `S_n^T ≅ W_n^T ≅ P_n^T` on random elements:
/// homomorphism, grading, round trips, and `Φ` respecting multiplication.
pub fn iso_chain_report(cfg: &VerifyConfig) -> Report {
    let mut cases = 0;
    let mut failures = Vec::new();

    // semigroup isomorphism chain S ≅ W ≅ P on random elements
    let iso_trials = if cfg.trials == 0 { 1000 } else { cfg.trials };
    cases += iso_trials;
    failures.extend(parallel_trials(iso_trials, cfg.seed ^ 0xa5a5, cfg.threads, |_, rng| {
        let n = 4 + rng.random_range(0..5);
        let t = sampling::random_triangulation(n, rng);
        let tree = dual_tree(&t);
        let forest = decompose(&tree);
        let g1 = sampling::random_kempe(n, 1 + rng.random_range(0..3), rng);
        let g2 = sampling::random_kempe(n, 1 + rng.random_range(0..3), rng);
        let w1 = induced_weighting(&g1, &tree).unwrap();
        let w2 = induced_weighting(&g2, &tree).unwrap();
        let star = star_product(&g1, &g2, &tree).map_err(|e| e.to_string())?;
        // Ω is a homomorphism of graded semigroups
        let ws = induced_weighting(&star, &tree).unwrap();
        if ws != w1.add(&w2).unwrap() {
            return Err("Ω(G1 ∗ G2) != Ω(G1) + Ω(G2)".into());
        }
        if star.degree() != g1.degree() + g2.degree() {
            return Err("degree not additive under ∗".into());
        }
        // W ≅ P: additive, degree-preserving, and a round trip
        let x1 = exponents_from_weighting(&w1, &forest).map_err(|e| e.to_string())?;
        let x2 = exponents_from_weighting(&w2, &forest).map_err(|e| e.to_string())?;
        let xs = exponents_from_weighting(&ws, &forest).map_err(|e| e.to_string())?;
        if x1.add(&x2).map_err(|e| e.to_string())? != xs {
            return Err("exponents not additive".into());
        }
        if x1.degree() != w1.degree() || xs.degree() != star.degree() {
            return Err("degree mismatch across the isomorphism chain".into());
        }
        if weighting_from_exponents(&xs).map_err(|e| e.to_string())? != ws {
            return Err("weighting/exponents round trip failed".into());
        }
        // Φ respects multiplication: Σ phi over chords = exponents of w_G
        let mut sum = TripodExponents::zero(forest.clone());
        for (&(i, j), &m) in g1.chords() {
            for _ in 0..m {
                sum = sum.add(&phi(i, j, &forest).unwrap()).unwrap();
            }
        }
        if sum != x1 {
            return Err("Σ Φ(Z_ij) over chords != exponents of the weighting".into());
        }
        Ok(())
    }));

    Report {
        suite: "semigroup/iso-chain".into(),
        cases,
        failures,
    }
}

/// One leading-term check: the straightening of `m_{G1}·m_{G2}` must have
/// a unique maximal-weight term with coefficient 1 at weight
/// `w^T(G1) + w^T(G2)`, equal to the star product.
pub fn check_leading_term(
    g1: &crate::kempe::KempeGraph,
    g2: &crate::kempe::KempeGraph,
    tree: &crate::tree::TrivalentTree,
) -> Result<(), String> {
    let expansion = straighten(g1, g2).map_err(|e| e.to_string())?;
    let target = graph_weight(g1, tree).unwrap() + graph_weight(g2, tree).unwrap();
    let mut max_terms = Vec::new();
    for (m, &c) in expansion.terms() {
        if !m.is_noncrossing() {
            return Err(format!("expansion term {m} is not Kempe"));
        }
        if c <= 0 {
            return Err(format!("coefficient {c} of {m} not positive"));
        }
        let w = m.weight(tree).unwrap();
        if w > target {
            return Err(format!("term {m} exceeds the weight bound"));
        }
        if w == target {
            max_terms.push((m.clone(), c));
        }
        let deg = g1.degree() + g2.degree();
        if m.degree() != deg {
            return Err(format!("term {m} has degree {} != {deg}", m.degree()));
        }
    }
    if max_terms.len() != 1 {
        return Err(format!("{} maximal-weight terms", max_terms.len()));
    }
    let (m, c) = &max_terms[0];
    if *c != 1 {
        return Err(format!("leading coefficient {c} != 1"));
    }
    let star = star_product(g1, g2, tree).map_err(|e| e.to_string())?;
    if m.to_kempe().unwrap() != star {
        return Err(format!("leading term {m} != star product {star}"));
    }
    Ok(())
}

/// Initial-ideal binomiality: every quadric's initial form under `w^T` has
/// exactly two terms and the dropped term's deficit is a positive even
/// integer.
pub fn initial_ideal_suite(cfg: &VerifyConfig) -> Report {
    let n_max = if cfg.n_max == 0 { 8 } else { cfg.n_max };
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut rng = sampling::rng(cfg.seed);
    for n in 4..=n_max {
        let mut triangulations = vec![Triangulation::fan(n).unwrap()];
        for _ in 0..10 {
            triangulations.push(sampling::random_triangulation(n, &mut rng));
        }
        for t in &triangulations {
            let tree = dual_tree(t);
            for i in 1..=n {
                for j in (i + 1)..=n {
                    for k in (j + 1)..=n {
                        for l in (k + 1)..=n {
                            cases += 1;
                            match initial_form((i, j, k, l), &tree) {
                                Err(e) => failures.push(format!(
                                    "quadric ({i},{j},{k},{l}) on {t:?}: {e}"
                                )),
                                Ok(binomial) => {
                                    let mut m = PlueckerMonomial::one(n);
                                    m.mul_bracket(i, j, 1);
                                    m.mul_bracket(k, l, 1);
                                    let mut all = vec![m.weight(&tree).unwrap()];
                                    let mut m2 = PlueckerMonomial::one(n);
                                    m2.mul_bracket(i, k, 1);
                                    m2.mul_bracket(j, l, 1);
                                    all.push(m2.weight(&tree).unwrap());
                                    let mut m3 = PlueckerMonomial::one(n);
                                    m3.mul_bracket(i, l, 1);
                                    m3.mul_bracket(j, k, 1);
                                    all.push(m3.weight(&tree).unwrap());
                                    all.sort_unstable();
                                    let deficit = all[2] - all[0];
                                    if binomial.len() != 2
                                        || all[1] != all[2]
                                        || deficit == 0
                                        || deficit % 2 != 0
                                    {
                                        failures.push(format!(
                                            "quadric ({i},{j},{k},{l}) on {t:?}: weights {all:?}"
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Report {
        suite: "initial-ideal".into(),
        cases,
        failures,
    }
}

/// Hopf/momentum ledger and the momentum polytope D_n.
pub fn hopf_suite(cfg: &VerifyConfig) -> Report {
    hopf_ledger_report(cfg).merge(momentum_polytope_report(cfg))
}

/// The quote-anchored factor ledger: the Hopf norm identity, side lengths
/// as quarter squared column norms, closure of projected matrices, and the
/// GGMS momentum identity.
pub fn hopf_ledger_report(cfg: &VerifyConfig) -> Report {
    let trials = if cfg.trials == 0 { 10_000 } else { cfg.trials };
    let mut cases = 0;
    let mut failures = Vec::new();

    // ‖F(z,w)‖ = (|z|²+|w|²)/4 on random columns
    cases += trials;
    failures.extend(parallel_trials(trials, cfg.seed, cfg.threads, |_, rng| {
        let z = sampling::random_complex(rng);
        let w = sampling::random_complex(rng);
        let lhs = crate::polygon::hopf(z, w).norm();
        let rhs = 0.25 * (z.norm_sqr() + w.norm_sqr());
        if (lhs - rhs).abs() > 1e-12 * rhs.max(1e-300) {
            return Err(format!("hopf norm identity off by {:.3e}", (lhs - rhs).abs()));
        }
        Ok(())
    }));

    // closure, side lengths, and GGMS on projected matrices
    let matrix_trials = (trials / 10).max(100);
    cases += matrix_trials;
    failures.extend(parallel_trials(matrix_trials, cfg.seed ^ 0x11, cfg.threads, |idx, rng| {
        let n = 4 + idx % 5;
        let a = FramedPolygon::new(
            (0..n)
                .map(|_| (sampling::random_complex(rng), sampling::random_complex(rng)))
                .collect(),
        )
        .project_to_zero_level()
        .map_err(|e| e.to_string())?;
        let p = a.edges_of().map_err(|e| e.to_string())?;
        if p.closure_residual() > 1e-10 {
            return Err(format!("closure residual {:.3e}", p.closure_residual()));
        }
        for (edge, (z, w)) in p.edges().iter().zip(a.cols()) {
            let want = 0.25 * (z.norm_sqr() + w.norm_sqr());
            if (edge.norm() - want).abs() > 1e-12 * want.max(1e-300) {
                return Err("side length != ‖C_i‖²/4".into());
            }
        }
        let fro = a.frobenius_sq();
        for i in 1..=n {
            let lhs = a.mu_torus()[i - 1];
            let sum: f64 = (1..=n)
                .filter(|&j| j != i)
                .map(|j| a.bracket(i.min(j), i.max(j)).norm_sqr())
                .sum();
            if (lhs - sum / fro).abs() > 1e-9 * lhs.max(1e-300) {
                return Err("GGMS momentum identity failed".into());
            }
        }
        Ok(())
    }));

    Report {
        suite: "hopf/ledger".into(),
        cases,
        failures,
    }
}

/// Momentum polytope: closed polygons have side lengths in D_n, and the
/// linkage sampler succeeds exactly on D_n.
pub fn momentum_polytope_report(cfg: &VerifyConfig) -> Report {
    let trials = if cfg.trials == 0 { 10_000 } else { cfg.trials };
    let mut cases = 0;
    let mut failures = Vec::new();

    // momentum polytope: sampled closed polygons land in D_n
    cases += trials;
    failures.extend(parallel_trials(trials, cfg.seed ^ 0x22, cfg.threads, |idx, rng| {
        let n = 4 + idx % 6;
        let p = sampling::random_closed_polygon(n, rng);
        if !in_cone_dn_slack(&p.side_lengths(), 1e-12).unwrap() {
            return Err("closed polygon outside D_n".into());
        }
        Ok(())
    }));

    // the linkage sampler succeeds exactly on D_n
    let linkage_trials = (trials / 100).max(100);
    cases += 2 * linkage_trials;
    failures.extend(parallel_trials(linkage_trials, cfg.seed ^ 0x33, cfg.threads, |idx, rng| {
        let n = 4 + idx % 5;
        // feasible: side lengths of a random closed polygon are in D_n
        let r = sampling::random_closed_polygon(n, rng).side_lengths();
        let total: f64 = r.iter().sum();
        match sample_linkage(&r, rng.random::<u64>()) {
            Err(e) => return Err(format!("sampler failed on feasible r: {e}")),
            Ok(p) => {
                if p.closure_residual() > 1e-9 * total {
                    return Err("sampled linkage does not close".into());
                }
                for (len, want) in p.side_lengths().iter().zip(&r) {
                    if (len - want).abs() > 1e-9 * total {
                        return Err("sampled linkage has wrong side lengths".into());
                    }
                }
            }
        }
        // infeasible: inflate one entry beyond the half-perimeter
        let mut bad = r.clone();
        let k = rng.random_range(0..n);
        let rest: f64 = bad.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).sum();
        bad[k] = rest * (1.1 + rng.random::<f64>());
        match sample_linkage(&bad, rng.random::<u64>()) {
            Err(PolygonError::Infeasible) => Ok(()),
            Err(e) => Err(format!("wrong error on infeasible r: {e}")),
            Ok(_) => Err("sampler accepted an infeasible r".into()),
        }
    }));

    Report {
        suite: "hopf/polytope".into(),
        cases,
        failures,
    }
}

/// Bending flows: length and closure preservation, 2π-periodicity, and
/// commutation for noncrossing diagonals.
pub fn bending_suite(cfg: &VerifyConfig) -> Report {
    let trials = if cfg.trials == 0 { 1000 } else { cfg.trials };
    let tol = cfg.tol;
    let failures = parallel_trials(trials, cfg.seed, cfg.threads, |idx, rng| {
        let n = 5 + idx % 4;
        let p = sampling::random_closed_polygon(n, rng);
        let scale = p.perimeter();
        // two noncrossing diagonals: nested or disjoint
        let (d1, d2) = random_noncrossing_diagonals(n, rng);
        let (t1, t2) = (
            (rng.random::<f64>() - 0.5) * 6.0,
            (rng.random::<f64>() - 0.5) * 6.0,
        );

        let b1 = p.bend(d1.0, d1.1, t1).map_err(|e| e.to_string())?;
        if b1.closure_residual() > tol * scale {
            return Err("bend broke closure".into());
        }
        for (a, b) in p.side_lengths().iter().zip(b1.side_lengths()) {
            if (a - b).abs() > tol * scale {
                return Err("bend changed a side length".into());
            }
        }
        let keep = p.diagonal_length(d1.0, d1.1).unwrap();
        if (b1.diagonal_length(d1.0, d1.1).unwrap() - keep).abs() > tol * scale {
            return Err("bend changed its own diagonal".into());
        }

        let full = p
            .bend(d1.0, d1.1, std::f64::consts::TAU)
            .map_err(|e| e.to_string())?;
        for (a, b) in p.edges().iter().zip(full.edges()) {
            if (a - b).norm() > tol * scale {
                return Err("2π bend is not the identity".into());
            }
        }

        let q1 = p
            .bend(d1.0, d1.1, t1)
            .and_then(|q| q.bend(d2.0, d2.1, t2))
            .map_err(|e| e.to_string())?;
        let q2 = p
            .bend(d2.0, d2.1, t2)
            .and_then(|q| q.bend(d1.0, d1.1, t1))
            .map_err(|e| e.to_string())?;
        for (a, b) in q1.edges().iter().zip(q2.edges()) {
            if (a - b).norm() > tol * scale {
                return Err("noncrossing bends do not commute".into());
            }
        }
        Ok(())
    });
    Report {
        suite: "bending".into(),
        cases: trials,
        failures,
    }
}

fn random_noncrossing_diagonals(n: usize, rng: &mut ChaCha8Rng) -> ((usize, usize), (usize, usize)) {
    loop {
        let mut pick = || loop {
            let a = rng.random_range(1..=n);
            let b = rng.random_range(1..=n);
            let (a, b) = (a.min(b), a.max(b));
            if b - a >= 2 && (a, b) != (1, n) {
                return (a, b);
            }
        };
        let d1 = pick();
        let d2 = pick();
        if d1 != d2 && !crate::kempe::crossing(d1, d2) {
            return (d1, d2);
        }
    }
}

/// Frame pipeline: extension/restriction, the T_d⁻ orbit, the bending
/// lift against the polygon-level bend, and the Hamiltonian ledger.
pub fn frames_suite(cfg: &VerifyConfig) -> Report {
    let trials = if cfg.trials == 0 { 500 } else { cfg.trials };
    let tol = cfg.tol;
    let failures = parallel_trials(trials, cfg.seed, cfg.threads, |idx, rng| {
        let n = 4 + idx % 5;
        let t = sampling::random_triangulation(n, rng);
        let forest = decompose(&dual_tree(&t));
        let polygon = sampling::random_closed_polygon(n, rng);
        let edges = lift_polygon(&polygon, rng);
        let framing = extend_framing(&edges, &forest).map_err(|e| e.to_string())?;
        let scale = framing.lambda_scale();

        // restriction inverts extension on the nose
        let back = framing.restrict_to_leaves().map_err(|e| e.to_string())?;
        if back != edges {
            return Err("restrict ∘ extend changed the edge frames".into());
        }

        // acting by T_d⁻ then re-extending recovers the orbit: λ's exact,
        // glued frames off by antidiagonal phases
        let mut acted = framing.clone();
        let mut phases = Vec::new();
        for pair in forest.pairs() {
            let c = sampling::random_phase(rng);
            phases.push(c);
            let fp = *acted.frame(pair.plus);
            let fm = *acted.frame(pair.minus);
            acted.set_frame(pair.plus, crate::frames::SpinFrame::new(fp.g.right_phase(c), fp.lambda));
            acted.set_frame(
                pair.minus,
                crate::frames::SpinFrame::new(fm.g.right_phase(c.conj()), fm.lambda),
            );
        }
        if !acted.is_normalized(1e-9 * scale) {
            return Err("T_d⁻ action broke the ρ-flip normalization".into());
        }
        let re = extend_framing(&acted.restrict_to_leaves().map_err(|e| e.to_string())?, &forest)
            .map_err(|e| e.to_string())?;
        for (k, pair) in forest.pairs().iter().enumerate() {
            let l1 = re.frame(pair.plus).lambda;
            let l2 = acted.frame(pair.plus).lambda;
            if l1 != l2 {
                return Err("λ differs across the T_d⁻ orbit".into());
            }
            if l1 > 1e-6 * scale {
                // phases recovered on the two slots are conjugate
                let u_plus = re.frame(pair.plus).g.inv().mul(&acted.frame(pair.plus).g);
                let u_minus = re.frame(pair.minus).g.inv().mul(&acted.frame(pair.minus).g);
                if u_plus.b.norm() > 1e-7 || u_minus.b.norm() > 1e-7 {
                    return Err("orbit difference is not a diagonal phase".into());
                }
                if (u_plus.a * u_minus.a - Complex64::new(1.0, 0.0)).norm() > 1e-7 {
                    return Err("glued phases are not antidiagonal".into());
                }
                let _ = phases[k];
            }
        }

        // Hamiltonian ledger: λ = 2 × geometric length, internal edges
        // matching polygon diagonals
        for h in hamiltonians(&framing) {
            if (h.lambda - h.geometric).abs() > tol * scale {
                return Err(format!("ledger mismatch at {:?}", h.kind));
            }
            if let SlotKind::Diagonal(a, b) = h.kind {
                let d = framing.leaf_polygon().diagonal_length(a, b).unwrap();
                if (h.lambda - 2.0 * d).abs() > tol * scale {
                    return Err("internal λ != 2 × diagonal length".into());
                }
            }
        }

        // the bending lift against the polygon bend, with the half-angle
        // double cover t ↦ t²
        let pair = &forest.pairs()[rng.random_range(0..forest.pairs().len())];
        let (a, b) = forest.tree().edge_arc(pair.edge).unwrap();
        let lam = framing.frame(pair.minus).lambda;
        let theta = (rng.random::<f64>() - 0.5) * 6.0;
        let phase = Complex64::from_polar(1.0, theta / 2.0);
        if lam <= 1e-9 * scale {
            return Ok(()); // undefined bend; KY classes keep the point fixed
        }
        let lifted = bend_lift(&framing, pair.edge, phase).map_err(|e| e.to_string())?;
        if !lifted.is_normalized(1e-9 * scale) {
            return Err("bend_lift broke normalization".into());
        }
        let from_frames = lifted.leaf_polygon();
        let from_polygon = framing
            .leaf_polygon()
            .bend(a, b, theta)
            .map_err(|e| e.to_string())?;
        let c1 = ky_canonicalize(&from_frames, &t, 1e-8).map_err(|e| e.to_string())?;
        let c2 = ky_canonicalize(&from_polygon, &t, 1e-8).map_err(|e| e.to_string())?;
        let scale_p = from_polygon.perimeter();
        for (e1, e2) in c1.edges().iter().zip(c2.edges()) {
            if (e1 - e2).norm() > tol * scale_p {
                return Err("bend_lift and polygon bend disagree after canonicalization".into());
            }
        }
        // double cover: the same rotation with phase −t gives the same polygon
        let other = bend_lift(&framing, pair.edge, -phase).map_err(|e| e.to_string())?;
        let c3 = ky_canonicalize(&other.leaf_polygon(), &t, 1e-8).map_err(|e| e.to_string())?;
        for (e1, e2) in c1.edges().iter().zip(c3.edges()) {
            if (e1 - e2).norm() > tol * scale_p {
                return Err("±t phases differ at the polygon level".into());
            }
        }
        Ok(())
    });
    Report {
        suite: "frames".into(),
        cases: trials,
        failures,
    }
}

/// Kamiyama–Yoshida congruence: bowties collapse to one point, two-rhombi
/// octagons likewise, while bending on the outer diagonals still moves the
/// class.
pub fn strata_suite(cfg: &VerifyConfig) -> Report {
    let trials = if cfg.trials == 0 { 20 } else { cfg.trials };
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut rng = sampling::rng(cfg.seed);

    let hexagon = Triangulation::fan(6).unwrap();
    let mut bowtie_forms: Vec<Polygon> = Vec::new();
    for _ in 0..trials {
        cases += 1;
        let b = sampling::bowtie_hexagon(&mut rng);
        match stratum_signature(&b, &hexagon, 1e-8) {
            Ok(sig) if sig.zero_diagonals.contains(&(1, 4)) => {}
            Ok(sig) => failures.push(format!("bowtie stratum {:?} misses (1,4)", sig.zero_diagonals)),
            Err(e) => failures.push(format!("bowtie stratum: {e}")),
        }
        match ky_canonicalize(&b, &hexagon, 1e-8) {
            Ok(c) => bowtie_forms.push(c),
            Err(e) => failures.push(format!("bowtie canonicalization: {e}")),
        }
    }
    cases += 1;
    for w in bowtie_forms.windows(2) {
        let diff = w[0]
            .edges()
            .iter()
            .zip(w[1].edges())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if diff > 1e-9 {
            failures.push(format!("bowtie canonical forms differ by {diff:.3e}"));
            break;
        }
    }

    let octagon = Triangulation::fan(8).unwrap();
    let mut rhombi_forms: Vec<Polygon> = Vec::new();
    for _ in 0..trials {
        cases += 1;
        let p = sampling::two_rhombi_octagon(&mut rng);
        match stratum_signature(&p, &octagon, 1e-8) {
            Ok(sig) if sig.zero_diagonals.contains(&(1, 5)) => {}
            Ok(sig) => failures.push(format!("two-rhombi stratum {:?} misses (1,5)", sig.zero_diagonals)),
            Err(e) => failures.push(format!("two-rhombi stratum: {e}")),
        }
        // identical shapes in random relative orientation collapse; use a
        // fixed shape rotated arbitrarily on one half
        match ky_canonicalize(&p, &octagon, 1e-8) {
            Ok(c) => rhombi_forms.push(c),
            Err(e) => failures.push(format!("two-rhombi canonicalization: {e}")),
        }
    }
    // bending the outer diagonals still acts nontrivially on the class
    cases += 1;
    let base = sampling::two_rhombi_octagon(&mut rng);
    let c0 = ky_canonicalize(&base, &octagon, 1e-8).unwrap();
    let mut moved = 0;
    for k in 1..=5 {
        let theta = 0.4 * k as f64;
        let bent = base.bend(1, 3, theta).unwrap();
        let c1 = ky_canonicalize(&bent, &octagon, 1e-8).unwrap();
        let diff = c0
            .edges()
            .iter()
            .zip(c1.edges())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if diff > 1e-6 {
            moved += 1;
        }
    }
    if moved == 0 {
        failures.push("bending on an outer diagonal fixed the KY class".into());
    }

    // wedge independence: rotating one rhombus about the wedge point does
    // not change the class
    cases += trials;
    for _ in 0..trials {
        let p = sampling::two_rhombi_octagon(&mut rng);
        let rot = {
            let axis = nalgebra::Unit::new_normalize(sampling::random_unit_vector(&mut rng));
            nalgebra::Rotation3::from_axis_angle(&axis, rng.random::<f64>() * 6.0)
        };
        let mut edges = p.edges().to_vec();
        for e in edges.iter_mut().take(4) {
            *e = rot * *e;
        }
        let q = Polygon::new(edges);
        let c1 = ky_canonicalize(&p, &octagon, 1e-8).unwrap();
        let c2 = ky_canonicalize(&q, &octagon, 1e-8).unwrap();
        let diff = c1
            .edges()
            .iter()
            .zip(c2.edges())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if diff > 1e-9 {
            failures.push(format!("independent rotation moved the KY class by {diff:.3e}"));
        }
    }

    Report {
        suite: "strata".into(),
        cases,
        failures,
    }
}
