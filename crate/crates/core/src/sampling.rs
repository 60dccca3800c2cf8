//! Seeded random generators and small exhaustive enumerations used by the
//! verification suites and tests. Everything here is deterministic given
//! the seed.

use nalgebra::Vector3;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kempe::{crossing, KempeGraph};
use crate::tree::Triangulation;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal via Box–Muller.
pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn random_unit_vector(rng: &mut ChaCha8Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::new(gaussian(rng), gaussian(rng), gaussian(rng));
        let norm = v.norm();
        if norm > 1e-6 {
            return v / norm;
        }
    }
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

/// A uniformly random phase `e^{iθ}`.
pub fn random_phase(rng: &mut ChaCha8Rng) -> Complex64 {
    let theta: f64 = rng.random::<f64>() * std::f64::consts::TAU;
    Complex64::from_polar(1.0, theta)
}

/// A random closed polygon: Gaussian edges recentered to sum to zero.
pub fn random_closed_polygon(n: usize, rng: &mut ChaCha8Rng) -> crate::polygon::Polygon {
    let mut edges: Vec<Vector3<f64>> = (0..n)
        .map(|_| Vector3::new(gaussian(rng), gaussian(rng), gaussian(rng)))
        .collect();
    let mean = edges.iter().sum::<Vector3<f64>>() / n as f64;
    for e in &mut edges {
        *e -= mean;
    }
    crate::polygon::Polygon::new(edges)
}

fn random_rotation(rng: &mut ChaCha8Rng) -> nalgebra::Rotation3<f64> {
    let axis = nalgebra::Unit::new_normalize(random_unit_vector(rng));
    let angle = rng.random::<f64>() * std::f64::consts::TAU;
    nalgebra::Rotation3::from_axis_angle(&axis, angle)
}

/// A hexagon bowtie: two unit equilateral triangles wedged at a vertex,
/// with independent random orientations. Its middle fan diagonal (1,4)
/// vanishes.
pub fn bowtie_hexagon(rng: &mut ChaCha8Rng) -> crate::polygon::Polygon {
    let s3 = 3.0_f64.sqrt() / 2.0;
    let tri = [
        Vector3::new(1.0, 0.0, 0.0),
        Vector3::new(-0.5, s3, 0.0),
        Vector3::new(-0.5, -s3, 0.0),
    ];
    let (r1, r2) = (random_rotation(rng), random_rotation(rng));
    let edges = tri
        .iter()
        .map(|e| r1 * e)
        .chain(tri.iter().map(|e| r2 * e))
        .collect();
    crate::polygon::Polygon::new(edges)
}

/// An octagon made of two unit rhombi wedged at a vertex, each with a
/// random shape and orientation. Its middle fan diagonal (1,5) vanishes.
pub fn two_rhombi_octagon(rng: &mut ChaCha8Rng) -> crate::polygon::Polygon {
    let rhombus = |rng: &mut ChaCha8Rng| {
        let u = random_unit_vector(rng);
        let v = loop {
            let v = random_unit_vector(rng);
            if u.cross(&v).norm() > 0.2 {
                break v;
            }
        };
        [u, v, -u, -v]
    };
    let edges = rhombus(rng)
        .into_iter()
        .chain(rhombus(rng))
        .collect();
    crate::polygon::Polygon::new(edges)
}

/// All Kempe graphs on `n` vertices with `1 <= degree <= max_degree`,
/// plus the empty graph.
pub fn enumerate_kempe(n: usize, max_degree: u64) -> Vec<KempeGraph> {
    let chords: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    fn go(
        chords: &[(usize, usize)],
        idx: usize,
        remaining: u64,
        support: &mut Vec<((usize, usize), u64)>,
        n: usize,
        out: &mut Vec<KempeGraph>,
    ) {
        if idx == chords.len() {
            out.push(
                KempeGraph::new(n, support.iter().copied()).expect("support is noncrossing"),
            );
            return;
        }
        let c = chords[idx];
        let compatible = support.iter().all(|&(s, _)| !crossing(s, c));
        let max_mult = if compatible { remaining } else { 0 };
        for m in 0..=max_mult {
            if m > 0 {
                support.push((c, m));
            }
            go(chords, idx + 1, remaining - m, support, n, out);
            if m > 0 {
                support.pop();
            }
        }
    }
    go(&chords, 0, max_degree, &mut Vec::new(), n, &mut out);
    out.sort();
    out.dedup();
    out
}

/// A random Kempe graph of the exact given degree.
pub fn random_kempe(n: usize, degree: u64, rng: &mut ChaCha8Rng) -> KempeGraph {
    let mut support: Vec<((usize, usize), u64)> = Vec::new();
    for _ in 0..degree {
        loop {
            let i = rng.random_range(1..=n);
            let j = rng.random_range(1..=n);
            if i == j {
                continue;
            }
            let c = (i.min(j), i.max(j));
            if support.iter().all(|&(s, _)| !crossing(s, c)) {
                support.push((c, 1));
                break;
            }
        }
    }
    KempeGraph::new(n, support).expect("constructed noncrossing")
}

/// A random triangulation, by picking a random apex for each base chord.
pub fn random_triangulation(n: usize, rng: &mut ChaCha8Rng) -> Triangulation {
    fn go(verts: &[usize], rng: &mut ChaCha8Rng, diags: &mut Vec<(usize, usize)>) {
        if verts.len() < 3 {
            return;
        }
        let a = verts[0];
        let b = *verts.last().unwrap();
        let k = rng.random_range(1..verts.len() - 1);
        let c = verts[k];
        if k > 1 {
            diags.push((a.min(c), a.max(c)));
        }
        if k < verts.len() - 2 {
            diags.push((b.min(c), b.max(c)));
        }
        go(&verts[..=k], rng, diags);
        go(&verts[k..], rng, diags);
    }
    let verts: Vec<usize> = (1..=n).collect();
    let mut diags = Vec::new();
    go(&verts, rng, &mut diags);
    Triangulation::new(n, diags).expect("recursive split yields a triangulation")
}
