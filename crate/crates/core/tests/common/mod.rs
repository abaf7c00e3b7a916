//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use dipolar_channel::{bell_state, BellLabel, ComplexMatrix};
use num_complex::Complex;

/// `e^{-h}/Tr e^{-h}` by scaling-and-squaring of a Taylor series.
pub fn expm_gibbs(h: &ComplexMatrix<f64>) -> ComplexMatrix<f64> {
    let norm = h.max_abs() * h.rows() as f64;
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.125 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = h.scale(-scale);
    let mut term = ComplexMatrix::identity(h.rows());
    let mut sum = term.clone();
    for k in 1..30 {
        term = (&term * &a).scale(1.0 / k as f64);
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    let tr = sum.trace().re;
    sum.scale(1.0 / tr)
}

/// `⟨α|ρ|α⟩` for each Bell label, canonical order.
pub fn bell_projections(rho: &ComplexMatrix<f64>) -> [f64; 4] {
    BellLabel::ALL.map(|l| bell_state::<f64>(l).expectation(rho).re)
}

/// Hamiltonian written out by hand from the coupling ratios.
pub fn hand_hamiltonian(u: f64, v: f64) -> ComplexMatrix<f64> {
    let d = u / 6.0;
    let e = v / 2.0;
    ComplexMatrix::from_real(4, 4, &[d, 0., 0., e, 0., -d, -d, 0., 0., -d, -d, 0., e, 0., 0., d]).unwrap()
}

/// Ascending eigenvalues of a real symmetric 3x3 matrix.
pub fn symmetric3_eigenvalues(m: [[f64; 3]; 3]) -> [f64; 3] {
    // trigonometric solution of the characteristic cubic
    let p1 = m[0][1].powi(2) + m[0][2].powi(2) + m[1][2].powi(2);
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    if p1 == 0.0 {
        let mut d = [m[0][0], m[1][1], m[2][2]];
        d.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return d;
    }
    let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let mut b = m;
    for (i, row) in b.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = (m[i][j] - if i == j { q } else { 0.0 }) / p;
        }
    }
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = (det / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    let mut out = [e1, e2, e3];
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// Four-term absolute-value negativity formula as printed alongside the
/// partial-transpose matrix; kept to show it disagrees with the definition.
pub fn printed_abs_sum_negativity(c: [f64; 3]) -> f64 {
    let [c1, c2, c3] = c;
    ((c1 + c3).abs() + (1.0 + c2).abs() + (c1 - c3).abs() + (1.0 - c2).abs() - 1.0) / 4.0
}

/// Midpoint-rule sphere average of `f(θ, φ)`.
pub fn sphere_average_midpoint(n: usize, f: impl Fn(f64, f64) -> f64) -> f64 {
    let dt = std::f64::consts::PI / n as f64;
    let dp = 2.0 * std::f64::consts::PI / (2 * n) as f64;
    let mut acc = 0.0;
    for i in 0..n {
        let t = (i as f64 + 0.5) * dt;
        for k in 0..2 * n {
            let p = (k as f64 + 0.5) * dp;
            acc += f(t, p) * t.sin() * dt * dp;
        }
    }
    acc / (4.0 * std::f64::consts::PI)
}

pub fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

/// `[lo, hi]` split into `n` inclusive points.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| if i + 1 == n { hi } else { lo + i as f64 * (hi - lo) / (n - 1) as f64 }).collect()
}
