//! Standard teleportation through a Bell-diagonal thermal channel.
//!
//! With reference Bell state `K₀ = |k₀⟩⟨k₀|`, the teleported qubit leaves as
//! `ρ_out = Σ_μ Tr(K_μ ρ) σ_μ ρ_in σ_μ` where `K_μ = (σ_μ⊗I) K₀ (σ_μ⊗I)`.
//! The three-qubit circuit is already traced out at this level.

use std::f64::consts::PI;

use crate::dipolar::{trace_product, BellLabel, BellWeights};
use crate::error::{Error, Result};
use crate::qmat::{bell_state, bloch_to_state, kron, pauli, ComplexMatrix, StateVector};
use crate::scalar::Real;

/// Polar/azimuthal angles of a qubit state, reduced to `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles<T> {
    theta: T,
    phi: T,
}

impl<T: Real> BlochAngles<T> {
    pub fn new(theta: T, phi: T) -> Result<Self> {
        if !(theta.is_finite() && phi.is_finite()) {
            return Err(Error::InvalidParams(format!("non-finite Bloch angles ({theta}, {phi})")));
        }
        let tau = T::TAU();
        let mut theta = wrap(theta, tau);
        let mut phi = phi;
        if theta > T::PI() {
            theta = tau - theta;
            phi = phi + T::PI();
        }
        phi = wrap(phi, tau);
        if phi >= tau {
            phi = T::zero();
        }
        Ok(Self { theta, phi })
    }

    #[inline]
    pub fn theta(&self) -> T {
        self.theta
    }

    #[inline]
    pub fn phi(&self) -> T {
        self.phi
    }

    /// `n̂ = (sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn bloch_vector(&self) -> [T; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn state(&self) -> StateVector<T> {
        bloch_to_state(self.theta, self.phi)
    }

    pub fn density(&self) -> ComplexMatrix<T> {
        self.state().projector()
    }
}

fn wrap<T: Real>(x: T, period: T) -> T {
    x - period * (x / period).floor()
}

/// Average fidelities for every choice of reference Bell state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityReport<T> {
    pub per_label: [T; 4],
    pub best: T,
    pub best_label: BellLabel,
    pub above_classical: bool,
}

impl<T: Real> FidelityReport<T> {
    #[inline]
    pub fn fidelity(&self, label: BellLabel) -> T {
        self.per_label[label.index()]
    }
}

/// Mixing probabilities `q_μ = Tr(K_μ ρ)` of the Pauli channel.
pub fn pauli_mixture<T: Real>(weights: &BellWeights<T>, k0: BellLabel) -> [T; 4] {
    let rho = weights.density_matrix();
    let k0 = bell_state::<T>(k0).projector();
    let id = pauli::<T>(0).expect("σ0");
    let mut q = [T::zero(); 4];
    for (mu, slot) in q.iter_mut().enumerate() {
        let s = kron(&pauli::<T>(mu).expect("μ in 0..4"), &id);
        let k_mu = &(&s * &k0) * &s;
        *slot = trace_product(&k_mu, &rho).re;
    }
    q
}

fn apply_pauli_channel<T: Real>(q: &[T; 4], rho_in: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    q.iter().enumerate().fold(ComplexMatrix::zeros(2, 2), |acc, (mu, &w)| {
        let s = pauli::<T>(mu).expect("μ in 0..4");
        &acc + &(&(&s * rho_in) * &s).scale(w)
    })
}

/// Teleported single-qubit state for the input `|ψ(θ, φ)⟩`.
pub fn channel_output<T: Real>(weights: &BellWeights<T>, k0: BellLabel, input: &BlochAngles<T>) -> ComplexMatrix<T> {
    apply_pauli_channel(&pauli_mixture(weights, k0), &input.density())
}

/// `σ_μ ρ_in σ_μ` by direct multiplication.
pub fn pauli_conjugation<T: Real>(mu: usize, input: &BlochAngles<T>) -> Result<ComplexMatrix<T>> {
    let s = pauli::<T>(mu)?;
    Ok(&(&s * &input.density()) * &s)
}

/// Bloch vector `(Tr ρσ_x, Tr ρσ_y, Tr ρσ_z)` of a single-qubit operator.
pub fn bloch_components<T: Real>(rho: &ComplexMatrix<T>) -> [T; 3] {
    let mut out = [T::zero(); 3];
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = trace_product(rho, &pauli::<T>(j + 1).expect("σ1..σ3")).re;
    }
    out
}

/// `⟨ψ_in|ρ_out|ψ_in⟩`.
pub fn fidelity_pointwise<T: Real>(input: &BlochAngles<T>, output: &ComplexMatrix<T>) -> Result<T> {
    output.validate_density(2, T::INPUT_TOL)?;
    Ok(input.state().expectation(output).re)
}

/// Sphere-averaged fidelity `(1 + 2 p_{k0}) / 3`.
pub fn average_fidelity<T: Real>(weights: &BellWeights<T>, k0: BellLabel) -> T {
    (T::one() + T::lit(2.0) * weights.get(k0)) / T::lit(3.0)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(n: usize) -> Vec<(T, T)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut deriv = 0.0;
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            deriv = dp;
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        if dp != 0.0 {
            deriv = dp;
        }
        let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        out.push((T::lit(x), T::lit(w)));
    }
    out.reverse();
    out
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Sphere average of the pointwise fidelity by a product rule: `order`
/// Gauss–Legendre nodes in `cosθ` and `2·order` equally spaced azimuths.
///
/// Exact for the degree-2 integrand whenever `order ≥ 2`.
pub fn average_fidelity_quadrature<T: Real>(weights: &BellWeights<T>, k0: BellLabel, order: usize) -> Result<T> {
    if order < 2 {
        return Err(Error::InsufficientOrder(order));
    }
    let q = pauli_mixture(weights, k0);
    let n_phi = 2 * order;
    let dphi = T::TAU() / T::lit(n_phi as f64);
    let mut acc = T::zero();
    for (x, w) in gauss_legendre::<T>(order) {
        let theta = x.max(-T::one()).min(T::one()).acos();
        for k in 0..n_phi {
            let angles = BlochAngles::new(theta, dphi * T::lit(k as f64))?;
            let out = apply_pauli_channel(&q, &angles.density());
            acc = acc + w * dphi * fidelity_pointwise(&angles, &out)?;
        }
    }
    Ok(acc / (T::lit(4.0) * T::PI()))
}

/// Best average fidelity over all four reference Bell states.
pub fn best_fidelity<T: Real>(weights: &BellWeights<T>) -> FidelityReport<T> {
    let per_label = BellLabel::ALL.map(|l| average_fidelity(weights, l));
    let mut best_label = BellLabel::PhiPlus;
    for label in &BellLabel::ALL[1..] {
        if per_label[label.index()] > per_label[best_label.index()] {
            best_label = *label;
        }
    }
    let best = per_label[best_label.index()];
    let threshold = minimum_fidelity::<T>(2).expect("d = 2");
    FidelityReport { per_label, best, best_label, above_classical: best > threshold }
}

/// Classical teleportation bound `2 / (1 + d)`.
pub fn minimum_fidelity<T: Real>(d: usize) -> Result<T> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    Ok(T::lit(2.0) / T::lit(1.0 + d as f64))
}

/// Pointwise fidelity for an arbitrary output Bloch vector, `(1 + n̂·m)/2`.
pub fn fidelity_from_bloch<T: Real>(input: &BlochAngles<T>, out: [T; 3]) -> T {
    let n = input.bloch_vector();
    let dot = n.iter().zip(out).map(|(a, b)| *a * b).sum::<T>();
    (T::one() + dot) * T::lit(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dipolar::{spectrum, CouplingParams};
    use std::f64::consts::FRAC_PI_2;

    fn weights(u: f64, v: f64) -> BellWeights<f64> {
        *spectrum(&CouplingParams::new(u, v).unwrap()).weights()
    }

    fn angles(t: f64, p: f64) -> BlochAngles<f64> {
        BlochAngles::new(t, p).unwrap()
    }

    #[test]
    fn angle_reduction() {
        let a = angles(3.0 * PI / 2.0, 0.0);
        assert!((a.theta() - FRAC_PI_2).abs() < 1e-15);
        assert!((a.phi() - PI).abs() < 1e-15);
        let a = angles(0.3, -0.5);
        assert!((a.phi() - (2.0 * PI - 0.5)).abs() < 1e-15);
        assert!(BlochAngles::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn channel_output_examples() {
        let input = angles(1.1, 0.4);
        let out = channel_output(&BellWeights::<f64>::pure(BellLabel::PsiPlus), BellLabel::PsiPlus, &input);
        assert!(out.max_abs_diff(&input.density()) < 1e-15);

        for k0 in BellLabel::ALL {
            let out = channel_output(&BellWeights::uniform(), k0, &input);
            assert!(out.max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);
        }

        let out = channel_output(&weights(3.0, 1.0), BellLabel::PsiPlus, &angles(FRAC_PI_2, 0.0));
        let b = bloch_components(&out);
        assert!((b[0] - 0.213552267034073).abs() < 1e-12);
        assert!(b[1].abs() < 1e-15 && b[2].abs() < 1e-12);
    }

    #[test]
    fn mixture_for_psi_plus_reference() {
        let w = weights(3.0, 1.0);
        let q = pauli_mixture(&w, BellLabel::PsiPlus);
        let want = [BellLabel::PsiPlus, BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiMinus].map(|l| w.get(l));
        for (a, b) in q.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn conjugation_examples() {
        let input = angles(0.7, 2.1);
        assert!(pauli_conjugation(0, &input).unwrap().max_abs_diff(&input.density()) < 1e-15);
        let plus = angles(FRAC_PI_2, 0.0);
        assert!(pauli_conjugation(1, &plus).unwrap().max_abs_diff(&plus.density()) < 1e-15);
        let b = bloch_components(&pauli_conjugation(3, &plus).unwrap());
        assert!((b[0] + 1.0).abs() < 1e-15 && b[1].abs() < 1e-15 && b[2].abs() < 1e-15);
        assert_eq!(pauli_conjugation(4, &plus), Err(Error::PauliIndex(4)));
    }

    #[test]
    fn pointwise_examples() {
        let input = angles(0.9, 5.0);
        assert!((fidelity_pointwise(&input, &input.density()).unwrap() - 1.0).abs() < 1e-15);
        assert!((fidelity_pointwise(&input, &ComplexMatrix::identity(2).scale(0.5)).unwrap() - 0.5).abs() < 1e-15);
        let plus = angles(FRAC_PI_2, 0.0);
        let out = channel_output(&weights(3.0, 1.0), BellLabel::PsiPlus, &plus);
        let f = fidelity_pointwise(&plus, &out).unwrap();
        assert!((f - (1.0 + 0.213552267034073) / 2.0).abs() < 1e-12);
        assert!((f - fidelity_from_bloch(&plus, bloch_components(&out))).abs() < 1e-15);
        assert!(fidelity_pointwise(&plus, &ComplexMatrix::identity(2)).is_err());
    }

    #[test]
    fn average_examples() {
        assert_eq!(average_fidelity(&BellWeights::<f64>::pure(BellLabel::PhiMinus), BellLabel::PhiMinus), 1.0);
        assert_eq!(average_fidelity(&BellWeights::<f64>::uniform(), BellLabel::PsiMinus), 0.5);
        assert!((average_fidelity(&weights(3.0, 1.0), BellLabel::PsiPlus) - 0.689631096925682).abs() < 1e-12);
    }

    #[test]
    fn quadrature_examples() {
        let f = average_fidelity_quadrature(&BellWeights::<f64>::uniform(), BellLabel::PhiPlus, 2).unwrap();
        assert!((f - 0.5).abs() < 1e-12);
        let f =
            average_fidelity_quadrature(&BellWeights::<f64>::pure(BellLabel::PsiPlus), BellLabel::PsiPlus, 2).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
        let f = average_fidelity_quadrature(&weights(3.0, 1.0), BellLabel::PsiPlus, 2).unwrap();
        assert!((f - 0.689631096925682).abs() < 1e-12);
        assert_eq!(
            average_fidelity_quadrature(&BellWeights::<f64>::uniform(), BellLabel::PsiPlus, 1),
            Err(Error::InsufficientOrder(1))
        );
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in 2..8 {
            let rule = gauss_legendre::<f64>(n);
            let total: f64 = rule.iter().map(|(_, w)| w).sum();
            assert!((total - 2.0).abs() < 1e-14);
            let second: f64 = rule.iter().map(|(x, w)| w * x * x).sum();
            assert!((second - 2.0 / 3.0).abs() < 1e-14);
        }
        let rule = gauss_legendre::<f64>(2);
        assert!((rule[1].0 - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn best_fidelity_examples() {
        let r = best_fidelity(&BellWeights::<f64>::uniform());
        assert_eq!(r.best, 0.5);
        assert_eq!(r.best_label, BellLabel::PhiPlus);
        assert!(!r.above_classical);

        let r = best_fidelity(&weights(3.0, 1.0));
        assert!((r.best - 0.689631096925682).abs() < 1e-12);
        assert_eq!(r.best_label, BellLabel::PsiPlus);
        assert!(r.above_classical);

        let r = best_fidelity(&weights(-6.0, 0.0));
        assert!((r.best - 0.609081317613308).abs() < 1e-12);
        assert_eq!(r.best_label, BellLabel::PhiPlus);
        assert!(!r.above_classical);
    }

    #[test]
    fn classical_bound() {
        assert_eq!(minimum_fidelity::<f64>(2).unwrap(), 2.0 / 3.0);
        assert_eq!(minimum_fidelity::<f64>(3).unwrap(), 0.5);
        assert_eq!(minimum_fidelity::<f64>(1), Err(Error::DimensionTooSmall(1)));
    }
}
