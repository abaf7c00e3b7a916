//! Nonlocality and entanglement of two-qubit states.
//!
//! CHSH: the maximal Bell-operator expectation over measurement directions is
//! `2√(u₁ + u₂)`, with `u₁ ≥ u₂` the two largest eigenvalues of `CᵀC`.
//! Negativity: `(‖ρ^{T_A}‖₁ − 1)/2`, at most 1/2 for two qubits.

use num_complex::Complex;

use crate::dipolar::{correlations, BellWeights, CouplingParams};
use crate::error::Result;
use crate::qmat::{hermitian_eig, partial_transpose_a, ComplexMatrix};
use crate::scalar::Real;

/// Maximal CHSH value and whether it breaks the local bound of 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshResult<T> {
    pub value: T,
    pub violating: bool,
}

impl<T: Real> ChshResult<T> {
    fn from_value(value: T) -> Self {
        let two = T::lit(2.0);
        debug_assert!(
            value >= T::zero() && value <= two * T::SQRT_2() + T::OUTPUT_TOL,
            "CHSH value {value} out of range"
        );
        Self { value, violating: value > two + T::BOUNDARY_TOL }
    }
}

/// Negativity together with the partial-transpose spectrum it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativityResult<T> {
    pub value: T,
    pub pt_eigenvalues: [T; 4],
}

impl<T: Real> NegativityResult<T> {
    /// Doubled value, so a maximally entangled pair reads 1.
    pub fn normalized(&self) -> T {
        T::lit(2.0) * self.value
    }

    /// `(Σ|λ| − 1)/2` over the stored spectrum.
    pub fn from_trace_norm(&self) -> T {
        let norm: T = self.pt_eigenvalues.iter().map(|x| x.abs()).sum();
        (norm - T::one()) * T::lit(0.5)
    }
}

/// Horodecki maximal CHSH value for an arbitrary 3×3 correlation matrix.
pub fn chsh_max_general<T: Real>(corr: &[[T; 3]; 3]) -> ChshResult<T> {
    // U = CᵀC, real symmetric
    let u = ComplexMatrix::from_fn(3, 3, |i, j| {
        let s: T = (0..3).map(|k| corr[k][i] * corr[k][j]).sum();
        Complex::new(s, T::zero())
    });
    let eig = hermitian_eig(&u, T::INPUT_TOL).expect("CᵀC is symmetric by construction");
    let ev = eig.eigenvalues();
    let m = (ev[1] + ev[2]).max(T::zero());
    ChshResult::from_value(T::lit(2.0) * m.sqrt())
}

/// Closed form `2√max{c1²+c2², c1²+c3², c2²+c3²}` for the thermal state.
pub fn chsh_max<T: Real>(p: &CouplingParams<T>) -> ChshResult<T> {
    chsh_from_triple(correlations(p).as_array())
}

pub(crate) fn chsh_from_triple<T: Real>(c: [T; 3]) -> ChshResult<T> {
    let [a, b, d] = c.map(|x| x * x);
    let m = (a + b).max(a + d).max(b + d);
    ChshResult::from_value(T::lit(2.0) * m.sqrt())
}

/// Negativity from the spectrum of the partial transpose.
pub fn negativity<T: Real>(rho: &ComplexMatrix<T>) -> Result<NegativityResult<T>> {
    rho.validate_density(4, T::INPUT_TOL)?;
    let pt = partial_transpose_a(rho)?;
    let eig = hermitian_eig(&pt, T::INPUT_TOL)?;
    let ev = eig.eigenvalues();
    let pt_eigenvalues = [ev[0], ev[1], ev[2], ev[3]];
    let value = pt_eigenvalues.iter().map(|&x| (-x).max(T::zero())).sum();
    Ok(NegativityResult { value, pt_eigenvalues })
}

/// Bell-diagonal closed form `max(0, max_α p_α − ½)`.
///
/// Each eigenvalue of `ρ^{T_A}` is `½ − p_α`, so only the dominant weight can
/// make one negative.
pub fn negativity_bell_diagonal<T: Real>(weights: &BellWeights<T>) -> T {
    (weights.dominant().1 - T::lit(0.5)).max(T::zero())
}
