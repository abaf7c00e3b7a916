//! Dipolar-coupled spin-1/2 pair at thermal equilibrium.
//!
//! Everything is expressed in the dimensionless couplings `u = Δ/k_BT` and
//! `v = ε/k_BT`. The Hamiltonian is diagonal in the Bell basis, so the thermal
//! state is Bell-diagonal and fully described by four Boltzmann weights.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qmat::{bell_state, kron, pauli, ComplexMatrix};
use crate::scalar::Real;

/// Largest |u|, |v| accepted by [`CouplingParams::new`].
pub const COUPLING_LIMIT: f64 = 2000.0;

/// Bell eigenstates of the dipolar Hamiltonian, in canonical tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            BellLabel::PhiPlus => "PhiPlus",
            BellLabel::PhiMinus => "PhiMinus",
            BellLabel::PsiPlus => "PsiPlus",
            BellLabel::PsiMinus => "PsiMinus",
        }
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BellLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        BellLabel::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown Bell label `{s}`"))
    }
}

/// Dimensionless couplings `(u, v) = (Δ/k_BT, ε/k_BT)`.
///
/// A fixed pair stands for every `(Δ, ε, T)` triple with the same ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams<T> {
    u: T,
    v: T,
}

impl<T: Real> CouplingParams<T> {
    pub fn new(u: T, v: T) -> Result<Self> {
        let limit = T::lit(COUPLING_LIMIT);
        for (name, x) in [("u", u), ("v", v)] {
            if !x.is_finite() {
                return Err(Error::InvalidParams(format!("{name} = {x} is not finite")));
            }
            if x.abs() > limit {
                return Err(Error::InvalidParams(format!("|{name}| = {} exceeds {COUPLING_LIMIT}", x.abs())));
            }
        }
        Ok(Self { u, v })
    }

    #[inline]
    pub fn u(&self) -> T {
        self.u
    }

    #[inline]
    pub fn v(&self) -> T {
        self.v
    }

    /// The same pair with `v → −v`.
    pub fn mirrored(&self) -> Self {
        Self { u: self.u, v: -self.v }
    }

    /// Bell-basis energies in units of `k_BT`, indexed by [`BellLabel::index`].
    pub fn energies(&self) -> [T; 4] {
        let six = T::lit(6.0);
        let three = T::lit(3.0);
        [(self.u + three * self.v) / six, (self.u - three * self.v) / six, -self.u / three, T::zero()]
    }
}

/// Validated Bell-diagonal occupation probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellWeights<T> {
    p: [T; 4],
}

impl<T: Real> BellWeights<T> {
    /// Weights in canonical label order; each must lie in `[0, 1]` and the
    /// sum must be 1, both within `INPUT_TOL`.
    pub fn new(p: [T; 4]) -> Result<Self> {
        let tol = T::INPUT_TOL;
        for (label, &x) in BellLabel::ALL.iter().zip(&p) {
            if !x.is_finite() || x < -tol || x > T::one() + tol {
                return Err(Error::InvalidWeights(format!("p[{label}] = {x}")));
            }
        }
        let sum: T = p.iter().copied().sum();
        if (sum - T::one()).abs() > tol {
            return Err(Error::InvalidWeights(format!("weights sum to {sum}")));
        }
        Ok(Self { p })
    }

    pub fn uniform() -> Self {
        Self { p: [T::lit(0.25); 4] }
    }

    pub fn pure(label: BellLabel) -> Self {
        let mut p = [T::zero(); 4];
        p[label.index()] = T::one();
        Self { p }
    }

    #[inline]
    pub fn get(&self, label: BellLabel) -> T {
        self.p[label.index()]
    }

    pub fn as_array(&self) -> [T; 4] {
        self.p
    }

    /// Largest weight; ties go to the earliest label in canonical order.
    pub fn dominant(&self) -> (BellLabel, T) {
        let mut best = (BellLabel::PhiPlus, self.p[0]);
        for label in &BellLabel::ALL[1..] {
            let w = self.get(*label);
            if w > best.1 {
                best = (*label, w);
            }
        }
        best
    }

    /// `Σ_α p_α |α⟩⟨α|`.
    pub fn density_matrix(&self) -> ComplexMatrix<T> {
        BellLabel::ALL.iter().fold(ComplexMatrix::zeros(4, 4), |acc, &label| {
            &acc + &bell_state::<T>(label).projector().scale(self.get(label))
        })
    }
}

/// Bell-labelled energies, Boltzmann weights and `ln Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralData<T> {
    energies: [T; 4],
    weights: BellWeights<T>,
    log_partition: T,
}

impl<T: Real> SpectralData<T> {
    #[inline]
    pub fn energy(&self, label: BellLabel) -> T {
        self.energies[label.index()]
    }

    pub fn energies(&self) -> [T; 4] {
        self.energies
    }

    #[inline]
    pub fn weight(&self, label: BellLabel) -> T {
        self.weights.get(label)
    }

    pub fn weights(&self) -> &BellWeights<T> {
        &self.weights
    }

    pub fn log_partition(&self) -> T {
        self.log_partition
    }
}

/// Diagonal spin-spin correlations `c_i = ⟨σ_i ⊗ σ_i⟩` of a Bell-diagonal state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTriple<T> {
    pub c1: T,
    pub c2: T,
    pub c3: T,
}

impl<T: Real> CorrelationTriple<T> {
    /// Rejects triples outside the Bell-diagonal tetrahedron.
    pub fn new(c1: T, c2: T, c3: T) -> Result<Self> {
        let t = Self { c1, c2, c3 };
        BellWeights::new(t.bell_weights())
            .map_err(|e| Error::InvalidWeights(format!("triple outside tetrahedron: {e}")))?;
        Ok(t)
    }

    pub fn from_weights(w: &BellWeights<T>) -> Self {
        let [pp, pm, sp, sm] = w.as_array();
        Self { c1: pp - pm + sp - sm, c2: -pp + pm + sp - sm, c3: pp + pm - sp - sm }
    }

    /// Bell weights in canonical order recovered from the correlations.
    pub fn bell_weights(&self) -> [T; 4] {
        let q = T::lit(0.25);
        let one = T::one();
        let (c1, c2, c3) = (self.c1, self.c2, self.c3);
        [(one + c1 - c2 + c3) * q, (one - c1 + c2 + c3) * q, (one + c1 + c2 - c3) * q, (one - c1 - c2 - c3) * q]
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn as_matrix(&self) -> [[T; 3]; 3] {
        let z = T::zero();
        [[self.c1, z, z], [z, self.c2, z], [z, z, self.c3]]
    }
}

/// Local Bloch vectors and correlation matrix of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanoForm<T> {
    pub local_a: [T; 3],
    pub local_b: [T; 3],
    pub correlation: [[T; 3]; 3],
}

/// The dipolar Hamiltonian in `k_BT` units, built entry by entry.
pub fn hamiltonian_matrix<T: Real>(p: &CouplingParams<T>) -> ComplexMatrix<T> {
    let six = T::lit(6.0);
    let d = p.u() / six;
    let e = T::lit(3.0) * p.v() / six;
    let z = T::zero();
    #[rustfmt::skip]
    let entries = [
        d, z, z, e,
        z, -d, -d, z,
        z, -d, -d, z,
        e, z, z, d,
    ];
    ComplexMatrix::from_real(4, 4, &entries).expect("finite couplings")
}

/// The same Hamiltonian contracted from the coupling tensor
/// `T = diag(u − 3v, u + 3v, −2u)` as `−(1/3) Σ_i T_ii S_1^i S_2^i`, `S = σ/2`.
pub fn hamiltonian_from_tensor<T: Real>(p: &CouplingParams<T>) -> ComplexMatrix<T> {
    let three = T::lit(3.0);
    let tensor = [p.u() - three * p.v(), p.u() + three * p.v(), -T::lit(2.0) * p.u()];
    let half = T::lit(0.5);
    let prefactor = -T::one() / three;
    tensor.iter().enumerate().fold(ComplexMatrix::zeros(4, 4), |acc, (i, &t)| {
        let s = pauli::<T>(i + 1).expect("valid Pauli index").scale(half);
        &acc + &kron(&s, &s).scale(prefactor * t)
    })
}

/// Shifted Boltzmann factors `e^{−(E_α − E_min)}`, their sum, and `E_min`.
fn boltzmann_factors<T: Real>(p: &CouplingParams<T>) -> ([T; 4], T, T) {
    let energies = p.energies();
    let lowest = energies.iter().copied().fold(T::infinity(), T::min);
    let w = energies.map(|e| (-(e - lowest)).exp());
    let z = w.iter().copied().sum();
    (w, z, lowest)
}

/// Energies and Boltzmann weights. Pairing: Φ⁺ ↔ (u+3v)/6, Φ⁻ ↔ (u−3v)/6,
/// Ψ⁺ ↔ −u/3, Ψ⁻ ↔ 0.
pub fn spectrum<T: Real>(p: &CouplingParams<T>) -> SpectralData<T> {
    let (w, z, lowest) = boltzmann_factors(p);
    SpectralData {
        energies: p.energies(),
        weights: BellWeights { p: w.map(|x| x / z) },
        log_partition: z.ln() - lowest,
    }
}

/// Closed-form thermal density matrix.
///
/// Only four distinct entries appear: `ρ11 = ρ44`, `ρ22 = ρ33`, `ρ23` and `ρ14`.
pub fn thermal_state<T: Real>(p: &CouplingParams<T>) -> ComplexMatrix<T> {
    let (w, z, _) = boltzmann_factors(p);
    let [phi_p, phi_m, psi_p, psi_m] = w;
    let two_z = T::lit(2.0) * z;
    let r11 = (phi_p + phi_m) / two_z;
    let r22 = (psi_p + psi_m) / two_z;
    let r23 = (psi_p - psi_m) / two_z;
    let r14 = -(phi_m - phi_p) / two_z;
    let o = T::zero();
    #[rustfmt::skip]
    let entries = [
        r11, o, o, r14,
        o, r22, r23, o,
        o, r23, r22, o,
        r14, o, o, r11,
    ];
    ComplexMatrix::from_real(4, 4, &entries).expect("finite weights")
}

/// Correlation coefficients from the hyperbolic closed forms, evaluated with
/// shifted exponentials.
pub fn correlations<T: Real>(p: &CouplingParams<T>) -> CorrelationTriple<T> {
    let (w, z, _) = boltzmann_factors(p);
    let [phi_p, phi_m, psi_p, psi_m] = w;
    // 2 e^{u/6} sinh(u/6), 2 e^{-u/6} sinh(v/2) and the matching cosh terms
    let psi_sinh = psi_p - psi_m;
    let phi_sinh = phi_m - phi_p;
    let psi_cosh = psi_p + psi_m;
    let phi_cosh = phi_p + phi_m;
    CorrelationTriple { c1: (psi_sinh - phi_sinh) / z, c2: (psi_sinh + phi_sinh) / z, c3: (phi_cosh - psi_cosh) / z }
}

/// Fano decomposition: `r_j = Tr ρ(σ_j⊗I)`, `s_j = Tr ρ(I⊗σ_j)`, `C_ij = Tr ρ(σ_i⊗σ_j)`.
pub fn fano_marginals<T: Real>(rho: &ComplexMatrix<T>) -> Result<FanoForm<T>> {
    rho.validate_density(4, T::INPUT_TOL)?;
    let id = pauli::<T>(0)?;
    let sigmas: Vec<ComplexMatrix<T>> = (1..=3).map(pauli::<T>).collect::<Result<_>>()?;
    let expect = |op: &ComplexMatrix<T>| -> T { trace_product(rho, op).re };
    let mut out = FanoForm { local_a: [T::zero(); 3], local_b: [T::zero(); 3], correlation: [[T::zero(); 3]; 3] };
    for (i, si) in sigmas.iter().enumerate() {
        out.local_a[i] = expect(&kron(si, &id));
        out.local_b[i] = expect(&kron(&id, si));
        for (j, sj) in sigmas.iter().enumerate() {
            out.correlation[i][j] = expect(&kron(si, sj));
        }
    }
    Ok(out)
}

/// `Tr(a·b)` without forming the product.
pub(crate) fn trace_product<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Complex<T> {
    let n = a.rows();
    let mut acc = Complex::new(T::zero(), T::zero());
    for i in 0..n {
        for k in 0..n {
            acc = acc + a.get(i, k) * b.get(k, i);
        }
    }
    acc
}
