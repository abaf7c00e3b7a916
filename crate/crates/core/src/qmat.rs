//! Dense complex linear algebra for the 2×2 and 4×4 operators of a qubit pair.
//!
//! Two-qubit operators use the computational basis ordered `|00⟩, |01⟩, |10⟩, |11⟩`
//! with qubit A as the first tensor factor.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex;

use crate::dipolar::BellLabel;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense row-major complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension { expected: "positive dimensions".into(), found: format!("{rows}x{cols}") });
        }
        if data.len() != rows * cols {
            return Err(Error::EntryCount { rows, cols, found: data.len() });
        }
        if let Some(i) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[T]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::new(T::zero(), T::zero()); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(
            n,
            n,
            |r, c| if r == c { Complex::new(T::one(), T::zero()) } else { Complex::new(T::zero(), T::zero()) },
        )
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        Self::from_fn(
            n,
            n,
            |r, c| if r == c { Complex::new(diag[r], T::zero()) } else { Complex::new(T::zero(), T::zero()) },
        )
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.data[r * self.cols + c]
    }

    #[inline]
    fn set(&mut self, r: usize, c: usize, z: Complex<T>) {
        self.data[r * self.cols + c] = z;
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).fold(Complex::new(T::zero(), T::zero()), |a, b| a + b)
    }

    pub fn scale(&self, s: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_complex(&self, s: Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// `max |m_ij - conj(m_ji)|`; infinite for non-square input.
    pub fn hermitian_defect(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let n = self.rows;
        let mut worst = T::zero();
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermitian_defect() <= tol
    }

    /// `(m + m†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.rows, self.cols, |r, c| (self.get(r, c) + self.get(c, r).conj()) * half)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    fn require_shape(&self, rows: usize, cols: usize) -> Result<()> {
        if self.rows != rows || self.cols != cols {
            return Err(Error::Dimension {
                expected: format!("{rows}x{cols}"),
                found: format!("{}x{}", self.rows, self.cols),
            });
        }
        Ok(())
    }

    fn require_hermitian(&self, tol: T) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimension {
                expected: "square matrix".into(),
                found: format!("{}x{}", self.rows, self.cols),
            });
        }
        let asym = self.hermitian_defect();
        if asym > tol {
            return Err(Error::NonHermitian { asymmetry: asym.as_f64(), tol: tol.as_f64() });
        }
        Ok(())
    }

    /// Checks that `self` is an `n×n` density matrix: Hermitian, unit trace,
    /// eigenvalues ≥ −tol.
    pub fn validate_density(&self, n: usize, tol: T) -> Result<()> {
        self.require_shape(n, n)?;
        let asym = self.hermitian_defect();
        if asym > tol {
            return Err(Error::InvalidDensity(format!("Hermitian defect {asym:e}")));
        }
        let tr = self.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensity(format!("trace {} + {}i", tr.re, tr.im)));
        }
        let eig = hermitian_eig(self, tol)?;
        if let Some(&low) = eig.eigenvalues().first() {
            if low < -tol {
                return Err(Error::InvalidDensity(format!("negative eigenvalue {low:e}")));
            }
        }
        Ok(())
    }
}

impl<T: Real> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        &self.data[r * self.cols + c]
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        ComplexMatrix::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).fold(Complex::new(T::zero(), T::zero()), |acc, k| acc + self.get(r, k) * rhs.get(k, c))
        })
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> fmt::Display for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{}", self.get(r, c))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Accepts amplitudes whose squared norm is 1 within `OUTPUT_TOL`.
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let n2: T = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if amplitudes.is_empty() || (n2 - T::one()).abs() > T::OUTPUT_TOL {
            return Err(Error::NotNormalized(n2.as_f64()));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let n = amplitudes.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if !(n > T::zero() && n.is_finite()) {
            return Err(Error::NotNormalized((n * n).as_f64()));
        }
        Ok(Self { amplitudes: amplitudes.into_iter().map(|z| z / n).collect() })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> ComplexMatrix<T> {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |r, c| self.amplitudes[r] * self.amplitudes[c].conj())
    }

    /// `⟨ψ|m|ψ⟩`.
    pub fn expectation(&self, m: &ComplexMatrix<T>) -> Complex<T> {
        let n = self.dim();
        assert_eq!((m.rows(), m.cols()), (n, n), "operator shape mismatch");
        let mut acc = Complex::new(T::zero(), T::zero());
        for r in 0..n {
            for c in 0..n {
                acc = acc + self.amplitudes[r].conj() * m.get(r, c) * self.amplitudes[c];
            }
        }
        acc
    }
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigenSystem<T> {
    eigenvalues: Vec<T>,
    eigenvectors: Vec<StateVector<T>>,
}

impl<T: Real> EigenSystem<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[StateVector<T>] {
        &self.eigenvectors
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.map_spectrum(|x| x)
    }

    /// `V f(Λ) V†`.
    pub fn map_spectrum(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let n = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (lambda, vec) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let w = f(*lambda);
            out = &out + &vec.projector().scale(w);
        }
        out
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |r, c| {
        a.get(r / b.rows(), c / b.cols()) * b.get(r % b.rows(), c % b.cols())
    })
}

/// Pauli matrix `σ_index` with `σ_0 = I`.
pub fn pauli<T: Real>(index: usize) -> Result<ComplexMatrix<T>> {
    let o = T::zero();
    let l = T::one();
    let c = |re: T, im: T| Complex::new(re, im);
    let data = match index {
        0 => vec![c(l, o), c(o, o), c(o, o), c(l, o)],
        1 => vec![c(o, o), c(l, o), c(l, o), c(o, o)],
        2 => vec![c(o, o), c(o, -l), c(o, l), c(o, o)],
        3 => vec![c(l, o), c(o, o), c(o, o), c(-l, o)],
        _ => return Err(Error::PauliIndex(index)),
    };
    ComplexMatrix::new(2, 2, data)
}

/// Bell state for `label`: `Φ± = (|00⟩ ± |11⟩)/√2`, `Ψ± = (|01⟩ ± |10⟩)/√2`.
pub fn bell_state<T: Real>(label: BellLabel) -> StateVector<T> {
    let h = T::FRAC_1_SQRT_2();
    let z = T::zero();
    let amps = match label {
        BellLabel::PhiPlus => [h, z, z, h],
        BellLabel::PhiMinus => [h, z, z, -h],
        BellLabel::PsiPlus => [z, h, h, z],
        BellLabel::PsiMinus => [z, h, -h, z],
    };
    StateVector { amplitudes: amps.iter().map(|&x| Complex::new(x, T::zero())).collect() }
}

/// Transpose on the first tensor factor: `⟨αβ|ρ^{T_A}|γδ⟩ = ⟨γβ|ρ|αδ⟩`.
pub fn partial_transpose_a<T: Real>(rho: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    rho.require_shape(4, 4)?;
    Ok(ComplexMatrix::from_fn(4, 4, |r, c| {
        let (a, b) = (r / 2, r % 2);
        let (g, d) = (c / 2, c % 2);
        rho.get(2 * g + b, 2 * a + d)
    }))
}

const MAX_SWEEPS: usize = 100;

/// Cyclic complex Jacobi eigen-decomposition of a Hermitian matrix.
///
/// Eigenvalues come back ascending. Eigenvector phases are fixed so the
/// largest-modulus component (lowest index among near-equal moduli) is real
/// positive; eigenvalues equal within rounding are ordered by comparing the
/// rounded eigenvectors lexicographically.
pub fn hermitian_eig<T: Real>(m: &ComplexMatrix<T>, tol: T) -> Result<EigenSystem<T>> {
    m.require_hermitian(tol)?;
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::<T>::identity(n);

    let frob = a.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    let eps = T::epsilon();
    let target = eps * frob * T::lit(1e-2);

    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).map(|(p, q)| a.get(p, q).norm_sqr()).sum();
        if off.sqrt() <= target || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut pairs: Vec<(T, Vec<Complex<T>>)> = (0..n)
        .map(|k| {
            let col: Vec<Complex<T>> = (0..n).map(|r| v.get(r, k)).collect();
            (a.get(k, k).re, fix_phase(col))
        })
        .collect();
    order_eigenpairs(&mut pairs, frob);

    let (eigenvalues, eigenvectors) =
        pairs.into_iter().map(|(val, vec)| (val, StateVector { amplitudes: vec })).unzip();
    Ok(EigenSystem { eigenvalues, eigenvectors })
}

fn jacobi_rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let n = a.rows();
    let apq = a.get(p, q);
    let mag = apq.norm();
    if mag <= T::min_positive_value() {
        a.set(p, q, Complex::new(T::zero(), T::zero()));
        a.set(q, p, Complex::new(T::zero(), T::zero()));
        return;
    }
    let phase = apq / mag;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let two = T::lit(2.0);
    let tau = (aqq - app) / (two * mag);
    let t = if tau == T::zero() { T::one() } else { tau.signum() / (tau.abs() + (T::one() + tau * tau).sqrt()) };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    // J = diag(1, conj(phase)) on (p, q) followed by a real rotation.
    let jpp = Complex::new(c, T::zero());
    let jpq = Complex::new(s, T::zero());
    let jqp = phase.conj() * (-s);
    let jqq = phase.conj() * c;

    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * jpp + akq * jqp);
        a.set(k, q, akp * jpq + akq * jqq);
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * jpp + vkq * jqp);
        v.set(k, q, vkp * jpq + vkq * jqq);
    }
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, jpp.conj() * apk + jqp.conj() * aqk);
        a.set(q, k, jpq.conj() * apk + jqq.conj() * aqk);
    }
    a.set(p, q, Complex::new(T::zero(), T::zero()));
    a.set(q, p, Complex::new(T::zero(), T::zero()));
    let dp = a.get(p, p).re;
    let dq = a.get(q, q).re;
    a.set(p, p, Complex::new(dp, T::zero()));
    a.set(q, q, Complex::new(dq, T::zero()));
}

fn fix_phase<T: Real>(mut col: Vec<Complex<T>>) -> Vec<Complex<T>> {
    let biggest = col.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    if biggest == T::zero() {
        return col;
    }
    let slack = T::ROUNDING_QUANTUM * T::lit(1e-1);
    let pivot = col.iter().position(|z| z.norm() >= biggest - slack).unwrap_or(0);
    let rot = col[pivot].conj() / col[pivot].norm();
    for z in col.iter_mut() {
        *z = *z * rot;
    }
    col[pivot] = Complex::new(col[pivot].re, T::zero());
    col
}

fn order_eigenpairs<T: Real>(pairs: &mut [(T, Vec<Complex<T>>)], scale: T) {
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(Ordering::Equal));
    let tie = T::lit(64.0) * T::epsilon() * scale.max(T::one());
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && pairs[end].0 - pairs[end - 1].0 <= tie {
            end += 1;
        }
        if end - start > 1 {
            pairs[start..end].sort_by(|x, y| compare_rounded(&x.1, &y.1));
        }
        start = end;
    }
}

fn compare_rounded<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Ordering {
    let q = T::ROUNDING_QUANTUM;
    let key = |z: &Complex<T>| ((z.re / q).round(), (z.im / q).round());
    for (za, zb) in a.iter().zip(b) {
        let (ka, kb) = (key(za), key(zb));
        match ka.0.partial_cmp(&kb.0).unwrap_or(Ordering::Equal) {
            Ordering::Equal => {}
            other => return other,
        }
        match ka.1.partial_cmp(&kb.1).unwrap_or(Ordering::Equal) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm_hermitian<T: Real>(m: &ComplexMatrix<T>) -> Result<T> {
    let eig = hermitian_eig(m, T::INPUT_TOL)?;
    Ok(eig.eigenvalues().iter().map(|x| x.abs()).sum())
}

/// `e^{-h} / Tr e^{-h}` for a dimensionless Hermitian `h`.
///
/// The smallest eigenvalue is subtracted before exponentiating, so every
/// Boltzmann factor lies in `(0, 1]`.
pub fn gibbs<T: Real>(h: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let eig = hermitian_eig(h, T::INPUT_TOL)?;
    let lowest = eig.eigenvalues()[0];
    let z: T = eig.eigenvalues().iter().map(|&e| (-(e - lowest)).exp()).sum();
    Ok(eig.map_spectrum(|e| (-(e - lowest)).exp() / z).hermitian_part())
}

/// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
pub fn bloch_to_state<T: Real>(theta: T, phi: T) -> StateVector<T> {
    let half = theta * T::lit(0.5);
    let a0 = Complex::new(half.cos(), T::zero());
    let a1 = Complex::from_polar(half.sin(), phi);
    StateVector { amplitudes: vec![a0, a1] }
}
