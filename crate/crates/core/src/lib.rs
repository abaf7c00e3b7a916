//! Thermal entanglement, CHSH nonlocality and teleportation fidelity of two
//! dipolar-coupled spin-1/2 particles.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below name the double-precision instantiations used by the CLI.

pub mod cli;
pub mod dipolar;
pub mod error;
pub mod measures;
pub mod qmat;
pub mod scalar;
pub mod scan;
pub mod teleport;

pub use dipolar::{
    correlations, fano_marginals, hamiltonian_from_tensor, hamiltonian_matrix, spectrum, thermal_state, BellLabel,
    BellWeights, CorrelationTriple, CouplingParams, FanoForm, SpectralData,
};
pub use error::{Error, Result};
pub use measures::{chsh_max, chsh_max_general, negativity, negativity_bell_diagonal, ChshResult, NegativityResult};
pub use qmat::{
    bell_state, bloch_to_state, gibbs, hermitian_eig, kron, partial_transpose_a, pauli, trace_norm_hermitian,
    ComplexMatrix, EigenSystem, StateVector,
};
pub use scalar::Real;
pub use scan::{
    dominant_map, evaluate_point, scan_grid, trace_boundary, ContourPolyline, GridSpec, Quantity, Region, ScanRecord,
};
pub use teleport::{
    average_fidelity, average_fidelity_quadrature, best_fidelity, channel_output, fidelity_pointwise, minimum_fidelity,
    pauli_conjugation, BlochAngles, FidelityReport,
};

pub type ComplexMatrix64 = ComplexMatrix<f64>;
pub type StateVector64 = StateVector<f64>;
pub type EigenSystem64 = EigenSystem<f64>;
pub type CouplingParams64 = CouplingParams<f64>;
pub type BellWeights64 = BellWeights<f64>;
pub type SpectralData64 = SpectralData<f64>;
pub type CorrelationTriple64 = CorrelationTriple<f64>;
pub type GridSpec64 = GridSpec<f64>;
pub type ScanRecord64 = ScanRecord<f64>;
pub type ContourPolyline64 = ContourPolyline<f64>;
pub type BlochAngles64 = BlochAngles<f64>;
pub type FidelityReport64 = FidelityReport<f64>;

pub type ComplexMatrix32 = ComplexMatrix<f32>;
pub type CouplingParams32 = CouplingParams<f32>;
