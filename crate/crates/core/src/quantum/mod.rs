//! Finite-dimensional quantum layer: Hermitian matrices, their spectral
//! decomposition, density matrices, measurements and random states.

mod eigen;
mod matrix;
mod measurement;
mod sampling;
mod state;

pub use eigen::{spectral_decompose, SpectralDecomposition};
pub use matrix::{ComplexMatrix, HermitianOperator, HERMITIAN_TOL};
pub use measurement::{
    direct_sum_distribution, direct_sum_probabilities, Measurement, MeasurementKind,
    MEASUREMENT_TOL,
};
pub use num_complex::Complex64;
pub use sampling::{
    haar_unitary, haar_vector, random_pure_state, random_pure_state_with,
    random_state_with_spectrum, random_state_with_spectrum_with, stream_rng,
};
pub use state::{check_spectrum, QuantumState, STATE_TOL};
