//! Optimal majorization bounds for the joint outcome statistics of several
//! quantum measurements.
//!
//! Given measurements on a common Hilbert space and the spectrum of the
//! states of interest, [`bounds::least_upper_bound`] returns the least
//! vector `s` that majorizes the sorted concatenation of outcome
//! distributions for every such state. The supporting pieces are the
//! majorization lattice ([`majorization`]), a small dense Hermitian
//! toolkit ([`quantum`]), entropic consequences ([`entropy`]), Lorenz
//! curves ([`lorenz`]) and randomized checks ([`verify`]).

pub mod bounds;
pub mod entropy;
pub mod error;
pub mod format;
pub mod lorenz;
pub mod majorization;
pub mod presets;
pub mod problem;
pub mod quantum;
pub mod verify;

pub use bounds::{least_upper_bound, BoundResult, Composition, Maximizer, SnRecord, SubsetChoice};
pub use error::{Error, Result};
pub use majorization::{
    beta_vector, compare, flatten, flatten_once, join, join_many, majorizes, meet,
    CumulativeProfile, DistVector, MajorizationOrder, EPS_NUM, EPS_SORT,
};
pub use problem::Problem;
