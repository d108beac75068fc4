//! Built-in problems: two rotated qubit observables, the three Pauli
//! observables, and a pair of qutrit bases.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::majorization::DistVector;
use crate::problem::Problem;
use crate::quantum::{Complex64, Measurement};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn projective(columns: Vec<Vec<Complex64>>) -> Measurement {
    Measurement::projective_from_vectors(columns).expect("preset basis is orthonormal")
}

/// Eigenbasis of `σz`: `|z₁⟩ = (1, 0)`, `|z₂⟩ = (0, 1)`.
pub fn z_basis() -> Measurement {
    projective(vec![vec![re(1.0), re(0.0)], vec![re(0.0), re(1.0)]])
}

/// Eigenbasis of `cos θ σz + sin θ σx`:
/// `|x₁⟩ = (cos θ/2, sin θ/2)`, `|x₂⟩ = (sin θ/2, −cos θ/2)`.
pub fn rotated_x_basis(theta: f64) -> Measurement {
    let (s, c) = (theta / 2.0).sin_cos();
    projective(vec![vec![re(c), re(s)], vec![re(s), re(-c)]])
}

/// Pure state `(1, 0, …, 0)` spectrum.
pub fn pure_spectrum(dim: usize) -> DistVector {
    let mut v = vec![0.0; dim];
    v[0] = 1.0;
    DistVector::new(v).expect("descending")
}

/// Measurements `[X(θ), Z]` on a qubit, pure spectrum.
pub fn qubit_xz(theta: f64) -> Problem {
    Problem::new(vec![rotated_x_basis(theta), z_basis()], pure_spectrum(2))
        .expect("valid preset")
}

/// Measurements `[σx, σy, σz]` on a qubit, pure spectrum.
pub fn three_pauli() -> Problem {
    let h = FRAC_1_SQRT_2;
    let x = projective(vec![vec![re(h), re(h)], vec![re(h), re(-h)]]);
    let y = projective(vec![
        vec![re(h), Complex64::new(0.0, h)],
        vec![re(h), Complex64::new(0.0, -h)],
    ]);
    Problem::new(vec![x, y, z_basis()], pure_spectrum(2)).expect("valid preset")
}

/// Computational basis and a second real orthonormal qutrit basis.
pub fn qutrit_coles() -> Problem {
    let x = projective(vec![
        vec![re(1.0), re(0.0), re(0.0)],
        vec![re(0.0), re(1.0), re(0.0)],
        vec![re(0.0), re(0.0), re(1.0)],
    ]);
    let (r2, r3, r6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    let y = projective(vec![
        vec![re(1.0 / r3), re(1.0 / r2), re(1.0 / r6)],
        vec![re(1.0 / r3), re(0.0), re(-(2.0f64 / 3.0).sqrt())],
        vec![re(1.0 / r3), re(-1.0 / r2), re(1.0 / r6)],
    ]);
    Problem::new(vec![x, y], pure_spectrum(3)).expect("valid preset")
}

/// Looks up a preset by its command-line name.
pub fn by_name(name: &str, theta: f64) -> Option<Problem> {
    match name {
        "qubit-xz" => Some(qubit_xz(theta)),
        "three-pauli" => Some(three_pauli()),
        "qutrit-coles" => Some(qutrit_coles()),
        _ => None,
    }
}

pub const NAMES: [&str; 3] = ["qubit-xz", "three-pauli", "qutrit-coles"];
