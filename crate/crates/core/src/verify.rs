//! Empirical checks of a bound: random states, a dense qubit grid, and
//! per-level tightness.
//!
//! A candidate bound is given as raw components whose leading partial sums
//! are compared with those of each state's sorted direct-sum distribution.
//! The states that reach `Ωₙ` are always added to the random sample, so a
//! bound that is too low at a tight level is caught deterministically.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{least_upper_bound, maximizer_state, subset_operator, BoundResult, SnRecord};
use crate::error::{Error, Result};
use crate::majorization::{majorizes, DistVector, EPS_NUM};
use crate::quantum::{
    direct_sum_distribution, random_pure_state_with, random_state_with_spectrum_with, stream_rng,
    Complex64, ComplexMatrix, HermitianOperator, Measurement, QuantumState,
};

pub const DEFAULT_TOL: f64 = 1e-8;

/// At most this many violations are listed; `violation_count` has the total.
pub const MAX_LISTED_VIOLATIONS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    /// Seed of the run; together with `state` it reproduces the sample.
    pub seed: u64,
    pub state: String,
    /// Number of leading components whose sum exceeds the bound.
    pub level: usize,
    /// Excess of the state's partial sum over the bound's.
    pub deficit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub samples: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    /// Per level `k`, the largest `cumsum_k(χ) − cumsum_k(bound)` seen;
    /// non-positive for a valid bound and zero where it is attained.
    pub max_slack_per_level: Vec<f64>,
    /// Per level, the largest `cumsum_k(χ)` seen.
    pub max_partial_sums: Vec<f64>,
    /// Per level, whether some sampled state reaches the bound within tol.
    pub tightness_achieved: Vec<bool>,
    /// Whether the sorted Ω-difference vector lies strictly above the bound.
    pub rpz_strictly_worse: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

fn partial_sums(v: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    v.iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect()
}

/// Accumulates per-level statistics over labelled distributions.
fn assess(
    bound: &[f64],
    samples: Vec<(String, DistVector)>,
    seed: u64,
    tol: f64,
) -> VerificationReport {
    let levels = bound.len().saturating_sub(1);
    let bound_sums = partial_sums(bound);
    let mut max_slack = vec![f64::NEG_INFINITY; levels];
    let mut max_sums = vec![f64::NEG_INFINITY; levels];
    let mut violations = Vec::new();
    let mut violation_count = 0;
    for (label, chi) in &samples {
        let sums = partial_sums(chi.components());
        for k in 0..levels {
            let excess = sums[k] - bound_sums[k];
            max_slack[k] = max_slack[k].max(excess);
            max_sums[k] = max_sums[k].max(sums[k]);
            if excess > tol {
                violation_count += 1;
                if violations.len() < MAX_LISTED_VIOLATIONS {
                    violations.push(Violation {
                        seed,
                        state: label.clone(),
                        level: k + 1,
                        deficit: excess,
                    });
                }
            }
        }
    }
    let tightness_achieved = max_slack.iter().map(|&e| e >= -tol).collect();
    VerificationReport {
        samples: samples.len(),
        violation_count,
        violations,
        max_slack_per_level: max_slack,
        max_partial_sums: max_sums,
        tightness_achieved,
        rpz_strictly_worse: false,
    }
}

fn check_bound_len(ms: &[Measurement], bound: &[f64]) -> Result<()> {
    let total: usize = ms.iter().map(Measurement::outcome_count).sum();
    if bound.len() != total {
        return Err(Error::DimensionMismatch {
            expected: total,
            found: bound.len(),
        });
    }
    Ok(())
}

/// States attaining `Ωₙ`, one per maximizer of each record.
pub fn maximizer_states(
    ms: &[Measurement],
    spectrum: &DistVector,
    records: &[SnRecord],
) -> Result<Vec<(String, QuantumState)>> {
    let mut out = Vec::new();
    for r in records {
        for (i, mx) in r.maximizers.iter().enumerate() {
            let mut op = HermitianOperator::zeros(spectrum.len());
            for c in &mx.subsets {
                op = &op + &subset_operator(&ms[c.measurement], &c.outcomes)?;
            }
            out.push((format!("maximizer n={} #{i}", r.n), maximizer_state(&op, spectrum)?));
        }
    }
    Ok(out)
}

fn is_pure(spectrum: &DistVector) -> bool {
    (spectrum.components()[0] - 1.0).abs() <= EPS_NUM
}

/// State number `index` of the random sample for `seed`.
pub fn sample_state(spectrum: &DistVector, seed: u64, index: u64) -> Result<QuantumState> {
    let mut rng = stream_rng(seed, index);
    if is_pure(spectrum) {
        random_pure_state_with(spectrum.len(), &mut rng)
    } else {
        random_state_with_spectrum_with(spectrum, &mut rng)
    }
}

/// Checks `bound` against `samples` random states (pure when the spectrum
/// is pure, otherwise random unitary conjugates of `diag(λ)`) plus every
/// maximizer state in `result`.
pub fn verify_with_records(
    ms: &[Measurement],
    spectrum: &DistVector,
    bound: &[f64],
    result: &BoundResult,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport> {
    check_bound_len(ms, bound)?;
    let mut labelled: Vec<(String, DistVector)> = maximizer_states(ms, spectrum, &result.records)?
        .into_iter()
        .map(|(label, st)| Ok((label, direct_sum_distribution(ms, &st)?)))
        .collect::<Result<_>>()?;
    let random: Vec<(String, DistVector)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let st = sample_state(spectrum, seed, i)?;
            Ok((format!("random #{i}"), direct_sum_distribution(ms, &st)?))
        })
        .collect::<Result<_>>()?;
    labelled.extend(random);
    let mut report = assess(bound, labelled, seed, tol);
    report.rpz_strictly_worse = rpz_strictly_worse(&result.rpz, &result.s, tol)?;
    Ok(report)
}

/// [`verify_with_records`] with the records computed from `ms` and `λ`.
pub fn verify_upper_bound(
    ms: &[Measurement],
    spectrum: &DistVector,
    bound: &[f64],
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport> {
    let result = least_upper_bound(ms, spectrum)?;
    verify_with_records(ms, spectrum, bound, &result, samples, seed, tol)
}

/// Whether `rpz` majorizes `s` without being equal to it.
pub fn rpz_strictly_worse(rpz: &DistVector, s: &DistVector, tol: f64) -> Result<bool> {
    Ok(majorizes(rpz, s, tol)? && !rpz.approx_eq(s, tol))
}

/// Copy of `bound` with its level-`level` partial sum lowered by `eps`
/// and every other partial sum unchanged.
pub fn deflate(bound: &[f64], level: usize, eps: f64) -> Result<Vec<f64>> {
    let max = bound.len().saturating_sub(1);
    if level == 0 || level > max {
        return Err(Error::InvalidLevel { level, max });
    }
    let mut out = bound.to_vec();
    out[level - 1] -= eps;
    out[level] += eps;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelTightness {
    pub n: usize,
    pub omega: f64,
    /// Some maximizer distribution has `cumsum_n = Ωₙ`.
    pub maximizer_attains: bool,
    /// `cumsum_n(s) = Ωₙ`, i.e. flattening did not lift this level.
    pub bound_tight: bool,
    /// `cumsum_n(s) − Ωₙ`.
    pub lift: f64,
}

pub fn verify_tightness(records: &[SnRecord], s: &DistVector, tol: f64) -> Vec<LevelTightness> {
    records
        .iter()
        .map(|r| {
            let attains = |v: &DistVector| (v.partial_sum(r.n) - r.omega).abs() <= tol;
            let maximizer_attains = if r.maximizers.is_empty() {
                attains(&r.s_n)
            } else {
                r.maximizers.iter().any(|m| attains(&m.chi))
            };
            let lift = s.partial_sum(r.n) - r.omega;
            LevelTightness {
                n: r.n,
                omega: r.omega,
                maximizer_attains,
                bound_tight: lift.abs() <= tol,
                lift,
            }
        })
        .collect()
}

/// Sweeps pure Bloch states `(cos θ/2, e^{iφ} sin θ/2)` on a
/// `grid_steps × grid_steps` grid (θ ∈ [0, π], φ ∈ [0, 2π)), placed in the
/// eigenbasis of a state with spectrum `λ` together with the orthogonal
/// vector.
pub fn grid_oracle_qubit(
    ms: &[Measurement],
    spectrum: &DistVector,
    bound: &[f64],
    grid_steps: usize,
) -> Result<VerificationReport> {
    let dim = ms.first().ok_or(Error::EmptyInput)?.dim();
    if dim != 2 {
        return Err(Error::UnsupportedDimension(dim));
    }
    if spectrum.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: spectrum.len(),
        });
    }
    check_bound_len(ms, bound)?;
    let steps = grid_steps.max(1);
    let points: Vec<(usize, usize)> = (0..=steps)
        .flat_map(|i| (0..steps).map(move |j| (i, j)))
        .collect();
    let labelled: Vec<(String, DistVector)> = points
        .par_iter()
        .map(|&(i, j)| {
            let theta = PI * i as f64 / steps as f64;
            let phi = 2.0 * PI * j as f64 / steps as f64;
            let (s, c) = (theta / 2.0).sin_cos();
            let phase = Complex64::from_polar(1.0, phi);
            let v = vec![Complex64::new(c, 0.0), phase * s];
            let w = vec![-phase.conj() * s, Complex64::new(c, 0.0)];
            let basis = ComplexMatrix::from_columns(&[v, w])?;
            let st = QuantumState::from_spectrum(spectrum, &basis)?;
            Ok((format!("grid theta={i}/{steps} phi={j}/{steps}"), direct_sum_distribution(ms, &st)?))
        })
        .collect::<Result<_>>()?;
    Ok(assess(bound, labelled, 0, DEFAULT_TOL))
}
