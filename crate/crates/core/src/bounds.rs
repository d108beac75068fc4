//! Optimal direct-sum bounds by exhaustive search over subset operators.
//!
//! For measurements with `K₁, …, K_M` outcomes, level `n` ranges over every
//! way of picking `n` outcomes in total (a [`Composition`] of `n` plus one
//! outcome subset per measurement). The picked projectors or effects sum to
//! a subset operator whose eigenvalues, paired with the state spectrum,
//! give the largest total probability `τₙ` those outcomes can carry. The
//! maximum over all choices is `Ωₙ`, and the states reaching it supply the
//! per-level vectors whose join is the least upper bound.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{json_number, json_numbers};
use crate::majorization::{join_many, DistVector, EPS_SORT};
use crate::quantum::{
    direct_sum_distribution, spectral_decompose, ComplexMatrix, HermitianOperator, Measurement,
    QuantumState,
};

/// Largest number of subset tuples the search will visit.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// Candidates within this distance of `Ωₙ` count as maximizers.
pub const MAXIMIZER_TOL: f64 = 1e-9;

/// Outcomes chosen from one measurement (0-based, ascending).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SubsetChoice {
    pub measurement: usize,
    pub outcomes: Vec<usize>,
}

/// How many outcomes each measurement contributes at a level.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// One choice of outcomes reaching `Ωₙ`, with the sorted direct-sum
/// distribution of the state that reaches it.
#[derive(Debug, Clone, Serialize)]
pub struct Maximizer {
    pub composition: Composition,
    pub subsets: Vec<SubsetChoice>,
    #[serde(skip)]
    pub chi: DistVector,
}

#[derive(Debug, Clone, Serialize)]
pub struct SnRecord {
    pub n: usize,
    pub omega: f64,
    pub maximizers: Vec<Maximizer>,
    pub s_n: DistVector,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundResult {
    pub s: DistVector,
    pub records: Vec<SnRecord>,
    pub rpz: DistVector,
}

impl BoundResult {
    /// `(0, Ω₁, …, Ω_{T−1}, T)` with `T` the number of measurements.
    pub fn omega_profile(&self) -> Vec<f64> {
        omega_profile(&self.records, self.s.mass())
    }

    /// `{"s", "per_n": [{"n", "omega", "s_n", "maximizers"}], "rpz"}` with
    /// numbers rounded to 12 significant digits.
    pub fn to_json(&self) -> serde_json::Value {
        let per_n: Vec<serde_json::Value> = self
            .records
            .iter()
            .map(|r| {
                serde_json::json!({
                    "n": r.n,
                    "omega": json_number(r.omega),
                    "s_n": json_numbers(r.s_n.components()),
                    "maximizers": r.maximizers,
                })
            })
            .collect();
        serde_json::json!({
            "s": json_numbers(self.s.components()),
            "per_n": per_n,
            "rpz": json_numbers(self.rpz.components()),
        })
    }
}

/// `Σ_{i∈ℐ} Eᵢ` over the chosen outcomes of `m`.
pub fn subset_operator(m: &Measurement, outcomes: &[usize]) -> Result<HermitianOperator> {
    let k = m.outcome_count();
    if let Some(&bad) = outcomes.iter().find(|&&i| i >= k) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            outcomes: k,
        });
    }
    if outcomes.iter().duplicates().next().is_some() {
        return Err(Error::InvalidMeasurement(format!(
            "outcome set {outcomes:?} has repeated indices"
        )));
    }
    let mut sum = HermitianOperator::zeros(m.dim());
    for &i in outcomes {
        sum = &sum + &m.effect(i)?;
    }
    Ok(sum)
}

/// All `(n₁, …, n_M)` with `Σ nⱼ = n` and `0 ≤ nⱼ ≤ Kⱼ`, in descending
/// lexicographic order.
pub fn enumerate_compositions(n: usize, limits: &[usize]) -> Vec<Composition> {
    fn rec(n: usize, limits: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        match limits.split_first() {
            None => {
                if n == 0 {
                    out.push(Composition(prefix.clone()));
                }
            }
            Some((&k, rest)) => {
                let rest_cap: usize = rest.iter().sum();
                for part in (0..=k.min(n)).rev() {
                    if n - part > rest_cap {
                        break;
                    }
                    prefix.push(part);
                    rec(n - part, rest, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(n, limits, &mut Vec::with_capacity(limits.len()), &mut out);
    out
}

fn check_dims(op: &HermitianOperator, spectrum: &DistVector) -> Result<()> {
    if op.dim() != spectrum.len() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            found: spectrum.len(),
        });
    }
    Ok(())
}

/// Largest value of `Tr[op ρ]` over states with spectrum `λ`: the
/// descending eigenvalues of `op` paired with `λ↓`.
pub fn tau_n(op: &HermitianOperator, spectrum: &DistVector) -> Result<f64> {
    check_dims(op, spectrum)?;
    let eig = spectral_decompose(op)?;
    Ok(dot(eig.eigenvalues(), spectrum.components()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `Σᵢ λᵢ |ξᵢ⟩⟨ξᵢ|` over the descending eigenvectors of `op`; attains
/// [`tau_n`].
pub fn maximizer_state(op: &HermitianOperator, spectrum: &DistVector) -> Result<QuantumState> {
    check_dims(op, spectrum)?;
    let eig = spectral_decompose(op)?;
    QuantumState::from_spectrum(spectrum, eig.eigenvectors())
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn total_outcomes(ms: &[Measurement]) -> usize {
    ms.iter().map(Measurement::outcome_count).sum()
}

/// Subset tuples visited by [`least_upper_bound`]: `2^T − 2` for `T`
/// outcomes in total.
pub fn enumeration_size(ms: &[Measurement]) -> u128 {
    let t = total_outcomes(ms) as u32;
    1u128.checked_shl(t).map_or(u128::MAX, |x| x.saturating_sub(2))
}

fn guard(count: u128) -> Result<()> {
    if count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            count,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

fn check_inputs(ms: &[Measurement], spectrum: &DistVector) -> Result<()> {
    let first = ms.first().ok_or(Error::EmptyInput)?;
    if let Some(m) = ms.iter().find(|m| m.dim() != first.dim()) {
        return Err(Error::DimensionMismatch {
            expected: first.dim(),
            found: m.dim(),
        });
    }
    if spectrum.len() != first.dim() {
        return Err(Error::DimensionMismatch {
            expected: first.dim(),
            found: spectrum.len(),
        });
    }
    crate::quantum::check_spectrum(spectrum)
}

/// Every (composition, subset tuple) at level `n`, in lexicographic order.
fn candidates(ms: &[Measurement], n: usize) -> Vec<(Composition, Vec<SubsetChoice>)> {
    let limits: Vec<usize> = ms.iter().map(Measurement::outcome_count).collect();
    let mut out = Vec::new();
    for comp in enumerate_compositions(n, &limits) {
        let per_measurement: Vec<Vec<SubsetChoice>> = comp
            .parts()
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0)
            .map(|(j, &p)| {
                (0..limits[j])
                    .combinations(p)
                    .map(|outcomes| SubsetChoice {
                        measurement: j,
                        outcomes,
                    })
                    .collect()
            })
            .collect();
        for subsets in per_measurement.into_iter().multi_cartesian_product() {
            out.push((comp.clone(), subsets));
        }
    }
    out
}

fn summed_operator(effects: &[Vec<HermitianOperator>], subsets: &[SubsetChoice]) -> ComplexMatrix {
    let dim = effects[0][0].dim();
    let mut sum = ComplexMatrix::zeros(dim);
    for choice in subsets {
        for &i in &choice.outcomes {
            sum = &sum + effects[choice.measurement][i].matrix();
        }
    }
    sum
}

/// Level-`n` record: `Ωₙ`, every maximizing choice, and the join of the
/// maximizer distributions.
pub fn compute_s_n(ms: &[Measurement], spectrum: &DistVector, n: usize) -> Result<SnRecord> {
    check_inputs(ms, spectrum)?;
    let total = total_outcomes(ms);
    let max = total.saturating_sub(1);
    if n == 0 || n > max {
        return Err(Error::InvalidLevel { level: n, max });
    }
    guard(binomial(total, n))?;
    let effects = effect_table(ms)?;
    level_record(ms, &effects, spectrum, n)
}

fn effect_table(ms: &[Measurement]) -> Result<Vec<Vec<HermitianOperator>>> {
    ms.iter()
        .map(|m| (0..m.outcome_count()).map(|i| m.effect(i)).collect())
        .collect()
}

fn level_record(
    ms: &[Measurement],
    effects: &[Vec<HermitianOperator>],
    spectrum: &DistVector,
    n: usize,
) -> Result<SnRecord> {
    let cands = candidates(ms, n);
    let evaluated: Vec<(f64, HermitianOperator)> = cands
        .par_iter()
        .map(|(_, subsets)| {
            let op = HermitianOperator::new(summed_operator(effects, subsets))?;
            Ok((tau_n(&op, spectrum)?, op))
        })
        .collect::<Result<_>>()?;
    let omega = evaluated
        .iter()
        .map(|(t, _)| *t)
        .fold(f64::NEG_INFINITY, f64::max);

    let maximizers: Vec<Maximizer> = cands
        .into_iter()
        .zip(&evaluated)
        .filter(|(_, (t, _))| *t >= omega - MAXIMIZER_TOL)
        .map(|((composition, subsets), (_, op))| {
            let state = maximizer_state(op, spectrum)?;
            Ok(Maximizer {
                composition,
                subsets,
                chi: direct_sum_distribution(ms, &state)?,
            })
        })
        .collect::<Result<_>>()?;
    let s_n = join_many(maximizers.iter().map(|m| &m.chi))?;
    Ok(SnRecord {
        n,
        omega,
        maximizers,
        s_n,
    })
}

/// The least vector majorizing the direct-sum distribution of every state
/// with spectrum `λ`, plus the per-level records and the comparison bound.
pub fn least_upper_bound(ms: &[Measurement], spectrum: &DistVector) -> Result<BoundResult> {
    check_inputs(ms, spectrum)?;
    guard(enumeration_size(ms))?;
    let total = total_outcomes(ms);
    let effects = effect_table(ms)?;
    let records = (1..total)
        .map(|n| level_record(ms, &effects, spectrum, n))
        .collect::<Result<Vec<_>>>()?;
    let mass = ms.len() as f64;
    let s = if records.is_empty() {
        // One measurement with a single outcome.
        DistVector::new(vec![mass; total])?
    } else {
        join_many(records.iter().map(|r| &r.s_n))?.chop(EPS_SORT)
    };
    let rpz = rpz_bound(&records, mass)?;
    Ok(BoundResult { s, records, rpz })
}

fn omega_profile(records: &[SnRecord], mass: f64) -> Vec<f64> {
    std::iter::once(0.0)
        .chain(records.iter().map(|r| r.omega))
        .chain(std::iter::once(mass))
        .collect()
}

/// `(Ω₁, Ω₂ − Ω₁, …, mass − Ω_{T−1})` in level order.
pub fn omega_differences(records: &[SnRecord], mass: f64) -> Vec<f64> {
    omega_profile(records, mass)
        .windows(2)
        .map(|w| w[1] - w[0])
        .collect()
}

/// The Ω-difference vector sorted descending.
pub fn rpz_bound(records: &[SnRecord], mass: f64) -> Result<DistVector> {
    DistVector::sort_descending(&omega_differences(records, mass))
}
