//! The majorization lattice on descending vectors of fixed total mass.
//!
//! A [`DistVector`] is a non-negative vector kept in non-increasing order.
//! Two vectors of equal length and mass are compared through their
//! cumulative profiles: `b ≺ a` when every leading partial sum of `b` is
//! bounded by the matching partial sum of `a`. The join of two vectors is
//! the least concave majorant of the pointwise maximum of their profiles,
//! built by flattening the β-vector; the meet takes differences of the
//! pointwise minimum of the profiles, which is already concave.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance for numerical comparisons and mass checks.
pub const EPS_NUM: f64 = 1e-9;

/// Tolerance for validating descending order.
pub const EPS_SORT: f64 = 1e-12;

/// A non-negative vector in non-increasing order with a fixed total mass.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistVector {
    components: Vec<f64>,
    mass: f64,
}

impl DistVector {
    /// Sorts raw entries into descending order. Entries in `[-EPS_NUM, 0)`
    /// are clamped to zero; anything more negative is rejected.
    pub fn sort_descending(raw: &[f64]) -> Result<Self> {
        let mut components = clamp_entries(raw)?;
        // Stable, so equal entries keep their relative order.
        components.sort_by(|x, y| y.total_cmp(x));
        Ok(Self::from_components_unchecked(components))
    }

    /// Wraps entries that are already descending (within [`EPS_SORT`]).
    pub fn new(components: Vec<f64>) -> Result<Self> {
        let components = clamp_entries(&components)?;
        if let Some(k) = components.windows(2).position(|w| w[1] > w[0] + EPS_SORT) {
            return Err(Error::InvalidDistribution(format!(
                "entry {} ({}) exceeds entry {} ({})",
                k + 1,
                components[k + 1],
                k,
                components[k]
            )));
        }
        Ok(Self::from_components_unchecked(components))
    }

    /// Like [`DistVector::sort_descending`] but also checks the total mass.
    pub fn with_mass(raw: &[f64], mass: f64) -> Result<Self> {
        let v = Self::sort_descending(raw)?;
        if (v.mass - mass).abs() > EPS_NUM {
            return Err(Error::InvalidDistribution(format!(
                "total mass {} differs from expected {}",
                v.mass, mass
            )));
        }
        Ok(v)
    }

    /// Rebuilds a vector from its cumulative profile (without the leading 0).
    pub fn from_profile(partial_sums: &[f64]) -> Result<Self> {
        let increments = increments_of(partial_sums);
        Self::sort_descending(&increments)
    }

    fn from_components_unchecked(components: Vec<f64>) -> Self {
        let mass = components.iter().sum();
        Self { components, mass }
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.components
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Sum of the first `k` components.
    pub fn partial_sum(&self, k: usize) -> f64 {
        self.components.iter().take(k).sum()
    }

    pub fn profile(&self) -> CumulativeProfile {
        CumulativeProfile::of(&self.components)
    }

    /// Sets components below `eps` to exactly zero.
    pub fn chop(&self, eps: f64) -> Self {
        let components = self
            .components
            .iter()
            .map(|&x| if x.abs() < eps { 0.0 } else { x })
            .collect();
        Self::from_components_unchecked(components)
    }

    /// Componentwise equality within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.len() == other.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(x, y)| (x - y).abs() <= tol)
    }
}

impl AsRef<[f64]> for DistVector {
    fn as_ref(&self) -> &[f64] {
        &self.components
    }
}

fn clamp_entries(raw: &[f64]) -> Result<Vec<f64>> {
    raw.iter()
        .enumerate()
        .map(|(i, &x)| {
            if !x.is_finite() {
                Err(Error::InvalidDistribution(format!("entry {i} is not finite")))
            } else if x < -EPS_NUM {
                Err(Error::InvalidDistribution(format!("entry {i} is negative ({x})")))
            } else {
                Ok(x.max(0.0))
            }
        })
        .collect()
}

fn increments_of(partial_sums: &[f64]) -> Vec<f64> {
    let mut prev = 0.0;
    partial_sums
        .iter()
        .map(|&y| {
            let d = y - prev;
            prev = y;
            d
        })
        .collect()
}

/// Leading partial sums of a vector; `partial_sums[k]` covers entries `0..=k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CumulativeProfile {
    partial_sums: Vec<f64>,
}

impl CumulativeProfile {
    pub fn of(values: &[f64]) -> Self {
        let partial_sums = values
            .iter()
            .scan(0.0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        Self { partial_sums }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.partial_sums
    }

    pub fn len(&self) -> usize {
        self.partial_sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partial_sums.is_empty()
    }

    /// Non-decreasing within `tol`.
    pub fn is_monotone(&self, tol: f64) -> bool {
        let mut prev = 0.0;
        self.partial_sums.iter().all(|&y| {
            let ok = y >= prev - tol;
            prev = y;
            ok
        })
    }

    /// Second differences (with the implicit leading 0) at most `tol`.
    pub fn is_concave(&self, tol: f64) -> bool {
        let increments = increments_of(&self.partial_sums);
        increments.windows(2).all(|w| w[1] - w[0] <= tol)
    }
}

/// Outcome of comparing two vectors under majorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MajorizationOrder {
    Equal,
    /// The first vector is majorized by the second.
    Less,
    /// The first vector majorizes the second.
    Greater,
    Incomparable,
}

impl fmt::Display for MajorizationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Equal => "Equal",
            Self::Less => "Less",
            Self::Greater => "Greater",
            Self::Incomparable => "Incomparable",
        };
        f.write_str(s)
    }
}

impl MajorizationOrder {
    pub fn as_partial_ordering(self) -> Option<Ordering> {
        match self {
            Self::Equal => Some(Ordering::Equal),
            Self::Less => Some(Ordering::Less),
            Self::Greater => Some(Ordering::Greater),
            Self::Incomparable => None,
        }
    }
}

fn check_compatible(a: &DistVector, b: &DistVector, tol: f64) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::IncompatibleVectors(format!(
            "dimensions {} and {}",
            a.len(),
            b.len()
        )));
    }
    if (a.mass - b.mass).abs() > tol {
        return Err(Error::IncompatibleVectors(format!(
            "masses {} and {}",
            a.mass, b.mass
        )));
    }
    Ok(())
}

/// Whether `a` majorizes `b` (`b ≺ a`): every leading partial sum of `b`
/// is at most the matching partial sum of `a` plus `tol`.
pub fn majorizes(a: &DistVector, b: &DistVector, tol: f64) -> Result<bool> {
    check_compatible(a, b, tol.max(EPS_NUM))?;
    Ok(dominates(a.components(), b.components(), tol))
}

fn dominates(upper: &[f64], lower: &[f64], tol: f64) -> bool {
    let mut su = 0.0;
    let mut sl = 0.0;
    upper.iter().zip(lower).all(|(&u, &l)| {
        su += u;
        sl += l;
        sl <= su + tol
    })
}

pub fn compare(a: &DistVector, b: &DistVector, tol: f64) -> Result<MajorizationOrder> {
    check_compatible(a, b, tol.max(EPS_NUM))?;
    if a.approx_eq(b, tol) {
        return Ok(MajorizationOrder::Equal);
    }
    let a_over_b = dominates(a.components(), b.components(), tol);
    let b_over_a = dominates(b.components(), a.components(), tol);
    Ok(match (a_over_b, b_over_a) {
        // Profiles agree within tol but components drift by up to 2·tol.
        (true, true) => MajorizationOrder::Equal,
        (true, false) => MajorizationOrder::Greater,
        (false, true) => MajorizationOrder::Less,
        (false, false) => MajorizationOrder::Incomparable,
    })
}

/// Increments of the pointwise-maximum profile of `a` and `b`. The result
/// need not be descending.
pub fn beta_vector(a: &DistVector, b: &DistVector) -> Result<Vec<f64>> {
    check_compatible(a, b, EPS_NUM)?;
    let pa = a.profile();
    let pb = b.profile();
    let upper: Vec<f64> = pa
        .as_slice()
        .iter()
        .zip(pb.as_slice())
        .map(|(x, y)| x.max(*y))
        .collect();
    Ok(increments_of(&upper))
}

/// One flattening step on a vector with at least one ascent.
///
/// With `j` the first index where `b[j] > b[j-1]`, the block `i..=j` is
/// replaced by its average, `i` being the largest index below `j` whose
/// predecessor is at least that average (the entry before index 0 counts
/// as `+∞`). Returns `None` when `b` is already non-increasing.
pub fn flatten_once(b: &[f64]) -> Option<Vec<f64>> {
    let j = (1..b.len()).find(|&j| b[j] > b[j - 1])?;
    let mut block_sum = b[j];
    let mut i = j;
    let average = loop {
        i -= 1;
        block_sum += b[i];
        let average = block_sum / (j - i + 1) as f64;
        if i == 0 || b[i - 1] >= average {
            break average;
        }
    };
    let mut out = b.to_vec();
    out[i..=j].iter_mut().for_each(|x| *x = average);
    Some(out)
}

/// Repeats [`flatten_once`] until the vector is non-increasing. The result
/// is the least vector whose cumulative profile dominates the input's.
pub fn flatten(b: &[f64]) -> Vec<f64> {
    let mut current = b.to_vec();
    let cap = b.len().saturating_sub(1);
    let mut steps = 0;
    while let Some(next) = flatten_once(&current) {
        steps += 1;
        assert!(
            steps <= cap,
            "flattening exceeded {cap} iterations on a vector of length {}",
            b.len()
        );
        current = next;
    }
    current
}

/// Least upper bound `a ∨ b`.
pub fn join(a: &DistVector, b: &DistVector) -> Result<DistVector> {
    check_compatible(a, b, EPS_NUM)?;
    // Comparable pair: the larger vector is the join, returned untouched
    // rather than rebuilt from rounded profile differences.
    if dominates(a.components(), b.components(), 0.0) {
        return Ok(a.clone());
    }
    if dominates(b.components(), a.components(), 0.0) {
        return Ok(b.clone());
    }
    let beta = beta_vector(a, b)?;
    Ok(DistVector::from_components_unchecked(flatten(&beta)))
}

/// Greatest lower bound `a ∧ b`: increments of the pointwise-minimum profile.
pub fn meet(a: &DistVector, b: &DistVector) -> Result<DistVector> {
    check_compatible(a, b, EPS_NUM)?;
    let lower: Vec<f64> = a
        .profile()
        .as_slice()
        .iter()
        .zip(b.profile().as_slice())
        .map(|(x, y)| x.min(*y))
        .collect();
    DistVector::from_profile(&lower)
}

/// Left fold of [`join`] over a non-empty list.
pub fn join_many<'a, I>(vs: I) -> Result<DistVector>
where
    I: IntoIterator<Item = &'a DistVector>,
{
    let mut iter = vs.into_iter();
    let first = iter.next().ok_or(Error::EmptyInput)?.clone();
    iter.try_fold(first, |acc, v| join(&acc, v))
}
