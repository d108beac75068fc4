//! Helpers shared by the integration tests: an exhaustive rational-grid
//! oracle for join and meet, and seeded random vectors.

#![allow(dead_code)]

use majbound::DistVector;
use rand::Rng;

/// Every non-increasing vector of `len` non-negative integers summing to
/// `total`.
pub fn descending_compositions(total: u32, len: usize) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, len: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // Remaining entries are at most `x`, so `x` must be at least the average.
        let lo = remaining.div_ceil(len as u32);
        for x in (lo..=cap.min(remaining)).rev() {
            prefix.push(x);
            rec(remaining - x, len - 1, x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, len, total, &mut Vec::with_capacity(len), &mut out);
    out
}

fn prefix_sums(v: &[u32]) -> Vec<u32> {
    let mut acc = 0;
    v.iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect()
}

/// Join and meet profiles of two grid vectors (entries `aᵢ / denom`),
/// found by scanning every vector on the finer grid `1 / (12·denom)`.
/// Vectors of length at most 4 have their join on that grid.
pub struct GridOracle {
    pub join_profile: Vec<f64>,
    pub meet_profile: Vec<f64>,
}

pub fn grid_oracle(a: &[u32], b: &[u32], denom: u32) -> GridOracle {
    assert_eq!(a.len(), b.len());
    assert!(a.len() <= 4, "oracle grid only covers lengths up to 4");
    let scale = 12;
    let fine = denom * scale;
    let pa: Vec<u32> = prefix_sums(a).iter().map(|x| x * scale).collect();
    let pb: Vec<u32> = prefix_sums(b).iter().map(|x| x * scale).collect();
    let n = a.len();
    let mut join = vec![u32::MAX; n];
    let mut meet = vec![0u32; n];
    for t in descending_compositions(fine, n) {
        let pt = prefix_sums(&t);
        if (0..n).all(|k| pt[k] >= pa[k].max(pb[k])) {
            (0..n).for_each(|k| join[k] = join[k].min(pt[k]));
        }
        if (0..n).all(|k| pt[k] <= pa[k].min(pb[k])) {
            (0..n).for_each(|k| meet[k] = meet[k].max(pt[k]));
        }
    }
    let to_f = |p: Vec<u32>| p.into_iter().map(|x| x as f64 / fine as f64).collect();
    GridOracle {
        join_profile: to_f(join),
        meet_profile: to_f(meet),
    }
}

pub fn grid_vector(parts: &[u32], denom: u32) -> DistVector {
    DistVector::new(parts.iter().map(|&x| x as f64 / denom as f64).collect()).unwrap()
}

/// Random descending integer vector of length `len` summing to `denom`.
pub fn random_grid_parts<R: Rng>(rng: &mut R, len: usize, denom: u32) -> Vec<u32> {
    let mut parts = vec![0u32; len];
    for _ in 0..denom {
        parts[rng.random_range(0..len)] += 1;
    }
    parts.sort_unstable_by(|x, y| y.cmp(x));
    parts
}

/// Random probability vector of length `len`, sorted. About a quarter of
/// the draws contain exact zeros or ties.
pub fn random_dist<R: Rng>(rng: &mut R, len: usize) -> DistVector {
    let mut raw: Vec<f64> = (0..len).map(|_| rng.random::<f64>()).collect();
    match rng.random_range(0..8) {
        0 => raw[rng.random_range(0..len)] = 0.0,
        1 => {
            let v = raw[0];
            raw[len - 1] = v;
        }
        _ => {}
    }
    let total: f64 = raw.iter().sum();
    if total == 0.0 {
        raw[0] = 1.0;
    }
    let total: f64 = raw.iter().sum();
    let normalized: Vec<f64> = raw.iter().map(|x| x / total).collect();
    DistVector::sort_descending(&normalized).unwrap()
}

pub fn assert_profile_close(v: &DistVector, profile: &[f64], tol: f64) -> Result<(), String> {
    let got = v.profile();
    for (k, (g, w)) in got.as_slice().iter().zip(profile).enumerate() {
        if (g - w).abs() > tol {
            return Err(format!(
                "partial sum {} is {g}, expected {w} (vector {:?})",
                k + 1,
                v.components()
            ));
        }
    }
    Ok(())
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
