//! Entropies in bits and the entropic relations that follow from a
//! majorization bound.
//!
//! Shannon entropy is applied to un-normalized vectors as `−Σ vᵢ log₂ vᵢ`,
//! so the entropy of a direct sum is the sum of the entropies of its parts.

use crate::bounds::least_upper_bound;
use crate::error::{Error, Result};
use crate::majorization::{join, majorizes, DistVector, EPS_NUM};
use crate::quantum::{direct_sum_distribution, Measurement, QuantumState};

/// Slack allowed when checking entropic inequalities.
pub const ENTROPY_TOL: f64 = 1e-9;

fn check_entries(v: &[f64]) -> Result<()> {
    if let Some((i, x)) = v.iter().enumerate().find(|(_, x)| !x.is_finite() || **x < 0.0) {
        return Err(Error::InvalidDistribution(format!(
            "entry {i} is {x}, expected a finite non-negative value"
        )));
    }
    Ok(())
}

fn plogp(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `−Σ vᵢ log₂ vᵢ` with `0 log 0 = 0`.
pub fn shannon(v: &[f64]) -> Result<f64> {
    check_entries(v)?;
    Ok(-v.iter().copied().map(plogp).sum::<f64>())
}

/// `log₂(Σ vᵢ^α) / (1 − α)`; `α = 1` gives [`shannon`].
pub fn renyi(v: &[f64], alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidOrder(alpha));
    }
    check_entries(v)?;
    if alpha == 1.0 {
        return shannon(v);
    }
    let power_sum: f64 = v.iter().filter(|&&x| x > 0.0).map(|x| x.powf(alpha)).sum();
    Ok(power_sum.log2() / (1.0 - alpha))
}

/// `Σ sⱼ log₂(sⱼ / χⱼ)` over sorted components. Returns `+∞` when some
/// `χⱼ = 0` while `sⱼ > 0`.
pub fn relative_entropy(s: &DistVector, chi: &DistVector) -> Result<f64> {
    if s.len() != chi.len() {
        return Err(Error::IncompatibleVectors(format!(
            "dimensions {} and {}",
            s.len(),
            chi.len()
        )));
    }
    let mut total = 0.0;
    for (&sj, &cj) in s.components().iter().zip(chi.components()) {
        if sj == 0.0 {
            continue;
        }
        if cj == 0.0 {
            return Ok(f64::INFINITY);
        }
        total += sj * (sj / cj).log2();
    }
    Ok(total)
}

/// `H(s)` for the least upper bound `s`: a state-independent lower bound
/// on the summed measurement entropies.
pub fn entropic_bound(ms: &[Measurement], spectrum: &DistVector) -> Result<f64> {
    shannon(least_upper_bound(ms, spectrum)?.s.components())
}

/// `Σⱼ H(pⱼ)` for the outcome distributions of `state`.
pub fn entropy_sum(ms: &[Measurement], state: &QuantumState) -> Result<f64> {
    ms.iter().map(|m| shannon(&m.probabilities(state)?)).sum()
}

/// The three quantities in `Σⱼ H(pⱼ) ≥ H(s) + D(s‖χ) ≥ H(s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropicChain {
    pub entropy_sum: f64,
    pub bound: f64,
    pub divergence: f64,
}

impl EntropicChain {
    pub fn improved(&self) -> f64 {
        self.bound + self.divergence
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.entropy_sum >= self.improved() - tol && self.improved() >= self.bound - tol
    }
}

/// Evaluates the chain for `state` against a precomputed bound `s`.
pub fn entropic_chain(ms: &[Measurement], s: &DistVector, state: &QuantumState) -> Result<EntropicChain> {
    let chi = direct_sum_distribution(ms, state)?;
    Ok(EntropicChain {
        entropy_sum: shannon(chi.components())?,
        bound: shannon(s.components())?,
        divergence: relative_entropy(s, &chi)?,
    })
}

/// `H(s) + D(s‖χ)` with `χ` the direct-sum distribution of `state`.
pub fn improved_entropic_bound(
    ms: &[Measurement],
    spectrum: &DistVector,
    state: &QuantumState,
) -> Result<f64> {
    let s = least_upper_bound(ms, spectrum)?.s;
    Ok(entropic_chain(ms, &s, state)?.improved())
}

/// `H(a) + H(b) − 2H(a ∨ b)`, clamped at zero against rounding.
pub fn lattice_metric(a: &DistVector, b: &DistVector) -> Result<f64> {
    let j = join(a, b)?;
    let d = shannon(a.components())? + shannon(b.components())? - 2.0 * shannon(j.components())?;
    Ok(d.max(0.0))
}

/// `H(χ₁) + H(χ₂) ≥ 2H(s) + d(χ₁, χ₂)` for two vectors majorized by `s`.
pub fn pair_entropy_check(chi1: &DistVector, chi2: &DistVector, s: &DistVector) -> Result<bool> {
    for chi in [chi1, chi2] {
        if !majorizes(s, chi, EPS_NUM)? {
            return Err(Error::NotUpperBound);
        }
    }
    let lhs = shannon(chi1.components())? + shannon(chi2.components())?;
    let rhs = 2.0 * shannon(s.components())? + lattice_metric(chi1, chi2)?;
    Ok(lhs >= rhs - ENTROPY_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::quantum::Complex64;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    fn dv(xs: &[f64]) -> DistVector {
        DistVector::sort_descending(xs).unwrap()
    }

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon(&[1.0, 0.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(shannon(&[0.5, 0.5]).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(shannon(&[0.5; 4]).unwrap(), 2.0, epsilon = 1e-15);
        assert!(matches!(shannon(&[0.5, -0.1]), Err(Error::InvalidDistribution(_))));
    }

    #[test]
    fn renyi_examples() {
        assert_abs_diff_eq!(renyi(&[0.5, 0.5, 0.0], 2.0).unwrap(), 1.0, epsilon = 1e-15);
        let p2 = [1.0 / 12.0, 1.0 / 12.0, 5.0 / 6.0];
        let want = -(2.0 / 144.0 + 25.0 / 36.0f64).log2();
        assert_abs_diff_eq!(renyi(&p2, 2.0).unwrap(), want, epsilon = 1e-12);
        assert_abs_diff_eq!(renyi(&p2, 2.0).unwrap(), 0.4975, epsilon = 1e-4);
        for alpha in [0.2, 0.5, 2.0, 7.0] {
            assert_abs_diff_eq!(renyi(&[0.2; 5], alpha).unwrap(), 5f64.log2(), epsilon = 1e-12);
        }
        assert_eq!(renyi(&p2, 1.0).unwrap(), shannon(&p2).unwrap());
        assert!(matches!(renyi(&p2, 0.0), Err(Error::InvalidOrder(_))));
        assert!(matches!(renyi(&p2, -1.0), Err(Error::InvalidOrder(_))));
    }

    #[test]
    fn relative_entropy_examples() {
        let v = dv(&[0.7, 0.2, 0.1]);
        assert_eq!(relative_entropy(&v, &v).unwrap(), 0.0);
        assert_abs_diff_eq!(
            relative_entropy(&dv(&[1.0, 0.0]), &dv(&[0.5, 0.5])).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_eq!(
            relative_entropy(&dv(&[0.5, 0.5]), &dv(&[1.0, 0.0])).unwrap(),
            f64::INFINITY
        );
        assert!(relative_entropy(&dv(&[1.0]), &v).is_err());
    }

    #[test]
    fn bound_examples() {
        let p = presets::qubit_xz(FRAC_PI_2);
        let h = SQRT_2 / 2.0;
        let want = -(h * h.log2() + (1.0 - h) * (1.0 - h).log2());
        let got = entropic_bound(&p.measurements, &p.spectrum).unwrap();
        assert_abs_diff_eq!(got, want, epsilon = 1e-12);
        assert_abs_diff_eq!(got, 0.872429, epsilon = 1e-6);

        let p = presets::qubit_xz(0.0);
        assert_abs_diff_eq!(entropic_bound(&p.measurements, &p.spectrum).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn improved_bound_on_basis_state() {
        let p = presets::qubit_xz(FRAC_PI_2);
        let z1 = QuantumState::pure(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
        let h = SQRT_2 / 2.0;
        let s = [1.0, h, 1.0 - h, 0.0];
        let hs = -(h * h.log2() + (1.0 - h) * (1.0 - h).log2());
        let d = h * (h / 0.5).log2() + (1.0 - h) * ((1.0 - h) / 0.5).log2();
        let got = improved_entropic_bound(&p.measurements, &p.spectrum, &z1).unwrap();
        assert_abs_diff_eq!(got, hs + d, epsilon = 1e-12);
        let chain = entropic_chain(&p.measurements, &dv(&s), &z1).unwrap();
        assert_abs_diff_eq!(chain.entropy_sum, 1.0, epsilon = 1e-12);
        assert!(chain.holds(ENTROPY_TOL));
    }

    #[test]
    fn metric_examples() {
        let v = dv(&[0.4, 0.3, 0.3]);
        assert_eq!(lattice_metric(&v, &v).unwrap(), 0.0);

        let p = dv(&[0.6, 0.15, 0.15, 0.1]);
        let q = dv(&[0.5, 0.25, 0.2, 0.05]);
        let j = [0.6, 0.175, 0.175, 0.05];
        let want = shannon(p.components()).unwrap() + shannon(q.components()).unwrap()
            - 2.0 * shannon(&j).unwrap();
        assert_abs_diff_eq!(lattice_metric(&p, &q).unwrap(), want, epsilon = 1e-12);

        let lo = dv(&[0.4, 0.35, 0.25]);
        let hi = dv(&[0.7, 0.2, 0.1]);
        assert_abs_diff_eq!(
            lattice_metric(&lo, &hi).unwrap(),
            shannon(lo.components()).unwrap() - shannon(hi.components()).unwrap(),
            epsilon = 1e-12
        );
        assert!(matches!(
            lattice_metric(&dv(&[1.0, 0.0]), &dv(&[0.5, 0.5, 0.0])),
            Err(Error::IncompatibleVectors(_))
        ));
    }

    #[test]
    fn pair_entropy_examples() {
        let s = dv(&[0.7, 0.2, 0.1]);
        assert!(pair_entropy_check(&s, &s, &s).unwrap());
        let chi = dv(&[0.5, 0.3, 0.2]);
        assert!(pair_entropy_check(&chi, &chi, &s).unwrap());
        let other = dv(&[0.6, 0.2, 0.2]);
        assert!(pair_entropy_check(&chi, &other, &s).unwrap());
        assert!(matches!(
            pair_entropy_check(&dv(&[0.9, 0.1, 0.0]), &chi, &s),
            Err(Error::NotUpperBound)
        ));
    }

    #[test]
    fn renyi_order_reversal() {
        let p1 = [0.5, 0.5, 0.0];
        let p2 = [1.0 / 12.0, 1.0 / 12.0, 5.0 / 6.0];
        let low = renyi(&p1, 0.2).unwrap() - renyi(&p2, 0.2).unwrap();
        let high = renyi(&p1, 2.0).unwrap() - renyi(&p2, 2.0).unwrap();
        assert!(low < 0.0 && high > 0.0, "{low} {high}");
    }
}
