//! Lorenz curves: cumulative sums of a descending vector against the
//! number of components taken. `b ≺ a` exactly when the curve of `a` lies
//! on or above the curve of `b` at every integer abscissa.

use std::io::Write;
use std::path::Path;

use crate::bounds::BoundResult;
use crate::error::{Error, Result};
use crate::format::format_number;
use crate::majorization::{flatten, DistVector};
use crate::quantum::{direct_sum_distribution, Measurement, QuantumState};

/// Tolerance for curve comparisons.
pub const LORENZ_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct LorenzCurve {
    points: Vec<(usize, f64)>,
}

impl LorenzCurve {
    /// `(k, y)` pairs for `k = 0..=dim`, starting at `(0, 0)`.
    pub fn points(&self) -> &[(usize, f64)] {
        &self.points
    }

    pub fn ys(&self) -> Vec<f64> {
        self.points.iter().map(|&(_, y)| y).collect()
    }

    pub fn dim(&self) -> usize {
        self.points.len() - 1
    }

    pub fn mass(&self) -> f64 {
        self.points.last().map_or(0.0, |&(_, y)| y)
    }

    /// Whether `self` lies on or above `other` everywhere, within `tol`.
    pub fn dominates(&self, other: &Self, tol: f64) -> Result<bool> {
        check_dims(self, other)?;
        Ok(self
            .points
            .iter()
            .zip(&other.points)
            .all(|(&(_, a), &(_, b))| b <= a + tol))
    }

    /// Second differences are at most `tol`.
    pub fn is_concave(&self, tol: f64) -> bool {
        self.points
            .windows(3)
            .all(|w| w[2].1 - 2.0 * w[1].1 + w[0].1 <= tol)
    }
}

fn check_dims(a: &LorenzCurve, b: &LorenzCurve) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

pub fn lorenz_curve(v: &DistVector) -> LorenzCurve {
    let mut y = 0.0;
    let points = std::iter::once((0, 0.0))
        .chain(v.components().iter().enumerate().map(|(i, &x)| {
            y += x;
            (i + 1, y)
        }))
        .collect();
    LorenzCurve { points }
}

/// Whether `bound` is the least concave envelope of `curves`: it lies on or
/// above each curve, and meets their pointwise maximum wherever the least
/// concave majorant of that maximum does.
pub fn envelope_check(bound: &LorenzCurve, curves: &[LorenzCurve]) -> Result<bool> {
    let Some(first) = curves.first() else {
        return Err(Error::EmptyInput);
    };
    for c in curves {
        check_dims(bound, c)?;
    }
    let upper: Vec<f64> = (0..=first.dim())
        .map(|k| {
            curves
                .iter()
                .map(|c| c.points[k].1)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let increments: Vec<f64> = upper.windows(2).map(|w| w[1] - w[0]).collect();
    let mut majorant = vec![0.0];
    for x in flatten(&increments) {
        majorant.push(majorant.last().unwrap() + x);
    }
    Ok(bound.points.iter().zip(&upper).zip(&majorant).all(|((&(_, b), &u), &m)| {
        let above = b >= u - LORENZ_TOL;
        let touches = (m - u).abs() > LORENZ_TOL || (b - u).abs() <= LORENZ_TOL;
        above && touches
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedCurve {
    pub name: String,
    pub curve: LorenzCurve,
}

/// Curves for every distinct per-level vector (equal ones share a row,
/// named like `s(1)=s(5)`), the bound `s`, and the direct-sum distribution
/// of the maximally mixed state.
pub fn bound_curves(ms: &[Measurement], result: &BoundResult) -> Result<Vec<NamedCurve>> {
    let mut groups: Vec<(Vec<usize>, &DistVector)> = Vec::new();
    for r in &result.records {
        match groups.iter_mut().find(|(_, v)| v.approx_eq(&r.s_n, 1e-10)) {
            Some((levels, _)) => levels.push(r.n),
            None => groups.push((vec![r.n], &r.s_n)),
        }
    }
    let mut out: Vec<NamedCurve> = groups
        .into_iter()
        .map(|(levels, v)| NamedCurve {
            name: levels.iter().map(|n| format!("s({n})")).collect::<Vec<_>>().join("="),
            curve: lorenz_curve(v),
        })
        .collect();
    out.push(NamedCurve {
        name: "s".into(),
        curve: lorenz_curve(&result.s),
    });
    let dim = ms.first().ok_or(Error::EmptyInput)?.dim();
    let mixed = direct_sum_distribution(ms, &QuantumState::maximally_mixed(dim))?;
    out.push(NamedCurve {
        name: "chi_mix".into(),
        curve: lorenz_curve(&mixed),
    });
    Ok(out)
}

/// CSV with header `name,k,y`, one row per point, curves in order.
pub fn write_curves<W: Write>(curves: &[NamedCurve], writer: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["name", "k", "y"])?;
    for c in curves {
        for &(k, y) in c.curve.points() {
            w.write_record([c.name.as_str(), &k.to_string(), &format_number(y)])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn export_curves(curves: &[NamedCurve], path: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io_err)?;
    write_curves(curves, std::io::BufWriter::new(file)).map_err(|e| io_err(e.into()))
}
