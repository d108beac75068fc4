//! Problem definitions and their JSON file format (schema version 1).
//!
//! ```json
//! {
//!   "v": 1,
//!   "dimension": 2,
//!   "spectrum": [1, 0],
//!   "measurements": [
//!     {"type": "projective", "basis": [[[1,0],[0,0]], [[0,0],[1,0]]]},
//!     {"type": "povm", "effects": [ <matrix>, ... ]}
//!   ]
//! }
//! ```
//!
//! Matrices are nested row arrays of `[re, im]` pairs. For projective
//! measurements the basis vectors are the matrix columns. `spectrum` is
//! optional and defaults to a pure state.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorization::DistVector;
use crate::presets::pure_spectrum;
use crate::quantum::{
    check_spectrum, Complex64, ComplexMatrix, Measurement, MeasurementKind, QuantumState,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Measurements on a common Hilbert space plus the spectrum of the states
/// the bound ranges over.
#[derive(Debug, Clone)]
pub struct Problem {
    pub measurements: Vec<Measurement>,
    pub spectrum: DistVector,
}

impl Problem {
    pub fn new(measurements: Vec<Measurement>, spectrum: DistVector) -> Result<Self> {
        let first = measurements.first().ok_or(Error::EmptyInput)?;
        let dim = first.dim();
        if let Some(m) = measurements.iter().find(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.dim(),
            });
        }
        if spectrum.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: spectrum.len(),
            });
        }
        check_spectrum(&spectrum)?;
        Ok(Self {
            measurements,
            spectrum,
        })
    }

    pub fn dim(&self) -> usize {
        self.spectrum.len()
    }

    pub fn with_spectrum(self, spectrum: DistVector) -> Result<Self> {
        Self::new(self.measurements, spectrum)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ProblemSpec =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        spec.into_problem()
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read_file(path)?)
    }

    pub fn to_spec(&self) -> ProblemSpec {
        let measurements = self
            .measurements
            .iter()
            .map(|m| match m.kind() {
                MeasurementKind::Projective => {
                    let basis = ComplexMatrix::from_columns(m.basis().expect("projective"))
                        .expect("square basis");
                    MeasurementSpec::Projective {
                        basis: matrix_to_json(&basis),
                    }
                }
                MeasurementKind::Povm => MeasurementSpec::Povm {
                    effects: (0..m.outcome_count())
                        .map(|i| matrix_to_json(m.effect(i).expect("in range").matrix()))
                        .collect(),
                },
            })
            .collect();
        ProblemSpec {
            v: SCHEMA_VERSION,
            dimension: self.dim(),
            spectrum: Some(self.spectrum.components().to_vec()),
            measurements,
        }
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `[re, im]` pairs, row-major.
pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub v: u32,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<f64>>,
    pub measurements: Vec<MeasurementSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MeasurementSpec {
    Projective { basis: JsonMatrix },
    Povm { effects: Vec<JsonMatrix> },
}

fn matrix_from_json(m: &JsonMatrix, dim: usize, field: &str) -> Result<ComplexMatrix> {
    if m.len() != dim || m.iter().any(|row| row.len() != dim) {
        return Err(Error::Schema(format!("{field}: expected a {dim}x{dim} matrix")));
    }
    ComplexMatrix::from_rows(
        m.iter()
            .map(|row| row.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
            .collect(),
    )
    .map_err(|e| Error::Schema(format!("{field}: {e}")))
}

pub fn matrix_to_json(m: &ComplexMatrix) -> JsonMatrix {
    m.rows()
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

impl ProblemSpec {
    pub fn into_problem(self) -> Result<Problem> {
        if self.v != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "v: unsupported schema version {} (expected {SCHEMA_VERSION})",
                self.v
            )));
        }
        let dim = self.dimension;
        if dim == 0 {
            return Err(Error::Schema("dimension: must be positive".into()));
        }
        if self.measurements.is_empty() {
            return Err(Error::Schema("measurements: at least one required".into()));
        }
        let mut measurements = Vec::with_capacity(self.measurements.len());
        for (i, spec) in self.measurements.iter().enumerate() {
            let m = match spec {
                MeasurementSpec::Projective { basis } => {
                    let field = format!("measurements[{i}].basis");
                    let matrix = matrix_from_json(basis, dim, &field)?;
                    Measurement::projective(&matrix)
                        .map_err(|e| Error::Schema(format!("{field}: {e}")))?
                }
                MeasurementSpec::Povm { effects } => {
                    let field = format!("measurements[{i}].effects");
                    let matrices = effects
                        .iter()
                        .enumerate()
                        .map(|(k, e)| matrix_from_json(e, dim, &format!("{field}[{k}]")))
                        .collect::<Result<Vec<_>>>()?;
                    Measurement::povm(matrices)
                        .map_err(|e| Error::Schema(format!("{field}: {e}")))?
                }
            };
            measurements.push(m);
        }
        let spectrum = match self.spectrum {
            None => pure_spectrum(dim),
            Some(values) => {
                if values.len() != dim {
                    return Err(Error::Schema(format!(
                        "spectrum: expected {dim} entries, found {}",
                        values.len()
                    )));
                }
                DistVector::sort_descending(&values)
                    .map_err(|e| Error::Schema(format!("spectrum: {e}")))?
            }
        };
        Problem::new(measurements, spectrum).map_err(|e| Error::Schema(format!("spectrum: {e}")))
    }
}

/// State file: either `{"v": 1, "pure": [[re, im], ...]}` or
/// `{"v": 1, "density": <matrix>}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub v: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pure: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<JsonMatrix>,
}

impl StateSpec {
    pub fn into_state(self) -> Result<QuantumState> {
        if self.v != SCHEMA_VERSION {
            return Err(Error::Schema(format!("v: unsupported schema version {}", self.v)));
        }
        match (self.pure, self.density) {
            (Some(psi), None) => {
                let psi: Vec<Complex64> = psi.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
                QuantumState::pure(&psi).map_err(|e| Error::Schema(format!("pure: {e}")))
            }
            (None, Some(rho)) => {
                let dim = rho.len();
                let m = matrix_from_json(&rho, dim, "density")?;
                QuantumState::from_density(m).map_err(|e| Error::Schema(format!("density: {e}")))
            }
            _ => Err(Error::Schema(
                "exactly one of `pure` or `density` is required".into(),
            )),
        }
    }

    pub fn load(path: &Path) -> Result<QuantumState> {
        let spec: StateSpec =
            serde_json::from_str(&read_file(path)?).map_err(|e| Error::Schema(e.to_string()))?;
        spec.into_state()
    }
}

/// Reads a vector from a JSON array of numbers, or from the `"s"` field of
/// a bound report.
pub fn load_vector(path: &Path) -> Result<DistVector> {
    parse_vector(&read_file(path)?)
}

pub fn parse_vector(text: &str) -> Result<DistVector> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let array = match &value {
        serde_json::Value::Array(_) => &value,
        serde_json::Value::Object(map) => map
            .get("s")
            .ok_or_else(|| Error::Schema("s: missing vector field".into()))?,
        _ => return Err(Error::Schema("expected an array or an object with `s`".into())),
    };
    let values: Vec<f64> = serde_json::from_value(array.clone())
        .map_err(|e| Error::Schema(format!("s: {e}")))?;
    if values.is_empty() {
        return Err(Error::Schema("s: vector is empty".into()));
    }
    DistVector::sort_descending(&values).map_err(|e| Error::Schema(format!("s: {e}")))
}
