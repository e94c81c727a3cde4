//! JSON matrix files.
//!
//! ```json
//! {"domain": "gaussian_rational", "rows": 2, "cols": 2,
//!  "entries": [["1", "1/2+i"], ["0", "-3"]]}
//! ```
//!
//! Prime fields are written `{"prime_field": 5}`. Entries are canonical scalar
//! strings, so a parse/serialize round trip is byte-exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::ScalarDomain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainJson {
    GaussianRational,
    PrimeField(u64),
}

impl From<ScalarDomain> for DomainJson {
    fn from(d: ScalarDomain) -> Self {
        match d {
            ScalarDomain::GaussianRational => DomainJson::GaussianRational,
            ScalarDomain::PrimeField(p) => DomainJson::PrimeField(p),
        }
    }
}

impl TryFrom<DomainJson> for ScalarDomain {
    type Error = Error;
    fn try_from(d: DomainJson) -> Result<Self> {
        match d {
            DomainJson::GaussianRational => Ok(ScalarDomain::GaussianRational),
            DomainJson::PrimeField(p) => ScalarDomain::prime_field(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub domain: DomainJson,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl From<&Matrix> for MatrixJson {
    fn from(m: &Matrix) -> Self {
        MatrixJson {
            domain: m.domain().into(),
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|i| m.row(i).iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = Error;
    fn try_from(j: MatrixJson) -> Result<Self> {
        let domain = ScalarDomain::try_from(j.domain)?;
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::DimensionMismatch(format!(
                "entries do not form a {}x{} array",
                j.rows, j.cols
            )));
        }
        let entries = j
            .entries
            .iter()
            .flatten()
            .map(|s| domain.parse_scalar(s))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(domain, j.rows, j.cols, entries)
    }
}

pub fn matrix_from_json(s: &str) -> Result<Matrix> {
    let j: MatrixJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    Matrix::try_from(j)
}

pub fn matrix_to_json(m: &Matrix) -> String {
    serde_json::to_string(&MatrixJson::from(m)).expect("matrix serialization cannot fail")
}
