//! JSON spec files describing a skew-symmetric polynomial by its coefficients
//! on strictly increasing exponent tuples:
//!
//! ```json
//! { "n": 4, "k": 2, "degree": 3,
//!   "terms": [ { "r": [0, 3], "a": "1" }, { "r": [1, 2], "a": "-3" } ] }
//! ```
//!
//! `degree` defaults to `k/2 * (n-1)`. Coefficients are strings holding an
//! integer or `p/q`; plain JSON integers are accepted too.

use std::collections::BTreeSet;
use std::path::Path;

use hyperpfaffian::combinat::{check_shape, critical_degree, Composition};
use hyperpfaffian::poly::parse_rational;
use hyperpfaffian::SkewSpec;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub n: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    pub terms: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub r: Vec<u32>,
    pub a: Coefficient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Text(String),
    Integer(i64),
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed spec file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Validates every record and builds the spec. Diagnostics name the
    /// offending tuple.
    pub fn to_spec(&self) -> Result<SkewSpec, CliError> {
        check_shape(self.n, self.k).map_err(|e| CliError::Input(e.to_string()))?;
        let degree = self
            .degree
            .unwrap_or_else(|| critical_degree(self.n, self.k));
        let mut seen = BTreeSet::new();
        let mut coeffs = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let r = &t.r;
            if r.len() as u32 != self.k {
                return Err(CliError::Input(format!(
                    "term r={r:?} does not have k={} parts",
                    self.k
                )));
            }
            if r.windows(2).any(|w| w[0] >= w[1]) {
                return Err(CliError::Input(format!(
                    "term r={r:?} is not strictly increasing"
                )));
            }
            let sum: u32 = r.iter().sum();
            if sum != degree {
                return Err(CliError::Input(format!(
                    "term r={r:?} sums to {sum}, expected degree {degree}"
                )));
            }
            if !seen.insert(r.clone()) {
                return Err(CliError::Input(format!("duplicate term r={r:?}")));
            }
            let a = match &t.a {
                Coefficient::Text(s) => {
                    parse_rational(s).map_err(|e| CliError::Input(format!("term r={r:?}: {e}")))?
                }
                Coefficient::Integer(v) => hyperpfaffian::poly::rational(*v),
            };
            if a.is_zero() {
                return Err(CliError::Input(format!(
                    "term r={r:?} has zero coefficient"
                )));
            }
            coeffs.push((Composition(r.clone()), a));
        }
        SkewSpec::new(self.n, self.k, degree, coeffs).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn from_spec(spec: &SkewSpec) -> Self {
        Self {
            n: spec.n(),
            k: spec.k(),
            degree: Some(spec.degree()),
            terms: spec
                .coeffs()
                .iter()
                .map(|(r, a)| TermRecord {
                    r: r.parts().to_vec(),
                    a: Coefficient::Text(a.to_string()),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec files always serialize")
    }
}
