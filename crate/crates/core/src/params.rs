use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rates and cross-reactivity strengths of the evolution equations.
///
/// `f[i]` is the replication rate of variant `i`, `p` the neutralization
/// rate, `c` the stimulation rate and `b` the antibody decay rate.
/// Stimulation crosses an edge with strength `alpha`, neutralization with
/// strength `beta`, and `0 < beta < alpha < 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParameters {
    pub f: Vec<f64>,
    pub p: f64,
    pub c: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl ModelParameters {
    pub fn new(f: Vec<f64>, p: f64, c: f64, b: f64, alpha: f64, beta: f64) -> Result<Self> {
        let params = Self { f, p, c, b, alpha, beta };
        params.validate()?;
        Ok(params)
    }

    /// `p = c = 1`, the normalization used by most worked examples.
    pub fn unit_pc(f: Vec<f64>, b: f64, alpha: f64, beta: f64) -> Result<Self> {
        Self::new(f, 1.0, 1.0, b, alpha, beta)
    }

    pub fn n(&self) -> usize {
        self.f.len()
    }

    /// Checks positivity and the `0 < beta < alpha < 1` ordering.
    pub fn validate(&self) -> Result<()> {
        if self.f.is_empty() {
            return Err(Error::InvalidParameters("f must be non-empty".into()));
        }
        for (i, &fi) in self.f.iter().enumerate() {
            if !(fi.is_finite() && fi > 0.0) {
                return Err(Error::InvalidParameters(format!(
                    "f{} = {fi} must be finite and > 0",
                    i + 1
                )));
            }
        }
        for (name, v) in [("p", self.p), ("c", self.c), ("b", self.b)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameters(format!("{name} = {v} must be finite and > 0")));
            }
        }
        if !(self.beta > 0.0 && self.beta < self.alpha && self.alpha < 1.0) {
            return Err(Error::InvalidParameters(format!(
                "need 0 < beta < alpha < 1, got alpha = {}, beta = {}",
                self.alpha, self.beta
            )));
        }
        Ok(())
    }

    /// Validates and checks that there is one replication rate per node.
    pub fn validate_for(&self, n: usize) -> Result<()> {
        self.validate()?;
        if self.f.len() != n {
            return Err(Error::DimensionMismatch {
                what: "length of f vs network size",
                expected: n,
                actual: self.f.len(),
            });
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let params: Self = serde_json::from_str(text)?;
        params.validate()?;
        Ok(params)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("parameter serialization cannot fail")
    }
}
