//! Parameter conditions attached to fixed points.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// Strictly positive.
    Greater,
    /// Exactly zero.
    Equal,
}

/// A requirement on the parameters for a fixed point to exist on its support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Condition {
    /// `sum_i coefficients[i] * f_i` compared with zero. Coefficients are
    /// evaluated at the current `beta` and scaled so the first nonzero one
    /// has magnitude one.
    LinearInF {
        coefficients: Vec<f64>,
        relation: Relation,
        /// The component whose sign this condition controls, e.g. `r3`.
        source: String,
    },
    /// `lower < alpha < upper`, required for an antigen component to be positive.
    AlphaRange { lower: f64, upper: f64, source: String },
    /// The antigen equations are only consistent at this exact `alpha`.
    AlphaEquals { alpha: f64, source: String },
}

impl Condition {
    pub fn relation(&self) -> Relation {
        match self {
            Condition::LinearInF { relation, .. } => *relation,
            Condition::AlphaRange { .. } => Relation::Greater,
            Condition::AlphaEquals { .. } => Relation::Equal,
        }
    }

    pub fn is_equality(&self) -> bool {
        self.relation() == Relation::Equal
    }

    /// Builds a linear condition, normalizing the coefficient vector.
    /// Returns `None` when every coefficient is negligible.
    pub fn linear(coefficients: Vec<f64>, relation: Relation, source: impl Into<String>) -> Option<Self> {
        let max = coefficients.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if max == 0.0 {
            return None;
        }
        let cleaned: Vec<f64> = coefficients
            .iter()
            .map(|&c| if c.abs() <= 1e-12 * max { 0.0 } else { c })
            .collect();
        let first = cleaned.iter().copied().find(|c| *c != 0.0)?;
        let scale = match relation {
            Relation::Greater => first.abs(),
            Relation::Equal => first,
        };
        Some(Condition::LinearInF {
            coefficients: cleaned.iter().map(|c| c / scale).collect(),
            relation,
            source: source.into(),
        })
    }

    /// Evaluates the condition at `f` and `alpha`. Equalities use `tol` on the
    /// normalized linear form.
    pub fn holds(&self, f: &[f64], alpha: f64, tol: f64) -> bool {
        match self {
            Condition::LinearInF { coefficients, relation, .. } => {
                let v: f64 = coefficients.iter().zip(f).map(|(c, f)| c * f).sum();
                match relation {
                    Relation::Greater => v > 0.0,
                    Relation::Equal => v.abs() <= tol,
                }
            }
            Condition::AlphaRange { lower, upper, .. } => alpha > *lower && alpha < *upper,
            Condition::AlphaEquals { alpha: a, .. } => (alpha - a).abs() <= tol,
        }
    }

    /// Human-readable form, e.g. `f3 > f1` or `f1 = β·f2`.
    pub fn render(&self, beta: f64) -> String {
        match self {
            Condition::LinearInF { coefficients, relation, .. } => {
                let lhs = render_terms(coefficients.iter().map(|&c| c.max(0.0)), beta);
                let rhs = render_terms(coefficients.iter().map(|&c| (-c).max(0.0)), beta);
                let op = match relation {
                    Relation::Greater => ">",
                    Relation::Equal => "=",
                };
                format!("{lhs} {op} {rhs}")
            }
            Condition::AlphaRange { lower, upper, .. } => {
                let lo = *lower > 1e-9;
                let hi = *upper < 1.0 - 1e-9;
                match (lo, hi) {
                    (true, true) => format!("{} < α < {}", fmt_num(*lower), fmt_num(*upper)),
                    (true, false) => format!("α > {}", fmt_num(*lower)),
                    (false, true) => format!("α < {}", fmt_num(*upper)),
                    (false, false) => "0 < α < 1".to_string(),
                }
            }
            Condition::AlphaEquals { alpha, .. } => format!("α = {}", fmt_num(*alpha)),
        }
    }
}

impl fmt::Display for Condition {
    /// Renders coefficients numerically; use [`Condition::render`] for `β` powers.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(&self.render(f64::NAN))
    }
}

fn fmt_num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

/// Expresses `v` as `β^k` or `β^-k` when it matches a small power.
fn beta_power(v: f64, beta: f64) -> Option<String> {
    if !beta.is_finite() {
        return None;
    }
    for k in 1..=4i32 {
        for (power, label) in [(k, k), (-k, -k)] {
            let candidate = beta.powi(power);
            if (v - candidate).abs() <= 1e-9 * candidate.max(1.0) {
                return Some(match label {
                    1 => "β".to_string(),
                    l => format!("β^{l}"),
                });
            }
        }
    }
    None
}

fn render_terms(coeffs: impl Iterator<Item = f64>, beta: f64) -> String {
    let mut terms = Vec::new();
    for (i, c) in coeffs.enumerate() {
        if c == 0.0 {
            continue;
        }
        let var = format!("f{}", i + 1);
        if (c - 1.0).abs() <= 1e-12 {
            terms.push(var);
        } else if let Some(p) = beta_power(c, beta) {
            terms.push(format!("{p}·{var}"));
        } else {
            terms.push(format!("{}·{var}", fmt_num(c)));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_rendering() {
        let c = Condition::linear(vec![-2.0, 0.0, 2.0], Relation::Greater, "r3").unwrap();
        assert_eq!(c.render(0.5), "f3 > f1");
        assert!(c.holds(&[1.0, 0.0, 2.0], 0.5, 0.0));
        assert!(!c.holds(&[2.0, 0.0, 2.0], 0.5, 0.0));

        let beta = 4.0 / 9.0;
        let e = Condition::linear(vec![-beta, 1.0 * beta * beta], Relation::Equal, "consistency").unwrap();
        assert_eq!(e.render(beta), "f1 = β·f2");
        assert!(e.is_equality());

        let a = Condition::AlphaRange { lower: 0.0, upper: 0.5, source: "x2".into() };
        assert_eq!(a.render(beta), "α < 0.5");
        assert!(a.holds(&[], 0.4, 0.0) && !a.holds(&[], 0.6, 0.0));
        assert!(Condition::linear(vec![0.0, 0.0], Relation::Greater, "r").is_none());
    }
}
