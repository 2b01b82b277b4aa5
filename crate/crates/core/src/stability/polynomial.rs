//! Characteristic-polynomial factorizations at the branch-cycle and
//! composed-network LI points, checked against the assembled Jacobian.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{jacobian_at, spectrum};
use crate::catalog::NamedNetwork;
use crate::error::{Error, Result};
use crate::fixed_points::{solve_support, FixedPointSolution, SupportPattern};
use crate::linalg;
use crate::model::CrnModel;
use crate::params::ModelParameters;

/// Closed-form coefficients against coefficients recovered from the Jacobian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorCheck {
    pub name: String,
    /// Roots of the known linear factors, with multiplicity.
    pub linear_factors: Vec<f64>,
    /// Closed-form coefficients, highest power first (monic).
    pub closed_form: Vec<f64>,
    /// Coefficients of `det(lambda I - J) / prod(lambda - linear)` fitted
    /// from samples, highest power first.
    pub numeric: Vec<f64>,
    /// Largest `|numeric - closed| / |closed|` over coefficients.
    pub max_relative_error: f64,
    pub coefficients_positive: bool,
    /// Largest distance between the spectrum and the predicted roots after
    /// matching, when checked.
    pub spectrum_match_error: Option<f64>,
}

impl FactorCheck {
    /// Coefficient agreement within `tol` and all closed-form coefficients positive.
    pub fn passes(&self, tol: f64) -> bool {
        self.coefficients_positive
            && self.max_relative_error <= tol
            && self.spectrum_match_error.is_none_or(|e| e <= tol)
    }
}

/// Which of the two branch-cycle LI points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchCycleBranch {
    /// `f3 > f1`: node 1 persistent, node 2 altruistic, node 3 neutral.
    F3AboveF1,
    /// `f1 > f3`: node 3 persistent, node 2 altruistic, node 1 neutral.
    F1AboveF3,
}

impl BranchCycleBranch {
    pub fn support(self) -> SupportPattern {
        match self {
            BranchCycleBranch::F3AboveF1 => SupportPattern::new(vec![0, 2], vec![1, 2]),
            BranchCycleBranch::F1AboveF3 => SupportPattern::new(vec![0, 2], vec![0, 1]),
        }
    }

    pub fn of(f: &[f64]) -> Result<Self> {
        if f.len() != 3 {
            return Err(Error::DimensionMismatch { what: "f", expected: 3, actual: f.len() });
        }
        if f[2] > f[0] {
            Ok(BranchCycleBranch::F3AboveF1)
        } else if f[0] > f[2] {
            Ok(BranchCycleBranch::F1AboveF3)
        } else {
            Err(Error::Precondition("the LI points need f1 != f3 strictly".into()))
        }
    }
}

/// Linear-factor roots and quartic `P` (highest power first) in closed form.
/// In the `f1 > f3` branch the roles of `f1` and `f3` swap, and the first
/// linear factor loses its `beta (f3 - f1)` term.
pub fn branch_cycle_closed_form(params: &ModelParameters, branch: BranchCycleBranch) -> (Vec<f64>, Vec<f64>) {
    let (b, alpha, beta) = (params.b, params.alpha, params.beta);
    let f = &params.f;
    let (lo, hi) = match branch {
        BranchCycleBranch::F3AboveF1 => (f[0], f[2]),
        BranchCycleBranch::F1AboveF3 => (f[2], f[0]),
    };
    let gap = hi - lo;
    let d = gap + alpha / beta * lo;
    let w = 1.0 - alpha;
    let coeffs = vec![
        1.0,
        b * (1.0 + w * gap / d),
        b * hi + b * b * w * gap / d,
        b * b * w * gap * (1.0 + lo / d),
        b * b * w * lo * gap,
    ];
    let lambda1 = match branch {
        BranchCycleBranch::F3AboveF1 => f[1] - f[0] / beta - beta * (f[2] - f[0]),
        BranchCycleBranch::F1AboveF3 => f[1] - f[2] / beta,
    };
    (vec![lambda1, b / alpha - 2.0 * b], coeffs)
}

/// Coefficients (ascending) of `det(lambda I - J) / prod(lambda - roots)`
/// fitted by least squares from `samples` real points that keep clear of the
/// known roots.
pub fn deflated_fit(j: &DMatrix<f64>, roots: &[f64], degree: usize, samples: usize) -> Vec<f64> {
    let dim = j.nrows();
    let scale = spectrum(j)
        .map(|e| e.iter().fold(0.5f64, |m, z| m.max(z.norm())))
        .unwrap_or(1.0);
    let mut points = Vec::with_capacity(samples);
    let mut t = -1.4;
    while points.len() < samples {
        let lambda = t * scale;
        if roots.iter().all(|&r| (lambda - r).abs() > 0.05 * scale) {
            points.push(lambda);
        }
        t += 0.35;
    }
    let values: Vec<f64> = points
        .iter()
        .map(|&l| {
            let shifted = DMatrix::from_fn(dim, dim, |a, c| if a == c { l } else { 0.0 } - j[(a, c)]);
            linalg::determinant(&shifted) / roots.iter().map(|r| l - r).product::<f64>()
        })
        .collect();
    linalg::polyfit(&points, &values, degree)
}

fn relative_errors(numeric: &[f64], closed: &[f64]) -> f64 {
    numeric
        .iter()
        .zip(closed)
        .map(|(a, b)| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
}

fn solve_named(model: &CrnModel, support: &SupportPattern) -> Result<FixedPointSolution> {
    solve_support(model, support).map_err(|e| Error::FixedPointAbsent(format!("{support}: {e}")))
}

/// Checks `det(lambda I - J) = (lambda - lambda1)(lambda - lambda2) P(lambda)`
/// at the branch-cycle LI point selected by the sign of `f3 - f1`.
pub fn check_branch_cycle_polynomial(params: &ModelParameters) -> Result<FactorCheck> {
    let branch = BranchCycleBranch::of(&params.f)?;
    let model = CrnModel::new(NamedNetwork::BranchCycle3.network(), params.clone())?;
    let sol = solve_named(&model, &branch.support())?;
    let jac = jacobian_at(&model, &sol.state)?;
    let (linear, closed) = branch_cycle_closed_form(params, branch);
    let mut numeric = deflated_fit(&jac.full, &linear, 4, 7);
    numeric.reverse();
    Ok(FactorCheck {
        name: format!("branch_cycle3 P(λ), {branch:?}"),
        max_relative_error: relative_errors(&numeric, &closed),
        coefficients_positive: closed.iter().all(|&c| c > 0.0),
        linear_factors: linear,
        closed_form: closed,
        numeric,
        spectrum_match_error: None,
    })
}

/// Support of the composed-network point with persistent nodes 3 and 5.
pub fn five_node_support() -> SupportPattern {
    SupportPattern::new(vec![0, 2, 4], vec![0, 1, 3])
}

/// Linear-factor roots (`lambda3` twice) and sextic `T` (highest power first)
/// evaluated at the solved composed-network point.
pub fn five_node_closed_form(params: &ModelParameters, sol: &FixedPointSolution) -> (Vec<f64>, Vec<f64>) {
    let (p, c, b, alpha, beta) = (params.p, params.c, params.b, params.alpha, params.beta);
    let f = &params.f;
    let (f1, f3, f5) = (f[0], f[2], f[4]);
    let (x1, r1, r4) = (sol.state.x[0], sol.state.r[0], sol.state.r[3]);
    let w = 1.0 - alpha;
    let q = b * b * r1 / (c * x1);
    let coeffs = vec![
        1.0,
        q * w + b * (2.0 - alpha),
        b * (f1 + w * (q * (2.0 - alpha) + b)),
        b * b * w * (2.0 * f1 - f3 - f5 + b / (c * x1) * (r1 * (b * w + f3 + f5) + 2.0 * alpha * alpha * f3 * r4)),
        b * b * w * (q * w * (f3 + f5) + p * r1 * (f3 + f5 + b * w) + f3 * f5 * (1.0 + alpha)),
        b.powi(3) * w * w * (b * r1 / (c * x1) * f3 * f5 + p * r1 * (f3 + f5)),
        p * b.powi(3) * r1 * f3 * f5 * w * w,
    ];
    let lambda3 = b / alpha - 2.0 * b;
    (vec![f[1] - f3 / beta, f[3] - f5 / beta, lambda3, lambda3], coeffs)
}

/// Greedy matching of `actual` to `expected`; returns the largest distance.
pub fn match_spectra(actual: &[Complex64], expected: &[Complex64]) -> f64 {
    if actual.len() != expected.len() {
        return f64::INFINITY;
    }
    let mut free: Vec<bool> = vec![true; expected.len()];
    let mut worst = 0.0f64;
    for a in actual {
        let (k, d) = expected
            .iter()
            .enumerate()
            .filter(|(k, _)| free[*k])
            .map(|(k, e)| (k, (a - e).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("equal lengths");
        free[k] = false;
        worst = worst.max(d);
    }
    worst
}

/// Checks `det(J - lambda I) = (lambda1 - lambda)(lambda2 - lambda)(lambda3 - lambda)^2 T(lambda)`
/// at the composed-network point, both by coefficients and by matching the
/// spectrum against the predicted roots.
pub fn check_five_node_polynomial(params: &ModelParameters) -> Result<FactorCheck> {
    if params.f.len() != 5 {
        return Err(Error::DimensionMismatch { what: "f", expected: 5, actual: params.f.len() });
    }
    let f = &params.f;
    if !(f[0] > f[2] + f[4]) {
        return Err(Error::Precondition("the composed-network point needs f1 > f3 + f5".into()));
    }
    let model = CrnModel::new(NamedNetwork::Composed5.network(), params.clone())?;
    let sol = solve_named(&model, &five_node_support())?;
    let jac = jacobian_at(&model, &sol.state)?;
    let (linear, closed) = five_node_closed_form(params, &sol);
    // (lambda3 - lambda)^2 is a repeated root: divide once per multiplicity.
    let mut numeric = deflated_fit(&jac.full, &linear, 6, 11);
    numeric.reverse();
    let mut ascending = closed.clone();
    ascending.reverse();
    let mut expected: Vec<Complex64> = linear.iter().map(|&l| Complex64::new(l, 0.0)).collect();
    expected.extend(linalg::poly_roots(&ascending).ok_or(Error::EigenNoConvergence(6000))?);
    let actual = spectrum(&jac.full)?;
    Ok(FactorCheck {
        name: "composed5 T(λ)".into(),
        max_relative_error: relative_errors(&numeric, &closed),
        coefficients_positive: closed.iter().all(|&c| c > 0.0),
        linear_factors: linear,
        closed_form: closed,
        numeric,
        spectrum_match_error: Some(match_spectra(&actual, &expected)),
    })
}
