//! Can local immunodeficiency occur without an altruistic node?
//!
//! If every antigen is present, stationarity of each `x_i` forces
//! `U^T R = F / p` on all rows. A persistent node then needs some `R_i = 0`,
//! which generic `F` does not produce.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::{Condition, Relation};
use crate::linalg;
use crate::model::CrnModel;

/// Outcome of the all-antigens-present test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeasibilityVerdict {
    /// `R` is strictly positive: no persistent node at these parameters.
    NoLiWithoutAltruism,
    /// Some `R_i` vanishes; this only happens on a measure-zero parameter set.
    LiOnMeasureZeroSet,
    /// Some `R_i < 0`: no stationary state with all antigens present.
    NoNonnegativeSolution,
    /// `U^T` is singular and `F` violates the consistency conditions.
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub invertible: bool,
    pub rank: usize,
    /// Least-squares (minimum-norm when singular) solution of `U^T R = F / p`.
    pub r: Vec<f64>,
    /// 1-based nodes with `R_i = 0` within tolerance.
    pub zero_nodes: Vec<usize>,
    /// 1-based nodes with `R_i < 0`.
    pub negative_nodes: Vec<usize>,
    pub verdict: FeasibilityVerdict,
    /// Equalities on `F` required when `U^T` is singular.
    pub consistency_conditions: Vec<Condition>,
    pub residual: f64,
}

pub fn no_altruism_feasibility(model: &CrnModel) -> FeasibilityReport {
    let n = model.n();
    let params = model.params();
    let ut = model.matrices().u.transpose();
    let rhs = DVector::from_iterator(n, params.f.iter().map(|f| f / params.p));
    let sol = linalg::lstsq(&ut, &rhs);
    let r: Vec<f64> = sol.solution.iter().copied().collect();
    let scale = r.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let zero_tol = 1e-12 * scale;
    let zero_nodes = (0..n).filter(|&i| r[i].abs() <= zero_tol).map(|i| i + 1).collect::<Vec<_>>();
    let negative_nodes = (0..n).filter(|&i| r[i] < -zero_tol).map(|i| i + 1).collect::<Vec<_>>();
    let consistency_conditions: Vec<Condition> = sol
        .left_null_space
        .column_iter()
        .filter_map(|l| Condition::linear(l.iter().copied().collect(), Relation::Equal, "consistency"))
        .collect();
    let residual = (&ut * &sol.solution - &rhs).amax();
    let verdict = if residual > super::CONSISTENCY_TOL {
        FeasibilityVerdict::Inconsistent
    } else if !negative_nodes.is_empty() {
        FeasibilityVerdict::NoNonnegativeSolution
    } else if !zero_nodes.is_empty() {
        FeasibilityVerdict::LiOnMeasureZeroSet
    } else {
        FeasibilityVerdict::NoLiWithoutAltruism
    };
    FeasibilityReport {
        invertible: sol.rank == n,
        rank: sol.rank,
        r,
        zero_nodes,
        negative_nodes,
        verdict,
        consistency_conditions,
        residual,
    }
}
