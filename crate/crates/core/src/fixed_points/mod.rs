//! Fixed points on support patterns.
//!
//! A fixed point with antigen support `I = {i : x_i > 0}` and antibody support
//! `J = {i : r_i > 0}` solves two linear systems: the antibody levels satisfy
//! `r_i + beta * sum_{i->j} r_j = f_i / p` for `i` in `I`, and with
//! `delta_i = 1 / (r_i + alpha * sum_{i->k} r_k)` the antigen levels satisfy
//! `delta_i x_i + alpha * sum_{j->i} delta_j x_j = b / c` for `i` in `J`.
//! Everything off the supports is zero.

mod conditions;
mod enumerate;
mod feasibility;
mod solve;
mod space;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use conditions::{Condition, Relation};
pub use enumerate::{enumerate_fixed_points, enumerate_fixed_points_with, DEFAULT_MAX_N};
pub use feasibility::{no_altruism_feasibility, FeasibilityReport, FeasibilityVerdict};
pub use solve::{solve_support, Rejection, CONSISTENCY_TOL, POSITIVITY_TOL};
pub use space::{stationary_space, StationarySpace};

use crate::error::{Error, Result};
use crate::model::SystemState;

/// Antigen support `I` and antibody support `J`, 0-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportPattern {
    antigens: Vec<usize>,
    antibodies: Vec<usize>,
}

impl SupportPattern {
    pub fn new(mut antigens: Vec<usize>, mut antibodies: Vec<usize>) -> Self {
        antigens.sort_unstable();
        antigens.dedup();
        antibodies.sort_unstable();
        antibodies.dedup();
        Self { antigens, antibodies }
    }

    /// From 1-based labels.
    pub fn from_one_based(antigens: &[usize], antibodies: &[usize]) -> Result<Self> {
        let shift = |v: &[usize]| -> Result<Vec<usize>> {
            v.iter()
                .map(|&k| {
                    k.checked_sub(1).ok_or_else(|| {
                        Error::Precondition("support labels are 1-based; found 0".into())
                    })
                })
                .collect()
        };
        Ok(Self::new(shift(antigens)?, shift(antibodies)?))
    }

    /// Builds a support from bitmasks over at most 64 nodes.
    pub fn from_masks(antigen_mask: u64, antibody_mask: u64, n: usize) -> Self {
        let bits = |m: u64| (0..n).filter(|&k| m >> k & 1 == 1).collect();
        Self { antigens: bits(antigen_mask), antibodies: bits(antibody_mask) }
    }

    /// Support of a state: components above `tol` are positive.
    pub fn of_state(state: &SystemState, tol: f64) -> Self {
        let pos = |v: &[f64]| v.iter().enumerate().filter(|(_, &a)| a > tol).map(|(i, _)| i).collect();
        Self { antigens: pos(&state.x), antibodies: pos(&state.r) }
    }

    /// `I`: nodes with `x_i > 0`.
    pub fn antigens(&self) -> &[usize] {
        &self.antigens
    }

    /// `J`: nodes with `r_i > 0`.
    pub fn antibodies(&self) -> &[usize] {
        &self.antibodies
    }

    pub fn contains_antigen(&self, i: usize) -> bool {
        self.antigens.binary_search(&i).is_ok()
    }

    pub fn contains_antibody(&self, i: usize) -> bool {
        self.antibodies.binary_search(&i).is_ok()
    }

    /// `I \ J`.
    pub fn persistent(&self) -> Vec<usize> {
        self.antigens.iter().copied().filter(|&i| !self.contains_antibody(i)).collect()
    }

    /// `J \ I`.
    pub fn altruistic(&self) -> Vec<usize> {
        self.antibodies.iter().copied().filter(|&i| !self.contains_antigen(i)).collect()
    }

    pub fn cardinality(&self) -> usize {
        self.antigens.len() + self.antibodies.len()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.antigens.iter().chain(&self.antibodies).copied().max()
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self::new(
            self.antigens.iter().map(|&i| perm[i]).collect(),
            self.antibodies.iter().map(|&i| perm[i]).collect(),
        )
    }
}

impl fmt::Display for SupportPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        write!(f, "I={} J={}", list(&self.antigens), list(&self.antibodies))
    }
}

#[derive(Serialize, Deserialize)]
struct SupportFile {
    #[serde(rename = "I")]
    antigens: Vec<usize>,
    #[serde(rename = "J")]
    antibodies: Vec<usize>,
}

impl Serialize for SupportPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SupportFile {
            antigens: self.antigens.iter().map(|i| i + 1).collect(),
            antibodies: self.antibodies.iter().map(|i| i + 1).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SupportPattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = SupportFile::deserialize(d)?;
        Self::from_one_based(&file.antigens, &file.antibodies).map_err(serde::de::Error::custom)
    }
}

/// Role of a node at a fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeLabel {
    /// `x > 0`, `r = 0`: invisible to the immune system.
    Persistent,
    /// `x = 0`, `r > 0`: absent antigen with a standing response.
    Altruistic,
    NeutralActive,
    NeutralIdle,
}

/// Condition group of a fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    /// Local immunodeficiency with no condition on the parameters.
    A,
    /// Local immunodeficiency under strict inequalities only.
    B,
    /// Local immunodeficiency requiring at least one equality.
    C,
    /// No persistent node.
    D,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Labels every node from the sign pattern of the state.
pub fn classify_state(state: &SystemState, tol: f64) -> Vec<NodeLabel> {
    state
        .x
        .iter()
        .zip(&state.r)
        .map(|(&x, &r)| match (x > tol, r > tol) {
            (true, false) => NodeLabel::Persistent,
            (false, true) => NodeLabel::Altruistic,
            (true, true) => NodeLabel::NeutralActive,
            (false, false) => NodeLabel::NeutralIdle,
        })
        .collect()
}

/// Group from the node labels and the condition ledger.
pub fn group_of(labels: &[NodeLabel], conditions: &[Condition]) -> Group {
    if !labels.contains(&NodeLabel::Persistent) {
        Group::D
    } else if conditions.iter().any(Condition::is_equality) {
        Group::C
    } else if conditions.is_empty() {
        Group::A
    } else {
        Group::B
    }
}

/// Labels plus group of a solution.
pub fn classify(solution: &FixedPointSolution) -> (Vec<NodeLabel>, Group) {
    let labels = classify_state(&solution.state, POSITIVITY_TOL);
    let group = group_of(&labels, &solution.conditions);
    (labels, group)
}

/// Free dimensions of a solution family within its support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDims {
    pub antibody: usize,
    pub antigen: usize,
}

/// A stationary state together with its support, labels and conditions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointSolution {
    pub state: SystemState,
    pub support: SupportPattern,
    pub labels: Vec<NodeLabel>,
    /// `||rhs(state)||_inf`.
    pub residual: f64,
    pub conditions: Vec<Condition>,
    pub group: Group,
    /// `delta_i = 1 / (r_i + alpha * sum_{i->k} r_k)`, `None` where the denominator vanishes.
    pub delta: Vec<Option<f64>>,
    /// Present when the support carries a continuum of fixed points; the state
    /// is then the sequential-midpoint representative.
    pub family: Option<FamilyDims>,
}

impl FixedPointSolution {
    pub fn has_local_immunodeficiency(&self) -> bool {
        self.labels.contains(&NodeLabel::Persistent)
    }

    pub fn has_altruistic_node(&self) -> bool {
        self.labels.contains(&NodeLabel::Altruistic)
    }
}
