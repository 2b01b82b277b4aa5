//! Closed-form fixed points of the named networks.
//!
//! `K` below stands for `b / (c p)`. Entries with a free coordinate are
//! one-parameter (or two-parameter) families; they are instantiated at the
//! sequential midpoint of their free intervals.

use serde::{Deserialize, Serialize};

use super::NamedNetwork;
use crate::fixed_points::{Condition, Relation, SupportPattern};
use crate::model::SystemState;
use crate::params::ModelParameters;

/// Where an entry comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryOrigin {
    /// Part of the reference list for the network.
    Listed,
    /// Found by exhaustive support enumeration and absent from the reference list.
    Supplementary,
}

/// A coordinate that ranges over an interval within a family.
#[derive(Clone, Copy)]
pub struct FreeVariable {
    pub name: &'static str,
    /// Open interval given the parameters and the free values chosen before it.
    pub bounds: fn(&ModelParameters, &[f64]) -> (f64, f64),
}

pub type StateFn = fn(&ModelParameters, &[f64]) -> SystemState;

#[derive(Clone)]
pub struct CatalogEntry {
    pub network: NamedNetwork,
    /// 1-based position within the network's list; supplementary entries
    /// continue the numbering.
    pub number: usize,
    pub origin: EntryOrigin,
    /// Support as 1-based `(I, J)`.
    pub support: (&'static [usize], &'static [usize]),
    pub formula: &'static str,
    pub conditions: fn(&ModelParameters) -> Vec<Condition>,
    pub free: &'static [FreeVariable],
    pub state: StateFn,
    /// Moves `f` onto the equality conditions, if there are any.
    pub tune: Option<fn(&mut ModelParameters)>,
}

impl std::fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}#{}", self.network, self.number)
    }
}

impl CatalogEntry {
    pub fn support_pattern(&self) -> SupportPattern {
        SupportPattern::from_one_based(self.support.0, self.support.1).expect("1-based supports")
    }

    pub fn id(&self) -> String {
        format!("{}#{}", self.network, self.number)
    }

    pub fn has_equality(&self) -> bool {
        self.tune.is_some()
    }
}

fn k(q: &ModelParameters) -> f64 {
    q.b / (q.c * q.p)
}

fn st<const N: usize>(x: [f64; N], r: [f64; N]) -> SystemState {
    SystemState { x: x.to_vec(), r: r.to_vec() }
}

fn gt(coeffs: &[f64], source: &str) -> Condition {
    Condition::linear(coeffs.to_vec(), Relation::Greater, source).expect("nonzero form")
}

fn eq(coeffs: &[f64], source: &str) -> Condition {
    Condition::linear(coeffs.to_vec(), Relation::Equal, source).expect("nonzero form")
}

fn alpha_below_half(source: &str) -> Condition {
    Condition::AlphaRange { lower: 0.0, upper: 0.5, source: source.into() }
}

fn none(_: &ModelParameters) -> Vec<Condition> {
    Vec::new()
}

macro_rules! entry {
    ($net:expr, $num:expr, $origin:expr, ($i:expr, $j:expr), $formula:expr,
     conditions: $cond:expr, free: $free:expr, state: $state:expr, tune: $tune:expr) => {
        CatalogEntry {
            network: $net,
            number: $num,
            origin: $origin,
            support: (&$i, &$j),
            formula: $formula,
            conditions: $cond,
            free: $free,
            state: $state,
            tune: $tune,
        }
    };
}

use EntryOrigin::{Listed, Supplementary};
use NamedNetwork::*;

pub(super) fn asym2() -> Vec<CatalogEntry> {
    vec![
        entry!(Asym2, 1, Listed, ([2], [2]), "x2 = K·f2, r2 = f2/p",
            conditions: none, free: &[],
            state: |q, _| st([0.0, k(q) * q.f[1]], [0.0, q.f[1] / q.p]), tune: None),
        entry!(Asym2, 2, Listed, ([1], [2]), "x1 = K·f1/β, r2 = f1/(p·β)",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0] / q.beta, 0.0], [0.0, q.f[0] / (q.p * q.beta)]), tune: None),
        entry!(Asym2, 3, Listed, ([1], [1]), "x1 = K·f1, r1 = f1/p",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0], 0.0], [q.f[0] / q.p, 0.0]), tune: None),
        entry!(Asym2, 4, Listed, ([1, 2], [2]), "0 < x1 < K·f2, x2 = K·f2 - x1, r2 = f2/p",
            conditions: |q| vec![eq(&[1.0, -q.beta], "consistency of row 1")],
            free: &[FreeVariable { name: "x1", bounds: |q, _| (0.0, k(q) * q.f[1]) }],
            state: |q, s| st([s[0], k(q) * q.f[1] - s[0]], [0.0, q.f[1] / q.p]),
            tune: Some(|q| q.f[0] = q.beta * q.f[1])),
        entry!(Asym2, 5, Listed, ([1, 2], [1, 2]),
            "x1 = K·(f1 + (α-β)·f2), x2 = K·f2·(1-α), r1 = (f1 - β·f2)/p, r2 = f2/p",
            conditions: |q| vec![gt(&[1.0, -q.beta], "r1")], free: &[],
            state: |q, _| {
                let (f, kk, a, be) = (&q.f, k(q), q.alpha, q.beta);
                st([kk * (f[0] + (a - be) * f[1]), kk * f[1] * (1.0 - a)], [(f[0] - be * f[1]) / q.p, f[1] / q.p])
            },
            tune: None),
    ]
}

pub(super) fn chain_branch3() -> Vec<CatalogEntry> {
    vec![
        entry!(ChainBranch3, 1, Listed, ([2], [2]), "x2 = K·f2, r2 = f2/p",
            conditions: none, free: &[],
            state: |q, _| st([0.0, k(q) * q.f[1], 0.0], [0.0, q.f[1] / q.p, 0.0]), tune: None),
        entry!(ChainBranch3, 2, Listed, ([2, 3], [2, 3]),
            "x2 = K·(f2 + (α-β)·f3), x3 = K·f3·(1-α), r2 = (f2 - β·f3)/p, r3 = f3/p",
            conditions: |q| vec![gt(&[0.0, 1.0, -q.beta], "r2")], free: &[],
            state: |q, _| {
                let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
                st([0.0, kk * (f[1] + (a - be) * f[2]), kk * f[2] * (1.0 - a)], [0.0, (f[1] - be * f[2]) / p, f[2] / p])
            },
            tune: None),
        entry!(ChainBranch3, 3, Listed, ([1], [2]), "x1 = K·f1/β, r2 = f1/(p·β)",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0] / q.beta, 0.0, 0.0], [0.0, q.f[0] / (q.p * q.beta), 0.0]), tune: None),
        entry!(ChainBranch3, 4, Listed, ([1, 3], [1, 3]), "x1 = K·f1, x3 = K·f3, r1 = f1/p, r3 = f3/p",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0], 0.0, k(q) * q.f[2]], [q.f[0] / q.p, 0.0, q.f[2] / q.p]), tune: None),
        entry!(ChainBranch3, 5, Listed, ([1, 3], [2, 3]), "x1 = K·f1/β, x3 = K·f3, r2 = f1/(p·β), r3 = f3/p",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0] / q.beta, 0.0, k(q) * q.f[2]], [0.0, q.f[0] / (q.p * q.beta), q.f[2] / q.p]),
            tune: None),
        entry!(ChainBranch3, 6, Listed, ([1, 2], [2]), "0 < x1 < K·f1/β, x2 = K·f1/β - x1, r2 = f1/(p·β)",
            conditions: |q| vec![eq(&[1.0, -q.beta, 0.0], "consistency of row 1")],
            free: &[FreeVariable { name: "x1", bounds: |q, _| (0.0, k(q) * q.f[0] / q.beta) }],
            state: |q, s| st([s[0], k(q) * q.f[0] / q.beta - s[0], 0.0], [0.0, q.f[0] / (q.p * q.beta), 0.0]),
            tune: Some(|q| q.f[0] = q.beta * q.f[1])),
        entry!(ChainBranch3, 7, Listed, ([1, 2], [1, 3]), "x1 = K·f1, x2 = K·f2/β, r1 = f1/p, r3 = f2/(p·β)",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0], k(q) * q.f[1] / q.beta, 0.0], [q.f[0] / q.p, 0.0, q.f[1] / (q.p * q.beta)]),
            tune: None),
        entry!(ChainBranch3, 8, Listed, ([1, 2], [1, 2]),
            "x1 = K·(f1 + (α-β)·f2), x2 = K·f2·(1-α), r1 = (f1 - β·f2)/p, r2 = f2/p",
            conditions: |q| vec![gt(&[1.0, -q.beta, 0.0], "r1")], free: &[],
            state: |q, _| {
                let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
                st([kk * (f[0] + (a - be) * f[1]), kk * f[1] * (1.0 - a), 0.0], [(f[0] - be * f[1]) / p, f[1] / p, 0.0])
            },
            tune: None),
        entry!(ChainBranch3, 9, Listed, ([1, 2, 3], [2, 3]),
            "0 < x1 < K·(f2 - β·f3), x2 = (1 + α·f3/(f2 - β·f3))·(K·(f2 - β·f3) - x1), \
             x3 = K·f3·(1-α) + α·f3/(f2 - β·f3)·x1, r2 = (f2 - β·f3)/p, r3 = f3/p",
            conditions: |q| {
                let be = q.beta;
                vec![eq(&[1.0, -be, be * be], "consistency of row 1"), gt(&[0.0, 1.0, -be], "r2")]
            },
            free: &[FreeVariable { name: "x1", bounds: |q, _| (0.0, k(q) * (q.f[1] - q.beta * q.f[2])) }],
            state: |q, s| {
                let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
                let g = f[1] - be * f[2];
                st(
                    [s[0], (1.0 + a * f[2] / g) * (kk * g - s[0]), kk * f[2] * (1.0 - a) + a * f[2] / g * s[0]],
                    [0.0, g / p, f[2] / p],
                )
            },
            tune: Some(|q| q.f[0] = q.beta * (q.f[1] - q.beta * q.f[2]))),
        entry!(ChainBranch3, 10, Listed, ([1, 2, 3], [1, 3]),
            "x1 = K·f1, 0 < x2 < K·f3, x3 = K·f3 - x2, r1 = f1/p, r3 = f3/p",
            conditions: |q| vec![eq(&[0.0, 1.0, -q.beta], "consistency of row 2")],
            free: &[FreeVariable { name: "x2", bounds: |q, _| (0.0, k(q) * q.f[2]) }],
            state: |q, s| st([k(q) * q.f[0], s[0], k(q) * q.f[2] - s[0]], [q.f[0] / q.p, 0.0, q.f[2] / q.p]),
            tune: Some(|q| q.f[1] = q.beta * q.f[2])),
        entry!(ChainBranch3, 11, Listed, ([1, 2, 3], [1, 2, 3]),
            "x1 = K·(f1 + (α-β)·(f2 - β·f3)), x2 = K·(1-α)·(f2 + (α-β)·f3), x3 = K·f3·(1 - α·(1-α)), \
             r1 = (f1 - β·f2 + β²·f3)/p, r2 = (f2 - β·f3)/p, r3 = f3/p",
            conditions: |q| {
                let be = q.beta;
                vec![gt(&[1.0, -be, be * be], "r1"), gt(&[0.0, 1.0, -be], "r2")]
            },
            free: &[],
            state: |q, _| {
                let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
                st(
                    [
                        kk * (f[0] + (a - be) * (f[1] - be * f[2])),
                        kk * (1.0 - a) * (f[1] + (a - be) * f[2]),
                        kk * f[2] * (1.0 - a * (1.0 - a)),
                    ],
                    [(f[0] - be * f[1] + be * be * f[2]) / p, (f[1] - be * f[2]) / p, f[2] / p],
                )
            },
            tune: None),
        // Not in the reference list.
        entry!(ChainBranch3, 12, Supplementary, ([1], [1]), "x1 = K·f1, r1 = f1/p",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0], 0.0, 0.0], [q.f[0] / q.p, 0.0, 0.0]), tune: None),
        entry!(ChainBranch3, 13, Supplementary, ([3], [3]), "x3 = K·f3, r3 = f3/p",
            conditions: none, free: &[],
            state: |q, _| st([0.0, 0.0, k(q) * q.f[2]], [0.0, 0.0, q.f[2] / q.p]), tune: None),
        entry!(ChainBranch3, 14, Supplementary, ([2, 3], [3]), "0 < x2 < K·f3, x3 = K·f3 - x2, r3 = f3/p",
            conditions: |q| vec![eq(&[0.0, 1.0, -q.beta], "consistency of row 2")],
            free: &[FreeVariable { name: "x2", bounds: |q, _| (0.0, k(q) * q.f[2]) }],
            state: |q, s| st([0.0, s[0], k(q) * q.f[2] - s[0]], [0.0, 0.0, q.f[2] / q.p]),
            tune: Some(|q| q.f[1] = q.beta * q.f[2])),
        entry!(ChainBranch3, 15, Supplementary, ([2], [3]), "x2 = K·f2/β, r3 = f2/(p·β)",
            conditions: none, free: &[],
            state: |q, _| st([0.0, k(q) * q.f[1] / q.beta, 0.0], [0.0, 0.0, q.f[1] / (q.p * q.beta)]), tune: None),
    ]
}

pub(super) fn branch_cycle3() -> Vec<CatalogEntry> {
    vec![
        entry!(BranchCycle3, 1, Listed, ([3], [2]), "x3 = K·f3/β, r2 = f3/(p·β)",
            conditions: none, free: &[],
            state: |q, _| st([0.0, 0.0, k(q) * q.f[2] / q.beta], [0.0, q.f[2] / (q.p * q.beta), 0.0]), tune: None),
        entry!(BranchCycle3, 2, Listed, ([2], [2]), "x2 = K·f2, r2 = f2/p",
            conditions: none, free: &[],
            state: |q, _| st([0.0, k(q) * q.f[1], 0.0], [0.0, q.f[1] / q.p, 0.0]), tune: None),
        entry!(BranchCycle3, 3, Listed, ([2, 3], [2, 3]),
            "x2 = b·((1-αβ)·f2 + (α-β)·f3)/(c·p·(1+α)·(1-β²)), x3 = b·((1-αβ)·f3 + (α-β)·f2)/(c·p·(1+α)·(1-β²)), \
             r2 = (f2 - β·f3)/(p·(1-β²)), r3 = (f3 - β·f2)/(p·(1-β²))",
            conditions: |q| vec![gt(&[0.0, 1.0, -q.beta], "r2"), gt(&[0.0, -q.beta, 1.0], "r3")],
            free: &[],
            state: |q, _| {
                let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
                let d = (1.0 + a) * (1.0 - be * be);
                st(
                    [
                        0.0,
                        kk * ((1.0 - a * be) * f[1] + (a - be) * f[2]) / d,
                        kk * ((1.0 - a * be) * f[2] + (a - be) * f[1]) / d,
                    ],
                    [0.0, (f[1] - be * f[2]) / (p * (1.0 - be * be)), (f[2] - be * f[1]) / (p * (1.0 - be * be))],
                )
            },
            tune: None),
        entry!(BranchCycle3, 4, Listed, ([2, 3], [2]), "0 < x2 < K·f2, x3 = K·f2 - x2, r2 = f2/p",
            conditions: |q| vec![eq(&[0.0, -q.beta, 1.0], "consistency of row 3")],
            free: &[FreeVariable { name: "x2", bounds: |q, _| (0.0, k(q) * q.f[1]) }],
            state: |q, s| st([0.0, s[0], k(q) * q.f[1] - s[0]], [0.0, q.f[1] / q.p, 0.0]),
            tune: Some(|q| q.f[2] = q.beta * q.f[1])),
        entry!(BranchCycle3, 5, Listed, ([1], [2]), "x1 = K·f1/β, r2 = f1/(p·β)",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0] / q.beta, 0.0, 0.0], [0.0, q.f[0] / (q.p * q.beta), 0.0]), tune: None),
        entry!(BranchCycle3, 6, Listed, ([1, 3], [2]), "0 < x1 < K·f1/β, x3 = K·f1/β - x1, r2 = f1/(p·β)",
            conditions: |_| vec![eq(&[1.0, 0.0, -1.0], "consistency of row 3")],
            free: &[FreeVariable { name: "x1", bounds: |q, _| (0.0, k(q) * q.f[0] / q.beta) }],
            state: |q, s| st([s[0], 0.0, k(q) * q.f[0] / q.beta - s[0]], [0.0, q.f[0] / (q.p * q.beta), 0.0]),
            tune: Some(|q| q.f[2] = q.f[0])),
        entry!(BranchCycle3, 7, Listed, ([1, 3], [2, 3]),
            "x1 = K·f1·(1-α)/β, x3 = K·(f3 - f1 + α·f1/β), r2 = f1/(p·β), r3 = (f3 - f1)/p",
            conditions: |_| vec![gt(&[-1.0, 0.0, 1.0], "r3")], free: &[],
            state: |q, _| {
                let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
                st([kk * f[0] * (1.0 - a) / be, 0.0, kk * (f[2] - f[0] + a * f[0] / be)], [0.0, f[0] / (p * be), (f[2] - f[0]) / p])
            },
            tune: None),
        entry!(BranchCycle3, 8, Listed, ([1, 3], [1, 2]),
            "x1 = K·(f1 - f3 + α·f3/β), x3 = K·f3·(1-α)/β, r1 = (f1 - f3)/p, r2 = f3/(p·β)",
            conditions: |_| vec![gt(&[1.0, 0.0, -1.0], "r1")], free: &[],
            state: |q, _| {
                let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
                st([kk * (f[0] - f[2] + a * f[2] / be), 0.0, kk * f[2] * (1.0 - a) / be], [(f[0] - f[2]) / p, f[2] / (p * be), 0.0])
            },
            tune: None),
        entry!(BranchCycle3, 9, Listed, ([1, 3], [1, 3]), "x1 = K·f1, x3 = K·f3, r1 = f1/p, r3 = f3/p",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0], 0.0, k(q) * q.f[2]], [q.f[0] / q.p, 0.0, q.f[2] / q.p]), tune: None),
        entry!(BranchCycle3, 10, Listed, ([1, 2], [2]), "0 < x1 < K·f2, x2 = K·f2 - x1, r2 = f2/p",
            conditions: |q| vec![eq(&[1.0, -q.beta, 0.0], "consistency of row 1")],
            free: &[FreeVariable { name: "x1", bounds: |q, _| (0.0, k(q) * q.f[1]) }],
            state: |q, s| st([s[0], k(q) * q.f[1] - s[0], 0.0], [0.0, q.f[1] / q.p, 0.0]),
            tune: Some(|q| q.f[0] = q.beta * q.f[1])),
        entry!(BranchCycle3, 11, Listed, ([1, 2], [1, 2]),
            "x1 = K·(f1 + (α-β)·f2), x2 = K·f2·(1-α), r1 = (f1 - β·f2)/p, r2 = f2/p",
            conditions: |q| vec![gt(&[1.0, -q.beta, 0.0], "r1")], free: &[],
            state: |q, _| {
                let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
                st([kk * (f[0] + (a - be) * f[1]), kk * f[1] * (1.0 - a), 0.0], [(f[0] - be * f[1]) / p, f[1] / p, 0.0])
            },
            tune: None),
        entry!(BranchCycle3, 12, Listed, ([1, 2], [1, 3]), "x1 = K·f1, x2 = K·f2/β, r1 = f1/p, r3 = f2/(p·β)",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0], k(q) * q.f[1] / q.beta, 0.0], [q.f[0] / q.p, 0.0, q.f[1] / (q.p * q.beta)]),
            tune: None),
        entry!(BranchCycle3, 13, Listed, ([1, 2, 3], [2]),
            "0 < x1 < K·f2, 0 < x2 < K·f2 - x1, x3 = K·f2 - x1 - x2, r2 = f2/p",
            conditions: |q| vec![
                eq(&[1.0, -q.beta, 0.0], "consistency of row 1"),
                eq(&[0.0, -q.beta, 1.0], "consistency of row 3"),
            ],
            free: &[
                FreeVariable { name: "x1", bounds: |q, _| (0.0, k(q) * q.f[1]) },
                FreeVariable { name: "x2", bounds: |q, s| (0.0, k(q) * q.f[1] - s[0]) },
            ],
            state: |q, s| st([s[0], s[1], k(q) * q.f[1] - s[0] - s[1]], [0.0, q.f[1] / q.p, 0.0]),
            tune: Some(|q| {
                q.f[0] = q.beta * q.f[1];
                q.f[2] = q.f[0];
            })),
        entry!(BranchCycle3, 14, Listed, ([1, 2, 3], [2, 3]),
            "0 < x1 < (b/c)·(1-α)·r2, x2 = (r2 + α·r3)/(1+α)·(b/c - x1/(r2·(1-α))), \
             x3 = (α·r2 + r3)·(b/(c·(1+α)) + α·x1/(r2·(1-α²))), \
             r2 = (f2 - β·f3)/(p·(1-β²)), r3 = (f3 - β·f2)/(p·(1-β²))",
            conditions: |q| {
                let be = q.beta;
                vec![
                    eq(&[1.0 - be * be, -be, be * be], "consistency of row 1"),
                    gt(&[0.0, 1.0, -be], "r2"),
                    gt(&[0.0, -be, 1.0], "r3"),
                ]
            },
            free: &[FreeVariable {
                name: "x1",
                bounds: |q, _| (0.0, q.b / q.c * (1.0 - q.alpha) * (q.f[1] - q.beta * q.f[2]) / (q.p * (1.0 - q.beta * q.beta))),
            }],
            state: |q, s| {
                let (f, a, be, p, bc) = (&q.f, q.alpha, q.beta, q.p, q.b / q.c);
                let r2 = (f[1] - be * f[2]) / (p * (1.0 - be * be));
                let r3 = (f[2] - be * f[1]) / (p * (1.0 - be * be));
                let x1 = s[0];
                st(
                    [
                        x1,
                        (r2 + a * r3) / (1.0 + a) * (bc - x1 / (r2 * (1.0 - a))),
                        (a * r2 + r3) * (bc / (1.0 + a) + a * x1 / (r2 * (1.0 - a * a))),
                    ],
                    [0.0, r2, r3],
                )
            },
            tune: Some(|q| q.f[0] = q.beta * (q.f[1] - q.beta * q.f[2]) / (1.0 - q.beta * q.beta))),
        entry!(BranchCycle3, 15, Listed, ([1, 2, 3], [1, 3]),
            "x1 = K·f1, 0 < x2 < K·f3, x3 = K·f3 - x2, r1 = f1/p, r3 = f3/p",
            conditions: |q| vec![eq(&[0.0, 1.0, -q.beta], "consistency of row 2")],
            free: &[FreeVariable { name: "x2", bounds: |q, _| (0.0, k(q) * q.f[2]) }],
            state: |q, s| st([k(q) * q.f[0], s[0], k(q) * q.f[2] - s[0]], [q.f[0] / q.p, 0.0, q.f[2] / q.p]),
            tune: Some(|q| q.f[1] = q.beta * q.f[2])),
        entry!(BranchCycle3, 16, Listed, ([1, 2, 3], [1, 2]),
            "x1 = K·(f1 + (α-β)·f2), 0 < x2 < K·f2·(1-α), x3 = K·f2·(1-α) - x2, r1 = (f1 - β·f2)/p, r2 = f2/p",
            conditions: |q| vec![eq(&[0.0, -q.beta, 1.0], "consistency of row 3"), gt(&[1.0, -q.beta, 0.0], "r1")],
            free: &[FreeVariable { name: "x2", bounds: |q, _| (0.0, k(q) * q.f[1] * (1.0 - q.alpha)) }],
            state: |q, s| {
                let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
                st([kk * (f[0] + (a - be) * f[1]), s[0], kk * f[1] * (1.0 - a) - s[0]], [(f[0] - be * f[1]) / p, f[1] / p, 0.0])
            },
            tune: Some(|q| q.f[2] = q.beta * q.f[1])),
        entry!(BranchCycle3, 17, Listed, ([1, 2, 3], [1, 2, 3]),
            "x1 = K·f1 + K·(α-β)·(f2 - β·f3)/(1-β²), x2 = K·(1-2α)·((1-αβ)·f2 + (α-β)·f3)/((1-α²)·(1-β²)), \
             x3 = K·(1-α+α²)·((1-αβ)·f3 + (α-β)·f2)/((1-α²)·(1-β²)), r1 = f1/p - β·(f2 - β·f3)/(p·(1-β²)), \
             r2 = (f2 - β·f3)/(p·(1-β²)), r3 = (f3 - β·f2)/(p·(1-β²))",
            conditions: |q| {
                let be = q.beta;
                vec![
                    gt(&[1.0 - be * be, -be, be * be], "r1"),
                    gt(&[0.0, 1.0, -be], "r2"),
                    gt(&[0.0, -be, 1.0], "r3"),
                    alpha_below_half("x2"),
                ]
            },
            free: &[],
            state: |q, _| {
                let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
                let (da, db) = (1.0 - a * a, 1.0 - be * be);
                st(
                    [
                        kk * f[0] + kk * (a - be) * (f[1] - be * f[2]) / db,
                        kk * (1.0 - 2.0 * a) * ((1.0 - a * be) * f[1] + (a - be) * f[2]) / (da * db),
                        kk * (1.0 - a + a * a) * ((1.0 - a * be) * f[2] + (a - be) * f[1]) / (da * db),
                    ],
                    [f[0] / p - be * (f[1] - be * f[2]) / (p * db), (f[1] - be * f[2]) / (p * db), (f[2] - be * f[1]) / (p * db)],
                )
            },
            tune: None),
        // Not in the reference list.
        entry!(BranchCycle3, 18, Supplementary, ([1], [1]), "x1 = K·f1, r1 = f1/p",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0], 0.0, 0.0], [q.f[0] / q.p, 0.0, 0.0]), tune: None),
        entry!(BranchCycle3, 19, Supplementary, ([3], [3]), "x3 = K·f3, r3 = f3/p",
            conditions: none, free: &[],
            state: |q, _| st([0.0, 0.0, k(q) * q.f[2]], [0.0, 0.0, q.f[2] / q.p]), tune: None),
        entry!(BranchCycle3, 20, Supplementary, ([2], [3]), "x2 = K·f2/β, r3 = f2/(p·β)",
            conditions: none, free: &[],
            state: |q, _| st([0.0, k(q) * q.f[1] / q.beta, 0.0], [0.0, 0.0, q.f[1] / (q.p * q.beta)]), tune: None),
        entry!(BranchCycle3, 21, Supplementary, ([2, 3], [3]), "0 < x2 < K·f3, x3 = K·f3 - x2, r3 = f3/p",
            conditions: |q| vec![eq(&[0.0, 1.0, -q.beta], "consistency of row 2")],
            free: &[FreeVariable { name: "x2", bounds: |q, _| (0.0, k(q) * q.f[2]) }],
            state: |q, s| st([0.0, s[0], k(q) * q.f[2] - s[0]], [0.0, 0.0, q.f[2] / q.p]),
            tune: Some(|q| q.f[1] = q.beta * q.f[2])),
    ]
}

pub(super) fn cycle3() -> Vec<CatalogEntry> {
    vec![
        entry!(Cycle3, 1, Listed, ([2, 3], [2, 3]),
            "x2 = K·(f2 + (α-β)·f3), x3 = K·f3·(1-α), r2 = (f2 - β·f3)/p, r3 = f3/p",
            conditions: |q| vec![gt(&[0.0, 1.0, -q.beta], "r2")], free: &[],
            state: |q, _| {
                let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
                st([0.0, kk * (f[1] + (a - be) * f[2]), kk * f[2] * (1.0 - a)], [0.0, (f[1] - be * f[2]) / p, f[2] / p])
            },
            tune: None),
        entry!(Cycle3, 2, Listed, ([2, 3], [1, 2]), "x2 = K·f2, x3 = K·f3/β, r1 = f3/(p·β), r2 = f2/p",
            conditions: none, free: &[],
            state: |q, _| st([0.0, k(q) * q.f[1], k(q) * q.f[2] / q.beta], [q.f[2] / (q.p * q.beta), q.f[1] / q.p, 0.0]),
            tune: None),
        entry!(Cycle3, 3, Listed, ([1, 3], [2, 3]), "x1 = K·f1/β, x3 = K·f3, r2 = f1/(p·β), r3 = f3/p",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0] / q.beta, 0.0, k(q) * q.f[2]], [0.0, q.f[0] / (q.p * q.beta), q.f[2] / q.p]),
            tune: None),
        entry!(Cycle3, 4, Listed, ([1, 3], [1, 3]),
            "x1 = K·f1·(1-α), x3 = K·(f3 + (α-β)·f1), r1 = f1/p, r3 = (f3 - β·f1)/p",
            conditions: |q| vec![gt(&[-q.beta, 0.0, 1.0], "r3")], free: &[],
            state: |q, _| {
                let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
                st([kk * f[0] * (1.0 - a), 0.0, kk * (f[2] + (a - be) * f[0])], [f[0] / p, 0.0, (f[2] - be * f[0]) / p])
            },
            tune: None),
        entry!(Cycle3, 5, Listed, ([1, 2], [1, 3]), "x1 = K·f1, x2 = K·f2/β, r1 = f1/p, r3 = f2/(p·β)",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0], k(q) * q.f[1] / q.beta, 0.0], [q.f[0] / q.p, 0.0, q.f[1] / (q.p * q.beta)]),
            tune: None),
        entry!(Cycle3, 6, Listed, ([1, 2], [1, 2]),
            "x1 = K·(f1 + (α-β)·f2), x2 = K·f2·(1-α), r1 = (f1 - β·f2)/p, r2 = f2/p",
            conditions: |q| vec![gt(&[1.0, -q.beta, 0.0], "r1")], free: &[],
            state: |q, _| {
                let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
                st([kk * (f[0] + (a - be) * f[1]), kk * f[1] * (1.0 - a), 0.0], [(f[0] - be * f[1]) / p, f[1] / p, 0.0])
            },
            tune: None),
        entry!(Cycle3, 7, Listed, ([1, 2, 3], [2, 3]),
            "0 < x1 < K·f1/β, x2 = (b/c - x1·p·β/f1)·(f1 + α·β·f3)/(p·β), \
             x3 = ((b/c)·(1-α) + α·x1·p·β/f1)·f3/p, r2 = f1/(p·β), r3 = f3/p",
            conditions: |q| vec![eq(&[-1.0 / q.beta, 1.0, -q.beta], "consistency of row 2")],
            free: &[FreeVariable { name: "x1", bounds: |q, _| (0.0, k(q) * q.f[0] / q.beta) }],
            state: |q, s| {
                let (f, a, be, p, bc) = (&q.f, q.alpha, q.beta, q.p, q.b / q.c);
                let x1 = s[0];
                st(
                    [
                        x1,
                        (bc - x1 * p * be / f[0]) * (f[0] + a * be * f[2]) / (p * be),
                        (bc * (1.0 - a) + a * x1 * p * be / f[0]) * f[2] / p,
                    ],
                    [0.0, f[0] / (p * be), f[2] / p],
                )
            },
            tune: Some(|q| q.f[1] = q.f[0] / q.beta + q.beta * q.f[2])),
        entry!(Cycle3, 8, Listed, ([1, 2, 3], [1, 3]),
            "(1-α)·K·f1 < x1 < K·f1, x2 = f2/(p·α·β)·(x1·p/f1 - (1-α)·b/c), \
             x3 = (f1/p + f2/(p·α·β))·(b/c - x1·p/f1), r1 = f1/p, r3 = f2/(p·β)",
            conditions: |q| vec![eq(&[-q.beta, -1.0 / q.beta, 1.0], "consistency of row 3")],
            free: &[FreeVariable { name: "x1", bounds: |q, _| ((1.0 - q.alpha) * k(q) * q.f[0], k(q) * q.f[0]) }],
            state: |q, s| {
                let (f, a, be, p, bc) = (&q.f, q.alpha, q.beta, q.p, q.b / q.c);
                let x1 = s[0];
                st(
                    [
                        x1,
                        f[1] / (p * a * be) * (x1 * p / f[0] - (1.0 - a) * bc),
                        (f[0] / p + f[1] / (p * a * be)) * (bc - x1 * p / f[0]),
                    ],
                    [f[0] / p, 0.0, f[1] / (p * be)],
                )
            },
            tune: Some(|q| q.f[2] = q.beta * q.f[0] + q.f[1] / q.beta)),
        entry!(Cycle3, 9, Listed, ([1, 2, 3], [1, 2]),
            "0 < x1 < (b/c)·(r1 + α·r2), x2 = (b/c - α·x1/(r1 + α·r2))·r2, \
             x3 = r1·(b/c - x1/(r1 + α·r2)), r1 = f3/(p·β), r2 = f2/p",
            conditions: |q| vec![eq(&[1.0, -q.beta, -1.0 / q.beta], "consistency of row 1")],
            free: &[FreeVariable {
                name: "x1",
                bounds: |q, _| (0.0, q.b / q.c * (q.f[2] / (q.p * q.beta) + q.alpha * q.f[1] / q.p)),
            }],
            state: |q, s| {
                let (f, a, be, p, bc) = (&q.f, q.alpha, q.beta, q.p, q.b / q.c);
                let (r1, r2) = (f[2] / (p * be), f[1] / p);
                let x1 = s[0];
                st([x1, (bc - a * x1 / (r1 + a * r2)) * r2, r1 * (bc - x1 / (r1 + a * r2))], [r1, r2, 0.0])
            },
            tune: Some(|q| q.f[0] = q.beta * q.f[1] + q.f[2] / q.beta)),
        entry!(Cycle3, 10, Listed, ([1, 2, 3], [1, 2, 3]),
            "x_i = b·(r_i + α·r_(i+1))/(c·(1+α)), r1 = (f1 - β·f2 + β²·f3)/(p·(1+β³)), \
             r2 = (f2 - β·f3 + β²·f1)/(p·(1+β³)), r3 = (f3 - β·f1 + β²·f2)/(p·(1+β³))",
            conditions: |q| {
                let be = q.beta;
                let b2 = be * be;
                vec![gt(&[1.0, -be, b2], "r1"), gt(&[b2, 1.0, -be], "r2"), gt(&[-be, b2, 1.0], "r3")]
            },
            free: &[],
            state: |q, _| {
                let (f, a, be, p) = (&q.f, q.alpha, q.beta, q.p);
                let d = p * (1.0 + be.powi(3));
                let b2 = be * be;
                let r = [
                    (f[0] - be * f[1] + b2 * f[2]) / d,
                    (f[1] - be * f[2] + b2 * f[0]) / d,
                    (f[2] - be * f[0] + b2 * f[1]) / d,
                ];
                let w = q.b / (q.c * (1.0 + a));
                st([w * (r[0] + a * r[1]), w * (r[1] + a * r[2]), w * (r[2] + a * r[0])], r)
            },
            tune: None),
        // Not in the reference list; three rotations each.
        entry!(Cycle3, 11, Supplementary, ([1], [1]), "x1 = K·f1, r1 = f1/p",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0], 0.0, 0.0], [q.f[0] / q.p, 0.0, 0.0]), tune: None),
        entry!(Cycle3, 12, Supplementary, ([2], [2]), "x2 = K·f2, r2 = f2/p",
            conditions: none, free: &[],
            state: |q, _| st([0.0, k(q) * q.f[1], 0.0], [0.0, q.f[1] / q.p, 0.0]), tune: None),
        entry!(Cycle3, 13, Supplementary, ([3], [3]), "x3 = K·f3, r3 = f3/p",
            conditions: none, free: &[],
            state: |q, _| st([0.0, 0.0, k(q) * q.f[2]], [0.0, 0.0, q.f[2] / q.p]), tune: None),
        entry!(Cycle3, 14, Supplementary, ([1], [2]), "x1 = K·f1/β, r2 = f1/(p·β)",
            conditions: none, free: &[],
            state: |q, _| st([k(q) * q.f[0] / q.beta, 0.0, 0.0], [0.0, q.f[0] / (q.p * q.beta), 0.0]), tune: None),
        entry!(Cycle3, 15, Supplementary, ([2], [3]), "x2 = K·f2/β, r3 = f2/(p·β)",
            conditions: none, free: &[],
            state: |q, _| st([0.0, k(q) * q.f[1] / q.beta, 0.0], [0.0, 0.0, q.f[1] / (q.p * q.beta)]), tune: None),
        entry!(Cycle3, 16, Supplementary, ([3], [1]), "x3 = K·f3/β, r1 = f3/(p·β)",
            conditions: none, free: &[],
            state: |q, _| st([0.0, 0.0, k(q) * q.f[2] / q.beta], [q.f[2] / (q.p * q.beta), 0.0, 0.0]), tune: None),
        entry!(Cycle3, 17, Supplementary, ([1, 2], [2]), "0 < x1 < K·f2, x2 = K·f2 - x1, r2 = f2/p",
            conditions: |q| vec![eq(&[1.0, -q.beta, 0.0], "consistency of row 1")],
            free: &[FreeVariable { name: "x1", bounds: |q, _| (0.0, k(q) * q.f[1]) }],
            state: |q, s| st([s[0], k(q) * q.f[1] - s[0], 0.0], [0.0, q.f[1] / q.p, 0.0]),
            tune: Some(|q| q.f[0] = q.beta * q.f[1])),
        entry!(Cycle3, 18, Supplementary, ([2, 3], [3]), "0 < x2 < K·f3, x3 = K·f3 - x2, r3 = f3/p",
            conditions: |q| vec![eq(&[0.0, 1.0, -q.beta], "consistency of row 2")],
            free: &[FreeVariable { name: "x2", bounds: |q, _| (0.0, k(q) * q.f[2]) }],
            state: |q, s| st([0.0, s[0], k(q) * q.f[2] - s[0]], [0.0, 0.0, q.f[2] / q.p]),
            tune: Some(|q| q.f[1] = q.beta * q.f[2])),
        entry!(Cycle3, 19, Supplementary, ([1, 3], [1]), "0 < x3 < K·f1, x1 = K·f1 - x3, r1 = f1/p",
            conditions: |q| vec![eq(&[-q.beta, 0.0, 1.0], "consistency of row 3")],
            free: &[FreeVariable { name: "x3", bounds: |q, _| (0.0, k(q) * q.f[0]) }],
            state: |q, s| st([k(q) * q.f[0] - s[0], 0.0, s[0]], [q.f[0] / q.p, 0.0, 0.0]),
            tune: Some(|q| q.f[2] = q.beta * q.f[0])),
    ]
}

pub(super) fn sym2() -> Vec<CatalogEntry> {
    vec![entry!(Sym2, 1, Listed, ([1], [2]), "x1 = K·f1/β, r2 = f1/(p·β)",
        conditions: none, free: &[],
        state: |q, _| st([k(q) * q.f[0] / q.beta, 0.0], [0.0, q.f[0] / (q.p * q.beta)]), tune: None)]
}

pub(super) fn t_shape4() -> Vec<CatalogEntry> {
    vec![entry!(TShape4, 1, Listed, ([2, 3, 4], [1, 3, 4]),
        "x2 = K·f2·(1-2α)/β, x3 = K·(α·f2/β + f3 - f2), x4 = K·(α·f2/β + f4 - f2), \
         r1 = f2/(p·β), r3 = (f3 - f2)/p, r4 = (f4 - f2)/p",
        conditions: |_| vec![
            gt(&[0.0, -1.0, 1.0, 0.0], "r3"),
            gt(&[0.0, -1.0, 0.0, 1.0], "r4"),
            alpha_below_half("x2"),
        ],
        free: &[],
        state: |q, _| {
            let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
            st(
                [
                    0.0,
                    kk * f[1] * (1.0 - 2.0 * a) / be,
                    kk * (a * f[1] / be + f[2] - f[1]),
                    kk * (a * f[1] / be + f[3] - f[1]),
                ],
                [f[1] / (p * be), 0.0, (f[2] - f[1]) / p, (f[3] - f[1]) / p],
            )
        },
        tune: None)]
}

pub(super) fn composed5() -> Vec<CatalogEntry> {
    vec![entry!(Composed5, 1, Listed, ([1, 3, 5], [1, 2, 4]),
        "x1 = K·(f1 - f3 - f5 + α·(f3 + f5)/β), x3 = K·f3·(1-α)/β, x5 = K·f5·(1-α)/β, \
         r1 = (f1 - f3 - f5)/p, r2 = f3/(p·β), r4 = f5/(p·β)",
        conditions: |_| vec![gt(&[1.0, 0.0, -1.0, 0.0, -1.0], "r1")],
        free: &[],
        state: |q, _| {
            let (f, kk, a, be, p) = (&q.f, k(q), q.alpha, q.beta, q.p);
            let g = f[0] - f[2] - f[4];
            st(
                [kk * (g + a / be * (f[2] + f[4])), 0.0, kk * f[2] * (1.0 - a) / be, 0.0, kk * f[4] * (1.0 - a) / be],
                [g / p, f[2] / (p * be), 0.0, f[4] / (p * be), 0.0],
            )
        },
        tune: None)]
}
