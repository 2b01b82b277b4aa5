//! Named networks and their closed-form fixed points.
//!
//! Each [`CatalogEntry`] gives a fixed point (or family) as explicit formulas
//! in `(f, p, c, b, alpha, beta)` together with the conditions under which it
//! exists. The entries double as regression oracles for the support solver.

mod compose;
mod entries;
mod networks;

use rand::Rng;

pub use compose::compose_mirror;
pub use entries::{CatalogEntry, EntryOrigin, FreeVariable};
pub use networks::{get_network, NamedNetwork};

use crate::error::Result;
use crate::fixed_points::{classify_state, group_of, FamilyDims, FixedPointSolution, POSITIVITY_TOL};
use crate::model::{CrnModel, SystemState};
use crate::params::ModelParameters;

/// Equalities must hold to this, relative to the largest `f`.
pub const EQUALITY_TOL: f64 = 1e-12;

/// Catalog states whose residual exceeds this are not reported.
pub const CATALOG_RESIDUAL_TOL: f64 = 1e-9;

/// All entries of a network, reference entries first.
pub fn entries(network: NamedNetwork) -> Vec<CatalogEntry> {
    match network {
        NamedNetwork::Asym2 => entries::asym2(),
        NamedNetwork::Sym2 => entries::sym2(),
        NamedNetwork::ChainBranch3 => entries::chain_branch3(),
        NamedNetwork::BranchCycle3 => entries::branch_cycle3(),
        NamedNetwork::Cycle3 => entries::cycle3(),
        NamedNetwork::TShape4 => entries::t_shape4(),
        NamedNetwork::Composed5 => entries::composed5(),
    }
}

/// Whether the entries cover every support that can carry a fixed point.
/// Only the 2- and 3-node asymmetric networks are listed exhaustively.
pub fn is_complete(network: NamedNetwork) -> bool {
    matches!(
        network,
        NamedNetwork::Asym2 | NamedNetwork::ChainBranch3 | NamedNetwork::BranchCycle3 | NamedNetwork::Cycle3
    )
}

impl CatalogEntry {
    pub fn conditions_at(&self, params: &ModelParameters) -> Vec<crate::fixed_points::Condition> {
        (self.conditions)(params)
    }

    /// True when every condition holds; equalities to [`EQUALITY_TOL`].
    pub fn applies(&self, params: &ModelParameters) -> bool {
        let scale = params.f.iter().fold(1.0f64, |m, f| m.max(f.abs()));
        self.conditions_at(params)
            .iter()
            .all(|c| c.holds(&params.f, params.alpha, EQUALITY_TOL * scale))
    }

    /// Midpoints of the free intervals, each chosen given the earlier ones.
    pub fn free_values(&self, params: &ModelParameters) -> Vec<f64> {
        let mut vals = Vec::with_capacity(self.free.len());
        for v in self.free {
            let (lo, hi) = (v.bounds)(params, &vals);
            vals.push(0.5 * (lo + hi));
        }
        vals
    }

    /// The closed-form state at the given free values.
    pub fn state_with(&self, params: &ModelParameters, free: &[f64]) -> SystemState {
        (self.state)(params, free)
    }

    /// The closed-form state, at the sequential midpoint for families.
    pub fn state_at(&self, params: &ModelParameters) -> SystemState {
        self.state_with(params, &self.free_values(params))
    }

    /// Moves `f` onto the entry's equalities; a no-op without equalities.
    pub fn tune(&self, params: &mut ModelParameters) {
        if let Some(t) = self.tune {
            t(params);
        }
    }

    /// Evaluates the entry as a solution record, or `None` when its
    /// conditions fail or the state does not satisfy the equations.
    pub fn evaluate(&self, model: &CrnModel) -> Option<FixedPointSolution> {
        let params = model.params();
        if !self.applies(params) {
            return None;
        }
        let state = self.state_at(params);
        if state.x.iter().chain(&state.r).any(|v| !v.is_finite() || *v < 0.0) {
            return None;
        }
        let residual = model.residual(&state);
        let scale = state.x.iter().chain(&state.r).fold(1.0f64, |m, v| m.max(*v));
        if !(residual <= CATALOG_RESIDUAL_TOL * scale) {
            return None;
        }
        let conditions = self.conditions_at(params);
        let labels = classify_state(&state, POSITIVITY_TOL);
        let group = group_of(&labels, &conditions);
        let v = &model.matrices().v;
        let n = model.n();
        let delta = (0..n)
            .map(|i| {
                let s: f64 = (0..n).map(|k| v[(i, k)] * state.r[k]).sum();
                (s > 0.0).then(|| 1.0 / s)
            })
            .collect();
        let family = (!self.free.is_empty()).then_some(FamilyDims { antibody: 0, antigen: self.free.len() });
        Some(FixedPointSolution {
            support: self.support_pattern(),
            state,
            labels,
            residual,
            conditions,
            group,
            delta,
            family,
        })
    }

    /// Draws parameters satisfying the entry's conditions: `p, c, b` in
    /// `[0.5, 2]`, `f_i` in `[0.2, 5]`, `0.1 < beta < alpha < 0.9`, then tunes
    /// the equalities. Gives up after `tries` rejections.
    pub fn draw_parameters<R: Rng + ?Sized>(&self, rng: &mut R, tries: usize) -> Option<ModelParameters> {
        let n = self.network.network().n();
        for _ in 0..tries {
            let alpha = rng.random_range(0.15..0.9);
            let beta = rng.random_range(0.1..alpha);
            let mut q = ModelParameters {
                f: (0..n).map(|_| rng.random_range(0.2..5.0)).collect(),
                p: rng.random_range(0.5..2.0),
                c: rng.random_range(0.5..2.0),
                b: rng.random_range(0.5..2.0),
                alpha,
                beta,
            };
            self.tune(&mut q);
            if q.validate().is_ok() && self.applies(&q) {
                return Some(q);
            }
        }
        None
    }
}

/// Every entry of `name` that exists at `params`, as verified solutions.
pub fn evaluate_catalog(name: &str, params: &ModelParameters) -> Result<Vec<FixedPointSolution>> {
    let net: NamedNetwork = name.parse()?;
    let model = CrnModel::new(net.network(), params.clone())?;
    Ok(entries(net).iter().filter_map(|e| e.evaluate(&model)).collect())
}
