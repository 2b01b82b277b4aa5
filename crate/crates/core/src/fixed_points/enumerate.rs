//! Exhaustive search over support patterns.

use super::{solve_support, FixedPointSolution, SupportPattern};
use crate::error::{Error, Result};
use crate::model::CrnModel;
use crate::par::{map_indexed, Execution};

/// Default bound on the node count for enumeration.
pub const DEFAULT_MAX_N: usize = 12;

/// States closer than this (sup norm) are reported once.
const DEDUP_TOL: f64 = 1e-9;

/// All fixed points over every support pattern, using the default execution mode.
pub fn enumerate_fixed_points(model: &CrnModel, max_n: usize) -> Result<Vec<FixedPointSolution>> {
    enumerate_fixed_points_with(model, max_n, Execution::default())
}

/// All fixed points over every support pattern `(I, J)`.
///
/// `J` ranges over nonempty subsets of `I` plus the out-neighbours of `I`,
/// since any other antibody has no stimulating antigen. Results are
/// deduplicated and sorted by `|I| + |J|`, then by support.
pub fn enumerate_fixed_points_with(model: &CrnModel, max_n: usize, exec: Execution) -> Result<Vec<FixedPointSolution>> {
    let n = model.n();
    if n > max_n || n >= 64 {
        return Err(Error::CombinatorialLimit { n, max_n: max_n.min(63) });
    }
    let net = model.network();
    // Closed out-neighbourhood of each node as a mask.
    let reach: Vec<u64> = (0..n)
        .map(|i| net.out_neighbors(i).fold(1u64 << i, |m, j| m | 1 << j))
        .collect();

    let per_mask = map_indexed((1usize << n) - 1, exec, |k| {
        let antigen_mask = (k + 1) as u64;
        let nodes = (0..n).filter(|&i| antigen_mask >> i & 1 == 1);
        let closure = nodes.clone().fold(0u64, |m, i| m | reach[i]);
        let mut found = Vec::new();
        let mut sub = closure;
        while sub != 0 {
            if nodes.clone().all(|i| reach[i] & sub != 0) {
                let support = SupportPattern::from_masks(antigen_mask, sub, n);
                if let Ok(sol) = solve_support(model, &support) {
                    found.push(sol);
                }
            }
            sub = (sub - 1) & closure;
        }
        found
    });

    let mut all: Vec<FixedPointSolution> = per_mask.into_iter().flatten().collect();
    all.sort_by(|a, b| {
        a.support
            .cardinality()
            .cmp(&b.support.cardinality())
            .then_with(|| a.support.cmp(&b.support))
    });
    let mut out: Vec<FixedPointSolution> = Vec::with_capacity(all.len());
    for sol in all {
        if !out.iter().any(|kept| kept.state.distance(&sol.state) < DEDUP_TOL) {
            out.push(sol);
        }
    }
    Ok(out)
}
