//! Mirroring a network about one of its nodes.

use crate::error::{Error, Result};
use crate::network::CrNetwork;

/// Glues two copies of `base` together at `pivot` (0-based).
///
/// The first copy keeps its labels; the non-pivot nodes of the second copy
/// take the labels `n, n+1, ...` in their original order.
pub fn compose_mirror(base: &CrNetwork, pivot: usize) -> Result<CrNetwork> {
    let n = base.n();
    if pivot >= n {
        return Err(Error::Precondition(format!("pivot {} outside a network of {n} nodes", pivot + 1)));
    }
    let mirror = |i: usize| match i.cmp(&pivot) {
        std::cmp::Ordering::Equal => pivot,
        std::cmp::Ordering::Less => n + i,
        std::cmp::Ordering::Greater => n + i - 1,
    };
    let mut edges = base.edges().to_vec();
    edges.extend(base.edges().iter().map(|&(i, j)| (mirror(i), mirror(j))));
    CrNetwork::new(2 * n - 1, &edges)
}
