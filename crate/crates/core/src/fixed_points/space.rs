//! Dimensions of the affine families of stationary states around a solution.

use serde::{Deserialize, Serialize};

use super::solve::{antibody_matrix, antigen_matrix};
use super::FixedPointSolution;
use crate::linalg;
use crate::model::CrnModel;

/// Kernel dimensions of the stationarity equations around `base`.
///
/// `r_kernel_dim` and `x_kernel_dim` count all `n` unknowns: `n - rank U^T[I, :]`
/// and `n - rank V^T[J, :]`. The `*_support_kernel_dim` fields only count the
/// unknowns inside the support (`J` for `r`, `I` for `x`); zero there means the
/// point is isolated among states with the same sign pattern.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationarySpace {
    pub base: FixedPointSolution,
    pub r_kernel_dim: usize,
    pub x_kernel_dim: usize,
    pub r_support_kernel_dim: usize,
    pub x_support_kernel_dim: usize,
}

pub fn stationary_space(solution: &FixedPointSolution, model: &CrnModel) -> StationarySpace {
    let net = model.network();
    let params = model.params();
    let all: Vec<usize> = (0..model.n()).collect();
    let (set_i, set_j) = (solution.support.antigens(), solution.support.antibodies());
    let n = all.len();
    let r_full = antibody_matrix(net, params.beta, set_i, &all);
    let x_full = antigen_matrix(net, params.alpha, set_j, &all);
    let r_sup = antibody_matrix(net, params.beta, set_i, set_j);
    let x_sup = antigen_matrix(net, params.alpha, set_j, set_i);
    StationarySpace {
        base: solution.clone(),
        r_kernel_dim: n - linalg::rank(&r_full),
        x_kernel_dim: n - linalg::rank(&x_full),
        r_support_kernel_dim: set_j.len() - linalg::rank(&r_sup),
        x_support_kernel_dim: set_i.len() - linalg::rank(&x_sup),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed_points::{solve_support, SupportPattern};
    use crate::network::CrNetwork;
    use crate::params::ModelParameters;

    #[test]
    fn pair_and_branch_cycle_dimensions() {
        let m = CrnModel::new(
            CrNetwork::from_one_based(2, &[(1, 2)]).unwrap(),
            ModelParameters::unit_pc(vec![1.0, 2.0], 1.0, 2.0 / 3.0, 4.0 / 9.0).unwrap(),
        )
        .unwrap();
        let s = solve_support(&m, &SupportPattern::from_one_based(&[1], &[2]).unwrap()).unwrap();
        let sp = stationary_space(&s, &m);
        assert_eq!(sp.r_kernel_dim, 1);
        assert_eq!(sp.r_support_kernel_dim, 0);

        let m = CrnModel::new(
            CrNetwork::from_one_based(3, &[(1, 2), (2, 3), (3, 2)]).unwrap(),
            ModelParameters::unit_pc(vec![1.0, 3.0, 4.0], 1.0, 2.0 / 3.0, 4.0 / 9.0).unwrap(),
        )
        .unwrap();
        let s = solve_support(&m, &SupportPattern::from_one_based(&[1, 3], &[2, 3]).unwrap()).unwrap();
        let sp = stationary_space(&s, &m);
        assert_eq!((sp.r_support_kernel_dim, sp.x_support_kernel_dim), (0, 0));
        assert_eq!((sp.r_kernel_dim, sp.x_kernel_dim), (1, 1));
    }
}
