//! Linear stability of stationary states.

mod jacobian;
mod polynomial;
mod spectrum;

use num_complex::Complex64;
use serde::Serialize;

pub use jacobian::{finite_difference_jacobian, jacobian_at, JacobianMatrix};
pub use polynomial::{
    branch_cycle_closed_form, check_branch_cycle_polynomial, check_five_node_polynomial, deflated_fit,
    five_node_closed_form, five_node_support, match_spectra, BranchCycleBranch, FactorCheck,
};
pub use spectrum::{
    conjugate_closure_error, default_epsilon, eigen_residual, sort_descending, spectrum,
    trace_determinant_errors, verdict, Verdict, VerdictRecord, SWEEPS_PER_DIMENSION,
};

use crate::error::Result;
use crate::model::{CrnModel, SystemState};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub jacobian: JacobianMatrix,
    /// Sorted by real part, descending.
    #[serde(with = "complex_pairs")]
    pub eigenvalues: Vec<Complex64>,
    #[serde(flatten)]
    pub verdict: VerdictRecord,
    pub factor_checks: Vec<FactorCheck>,
}

/// Jacobian, spectrum and verdict at `state` with the default marginal band.
pub fn analyze(model: &CrnModel, state: &SystemState) -> Result<StabilityReport> {
    let jacobian = jacobian_at(model, state)?;
    let eigenvalues = spectrum(&jacobian.full)?;
    let verdict = verdict(&eigenvalues, default_epsilon(&eigenvalues));
    Ok(StabilityReport { jacobian, eigenvalues, verdict, factor_checks: Vec::new() })
}

/// Serializes complex numbers as `[re, im]` pairs.
pub mod complex_pairs {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::NamedNetwork;
    use crate::params::ModelParameters;

    #[test]
    fn pair_li_point_is_unstable() {
        let (b, alpha, beta, f1) = (1.0, 2.0 / 3.0, 4.0 / 9.0, 1.0);
        let m = CrnModel::new(
            NamedNetwork::Asym2.network(),
            ModelParameters::unit_pc(vec![f1, 2.0], b, alpha, beta).unwrap(),
        )
        .unwrap();
        let st = SystemState { x: vec![b * f1 / beta, 0.0], r: vec![0.0, f1 / beta] };
        let rep = analyze(&m, &st).unwrap();
        assert_eq!(rep.verdict.verdict, Verdict::Unstable);
        assert!(rep.verdict.positive_witnesses.iter().any(|z| (z.re - 0.5).abs() < 1e-9));
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["verdict"], "unstable");
        assert_eq!(json["eigenvalues"][0].as_array().unwrap().len(), 2);
    }
}
