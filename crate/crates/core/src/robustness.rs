//! Parameter sweeps around a nominal fixed point.
//!
//! Every sample perturbs each of `f_i, p, c, b, alpha, beta` independently by
//! a uniform relative amount in `[-radius, radius]`, re-solves the fixed point
//! on the same support and re-runs the stability analysis. Draws that break
//! `0 < beta < alpha < 1` are rejected and redrawn.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixed_points::{solve_support, SupportPattern};
use crate::model::CrnModel;
use crate::network::CrNetwork;
use crate::par::{map_indexed, Execution};
use crate::params::ModelParameters;
use crate::stability::{analyze, Verdict};

/// Name of the generator written into every result.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha), seed_from_u64(seed), stream = sample index";

/// Draws per sample before giving up on the `beta < alpha` ordering.
pub const MAX_ATTEMPTS_PER_SAMPLE: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub nominal: ModelParameters,
    pub relative_radius: f64,
    pub samples: usize,
    pub seed: u64,
    /// Support whose fixed point is tracked.
    pub support: SupportPattern,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.nominal.validate()?;
        if !(self.relative_radius > 0.0 && self.relative_radius < 0.5) {
            return Err(Error::Precondition(format!(
                "relative radius must lie in (0, 0.5), got {}",
                self.relative_radius
            )));
        }
        if self.samples == 0 {
            return Err(Error::Precondition("at least one sample is required".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: usize,
    /// `None` when every attempt broke the parameter ordering.
    pub parameters: Option<ModelParameters>,
    /// Draws rejected for violating `0 < beta < alpha < 1`.
    pub rejected_draws: usize,
    pub fixed_point_found: bool,
    /// Found, and still with a persistent node.
    pub li_preserved: bool,
    pub verdict: Option<Verdict>,
    /// Largest real part of the spectrum.
    pub max_real: Option<f64>,
    /// Why no verdict is available, if so.
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rng: String,
    pub spec: SweepSpec,
    pub nominal_verdict: Verdict,
    pub stable_fraction: f64,
    pub li_preserved_fraction: f64,
    pub rejected_draws: usize,
    pub records: Vec<SampleRecord>,
}

fn perturb(v: f64, radius: f64, rng: &mut ChaCha8Rng) -> f64 {
    v * (1.0 + radius * rng.random_range(-1.0..=1.0))
}

fn draw(nominal: &ModelParameters, radius: f64, rng: &mut ChaCha8Rng) -> ModelParameters {
    ModelParameters {
        f: nominal.f.iter().map(|&f| perturb(f, radius, rng)).collect(),
        p: perturb(nominal.p, radius, rng),
        c: perturb(nominal.c, radius, rng),
        b: perturb(nominal.b, radius, rng),
        alpha: perturb(nominal.alpha, radius, rng),
        beta: perturb(nominal.beta, radius, rng),
    }
}

fn evaluate(model: &CrnModel, support: &SupportPattern) -> (bool, bool, Option<Verdict>, Option<f64>, Option<String>) {
    let sol = match solve_support(model, support) {
        Ok(s) => s,
        Err(e) => return (false, false, None, None, Some(e.to_string())),
    };
    let li = sol.has_local_immunodeficiency();
    match analyze(model, &sol.state) {
        Ok(rep) => {
            let max_real = rep.eigenvalues.first().map(|z| z.re);
            (true, li, Some(rep.verdict.verdict), max_real, None)
        }
        Err(e) => (true, li, None, None, Some(e.to_string())),
    }
}

fn sample(spec: &SweepSpec, network: &CrNetwork, index: usize) -> SampleRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index as u64);
    let mut rejected = 0;
    let mut params = None;
    for _ in 0..MAX_ATTEMPTS_PER_SAMPLE {
        let q = draw(&spec.nominal, spec.relative_radius, &mut rng);
        if q.validate().is_ok() {
            params = Some(q);
            break;
        }
        rejected += 1;
    }
    let Some(q) = params else {
        return SampleRecord {
            index,
            parameters: None,
            rejected_draws: rejected,
            fixed_point_found: false,
            li_preserved: false,
            verdict: None,
            max_real: None,
            note: Some("parameter ordering violated on every attempt".into()),
        };
    };
    let model = CrnModel::new(network.clone(), q.clone()).expect("validated parameters");
    let (found, li, verdict, max_real, note) = evaluate(&model, &spec.support);
    SampleRecord {
        index,
        parameters: Some(q),
        rejected_draws: rejected,
        fixed_point_found: found,
        li_preserved: li,
        verdict,
        max_real,
        note,
    }
}

/// Runs the sweep. The result depends only on `spec`, not on `exec`.
pub fn sweep(spec: &SweepSpec, network: &CrNetwork, exec: Execution) -> Result<SweepResult> {
    spec.validate()?;
    let nominal = CrnModel::new(network.clone(), spec.nominal.clone())?;
    let sol = solve_support(&nominal, &spec.support)
        .map_err(|e| Error::FixedPointAbsent(format!("{} at the nominal parameters: {e}", spec.support)))?;
    let nominal_verdict = analyze(&nominal, &sol.state)?.verdict.verdict;

    let records = map_indexed(spec.samples, exec, |k| sample(spec, network, k));
    let n = records.len() as f64;
    let stable = records.iter().filter(|r| r.verdict == Some(Verdict::Stable)).count();
    let li = records.iter().filter(|r| r.li_preserved).count();
    Ok(SweepResult {
        rng: RNG_ALGORITHM.to_string(),
        spec: spec.clone(),
        nominal_verdict,
        stable_fraction: stable as f64 / n,
        li_preserved_fraction: li as f64 / n,
        rejected_draws: records.iter().map(|r| r.rejected_draws).sum(),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::NamedNetwork;

    fn branch_cycle_spec(radius: f64, samples: usize) -> SweepSpec {
        SweepSpec {
            nominal: ModelParameters::unit_pc(vec![1.0, 3.0, 4.0], 1.0, 2.0 / 3.0, 4.0 / 9.0).unwrap(),
            relative_radius: radius,
            samples,
            seed: 11,
            support: SupportPattern::from_one_based(&[1, 3], &[2, 3]).unwrap(),
        }
    }

    #[test]
    fn deterministic_across_execution_modes() {
        let spec = branch_cycle_spec(0.05, 64);
        let net = NamedNetwork::BranchCycle3.network();
        let a = sweep(&spec, &net, Execution::Sequential).unwrap();
        let b = sweep(&spec, &net, Execution::Parallel).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.records.len(), 64);
    }

    #[test]
    fn tiny_radius_keeps_stability() {
        let r = sweep(&branch_cycle_spec(1e-12, 20), &NamedNetwork::BranchCycle3.network(), Execution::default())
            .unwrap();
        assert_eq!(r.nominal_verdict, Verdict::Stable);
        assert_eq!(r.stable_fraction, 1.0);
        assert_eq!(r.li_preserved_fraction, 1.0);
    }

    #[test]
    fn bad_specs() {
        let net = NamedNetwork::BranchCycle3.network();
        let mut s = branch_cycle_spec(0.6, 1);
        assert!(sweep(&s, &net, Execution::Sequential).is_err());
        s.relative_radius = 0.01;
        s.samples = 0;
        assert!(sweep(&s, &net, Execution::Sequential).is_err());
        s.samples = 1;
        s.support = SupportPattern::from_one_based(&[2], &[1]).unwrap();
        assert!(matches!(sweep(&s, &net, Execution::Sequential), Err(Error::FixedPointAbsent(_))));
    }
}
