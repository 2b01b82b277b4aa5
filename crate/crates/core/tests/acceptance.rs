//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p crn-immune --test acceptance -- --nocapture` to see
//! the report; the test fails if any criterion fails.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crn_immune::catalog::{entries, CatalogEntry, NamedNetwork};
use crn_immune::dynamics::{integrate, IntegratorOptions};
use crn_immune::fixed_points::{enumerate_fixed_points, solve_support, SupportPattern, DEFAULT_MAX_N};
use crn_immune::robustness::{sweep, SweepSpec};
use crn_immune::stability::{analyze, check_branch_cycle_polynomial, jacobian_at, Verdict};
use crn_immune::{CrNetwork, CrnModel, Execution, ModelParameters, SystemState};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn model(net: NamedNetwork, q: &ModelParameters) -> CrnModel {
    CrnModel::new(net.network(), q.clone()).unwrap()
}

fn support(i: &[usize], j: &[usize]) -> SupportPattern {
    SupportPattern::from_one_based(i, j).unwrap()
}

fn solved(m: &CrnModel, s: &SupportPattern) -> Result<SystemState, String> {
    solve_support(m, s).map(|s| s.state).map_err(|e| format!("{s}: {e}"))
}

fn spectrum_at(m: &CrnModel, st: &SystemState) -> Result<(Vec<Complex64>, Verdict), String> {
    let rep = analyze(m, st).map_err(|e| e.to_string())?;
    Ok((rep.eigenvalues, rep.verdict.verdict))
}

/// Removes the eigenvalue closest to `want` (which must be within `tol`).
fn take_near(eigs: &mut Vec<Complex64>, want: f64, tol: f64) -> Result<(), String> {
    let (k, d) = eigs
        .iter()
        .enumerate()
        .map(|(k, z)| (k, (z - want).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or("empty spectrum")?;
    ensure(d <= tol, || format!("no eigenvalue within {tol:e} of {want}; closest at distance {d:e}"))?;
    eigs.remove(k);
    Ok(())
}

fn is_conjugate_pairs(eigs: &[Complex64]) -> bool {
    let mut upper: Vec<Complex64> = eigs.iter().copied().filter(|z| z.im > 1e-9).collect();
    let lower: Vec<Complex64> = eigs.iter().copied().filter(|z| z.im < -1e-9).collect();
    upper.len() * 2 == eigs.len()
        && lower.len() == upper.len()
        && lower.iter().all(|l| {
            let k = upper.iter().position(|u| (u.conj() - l).norm() < 1e-8);
            k.map(|k| upper.remove(k)).is_some()
        })
}

fn contains_eigen(eigs: &[Complex64], want: f64, tol: f64) -> bool {
    eigs.iter().any(|z| (z - want).norm() <= tol)
}

fn draw(entry: &CatalogEntry, rng: &mut ChaCha8Rng) -> ModelParameters {
    entry.draw_parameters(rng, 10_000).unwrap_or_else(|| panic!("no parameters for {entry:?}"))
}

fn entry(net: NamedNetwork, number: usize) -> CatalogEntry {
    entries(net).into_iter().find(|e| e.number == number).unwrap()
}

// ---- oracles written independently of the library ----

/// The vector field written out directly from the evolution equations.
fn oracle_rhs(net: &CrNetwork, q: &ModelParameters, z: &[f64]) -> Vec<f64> {
    let n = net.n();
    let (x, r) = z.split_at(n);
    let u = |j: usize, i: usize| {
        if i == j {
            1.0
        } else if net.has_edge(i, j) {
            q.beta
        } else {
            0.0
        }
    };
    let v = |j: usize, i: usize| {
        if i == j {
            1.0
        } else if net.has_edge(j, i) {
            q.alpha
        } else {
            0.0
        }
    };
    let mut out = vec![0.0; 2 * n];
    for i in 0..n {
        let kill: f64 = (0..n).map(|j| u(j, i) * r[j]).sum();
        out[i] = q.f[i] * x[i] - q.p * x[i] * kill;
        let mut stim = 0.0;
        for j in 0..n {
            let s: f64 = (0..n).map(|k| v(j, k) * r[k]).sum();
            if s > 0.0 {
                stim += x[j] * v(j, i) * r[i] / s;
            }
        }
        out[n + i] = q.c * stim - q.b * r[i];
    }
    out
}

fn oracle_fd_jacobian(net: &CrNetwork, q: &ModelParameters, z: &[f64]) -> Vec<Vec<f64>> {
    let d = z.len();
    let mut jac = vec![vec![0.0; d]; d];
    for k in 0..d {
        let h = 1e-6 * z[k].abs().max(1.0);
        let (mut zp, mut zm) = (z.to_vec(), z.to_vec());
        zp[k] += h;
        zm[k] -= h;
        let (fp, fm) = (oracle_rhs(net, q, &zp), oracle_rhs(net, q, &zm));
        for i in 0..d {
            jac[i][k] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    jac
}

/// Classical fixed-step RK4.
fn oracle_rk4(net: &CrNetwork, q: &ModelParameters, z0: &[f64], h: f64, t_end: f64, mut watch: impl FnMut(f64, &[f64])) -> Vec<f64> {
    let mut z = z0.to_vec();
    let steps = (t_end / h).round() as usize;
    let axpy = |a: &[f64], s: f64, b: &[f64]| a.iter().zip(b).map(|(x, y)| x + s * y).collect::<Vec<_>>();
    for k in 0..steps {
        let k1 = oracle_rhs(net, q, &z);
        let k2 = oracle_rhs(net, q, &axpy(&z, h / 2.0, &k1));
        let k3 = oracle_rhs(net, q, &axpy(&z, h / 2.0, &k2));
        let k4 = oracle_rhs(net, q, &axpy(&z, h, &k3));
        for i in 0..z.len() {
            z[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        watch((k + 1) as f64 * h, &z);
    }
    z
}

fn sup_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

// ---- criteria ----

fn pair_instability() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let li = entry(NamedNetwork::Asym2, 2);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let q = draw(&li, &mut rng);
        let m = model(NamedNetwork::Asym2, &q);
        let st = solved(&m, &support(&[1], &[2]))?;
        let (eigs, verdict) = spectrum_at(&m, &st)?;
        let want = q.b / q.alpha - q.b;
        let d = eigs.iter().map(|z| (z - want).norm()).fold(f64::INFINITY, f64::min);
        worst = worst.max(d);
        ensure(d <= 1e-9, || format!("b/α - b = {want} missing from {eigs:?} at {q:?}"))?;
        ensure(verdict == Verdict::Unstable, || format!("verdict {verdict:?} at {q:?}"))?;
    }
    Ok(format!("50 draws, worst |λ - (b/α - b)| = {worst:.1e}, all unstable"))
}

fn branch_examples() -> Outcome {
    // Example 1.
    let q = ModelParameters::unit_pc(vec![1.0, 3.0, 4.0], 1.0, 2.0 / 3.0, 4.0 / 9.0).unwrap();
    let m = model(NamedNetwork::BranchCycle3, &q);
    let (mut eigs, verdict) = spectrum_at(&m, &solved(&m, &support(&[1, 3], &[2, 3]))?)?;
    ensure(verdict == Verdict::Stable, || format!("example 1 verdict {verdict:?}"))?;
    take_near(&mut eigs, -7.0 / 12.0, 1e-9)?;
    take_near(&mut eigs, -0.5, 1e-9)?;
    ensure(is_conjugate_pairs(&eigs) && eigs.iter().all(|z| z.re < 0.0), || {
        format!("example 1 remainder is not two stable conjugate pairs: {eigs:?}")
    })?;

    // Example 2.
    let q = ModelParameters::new(vec![0.25, 0.5, 0.5], 1.0, 1.0, 2.0, 0.75, 9.0 / 16.0).unwrap();
    let m = model(NamedNetwork::BranchCycle3, &q);
    let (mut eigs, verdict) = spectrum_at(&m, &solved(&m, &support(&[1, 3], &[2, 3]))?)?;
    ensure(verdict == Verdict::Stable, || format!("example 2 verdict {verdict:?}"))?;
    take_near(&mut eigs, -49.0 / 576.0, 1e-9)?;
    take_near(&mut eigs, -4.0 / 3.0, 1e-9)?;
    let complex: Vec<_> = eigs.iter().filter(|z| z.im.abs() > 1e-9).copied().collect();
    let mut real: Vec<f64> = eigs.iter().filter(|z| z.im.abs() <= 1e-9).map(|z| z.re).collect();
    real.sort_by(f64::total_cmp);
    ensure(
        complex.len() == 2 && is_conjugate_pairs(&complex) && complex[0].re < 0.0,
        || format!("example 2: expected one stable complex pair in {eigs:?}"),
    )?;
    ensure(real.len() == 2 && real[1] < 0.0 && real[1] - real[0] > 1e-6, || {
        format!("example 2: expected two distinct negative reals in {eigs:?}")
    })?;
    Ok("example 1: -7/12, -1/2 + two stable pairs; example 2: -49/576, -4/3 + one pair + two reals".into())
}

fn mirror_branch_examples() -> Outcome {
    let cases = [
        (ModelParameters::unit_pc(vec![4.0, 2.0, 1.0], 1.0, 2.0 / 3.0, 4.0 / 9.0).unwrap(), -0.25, -0.5),
        (ModelParameters::new(vec![0.5, 0.25, 0.25], 1.0, 1.0, 2.0, 0.75, 9.0 / 16.0).unwrap(), -7.0 / 36.0, -4.0 / 3.0),
    ];
    for (q, l1, l2) in cases {
        let m = model(NamedNetwork::BranchCycle3, &q);
        let (eigs, verdict) = spectrum_at(&m, &solved(&m, &support(&[1, 3], &[1, 2]))?)?;
        ensure(contains_eigen(&eigs, l1, 1e-9) && contains_eigen(&eigs, l2, 1e-9), || {
            format!("f = {:?}: expected {l1} and {l2} in {eigs:?}", q.f)
        })?;
        ensure(verdict == Verdict::Stable, || format!("f = {:?}: verdict {verdict:?}", q.f))?;
    }
    Ok("f=(4,2,1): -1/4, -1/2; f=(1/2,1/4,1/4): -7/36, -4/3; both stable".into())
}

fn coefficient_positivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for number in [7, 8] {
        let e = entry(NamedNetwork::BranchCycle3, number);
        for _ in 0..200 {
            let q = draw(&e, &mut rng);
            let check = check_branch_cycle_polynomial(&q).map_err(|err| format!("{q:?}: {err}"))?;
            ensure(check.coefficients_positive, || format!("non-positive coefficient {:?} at {q:?}", check.closed_form))?;
            worst = worst.max(check.max_relative_error);
            ensure(check.max_relative_error < 1e-8, || {
                format!("fit {:?} vs closed form {:?} at {q:?}", check.numeric, check.closed_form)
            })?;
        }
    }
    Ok(format!("400 draws, all coefficients positive, worst relative error {worst:.1e}"))
}

fn composed_examples() -> Outcome {
    let s = support(&[1, 3, 5], &[1, 2, 4]);
    let q = ModelParameters::unit_pc(vec![3.0, 2.0, 1.0, 2.0, 1.0], 1.0, 2.0 / 3.0, 4.0 / 9.0).unwrap();
    let m = model(NamedNetwork::Composed5, &q);
    let (mut eigs, verdict) = spectrum_at(&m, &solved(&m, &s)?)?;
    for want in [-0.25, -0.25, -0.5, -0.5] {
        take_near(&mut eigs, want, 1e-8)?;
    }
    ensure(eigs.len() == 6 && is_conjugate_pairs(&eigs) && eigs.iter().all(|z| z.re < 0.0), || {
        format!("example 1 remainder is not three stable pairs: {eigs:?}")
    })?;
    ensure(verdict == Verdict::Stable, || format!("example 1 verdict {verdict:?}"))?;

    let q = ModelParameters::new(vec![4.0, 1.0, 2.0, 1.0, 1.0], 1.0, 1.0, 2.0, 0.75, 9.0 / 16.0).unwrap();
    let m = model(NamedNetwork::Composed5, &q);
    let (mut eigs, _) = spectrum_at(&m, &solved(&m, &s)?)?;
    for want in [-23.0 / 9.0, -7.0 / 9.0, -4.0 / 3.0, -4.0 / 3.0] {
        take_near(&mut eigs, want, 1e-8)?;
    }
    Ok("example 1: -1/4 (x2), -1/2 (x2), three stable pairs; example 2: -23/9, -7/9, -4/3 (x2)".into())
}

fn t_shape() -> Outcome {
    let q = ModelParameters::unit_pc(vec![1.0, 1.0, 2.0, 2.0], 1.0, 0.4, 0.16).unwrap();
    let m = model(NamedNetwork::TShape4, &q);
    let sol = solve_support(&m, &support(&[2, 3, 4], &[1, 3, 4])).map_err(|e| e.to_string())?;
    let st = &sol.state;
    let positive = [st.x[1], st.x[2], st.x[3], st.r[0], st.r[2], st.r[3]];
    ensure(positive.iter().all(|&v| v > 0.0), || format!("support component not positive: {st:?}"))?;
    let (eigs, _) = spectrum_at(&m, st)?;
    ensure(eigs.len() == 8 && eigs.iter().all(|z| z.re < 0.0), || format!("spectrum {eigs:?}"))?;
    let max_re = eigs.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    Ok(format!("point exists, 8 eigenvalues, max Re = {max_re:.4}"))
}

fn symmetric_and_cycle_witnesses() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    let sym = entry(NamedNetwork::Sym2, 1);
    for _ in 0..50 {
        let q = draw(&sym, &mut rng);
        let m = model(NamedNetwork::Sym2, &q);
        let (eigs, v) = spectrum_at(&m, &solved(&m, &support(&[1], &[2]))?)?;
        let want = q.b / q.alpha - q.b;
        let d = eigs.iter().map(|z| (z - want).norm()).fold(f64::INFINITY, f64::min);
        worst = worst.max(d);
        ensure(d <= 1e-9 && v == Verdict::Unstable, || format!("sym2: {want} vs {eigs:?}"))?;
    }
    for number in [2, 3, 5] {
        let e = entry(NamedNetwork::Cycle3, number);
        for _ in 0..50 {
            let q = draw(&e, &mut rng);
            let m = model(NamedNetwork::Cycle3, &q);
            let (eigs, v) = spectrum_at(&m, &e.state_at(&q))?;
            let want = q.b / q.alpha + q.alpha * q.b - q.b;
            let d = eigs.iter().map(|z| (z - want).norm()).fold(f64::INFINITY, f64::min);
            worst = worst.max(d);
            ensure(d <= 1e-9 && v == Verdict::Unstable, || format!("cycle3#{number}: {want} vs {eigs:?}"))?;
        }
    }
    Ok(format!("sym2 + three cycle3 LI points, 200 draws, worst distance {worst:.1e}"))
}

fn catalog_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut worst_res, mut worst_match, mut checked) = (0.0f64, 0.0f64, 0usize);
    for net in NamedNetwork::ALL {
        for e in entries(net) {
            for _ in 0..100 {
                let q = draw(&e, &mut rng);
                let m = model(net, &q);
                let st = e.state_at(&q);
                let res = oracle_rhs(m.network(), &q, &st.to_concat()).iter().fold(0.0f64, |a, v| a.max(v.abs()));
                worst_res = worst_res.max(res);
                ensure(res < 1e-10, || format!("{e:?}: residual {res:e} at {q:?}"))?;
                let found = enumerate_fixed_points(&m, DEFAULT_MAX_N).map_err(|err| err.to_string())?;
                let scale = st.to_concat().iter().fold(1.0f64, |a, v| a.max(v.abs()));
                let d = found.iter().map(|s| s.state.distance(&st)).fold(f64::INFINITY, f64::min) / scale;
                worst_match = worst_match.max(d);
                ensure(d < 1e-9, || format!("{e:?}: enumeration misses the entry (distance {d:e}) at {q:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} entry draws, worst residual {worst_res:.1e}, worst enumeration distance {worst_match:.1e}"))
}

fn dynamics_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    // Stable branch point, 1% perturbation.
    let q = ModelParameters::unit_pc(vec![1.0, 3.0, 4.0], 1.0, 2.0 / 3.0, 4.0 / 9.0).unwrap();
    let m = model(NamedNetwork::BranchCycle3, &q);
    let fp = solved(&m, &support(&[1, 3], &[2, 3]))?.to_concat();
    let scale = fp.iter().fold(0.0f64, |a, v| a.max(*v));
    let z0: Vec<f64> = fp
        .iter()
        .map(|&v| if v > 0.0 { v * (1.0 + 0.01 * rng.random_range(-1.0..1.0)) } else { 0.01 * scale * rng.random_range(0.0..1.0) })
        .collect();
    let traj = integrate(&m, &SystemState::from_concat(&z0), 1000.0, &IntegratorOptions::default())
        .map_err(|e| e.to_string())?;
    let d_lib = sup_dist(&traj.last_state().to_concat(), &fp);
    let d_rk4 = sup_dist(&oracle_rk4(m.network(), &q, &z0, 0.01, 1000.0, |_, _| ()), &fp);
    ensure(d_lib < 1e-6 && d_rk4 < 1e-6, || format!("stable point: distance at t=1000 {d_lib:e} (RK4 {d_rk4:e})"))?;

    // Unstable pair point, 1e-6 perturbation.
    let q = ModelParameters::unit_pc(vec![2.0, 1.0], 1.0, 0.6, 0.3).unwrap();
    let m = model(NamedNetwork::Asym2, &q);
    let fp = solved(&m, &support(&[1], &[2]))?.to_concat();
    let z0: Vec<f64> = fp.iter().map(|&v| v + 1e-6 * rng.random_range(0.5..1.0)).collect();
    let d0 = sup_dist(&z0, &fp);
    let traj = integrate(&m, &SystemState::from_concat(&z0), 200.0, &IntegratorOptions::default())
        .map_err(|e| e.to_string())?;
    let lib_max = traj.states.iter().map(|s| sup_dist(&s.to_concat(), &fp)).fold(0.0, f64::max);
    let mut rk4_max = 0.0f64;
    oracle_rk4(m.network(), &q, &z0, 0.01, 200.0, |_, z| rk4_max = rk4_max.max(sup_dist(z, &fp)));
    ensure(lib_max >= 10.0 * d0 && rk4_max >= 10.0 * d0, || {
        format!("unstable point: max departure {lib_max:e} (RK4 {rk4_max:e}) vs initial {d0:e}")
    })?;
    Ok(format!(
        "stable: distance {d_lib:.1e} at t=1000 (RK4 {d_rk4:.1e}); unstable: departure {:.0}x initial by t=200",
        lib_max / d0
    ))
}

fn jacobian_correctness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    for net in NamedNetwork::ALL {
        let g = net.network();
        let n = g.n();
        for _ in 0..100 {
            let alpha = rng.random_range(0.15..0.9);
            let q = ModelParameters::new(
                (0..n).map(|_| rng.random_range(0.2..5.0)).collect(),
                rng.random_range(0.5..2.0),
                rng.random_range(0.5..2.0),
                rng.random_range(0.5..2.0),
                alpha,
                rng.random_range(0.1..alpha),
            )
            .unwrap();
            let st = SystemState {
                x: (0..n).map(|_| rng.random_range(0.0..3.0)).collect(),
                r: (0..n).map(|_| rng.random_range(0.1..3.0)).collect(),
            };
            let m = CrnModel::new(g.clone(), q.clone()).unwrap();
            let jac = jacobian_at(&m, &st).map_err(|e| e.to_string())?.full;
            let fd = oracle_fd_jacobian(&g, &q, &st.to_concat());
            let norm = jac.amax().max(1.0);
            let err = (0..2 * n)
                .flat_map(|i| (0..2 * n).map(move |k| (i, k)))
                .map(|(i, k)| (jac[(i, k)] - fd[i][k]).abs())
                .fold(0.0, f64::max)
                / norm;
            worst = worst.max(err);
            ensure(err < 1e-6, || format!("{net}: relative error {err:e} at {st:?}"))?;
        }
    }
    Ok(format!("700 states over 7 networks, worst relative error {worst:.1e}"))
}

fn fragility() -> Outcome {
    let beta = 0.3;
    let nominal = ModelParameters::unit_pc(vec![beta * 2.0, 2.0], 1.0, 0.6, beta).unwrap();
    let s = support(&[1, 2], &[2]);
    let m = model(NamedNetwork::Asym2, &nominal);
    let sol = solve_support(&m, &s).map_err(|e| format!("nominal group-C point: {e}"))?;
    ensure(sol.has_local_immunodeficiency(), || "nominal point has no persistent node".into())?;

    // The equality f1 = beta f2 involves f1, f2 and beta.
    let mut tried = 0;
    for coord in 0..3 {
        for sign in [-1.0, 1.0] {
            let mut q = nominal.clone();
            let bump = 1.0 + sign * 1e-6;
            match coord {
                0 => q.f[0] *= bump,
                1 => q.f[1] *= bump,
                _ => q.beta *= bump,
            }
            let kept = solve_support(&model(NamedNetwork::Asym2, &q), &s).is_ok();
            ensure(!kept, || format!("family survived perturbation of coordinate {coord} by {sign:e}e-6"))?;
            tried += 1;
        }
    }

    let group_c = SweepSpec { nominal, relative_radius: 0.01, samples: 1000, seed: 3, support: s };
    let r = sweep(&group_c, &NamedNetwork::Asym2.network(), Execution::default()).map_err(|e| e.to_string())?;
    ensure(r.li_preserved_fraction == 0.0, || format!("group-C LI preserved fraction {}", r.li_preserved_fraction))?;

    let stable = SweepSpec {
        nominal: ModelParameters::unit_pc(vec![1.0, 3.0, 4.0], 1.0, 2.0 / 3.0, 4.0 / 9.0).unwrap(),
        relative_radius: 0.01,
        samples: 1000,
        seed: 5,
        support: support(&[1, 3], &[2, 3]),
    };
    let r2 = sweep(&stable, &NamedNetwork::BranchCycle3.network(), Execution::default()).map_err(|e| e.to_string())?;
    ensure(r2.stable_fraction == 1.0, || format!("branch-cycle stable fraction {}", r2.stable_fraction))?;
    Ok(format!(
        "{tried} single-coordinate 1e-6 perturbations all break the family; LI preserved {:.3}; stable fraction {:.3}",
        r.li_preserved_fraction, r2.stable_fraction
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("pair LI point unstable with eigenvalue b/α - b", pair_instability),
        ("branch-cycle stable examples", branch_examples),
        ("branch-cycle mirror examples", mirror_branch_examples),
        ("branch-cycle P(λ) coefficients positive and matching", coefficient_positivity),
        ("composed network examples", composed_examples),
        ("T-shaped point stable", t_shape),
        ("symmetric pair and 3-cycle instability witnesses", symmetric_and_cycle_witnesses),
        ("catalog oracle", catalog_oracle),
        ("dynamics consistency", dynamics_consistency),
        ("Jacobian against finite differences", jacobian_correctness),
        ("equality-conditioned fragility and sweep fractions", fragility),
    ];
    let mut failures = Vec::new();
    let mut lines = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let line = match &outcome {
            Ok(detail) => format!("PASS {:>2} {name}: {detail} ({secs:.2}s)", k + 1),
            Err(why) => format!("FAIL {:>2} {name}: {why} ({secs:.2}s)", k + 1),
        };
        println!("{line}");
        if outcome.is_err() {
            failures.push(k + 1);
        }
        lines.push(line);
    }
    assert!(failures.is_empty(), "failed criteria {failures:?}\n{}", lines.join("\n"));
}
