//! Fixed point on a prescribed support.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use super::{group_of, classify_state, Condition, FamilyDims, FixedPointSolution, Relation, SupportPattern};
use crate::linalg::{self, RANK_CUTOFF};
use crate::model::{CrnModel, SystemState};
use crate::network::CrNetwork;

/// Absolute tolerance on the residual of an over-determined restricted system.
pub const CONSISTENCY_TOL: f64 = 1e-9;
/// Components at or below this are zero for support membership.
pub const POSITIVITY_TOL: f64 = 1e-12;
/// Largest family dimension for which a representative is searched.
const MAX_FAMILY_DIM: usize = 3;
/// Bound on `||rhs||_inf` of a returned state.
const RESIDUAL_TOL: f64 = 1e-9;

/// Why a support carries no admissible fixed point.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Rejection {
    #[error("empty support (the origin is excluded)")]
    EmptySupport,
    #[error("support index {index} out of range for n = {n}")]
    DimensionMismatch { index: usize, n: usize },
    #[error("{variable} cannot be sustained by the support")]
    Unsustainable { variable: String },
    #[error("antibody equations inconsistent (residual {residual:e})")]
    InconsistentAntibodySystem { residual: f64 },
    #[error("antigen equations inconsistent (residual {residual:e})")]
    InconsistentAntigenSystem { residual: f64 },
    #[error("{variable} = {value:e} is not strictly positive")]
    NonPositive { variable: String, value: f64 },
    #[error("solution family has no strictly positive member")]
    EmptyFamily,
    #[error("solution family of dimension {0} exceeds the search limit")]
    FamilyTooLarge(usize),
    #[error("delta undefined at node {0}")]
    UndefinedDelta(usize),
    #[error("stationarity residual {0:e} too large")]
    Residual(f64),
}

/// `U^T` restricted to `rows x cols`: entry `(i, j)` is `[i = j] + beta * A[i][j]`.
pub(crate) fn antibody_matrix(net: &CrNetwork, beta: f64, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols.len(), |a, b| {
        let (i, j) = (rows[a], cols[b]);
        if i == j {
            1.0
        } else if net.has_edge(i, j) {
            beta
        } else {
            0.0
        }
    })
}

/// `V^T` restricted to `rows x cols`: entry `(j, i)` is `[i = j] + alpha * A[i][j]`.
pub(crate) fn antigen_matrix(net: &CrNetwork, alpha: f64, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols.len(), |a, b| {
        let (j, i) = (rows[a], cols[b]);
        if i == j {
            1.0
        } else if net.has_edge(i, j) {
            alpha
        } else {
            0.0
        }
    })
}

/// Greedy row basis: rows listed in `preferred` come first, each row kept
/// only if it raises the rank.
fn row_basis(m: &DMatrix<f64>, preferred: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m.nrows()).filter(|&k| preferred(k)).collect();
    order.extend((0..m.nrows()).filter(|&k| !preferred(k)));
    let full = linalg::rank(m);
    let mut chosen: Vec<usize> = Vec::with_capacity(full);
    for k in order {
        if chosen.len() == full {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(k);
        if linalg::rank(&m.select_rows(&trial)) == trial.len() {
            chosen = trial;
        }
    }
    chosen.sort_unstable();
    chosen
}

fn pinv(m: &DMatrix<f64>) -> DMatrix<f64> {
    if m.is_empty() {
        return DMatrix::zeros(m.ncols(), m.nrows());
    }
    let max = m.singular_values().max();
    m.clone()
        .pseudo_inverse(RANK_CUTOFF * max.max(f64::MIN_POSITIVE))
        .expect("nonnegative epsilon")
}

/// A restricted linear system `M z = rhs` solved through a row basis.
struct Restricted {
    /// Selected rows.
    basis: Vec<usize>,
    /// Pseudo-inverse of the selected rows, `cols x basis.len()`.
    pinv: DMatrix<f64>,
    /// Minimum-norm particular solution.
    particular: DVector<f64>,
    /// `ker(M)` as columns.
    kernel: DMatrix<f64>,
    residual: f64,
}

fn solve_restricted(m: &DMatrix<f64>, rhs: &DVector<f64>, preferred: impl Fn(usize) -> bool) -> Restricted {
    let basis = row_basis(m, preferred);
    let sel = m.select_rows(&basis);
    let pinv = pinv(&sel);
    let particular = &pinv * rhs.select_rows(&basis);
    let residual = (m * &particular - rhs).amax();
    let kernel = if basis.len() == m.ncols() { DMatrix::zeros(m.ncols(), 0) } else { linalg::null_space(m) };
    Restricted { basis, pinv, particular, kernel, residual }
}

/// All `d`-subsets of `0..m` in lexicographic order.
fn combinations(m: usize, d: usize, mut visit: impl FnMut(&[usize])) {
    if d > m {
        return;
    }
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        visit(&idx);
        let mut k = d;
        while k > 0 && idx[k - 1] == m - d + k - 1 {
            k -= 1;
        }
        if k == 0 {
            return;
        }
        idx[k - 1] += 1;
        for l in k..d {
            idx[l] = idx[l - 1] + 1;
        }
    }
}

/// Range of `s_0` over `{s : g + G s >= 0}` by vertex enumeration.
fn coordinate_range(g: &DVector<f64>, gm: &DMatrix<f64>) -> Option<(f64, f64)> {
    let d = gm.ncols();
    let m = gm.nrows();
    let scale = 1.0 + g.amax();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    combinations(m, d, |rows| {
        let a = gm.select_rows(rows);
        let Some(s) = a.clone().lu().solve(&(-g.select_rows(rows))) else { return };
        if linalg::rank(&a) < d || s.iter().any(|v| !v.is_finite()) {
            return;
        }
        let z = g + gm * &s;
        if z.iter().all(|&v| v >= -1e-12 * scale) {
            lo = lo.min(s[0]);
            hi = hi.max(s[0]);
        }
    });
    (lo <= hi).then_some((lo, hi))
}

/// Sequential-midpoint representative of `{z0 + H t} ∩ {z > 0}`: free
/// coordinates are chosen in index order and each is set to the midpoint of
/// its feasible interval given the ones before it.
fn family_representative(z0: &DVector<f64>, h: &DMatrix<f64>) -> Result<DVector<f64>, Rejection> {
    let k = h.ncols();
    if k == 0 {
        return Ok(z0.clone());
    }
    if k > MAX_FAMILY_DIM {
        return Err(Rejection::FamilyTooLarge(k));
    }
    let free = row_basis(h, |_| true);
    if free.len() != k {
        return Err(Rejection::EmptyFamily);
    }
    let hf = h.select_rows(&free);
    let hf_inv = hf.try_inverse().ok_or(Rejection::EmptyFamily)?;
    // z = g + G s with z_free = s.
    let gm = h * hf_inv;
    let mut g = z0 - &gm * z0.select_rows(&free);
    let mut gm = gm;
    for _ in 0..k {
        let (lo, hi) = coordinate_range(&g, &gm).ok_or(Rejection::EmptyFamily)?;
        if hi - lo <= 1e-12 * (1.0 + hi.abs()) {
            return Err(Rejection::EmptyFamily);
        }
        let s = 0.5 * (lo + hi);
        g += gm.column(0) * s;
        gm = gm.remove_column(0);
    }
    Ok(g)
}

fn label(prefix: char, i: usize) -> String {
    format!("{prefix}{}", i + 1)
}

fn check_positive(values: &DVector<f64>, support: &[usize], prefix: char) -> Result<(), Rejection> {
    for (k, &v) in values.iter().enumerate() {
        if !(v > POSITIVITY_TOL) {
            return Err(Rejection::NonPositive { variable: label(prefix, support[k]), value: v });
        }
    }
    Ok(())
}

/// Solves the reduced stationarity equations on `support`.
///
/// Over-determined systems must be consistent to [`CONSISTENCY_TOL`]; each
/// consistency requirement is recorded as an equality condition. Families of
/// solutions are represented by their sequential midpoint.
pub fn solve_support(model: &CrnModel, support: &SupportPattern) -> Result<FixedPointSolution, Rejection> {
    let net = model.network();
    let params = model.params();
    let n = model.n();
    if let Some(max) = support.max_index() {
        if max >= n {
            return Err(Rejection::DimensionMismatch { index: max, n });
        }
    }
    let (set_i, set_j) = (support.antigens(), support.antibodies());
    if set_i.is_empty() && set_j.is_empty() {
        return Err(Rejection::EmptySupport);
    }
    // r_j needs stimulation from some x_i with v_ij > 0, and x_i needs some
    // r_j with u_ji > 0 to balance its growth.
    for &j in set_j {
        if !set_i.iter().any(|&i| i == j || net.has_edge(i, j)) {
            return Err(Rejection::Unsustainable { variable: label('r', j) });
        }
    }
    for &i in set_i {
        if !set_j.iter().any(|&j| j == i || net.has_edge(i, j)) {
            return Err(Rejection::Unsustainable { variable: label('x', i) });
        }
    }

    let mut conditions = Vec::new();

    // Antibody levels.
    let mr = antibody_matrix(net, params.beta, set_i, set_j);
    let f_rhs = DVector::from_iterator(set_i.len(), set_i.iter().map(|&i| params.f[i] / params.p));
    let rs = solve_restricted(&mr, &f_rhs, |k| support.contains_antibody(set_i[k]));
    if rs.residual > CONSISTENCY_TOL {
        return Err(Rejection::InconsistentAntibodySystem { residual: rs.residual });
    }
    for k in (0..set_i.len()).filter(|k| !rs.basis.contains(k)) {
        // f_k - sum_l M[k,l] r_l p = 0 with r = pinv f_basis / p.
        let mut coeffs = vec![0.0; n];
        coeffs[set_i[k]] += 1.0;
        let w = mr.row(k) * &rs.pinv;
        for (q, &b) in rs.basis.iter().enumerate() {
            coeffs[set_i[b]] -= w[q];
        }
        if let Some(c) = Condition::linear(coeffs, Relation::Equal, format!("consistency of row {}", set_i[k] + 1)) {
            conditions.push(c);
        }
    }
    let r_support = if rs.kernel.ncols() == 0 {
        check_positive(&rs.particular, set_j, 'r')?;
        for (l, &j) in set_j.iter().enumerate() {
            let mut coeffs = vec![0.0; n];
            for (q, &b) in rs.basis.iter().enumerate() {
                coeffs[set_i[b]] += rs.pinv[(l, q)];
            }
            // Only forms with a negative coefficient can fail.
            if let Some(c) = Condition::linear(coeffs, Relation::Greater, label('r', j)) {
                if matches!(&c, Condition::LinearInF { coefficients, .. } if coefficients.iter().any(|&v| v < 0.0)) {
                    conditions.push(c);
                }
            }
        }
        rs.particular.clone()
    } else {
        let r = family_representative(&rs.particular, &rs.kernel)?;
        check_positive(&r, set_j, 'r')?;
        r
    };
    let mut r = vec![0.0; n];
    for (l, &j) in set_j.iter().enumerate() {
        r[j] = r_support[l];
    }

    // Antigen levels through y_i = delta_i x_i.
    let denominators = model.stimulation_denominators(&r);
    let delta: Vec<Option<f64>> = denominators.iter().map(|&s| (s > 0.0).then(|| 1.0 / s)).collect();
    for &i in set_i {
        if delta[i].is_none() {
            return Err(Rejection::UndefinedDelta(i));
        }
    }
    let bc = params.b / params.c;
    let my = antigen_matrix(net, params.alpha, set_j, set_i);
    let ones = DVector::from_element(set_j.len(), bc);
    let ys = solve_restricted(&my, &ones, |k| support.contains_antigen(set_j[k]));
    if ys.residual > CONSISTENCY_TOL {
        return Err(Rejection::InconsistentAntigenSystem { residual: ys.residual });
    }
    let structural = ys.basis.len() == set_j.len() || alpha_structurally_consistent(net, support);
    if !structural {
        conditions.push(Condition::AlphaEquals { alpha: params.alpha, source: "antigen consistency".into() });
    }
    let y = if ys.kernel.ncols() == 0 {
        check_positive(&ys.particular, set_i, 'x')?;
        if structural {
            conditions.extend(alpha_ranges(net, support, params.alpha));
        }
        ys.particular.clone()
    } else {
        let y = family_representative(&ys.particular, &ys.kernel)?;
        check_positive(&y, set_i, 'x')?;
        y
    };
    let mut x = vec![0.0; n];
    for (k, &i) in set_i.iter().enumerate() {
        x[i] = y[k] * denominators[i];
    }

    let state = SystemState { x, r };
    let residual = model.residual(&state);
    if !(residual < RESIDUAL_TOL) {
        return Err(Rejection::Residual(residual));
    }
    let labels = classify_state(&state, POSITIVITY_TOL);
    let group = group_of(&labels, &conditions);
    let family = (rs.kernel.ncols() + ys.kernel.ncols() > 0)
        .then_some(FamilyDims { antibody: rs.kernel.ncols(), antigen: ys.kernel.ncols() });
    Ok(FixedPointSolution {
        state,
        support: support.clone(),
        labels,
        residual,
        conditions,
        group,
        delta,
        family,
    })
}

/// Antigen solution at `alpha`, or `None` if inconsistent or not unique.
fn antigen_solution(net: &CrNetwork, support: &SupportPattern, alpha: f64) -> Option<DVector<f64>> {
    let my = antigen_matrix(net, alpha, support.antibodies(), support.antigens());
    let ones = DVector::from_element(support.antibodies().len(), 1.0);
    if my.is_square() {
        if let Some(y) = my.clone().lu().solve(&ones) {
            if y.iter().all(|v| v.is_finite()) && (&my * &y - &ones).amax() <= CONSISTENCY_TOL {
                return Some(y);
            }
        }
    }
    let s = solve_restricted(&my, &ones, |k| support.contains_antigen(support.antibodies()[k]));
    (s.residual <= CONSISTENCY_TOL && s.kernel.ncols() == 0).then_some(s.particular)
}

/// True when the antigen system is consistent for every `alpha`, judged at
/// two unrelated probe values.
fn alpha_structurally_consistent(net: &CrNetwork, support: &SupportPattern) -> bool {
    [0.314_159_265, 0.718_281_828].iter().all(|&a| {
        let my = antigen_matrix(net, a, support.antibodies(), support.antigens());
        let ones = DVector::from_element(support.antibodies().len(), 1.0);
        let s = solve_restricted(&my, &ones, |_| true);
        s.residual <= CONSISTENCY_TOL
    })
}

const ALPHA_GRID: usize = 400;

/// For every antigen whose sign changes somewhere in `(0, 1)`, the maximal
/// `alpha` interval around `alpha0` on which it stays positive.
fn alpha_ranges(net: &CrNetwork, support: &SupportPattern, alpha0: f64) -> Vec<Condition> {
    let set_i = support.antigens();
    let grid: Vec<f64> = (1..ALPHA_GRID).map(|t| t as f64 / ALPHA_GRID as f64).collect();
    let on_grid: Vec<Option<DVector<f64>>> = grid.iter().map(|&a| antigen_solution(net, support, a)).collect();
    let mut out = Vec::new();
    for (k, &i) in set_i.iter().enumerate() {
        let positive = |y: &Option<DVector<f64>>| y.as_ref().map(|y| y[k] > 0.0);
        if on_grid.iter().all(|y| positive(y) != Some(false)) {
            continue;
        }
        let boundary = |inside: f64, outside: f64| {
            let (mut a, mut b) = (inside, outside);
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                if positive(&antigen_solution(net, support, m)) == Some(true) {
                    a = m;
                } else {
                    b = m;
                }
            }
            0.5 * (a + b)
        };
        let not_positive = |t: usize| positive(&on_grid[t]) != Some(true);
        let below = (0..grid.len()).rev().find(|&t| grid[t] < alpha0 && not_positive(t));
        let above = (0..grid.len()).find(|&t| grid[t] > alpha0 && not_positive(t));
        let lower = below.map_or(0.0, |t| boundary(alpha0, grid[t]));
        let upper = above.map_or(1.0, |t| boundary(alpha0, grid[t]));
        out.push(Condition::AlphaRange { lower, upper, source: label('x', i) });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed_points::{Group, NodeLabel};
    use crate::params::ModelParameters;

    fn model(n: usize, edges: &[(usize, usize)], f: Vec<f64>, b: f64, alpha: f64, beta: f64) -> CrnModel {
        let net = CrNetwork::from_one_based(n, edges).unwrap();
        CrnModel::new(net, ModelParameters::unit_pc(f, b, alpha, beta).unwrap()).unwrap()
    }

    fn support(i: &[usize], j: &[usize]) -> SupportPattern {
        SupportPattern::from_one_based(i, j).unwrap()
    }

    #[test]
    fn asymmetric_pair_li_point() {
        let (b, alpha, beta) = (1.3, 2.0 / 3.0, 4.0 / 9.0);
        let m = model(2, &[(1, 2)], vec![0.7, 2.0], b, alpha, beta);
        let s = solve_support(&m, &support(&[1], &[2])).unwrap();
        assert!((s.state.x[0] - b * 0.7 / beta).abs() < 1e-12);
        assert!((s.state.r[1] - 0.7 / beta).abs() < 1e-12);
        assert_eq!(s.state.x[1], 0.0);
        assert_eq!(s.labels, vec![NodeLabel::Persistent, NodeLabel::Altruistic]);
        assert_eq!(s.group, Group::A);
        assert!(s.conditions.is_empty());
    }

    #[test]
    fn branch_cycle_f1_branch_records_inequality() {
        let (alpha, beta) = (2.0 / 3.0, 4.0 / 9.0);
        let f = vec![4.0, 2.0, 1.0];
        let m = model(3, &[(1, 2), (2, 3), (3, 2)], f.clone(), 1.0, alpha, beta);
        let s = solve_support(&m, &support(&[1, 3], &[1, 2])).unwrap();
        let x1 = f[0] - f[2] + alpha / beta * f[2];
        let x3 = f[2] * (1.0 - alpha) / beta;
        assert!((s.state.x[0] - x1).abs() < 1e-12 && (s.state.x[2] - x3).abs() < 1e-12);
        assert!((s.state.r[0] - 3.0).abs() < 1e-12 && (s.state.r[1] - f[2] / beta).abs() < 1e-12);
        assert_eq!(s.group, Group::B);
        assert_eq!(s.conditions.len(), 1);
        assert_eq!(s.conditions[0].render(beta), "f1 > f3");
        // Fails when the inequality is reversed.
        let m = model(3, &[(1, 2), (2, 3), (3, 2)], vec![1.0, 2.0, 4.0], 1.0, alpha, beta);
        assert!(matches!(
            solve_support(&m, &support(&[1, 3], &[1, 2])),
            Err(Rejection::NonPositive { .. })
        ));
    }

    #[test]
    fn t_shape_alpha_condition() {
        let m = model(4, &[(2, 1), (3, 1), (4, 1)], vec![1.0, 1.0, 2.0, 2.0], 1.0, 0.4, 0.16);
        let s = solve_support(&m, &support(&[2, 3, 4], &[1, 3, 4])).unwrap();
        assert!((s.state.x[1] - 1.0 * (1.0 - 0.8) / 0.16).abs() < 1e-12);
        assert!((s.state.r[0] - 1.0 / 0.16).abs() < 1e-12);
        let alpha_cond = s.conditions.iter().find(|c| matches!(c, Condition::AlphaRange { .. })).unwrap();
        assert_eq!(alpha_cond.render(0.16), "α < 0.5");
        let rendered: Vec<String> = s.conditions.iter().map(|c| c.render(0.16)).collect();
        assert!(rendered.contains(&"f3 > f2".to_string()), "{rendered:?}");
        assert!(rendered.contains(&"f4 > f2".to_string()), "{rendered:?}");
        assert_eq!(s.group, Group::B);
    }

    #[test]
    fn tuned_equality_gives_family_and_group_c() {
        let beta = 4.0 / 9.0;
        let f2 = 1.5;
        let m = model(2, &[(1, 2)], vec![beta * f2, f2], 1.0, 2.0 / 3.0, beta);
        let s = solve_support(&m, &support(&[1, 2], &[2])).unwrap();
        assert_eq!(s.group, Group::C);
        assert_eq!(s.family, Some(FamilyDims { antibody: 0, antigen: 1 }));
        assert_eq!(s.conditions[0].render(beta), "f1 = β·f2");
        // y2 + alpha y1 = b/c with y1 = x1 / (alpha r2), y2 = x2 / r2: midpoint of the segment.
        let r2 = f2;
        assert!((s.state.x[0] - 0.5 * r2).abs() < 1e-12);
        assert!((s.state.x[1] - 0.5 * r2).abs() < 1e-12);

        let m = model(2, &[(1, 2)], vec![beta * f2 + 1e-6, f2], 1.0, 2.0 / 3.0, beta);
        assert!(matches!(
            solve_support(&m, &support(&[1, 2], &[2])),
            Err(Rejection::InconsistentAntibodySystem { .. })
        ));
    }

    #[test]
    fn structural_rejections() {
        let m = model(2, &[(1, 2)], vec![1.0, 1.0], 1.0, 0.5, 0.25);
        assert_eq!(solve_support(&m, &support(&[], &[])), Err(Rejection::EmptySupport));
        assert!(matches!(
            solve_support(&m, &support(&[2], &[1])),
            Err(Rejection::Unsustainable { .. })
        ));
        assert!(matches!(
            solve_support(&m, &support(&[3], &[3])),
            Err(Rejection::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn combinations_visit_all_subsets() {
        let mut seen = Vec::new();
        combinations(4, 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.first().unwrap(), &vec![0, 1]);
        assert_eq!(seen.last().unwrap(), &vec![2, 3]);
    }

    #[test]
    fn two_dimensional_family_midpoint_is_interior() {
        // z1 + z2 + z3 = 3: the simplex, sequential midpoint (1.5, 0.75, 0.75).
        let z0 = DVector::from_vec(vec![1.0, 1.0, 1.0]);
        let h = linalg::null_space(&DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]));
        let z = family_representative(&z0, &h).unwrap();
        assert!((z[0] - 1.5).abs() < 1e-12 && (z[1] - 0.75).abs() < 1e-12 && (z[2] - 0.75).abs() < 1e-12);
    }
}
