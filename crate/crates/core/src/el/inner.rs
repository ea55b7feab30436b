//! Inner concave maximization over the Lagrange multiplier of one block.
//!
//! For the empirical-likelihood divergence the block objective is
//! `sum_i log(1 - lambda' g_i)` over the open set where every argument of
//! the logarithm is positive. The generalized family replaces the log with
//! `-rho(lambda' g_i)` for a Cressie-Read divergence `rho`. Both are
//! maximized by damped Newton steps with a halving line search that keeps
//! iterates strictly feasible and never accepts a descent step, so the
//! objective sequence is nondecreasing and the returned value is at least
//! the value 0 attained at `lambda = 0`.

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::error::{Error, Result};

pub const MAX_ITER: usize = 100;
pub const SLACK_FLOOR: f64 = 1e-10;
pub const DEFAULT_TOL_GRAD: f64 = 1e-9;

/// Norm threshold (relative to the block scale) beyond which a multiplier
/// is treated as having run off to infinity, i.e. the supremum is +inf.
const DIVERGENCE_NORM: f64 = 1e9;

/// Divergence choice for the generalized empirical likelihood.
///
/// Both variants are normalized so that `rho(0) = 0` and
/// `rho'(0) = rho''(0) = 1`; the solver maximizes `-sum rho(lambda' g_i)`,
/// which for [`GELRho::LogEl`] is exactly `sum log(1 - lambda' g_i)`.
#[derive(Clone, Debug, PartialEq)]
pub enum GELRho {
    /// `rho(v) = -log(1 - v)`: plain empirical likelihood.
    LogEl,
    /// Cressie-Read family `rho(v) = ((1 + c v)^{(c+1)/c} - 1) / (c + 1)`.
    CressieRead { c: f64 },
}

impl GELRho {
    pub fn validate(&self) -> Result<()> {
        if let GELRho::CressieRead { c } = self {
            if !c.is_finite() || *c == 0.0 || *c == -1.0 {
                return Err(Error::invalid(format!(
                    "Cressie-Read parameter must be finite and different from 0 and -1, got {c}"
                )));
            }
        }
        Ok(())
    }

    pub fn value(&self, v: f64) -> f64 {
        match self {
            GELRho::LogEl => -(1.0 - v).ln(),
            GELRho::CressieRead { c } => ((1.0 + c * v).powf((c + 1.0) / c) - 1.0) / (c + 1.0),
        }
    }

    pub fn d1(&self, v: f64) -> f64 {
        match self {
            GELRho::LogEl => 1.0 / (1.0 - v),
            GELRho::CressieRead { c } => (1.0 + c * v).powf(1.0 / c),
        }
    }

    pub fn d2(&self, v: f64) -> f64 {
        match self {
            GELRho::LogEl => {
                let r = 1.0 / (1.0 - v);
                r * r
            }
            GELRho::CressieRead { c } => (1.0 + c * v).powf((1.0 - c) / c),
        }
    }

    /// Slack of the divergence domain at argument `v`; the iterates must
    /// keep this at or above [`SLACK_FLOOR`].
    fn domain_slack(&self, v: f64) -> f64 {
        match self {
            GELRho::LogEl => 1.0 - v,
            GELRho::CressieRead { c } => 1.0 + c * v,
        }
    }
}

/// Block of moment vectors, row-major with `m` entries per row.
#[derive(Clone, Copy, Debug)]
pub struct MomentBlock<'a> {
    data: &'a [f64],
    m: usize,
}

impl<'a> MomentBlock<'a> {
    pub fn new(data: &'a [f64], m: usize) -> Result<Self> {
        if m == 0 || data.len() % m != 0 {
            return Err(Error::invalid(format!(
                "moment block of {} values is not a multiple of m = {m}",
                data.len()
            )));
        }
        Ok(MomentBlock { data, m })
    }

    /// Scalar block (m = 1).
    pub fn scalar(data: &'a [f64]) -> Self {
        MomentBlock { data, m: 1 }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> usize {
        self.data.len() / self.m
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.m..(i + 1) * self.m]
    }
}

/// Result of one inner multiplier solve.
#[derive(Clone, Debug)]
pub struct ELSolution {
    pub lambda: Vec<f64>,
    /// Attained block objective; `+inf` when the supremum is unbounded.
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    /// `min_i (1 - lambda' g_i)` at the returned multiplier.
    pub min_slack: f64,
    /// The zero vector lies outside the convex hull of the block, so the
    /// empirical-likelihood constraint set is empty and the supremum is
    /// `+inf`.
    pub unbounded: bool,
}

impl ELSolution {
    fn at_zero(m: usize, converged: bool) -> Self {
        ELSolution {
            lambda: vec![0.0; m],
            value: 0.0,
            iterations: 0,
            converged,
            min_slack: 1.0,
            unbounded: false,
        }
    }

    fn unbounded(m: usize) -> Self {
        ELSolution {
            lambda: vec![0.0; m],
            value: f64::INFINITY,
            iterations: 0,
            converged: true,
            min_slack: 1.0,
            unbounded: true,
        }
    }
}

/// Exact feasible region of the multiplier for diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub enum FeasibleRegion {
    /// m = 1: the open interval of feasible multipliers.
    Interval { lo: f64, hi: f64 },
    /// m > 1: a ball around zero guaranteed to be feasible.
    Ball { radius: f64 },
    /// All moment vectors vanish; every multiplier is feasible.
    Unbounded,
}

pub fn feasible_box(block: &MomentBlock<'_>) -> Result<FeasibleRegion> {
    if block.rows() == 0 {
        return Err(Error::invalid("feasible_box on an empty block"));
    }
    if block.m() == 1 {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        let mut any = false;
        for &g in block.data {
            if g > 0.0 {
                hi = hi.min(1.0 / g);
                any = true;
            } else if g < 0.0 {
                lo = lo.max(1.0 / g);
                any = true;
            }
        }
        if !any {
            return Ok(FeasibleRegion::Unbounded);
        }
        Ok(FeasibleRegion::Interval { lo, hi })
    } else {
        let max_norm = (0..block.rows())
            .map(|i| block.row(i).iter().map(|v| v * v).sum::<f64>().sqrt())
            .fold(0.0f64, f64::max);
        if max_norm == 0.0 {
            return Ok(FeasibleRegion::Unbounded);
        }
        Ok(FeasibleRegion::Ball {
            radius: 1.0 / max_norm,
        })
    }
}

/// Maximizes the block objective over the multiplier. Non-convergence is
/// reported through the `converged` flag, not as an error.
pub fn solve_multiplier(
    block: &MomentBlock<'_>,
    rho: &GELRho,
    tol: f64,
) -> Result<ELSolution> {
    rho.validate()?;
    if block.rows() == 0 {
        return Err(Error::invalid("solve_multiplier on an empty block"));
    }
    if block.data.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("non-finite moment vector in block"));
    }
    let (solution, _) = solve_with_trace(block, rho, tol, false);
    Ok(solution)
}

/// Same as [`solve_multiplier`] but records the objective after every
/// accepted step.
pub(crate) fn solve_with_trace(
    block: &MomentBlock<'_>,
    rho: &GELRho,
    tol: f64,
    trace: bool,
) -> (ELSolution, Vec<f64>) {
    if block.m() == 1 {
        solve_scalar(block.data, rho, tol, trace)
    } else {
        solve_vector(block, rho, tol, trace)
    }
}

fn solve_scalar(gs: &[f64], rho: &GELRho, tol: f64, trace: bool) -> (ELSolution, Vec<f64>) {
    let mut log = Vec::new();
    if gs.iter().all(|&g| g == 0.0) {
        return (ELSolution::at_zero(1, true), log);
    }
    // For plain EL a block whose nonzero moments share one sign has an
    // empty constraint set: the objective grows without bound along the
    // feasible half-line.
    if *rho == GELRho::LogEl {
        let pos = gs.iter().any(|&g| g > 0.0);
        let neg = gs.iter().any(|&g| g < 0.0);
        if pos != neg {
            return (ELSolution::unbounded(1), log);
        }
    }

    let objective = |lambda: f64| -> Option<f64> {
        let mut acc = 0.0;
        for &g in gs {
            let v = lambda * g;
            if rho.domain_slack(v) < SLACK_FLOOR {
                return None;
            }
            acc -= rho.value(v);
        }
        Some(acc)
    };

    let mut lambda = 0.0f64;
    let mut f_cur = 0.0f64;
    if trace {
        log.push(f_cur);
    }
    let max_abs_g = gs.iter().fold(0.0f64, |a, &g| a.max(g.abs()));

    for iter in 0..MAX_ITER {
        let mut grad = 0.0;
        let mut curv = 0.0;
        for &g in gs {
            let v = lambda * g;
            grad += rho.d1(v) * g;
            curv += rho.d2(v) * g * g;
        }
        if grad.abs() <= tol {
            return (finish_scalar(gs, lambda, f_cur, iter, true, max_abs_g), log);
        }
        if !(curv > 0.0) {
            // Flat or non-concave spot; bail out as a diagnostic failure.
            return (finish_scalar(gs, lambda, f_cur, iter, false, max_abs_g), log);
        }
        let dir = -grad / curv;
        let mut alpha = 1.0f64;
        let mut stepped = false;
        while alpha >= 1e-16 {
            let cand = lambda + alpha * dir;
            if let Some(f_new) = objective(cand) {
                if f_new >= f_cur {
                    lambda = cand;
                    f_cur = f_new;
                    if trace {
                        log.push(f_cur);
                    }
                    stepped = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if !stepped {
            return (
                finish_scalar(gs, lambda, f_cur, iter + 1, grad.abs() <= tol, max_abs_g),
                log,
            );
        }
    }
    let mut grad = 0.0;
    for &g in gs {
        grad += rho.d1(lambda * g) * g;
    }
    (
        finish_scalar(gs, lambda, f_cur, MAX_ITER, grad.abs() <= tol, max_abs_g),
        log,
    )
}

fn finish_scalar(
    gs: &[f64],
    lambda: f64,
    value: f64,
    iterations: usize,
    converged: bool,
    max_abs_g: f64,
) -> ELSolution {
    let min_slack = gs
        .iter()
        .map(|&g| 1.0 - lambda * g)
        .fold(f64::INFINITY, f64::min);
    // A multiplier far beyond the natural 1/|g| scale means the optimum is
    // at infinity even if the gradient test formally passed.
    if lambda.abs() * max_abs_g > DIVERGENCE_NORM {
        let mut sol = ELSolution::unbounded(1);
        sol.iterations = iterations;
        return sol;
    }
    ELSolution {
        lambda: vec![lambda],
        value,
        iterations,
        converged,
        min_slack,
        unbounded: false,
    }
}

fn solve_vector(
    block: &MomentBlock<'_>,
    rho: &GELRho,
    tol: f64,
    trace: bool,
) -> (ELSolution, Vec<f64>) {
    let m = block.m();
    let rows = block.rows();
    let mut log = Vec::new();
    if block.data.iter().all(|&g| g == 0.0) {
        return (ELSolution::at_zero(m, true), log);
    }

    let objective = |lambda: &DVector<f64>| -> Option<f64> {
        let mut acc = 0.0;
        for i in 0..rows {
            let v = dot(block.row(i), lambda.as_slice());
            if rho.domain_slack(v) < SLACK_FLOOR {
                return None;
            }
            acc -= rho.value(v);
        }
        Some(acc)
    };

    let max_norm = (0..rows)
        .map(|i| block.row(i).iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0f64, f64::max);

    let mut lambda: DVector<f64> = DVector::zeros(m);
    let mut f_cur = 0.0f64;
    if trace {
        log.push(f_cur);
    }

    for iter in 0..MAX_ITER {
        let mut grad: DVector<f64> = DVector::zeros(m);
        let mut hess: DMatrix<f64> = DMatrix::zeros(m, m);
        for i in 0..rows {
            let row = block.row(i);
            let v = dot(row, lambda.as_slice());
            let d1 = rho.d1(v);
            let d2 = rho.d2(v);
            for a in 0..m {
                grad[a] += d1 * row[a];
                for b in a..m {
                    hess[(a, b)] += d2 * row[a] * row[b];
                }
            }
        }
        for a in 0..m {
            for b in 0..a {
                hess[(a, b)] = hess[(b, a)];
            }
        }
        if grad.norm() <= tol {
            return (finish_vector(block, lambda, f_cur, iter, true, max_norm), log);
        }
        let dir = match Cholesky::new(hess) {
            Some(chol) => -chol.solve(&grad),
            // Rank-deficient curvature: fall back to plain gradient ascent.
            None => -grad.clone(),
        };
        let mut alpha = 1.0f64;
        let mut stepped = false;
        while alpha >= 1e-16 {
            let cand = &lambda + alpha * &dir;
            if let Some(f_new) = objective(&cand) {
                if f_new >= f_cur {
                    lambda = cand;
                    f_cur = f_new;
                    if trace {
                        log.push(f_cur);
                    }
                    stepped = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if !stepped {
            return (
                finish_vector(block, lambda, f_cur, iter + 1, false, max_norm),
                log,
            );
        }
    }
    let mut grad: DVector<f64> = DVector::zeros(m);
    for i in 0..rows {
        let row = block.row(i);
        let d1 = rho.d1(dot(row, lambda.as_slice()));
        for a in 0..m {
            grad[a] += d1 * row[a];
        }
    }
    let ok = grad.norm() <= tol;
    (
        finish_vector(block, lambda, f_cur, MAX_ITER, ok, max_norm),
        log,
    )
}

fn finish_vector(
    block: &MomentBlock<'_>,
    lambda: DVector<f64>,
    value: f64,
    iterations: usize,
    converged: bool,
    max_norm: f64,
) -> ELSolution {
    let m = block.m();
    let min_slack = (0..block.rows())
        .map(|i| 1.0 - dot(block.row(i), lambda.as_slice()))
        .fold(f64::INFINITY, f64::min);
    if lambda.norm() * max_norm > DIVERGENCE_NORM {
        let mut sol = ELSolution::unbounded(m);
        sol.iterations = iterations;
        return sol;
    }
    ELSolution {
        lambda: lambda.as_slice().to_vec(),
        value,
        iterations,
        converged,
        min_slack,
        unbounded: false,
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..a.len() {
        acc += a[i] * b[i];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn solve1(gs: &[f64]) -> ELSolution {
        solve_multiplier(&MomentBlock::scalar(gs), &GELRho::LogEl, DEFAULT_TOL_GRAD).unwrap()
    }

    /// Grid-search oracle over the feasible interval for m = 1.
    ///
    /// The objective is concave, so a coarse pass brackets the optimum and
    /// the fine pass at the requested step is equivalent to scanning the
    /// whole interval at that step.
    fn grid_oracle(gs: &[f64], rho: &GELRho, step: f64) -> f64 {
        let eval = |lambda: f64| -> f64 {
            let mut acc = 0.0;
            for &g in gs {
                let v = lambda * g;
                if rho.domain_slack(v) < SLACK_FLOOR {
                    return f64::NEG_INFINITY;
                }
                acc -= rho.value(v);
            }
            acc
        };
        // Bracket the interval: for log-EL it is the exact feasibility
        // interval, for Cressie-Read the domain is cut by 1 + c v > 0.
        let mut lo = -1e3f64;
        let mut hi = 1e3f64;
        for &g in gs {
            if g == 0.0 {
                continue;
            }
            match rho {
                GELRho::LogEl => {
                    if g > 0.0 {
                        hi = hi.min(1.0 / g);
                    } else {
                        lo = lo.max(1.0 / g);
                    }
                }
                GELRho::CressieRead { c } => {
                    let bound = -1.0 / (c * g);
                    if c * g > 0.0 {
                        lo = lo.max(bound);
                    } else {
                        hi = hi.min(bound);
                    }
                }
            }
        }
        let coarse = step.max(1e-4) * 10.0;
        let mut best = f64::NEG_INFINITY;
        let mut best_l = 0.0;
        let mut l = lo;
        while l <= hi {
            let f = eval(l);
            if f > best {
                best = f;
                best_l = l;
            }
            l += coarse;
        }
        let f_lo = (best_l - coarse).max(lo);
        let f_hi = (best_l + coarse).min(hi);
        let mut l = f_lo;
        while l <= f_hi {
            let f = eval(l);
            if f > best {
                best = f;
            }
            l += step;
        }
        best.max(0.0)
    }

    #[test]
    fn zero_block_is_trivial() {
        let sol = solve1(&[0.0, 0.0, 0.0]);
        assert!(sol.converged);
        assert_eq!(sol.lambda, vec![0.0]);
        assert_eq!(sol.value, 0.0);
        assert_eq!(sol.iterations, 0);
    }

    #[test]
    fn symmetric_block_stays_at_zero_exactly() {
        let sol = solve1(&[1.0, -1.0]);
        assert!(sol.converged);
        assert_eq!(sol.lambda, vec![0.0]);
        assert_eq!(sol.value, 0.0);
    }

    #[test]
    fn closed_form_two_one_minus_one() {
        let sol = solve1(&[1.0, 1.0, -1.0]);
        assert!(sol.converged);
        let expect = 2.0 * (4.0f64 / 3.0).ln() + (2.0f64 / 3.0).ln();
        assert!((sol.lambda[0] + 1.0 / 3.0).abs() < 1e-9);
        assert!((sol.value - expect).abs() < 1e-8);
        assert!((sol.value - 0.169899).abs() < 1e-6);
        assert!(sol.min_slack > 0.0);
    }

    #[test]
    fn one_sided_block_is_unbounded() {
        let sol = solve1(&[1.0, 2.0]);
        assert!(sol.unbounded);
        assert!(sol.value.is_infinite());
        // A single nonzero moment behaves the same way.
        let sol = solve1(&[0.0, 0.5]);
        assert!(sol.unbounded);
    }

    #[test]
    fn scalar_oracle_agreement_small_blocks() {
        let mut rng = crate::seed::rng_for(7, 0);
        use rand::Rng;
        for _ in 0..50 {
            let len = rng.random_range(2..=8usize);
            let gs: Vec<f64> = (0..len)
                .map(|_| {
                    let mag = rng.random_range(0.25..1.0);
                    if rng.random_bool(0.5) {
                        mag
                    } else {
                        -mag
                    }
                })
                .collect();
            if gs.iter().all(|&g| g > 0.0) || gs.iter().all(|&g| g < 0.0) {
                continue;
            }
            let sol = solve1(&gs);
            assert!(sol.converged, "no convergence on {gs:?}");
            let oracle = grid_oracle(&gs, &GELRho::LogEl, 1e-6);
            assert!(
                (sol.value - oracle).abs() < 1e-6,
                "solver {} vs oracle {oracle} on {gs:?}",
                sol.value
            );
        }
    }

    #[test]
    fn cressie_read_matches_oracle() {
        let blocks: [&[f64]; 3] = [
            &[0.5, -0.25, 0.75, -0.5],
            &[1.0, 1.0, -1.0],
            &[0.3, -0.8, 0.2, 0.9, -0.4],
        ];
        for c in [-0.5, 0.5, 1.0] {
            let rho = GELRho::CressieRead { c };
            for gs in blocks {
                let sol =
                    solve_multiplier(&MomentBlock::scalar(gs), &rho, DEFAULT_TOL_GRAD).unwrap();
                assert!(sol.converged, "no convergence at c = {c} on {gs:?}");
                let oracle = grid_oracle(&gs, &rho, 1e-6);
                assert!(
                    (sol.value - oracle).abs() < 1e-6,
                    "c = {c}: solver {} vs oracle {oracle} on {gs:?}",
                    sol.value
                );
            }
        }
    }

    #[test]
    fn rho_normalization_at_zero() {
        let h = 1e-5;
        for rho in [
            GELRho::LogEl,
            GELRho::CressieRead { c: -0.5 },
            GELRho::CressieRead { c: 0.5 },
            GELRho::CressieRead { c: 1.0 },
        ] {
            assert_eq!(rho.value(0.0), 0.0);
            let d1 = (rho.value(h) - rho.value(-h)) / (2.0 * h);
            let d2 = (rho.value(h) - 2.0 * rho.value(0.0) + rho.value(-h)) / (h * h);
            assert!((d1 - 1.0).abs() < 1e-6, "{rho:?}: rho'(0) = {d1}");
            assert!((d2 - 1.0).abs() < 1e-4, "{rho:?}: rho''(0) = {d2}");
            assert!((rho.d1(0.0) - 1.0).abs() < 1e-12);
            assert!((rho.d2(0.0) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gel_log_el_is_the_el_path_bitwise() {
        let gs = [0.6, -0.4, 0.2, -0.9, 0.3];
        let a = solve_multiplier(&MomentBlock::scalar(&gs), &GELRho::LogEl, 1e-9).unwrap();
        let b = solve_multiplier(&MomentBlock::scalar(&gs), &GELRho::LogEl, 1e-9).unwrap();
        assert_eq!(a.lambda, b.lambda);
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn vector_path_matches_scalar_on_embedded_block() {
        // Same block solved as m = 1 and as m = 2 with a zero second
        // coordinate must attain the same value.
        let gs = [0.6, -0.4, 0.2, -0.9];
        let mut wide = Vec::new();
        for &g in &gs {
            wide.extend_from_slice(&[g, 0.0]);
        }
        let a = solve1(&gs);
        let b = solve_multiplier(
            &MomentBlock::new(&wide, 2).unwrap(),
            &GELRho::LogEl,
            DEFAULT_TOL_GRAD,
        )
        .unwrap();
        assert!(b.converged);
        assert!((a.value - b.value).abs() < 1e-9);
        assert!((a.lambda[0] - b.lambda[0]).abs() < 1e-6);
    }

    #[test]
    fn monotone_ascent_along_iterations() {
        let gs = [0.9, -0.7, 0.8, -0.2, 0.5, 0.6, -0.9];
        let (_, trace) = solve_with_trace(
            &MomentBlock::scalar(&gs),
            &GELRho::LogEl,
            DEFAULT_TOL_GRAD,
            true,
        );
        assert!(trace.len() > 1);
        for w in trace.windows(2) {
            assert!(w[1] >= w[0], "objective decreased: {trace:?}");
        }
    }

    #[test]
    fn feasible_box_examples() {
        let region = feasible_box(&MomentBlock::scalar(&[2.0, -1.0])).unwrap();
        assert_eq!(
            region,
            FeasibleRegion::Interval { lo: -1.0, hi: 0.5 }
        );
        let region = feasible_box(&MomentBlock::scalar(&[0.0])).unwrap();
        assert_eq!(region, FeasibleRegion::Unbounded);
        let data = [3.0, 0.0, 0.0, 4.0];
        let region = feasible_box(&MomentBlock::new(&data, 2).unwrap()).unwrap();
        match region {
            FeasibleRegion::Ball { radius } => assert!((radius - 0.25).abs() < 1e-15),
            other => panic!("expected ball, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(solve_multiplier(&MomentBlock::scalar(&[]), &GELRho::LogEl, 1e-9).is_err());
        assert!(
            solve_multiplier(&MomentBlock::scalar(&[f64::NAN]), &GELRho::LogEl, 1e-9).is_err()
        );
        assert!(GELRho::CressieRead { c: 0.0 }.validate().is_err());
        assert!(GELRho::CressieRead { c: -1.0 }.validate().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn scaling_the_block_rescales_the_multiplier(
            raw in proptest::collection::vec(-1.0f64..1.0, 3..10),
            alpha in 0.1f64..10.0,
        ) {
            let mut gs = raw;
            gs.push(0.5);
            gs.push(-0.5);
            let scaled: Vec<f64> = gs.iter().map(|g| alpha * g).collect();
            let a = solve1(&gs);
            let b = solve1(&scaled);
            prop_assume!(a.converged && b.converged && !a.unbounded);
            prop_assert!((a.value - b.value).abs() < 1e-9);
            prop_assert!((a.lambda[0] - alpha * b.lambda[0]).abs() < 1e-6);
        }

        #[test]
        fn value_is_nonnegative(raw in proptest::collection::vec(-2.0f64..2.0, 1..12)) {
            let sol = solve1(&raw);
            prop_assert!(sol.value >= 0.0);
        }
    }
}
