//! Profile of the split empirical-likelihood ratio over a common
//! coefficient.
//!
//! The ratio at split `k` and coefficient `beta` decomposes into two
//! independent inner solves on the observation blocks `1..k` and `k+1..n`.
//! Because the moment vectors depend on `beta` only through the residual
//! signs, the ratio is piecewise constant in `beta`: for p = 1 the sign
//! vector changes only at the breakpoints `y_t / y_{t-1}`, so evaluating at
//! every breakpoint, the midpoints of consecutive breakpoints and two outer
//! points covers every attainable value. Inner solves are memoized by
//! `(block, sign vector)` since distinct coefficients often induce the same
//! signs on a block.

use std::collections::HashMap;

use dashmap::DashMap;

use crate::el::inner::{self, GELRho, MomentBlock};
use crate::error::{Error, Result};
use crate::moment::MomentPanel;
use crate::seed::rng_for;
use crate::series::Series;

/// Profile result at one split.
#[derive(Clone, Debug)]
pub struct SplitProfile {
    pub k: usize,
    pub beta_hat: Vec<f64>,
    /// `P_{n,k}`: the split ratio minimized over the candidate coefficients.
    pub p_value_nk: f64,
    pub lambda_hat: Vec<f64>,
    pub eta_hat: Vec<f64>,
    pub candidates_evaluated: usize,
}

#[derive(Clone, Debug)]
struct BlockSolve {
    value: f64,
    lambda: Vec<f64>,
    converged: bool,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct BlockKey {
    start: u32,
    end: u32,
    signs: Box<[u64]>,
}

/// Memo of inner solves keyed by block extent and the residual-sign vector
/// restricted to the block. Safe for concurrent insert-or-get; entries are
/// pure functions of the key, so racing threads store identical values.
pub struct SolveCache {
    map: DashMap<BlockKey, BlockSolve>,
}

impl SolveCache {
    pub fn new() -> Self {
        SolveCache {
            map: DashMap::new(),
        }
    }
}

impl Default for SolveCache {
    fn default() -> Self {
        Self::new()
    }
}

fn pack_signs(panel: &MomentPanel, beta: &[f64]) -> Vec<u64> {
    let n = panel.n();
    let mut bits = vec![0u64; n.div_ceil(64)];
    for idx in 0..n {
        if panel.sign_at(idx, beta) {
            bits[idx / 64] |= 1u64 << (idx % 64);
        }
    }
    bits
}

/// Bits `[start, end)` of `bits`, realigned to offset zero.
fn extract_range(bits: &[u64], start: usize, end: usize) -> Box<[u64]> {
    let len = end - start;
    let words = len.div_ceil(64);
    let mut out = vec![0u64; words];
    let word_off = start / 64;
    let bit_off = start % 64;
    for (i, slot) in out.iter_mut().enumerate() {
        let lo = bits.get(word_off + i).copied().unwrap_or(0) >> bit_off;
        let hi = if bit_off == 0 {
            0
        } else {
            bits.get(word_off + i + 1).copied().unwrap_or(0) << (64 - bit_off)
        };
        *slot = lo | hi;
    }
    let tail = len % 64;
    if tail != 0 {
        out[words - 1] &= (1u64 << tail) - 1;
    }
    out.into_boxed_slice()
}

fn bit_at(bits: &[u64], idx: usize) -> bool {
    bits[idx / 64] & (1u64 << (idx % 64)) != 0
}

/// Solves one block, materializing the signed moment scalars/vectors into
/// `scratch`.
fn solve_block(
    panel: &MomentPanel,
    start: usize,
    end: usize,
    bits: &[u64],
    scratch: &mut Vec<f64>,
) -> BlockSolve {
    let m = panel.m();
    scratch.clear();
    for idx in start..end {
        let factor = panel.psi(bit_at(bits, idx));
        for a in panel.a_star_row(idx + 1) {
            scratch.push(factor * a);
        }
    }
    let block = MomentBlock::new(scratch, m).expect("scratch is a multiple of m");
    let sol = inner::solve_with_trace(&block, &GELRho::LogEl, inner::DEFAULT_TOL_GRAD, false).0;
    BlockSolve {
        value: sol.value,
        lambda: sol.lambda,
        converged: sol.converged,
    }
}

fn solve_block_cached(
    panel: &MomentPanel,
    start: usize,
    end: usize,
    bits: &[u64],
    cache: &SolveCache,
    scratch: &mut Vec<f64>,
) -> BlockSolve {
    let key = BlockKey {
        start: start as u32,
        end: end as u32,
        signs: extract_range(bits, start, end),
    };
    if let Some(hit) = cache.map.get(&key) {
        return hit.clone();
    }
    let solve = solve_block(panel, start, end, bits, scratch);
    cache.map.insert(key, solve.clone());
    solve
}

struct SplitEval {
    value: f64,
    lambda: Vec<f64>,
    eta: Vec<f64>,
    converged: bool,
}

fn eval_split(
    panel: &MomentPanel,
    k: usize,
    bits: &[u64],
    cache: &SolveCache,
    scratch: &mut Vec<f64>,
) -> SplitEval {
    let n = panel.n();
    let first = solve_block_cached(panel, 0, k, bits, cache, scratch);
    let second = solve_block_cached(panel, k, n, bits, cache, scratch);
    SplitEval {
        value: first.value + second.value,
        lambda: first.lambda,
        eta: second.lambda,
        converged: first.converged && second.converged,
    }
}

/// `l_{n,k}(beta, beta)` together with the two block multipliers.
pub fn el_ratio_at(panel: &MomentPanel, k: usize, beta: &[f64]) -> Result<(f64, Vec<f64>, Vec<f64>)> {
    let n = panel.n();
    if !(1..n).contains(&k) {
        return Err(Error::invalid(format!(
            "split k = {k} outside 1..={}",
            n - 1
        )));
    }
    if beta.len() != panel.p() {
        return Err(Error::invalid(format!(
            "beta has length {}, expected p = {}",
            beta.len(),
            panel.p()
        )));
    }
    let bits = pack_signs(panel, beta);
    let mut scratch = Vec::new();
    let first = solve_block(panel, 0, k, &bits, &mut scratch);
    if !first.converged {
        return Err(Error::InnerSolve {
            block: 1,
            iterations: inner::MAX_ITER,
        });
    }
    let second = solve_block(panel, k, n, &bits, &mut scratch);
    if !second.converged {
        return Err(Error::InnerSolve {
            block: 2,
            iterations: inner::MAX_ITER,
        });
    }
    Ok((first.value + second.value, first.lambda, second.lambda))
}

fn push_axis_candidates(breaks: &mut Vec<f64>, out: &mut Vec<f64>) {
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    if breaks.is_empty() {
        out.push(0.0);
        return;
    }
    let lo = breaks[0];
    let hi = breaks[breaks.len() - 1];
    out.push(lo - (1.0 + 1e-6 * lo.abs()));
    for i in 0..breaks.len() {
        out.push(breaks[i]);
        if i + 1 < breaks.len() {
            let mid = 0.5 * (breaks[i] + breaks[i + 1]);
            if mid > breaks[i] && mid < breaks[i + 1] {
                out.push(mid);
            }
        }
    }
    out.push(hi + (1.0 + 1e-6 * hi.abs()));
}

fn candidates_p1(y: &[f64], x: &[f64]) -> Vec<Vec<f64>> {
    let mut breaks: Vec<f64> = y
        .iter()
        .zip(x.iter())
        .filter(|(_, &x)| x != 0.0)
        .map(|(&y, &x)| y / x)
        .collect();
    let mut axis = Vec::new();
    push_axis_candidates(&mut breaks, &mut axis);
    axis.into_iter().map(|b| vec![b]).collect()
}

/// Breakpoints of coordinate `j` with the other coordinates held at `base`.
fn axis_breaks(y: &[f64], x: &[f64], p: usize, base: &[f64], j: usize) -> Vec<f64> {
    let n = y.len();
    let mut breaks = Vec::new();
    for t in 0..n {
        let row = &x[t * p..(t + 1) * p];
        if row[j] == 0.0 {
            continue;
        }
        let mut rest = 0.0;
        for l in 0..p {
            if l != j {
                rest += base[l] * row[l];
            }
        }
        breaks.push((y[t] - rest) / row[j]);
    }
    breaks
}

fn candidates_heuristic(y: &[f64], x: &[f64], p: usize) -> Vec<Vec<f64>> {
    let mut starts: Vec<Vec<f64>> = vec![vec![0.0; p]];
    let mut rng = rng_for(0x7EA5_EA2C_4B1D_90F3, p as u64);
    use rand::Rng;
    for _ in 0..4 {
        starts.push((0..p).map(|_| rng.random_range(-1.0..1.0)).collect());
    }
    let mut out = Vec::new();
    for start in &starts {
        out.push(start.clone());
        for j in 0..p {
            let mut breaks = axis_breaks(y, x, p, start, j);
            let mut axis = Vec::new();
            push_axis_candidates(&mut breaks, &mut axis);
            for b in axis {
                let mut cand = start.clone();
                cand[j] = b;
                out.push(cand);
            }
        }
    }
    out
}

/// Candidate coefficients whose evaluation covers the attainable residual
/// sign configurations. Exact for p = 1; a multi-start per-coordinate
/// enumeration for p >= 2 (refined further inside [`profile_split`]).
pub fn beta_candidates(series: &Series, p: usize) -> Vec<Vec<f64>> {
    let n = series.n();
    let y: Vec<f64> = (1..=n).map(|t| series.y(t as i64)).collect();
    let mut x = Vec::with_capacity(n * p);
    for t in 1..=n {
        x.extend_from_slice(&series.lag_vector(t));
    }
    if p == 1 {
        candidates_p1(&y, &x)
    } else {
        candidates_heuristic(&y, &x, p)
    }
}

fn candidate_betas_from_panel(panel: &MomentPanel) -> Vec<Vec<f64>> {
    let n = panel.n();
    let y: Vec<f64> = (1..=n).map(|t| panel.y_obs(t)).collect();
    let mut x = Vec::with_capacity(n * panel.p());
    for t in 1..=n {
        x.extend_from_slice(panel.lag_row(t));
    }
    if panel.p() == 1 {
        candidates_p1(&y, &x)
    } else {
        candidates_heuristic(&y, &x, panel.p())
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Candidate {
    pub beta: Vec<f64>,
    norm: f64,
    bits: Vec<u64>,
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

/// Deterministic preference between tied candidates: smaller norm, then
/// lexicographically smaller coefficient.
fn preferred(a: &Candidate, b: &Candidate) -> bool {
    a.norm < b.norm || (a.norm == b.norm && lex_less(&a.beta, &b.beta))
}

/// Candidate coefficients with packed sign vectors, deduplicated by sign
/// vector (the ratio is constant on each sign class).
pub(crate) struct CandidateSet {
    pub items: Vec<Candidate>,
}

impl CandidateSet {
    pub fn build(panel: &MomentPanel, betas: &[Vec<f64>]) -> CandidateSet {
        let mut by_signs: HashMap<Vec<u64>, Candidate> = HashMap::new();
        for beta in betas {
            let bits = pack_signs(panel, beta);
            let norm = beta.iter().map(|v| v * v).sum::<f64>().sqrt();
            let cand = Candidate {
                beta: beta.clone(),
                norm,
                bits,
            };
            match by_signs.get_mut(&cand.bits) {
                Some(existing) => {
                    if preferred(&cand, existing) {
                        *existing = cand;
                    }
                }
                None => {
                    by_signs.insert(cand.bits.clone(), cand);
                }
            }
        }
        let mut items: Vec<Candidate> = by_signs.into_values().collect();
        items.sort_by(|a, b| {
            a.norm
                .total_cmp(&b.norm)
                .then_with(|| if lex_less(&a.beta, &b.beta) {
                    std::cmp::Ordering::Less
                } else if lex_less(&b.beta, &a.beta) {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                })
        });
        CandidateSet { items }
    }

    pub fn from_panel(panel: &MomentPanel) -> CandidateSet {
        CandidateSet::build(panel, &candidate_betas_from_panel(panel))
    }

    /// Drops candidates outside `[-bound, bound]^p`, keeping at least one.
    pub fn clamp(&mut self, bound: f64) {
        if self.items.len() <= 1 {
            return;
        }
        let kept: Vec<Candidate> = self
            .items
            .iter()
            .filter(|c| c.beta.iter().all(|v| v.abs() <= bound))
            .cloned()
            .collect();
        if !kept.is_empty() {
            self.items = kept;
        }
    }
}

struct BestCandidate {
    value: f64,
    beta: Vec<f64>,
    norm: f64,
    lambda: Vec<f64>,
    eta: Vec<f64>,
}

fn better(value: f64, norm: f64, beta: &[f64], best: &Option<BestCandidate>) -> bool {
    match best {
        None => true,
        Some(b) => {
            value < b.value
                || (value == b.value
                    && (norm < b.norm || (norm == b.norm && lex_less(beta, &b.beta))))
        }
    }
}

pub(crate) fn profile_split_with(
    panel: &MomentPanel,
    k: usize,
    candidates: &CandidateSet,
    cache: &SolveCache,
) -> Result<SplitProfile> {
    let n = panel.n();
    if !(1..n).contains(&k) {
        return Err(Error::invalid(format!(
            "split k = {k} outside 1..={}",
            n - 1
        )));
    }
    let mut scratch = Vec::new();
    let mut best: Option<BestCandidate> = None;
    let mut evaluated = 0usize;
    let mut failed = 0usize;

    for cand in &candidates.items {
        evaluated += 1;
        let eval = eval_split(panel, k, &cand.bits, cache, &mut scratch);
        if !eval.converged {
            failed += 1;
            continue;
        }
        if better(eval.value, cand.norm, &cand.beta, &best) {
            best = Some(BestCandidate {
                value: eval.value,
                beta: cand.beta.clone(),
                norm: cand.norm,
                lambda: eval.lambda,
                eta: eval.eta,
            });
        }
    }

    // Coordinate refinement for the heuristic p >= 2 path: re-enumerate each
    // axis around the incumbent until no sweep improves it.
    if panel.p() >= 2 {
        let p = panel.p();
        let y: Vec<f64> = (1..=n).map(|t| panel.y_obs(t)).collect();
        let mut x = Vec::with_capacity(n * p);
        for t in 1..=n {
            x.extend_from_slice(panel.lag_row(t));
        }
        for _ in 0..4 {
            let Some(current) = &best else { break };
            let base = current.beta.clone();
            let mut improved = false;
            for j in 0..p {
                let mut breaks = axis_breaks(&y, &x, p, &base, j);
                let mut axis = Vec::new();
                push_axis_candidates(&mut breaks, &mut axis);
                for b in axis {
                    let mut beta = base.clone();
                    beta[j] = b;
                    let bits = pack_signs(panel, &beta);
                    let norm = beta.iter().map(|v| v * v).sum::<f64>().sqrt();
                    evaluated += 1;
                    let eval = eval_split(panel, k, &bits, cache, &mut scratch);
                    if !eval.converged {
                        failed += 1;
                        continue;
                    }
                    if better(eval.value, norm, &beta, &best) {
                        best = Some(BestCandidate {
                            value: eval.value,
                            beta,
                            norm,
                            lambda: eval.lambda,
                            eta: eval.eta,
                        });
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
    }

    match best {
        Some(b) => Ok(SplitProfile {
            k,
            beta_hat: b.beta,
            p_value_nk: b.value,
            lambda_hat: b.lambda,
            eta_hat: b.eta,
            candidates_evaluated: evaluated,
        }),
        None => Err(Error::NoUsableSplit {
            k,
            reason: format!("all {failed} candidate coefficients failed the inner solve"),
        }),
    }
}

/// `P_{n,k}`: the split ratio minimized over the candidate coefficients,
/// with the minimizer and its block multipliers.
pub fn profile_split(panel: &MomentPanel, k: usize) -> Result<SplitProfile> {
    let candidates = CandidateSet::from_panel(panel);
    let cache = SolveCache::new();
    profile_split_with(panel, k, &candidates, &cache)
}
