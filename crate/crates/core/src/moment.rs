//! Self-weights, instruments and the signed moment vectors.
//!
//! For each usable observation the panel stores the weighted instrument
//! `a*(X_{t-1}) = w_{t-1} a(X_{t-1})`. The moment vector at coefficient
//! `beta` is `{tau - I(y_t - X_{t-1}'beta <= 0)} a*(X_{t-1})`, so for fixed
//! `t` it takes exactly two values as `beta` varies. The self-weight
//! downweights observations whose lagged regressors exceed a sample
//! quantile cutoff, which keeps the moment conditions integrable when the
//! innovations have no moments.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;
use crate::series::Series;

/// Instrument choice: `a(x) = x` or `a(x) = (x', phi(x)')'` with a
/// user-supplied extension of dimension `q`.
#[derive(Clone)]
pub enum AKind {
    Identity,
    Extended {
        q: usize,
        phi: Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>,
    },
}

impl AKind {
    pub fn q(&self) -> usize {
        match self {
            AKind::Identity => 0,
            AKind::Extended { q, .. } => *q,
        }
    }
}

impl fmt::Debug for AKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AKind::Identity => write!(f, "Identity"),
            AKind::Extended { q, .. } => write!(f, "Extended {{ q: {q} }}"),
        }
    }
}

/// Configuration of the moment function.
#[derive(Clone, Debug)]
pub struct MomentConfig {
    /// Quantile level of the regression; 0.5 is the median.
    pub tau: f64,
    /// Quantile level defining the self-weight cutoff `c`.
    pub weight_cutoff_q: f64,
    pub a_kind: AKind,
    /// Compute the cutoff from `|y|` instead of the raw values.
    pub abs_cutoff: bool,
}

impl Default for MomentConfig {
    fn default() -> Self {
        MomentConfig {
            tau: 0.5,
            weight_cutoff_q: 0.95,
            a_kind: AKind::Identity,
            abs_cutoff: false,
        }
    }
}

impl MomentConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.tau < 1.0) {
            return Err(Error::invalid(format!("tau must be in (0,1), got {}", self.tau)));
        }
        if !(self.weight_cutoff_q > 0.0 && self.weight_cutoff_q < 1.0) {
            return Err(Error::invalid(format!(
                "weight cutoff quantile must be in (0,1), got {}",
                self.weight_cutoff_q
            )));
        }
        Ok(())
    }

    /// Instrument dimension `m = p + q`.
    pub fn m(&self, p: usize) -> usize {
        p + self.a_kind.q()
    }
}

fn quantile_ceil(sorted: &[f64], q: f64) -> f64 {
    // Order-statistic convention: 1-based index ceil(q * N), with a small
    // slack so that q * N landing within rounding noise of an integer does
    // not bump to the next order statistic.
    let n = sorted.len() as f64;
    let idx = ((q * n) - 1e-9).ceil().max(1.0) as usize;
    sorted[idx.min(sorted.len()) - 1]
}

/// Self-weight cutoff `c`: the `q_level` order-statistic quantile of the raw
/// sample `y_0..y_n`.
pub fn weight_cutoff(series: &Series, q_level: f64) -> Result<f64> {
    cutoff_impl(series, q_level, false)
}

/// Same convention applied to `|y_0|..|y_n|`.
pub fn weight_cutoff_abs(series: &Series, q_level: f64) -> Result<f64> {
    cutoff_impl(series, q_level, true)
}

fn cutoff_impl(series: &Series, q_level: f64, absolute: bool) -> Result<f64> {
    if !(q_level > 0.0 && q_level < 1.0) {
        return Err(Error::invalid(format!(
            "cutoff quantile level must be in (0,1), got {q_level}"
        )));
    }
    // The sample starts at y_0, so skip the first p-1 stored values.
    let mut sample: Vec<f64> = series.values()[series.p() - 1..]
        .iter()
        .map(|v| if absolute { v.abs() } else { *v })
        .collect();
    if sample.is_empty() {
        return Err(Error::invalid("empty sample"));
    }
    sample.sort_by(f64::total_cmp);
    Ok(quantile_ceil(&sample, q_level))
}

/// Ling-style self-weight: 1 when no lag exceeds the cutoff, otherwise
/// `(c / max_j |X_j|)^3`.
pub fn self_weight(x_lag: &[f64], c: f64) -> f64 {
    debug_assert!(c > 0.0);
    let max_abs = x_lag.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max_abs > c {
        (c / max_abs).powi(3)
    } else {
        1.0
    }
}

/// Immutable per-observation panel of instruments and closures needed to
/// evaluate the moment vectors at any coefficient.
pub struct MomentPanel {
    p: usize,
    n: usize,
    m: usize,
    tau: f64,
    c: f64,
    identity_instruments: bool,
    /// y_1..y_n.
    y: Vec<f64>,
    /// Row-major n x p lag matrix; row t-1 holds X_{t-1}.
    x: Vec<f64>,
    /// Row-major n x m weighted instruments a*(X_{t-1}).
    a_star: Vec<f64>,
    weights: Vec<f64>,
    /// p = 1 only: y_t / y_{t-1}, NaN where the lag is zero. Residual signs
    /// are evaluated through these ratios so that candidate coefficients
    /// constructed from the same ratios hit exact ties, and so that sign
    /// vectors are invariant under rescaling of the series.
    ratio: Vec<f64>,
}

impl MomentPanel {
    pub fn new(series: &Series, cfg: &MomentConfig) -> Result<Self> {
        cfg.validate()?;
        let p = series.p();
        let n = series.n();
        let m = cfg.m(p);
        let c = if cfg.abs_cutoff {
            weight_cutoff_abs(series, cfg.weight_cutoff_q)?
        } else {
            weight_cutoff(series, cfg.weight_cutoff_q)?
        };
        if !(c > 0.0) {
            return Err(Error::invalid(format!(
                "weight cutoff c = {c} is not positive; use an absolute cutoff \
                 for samples that are mostly negative"
            )));
        }

        let mut y = Vec::with_capacity(n);
        let mut x = Vec::with_capacity(n * p);
        let mut a_star = Vec::with_capacity(n * m);
        let mut weights = Vec::with_capacity(n);
        let mut ratio = Vec::new();

        for t in 1..=n {
            let yt = series.y(t as i64);
            let lags = series.lag_vector(t);
            let w = self_weight(&lags, c);
            let mut a = lags.clone();
            if let AKind::Extended { q, phi } = &cfg.a_kind {
                let ext = phi(&lags);
                if ext.len() != *q {
                    return Err(Error::invalid(format!(
                        "phi returned {} values, expected q = {q}",
                        ext.len()
                    )));
                }
                a.extend_from_slice(&ext);
            }
            for v in &mut a {
                *v *= w;
            }
            if a.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid(format!(
                    "non-finite instrument at t = {t}"
                )));
            }
            if p == 1 {
                let x0 = lags[0];
                ratio.push(if x0 != 0.0 { yt / x0 } else { f64::NAN });
            }
            y.push(yt);
            x.extend_from_slice(&lags);
            a_star.extend_from_slice(&a);
            weights.push(w);
        }

        Ok(MomentPanel {
            p,
            n,
            m,
            tau: cfg.tau,
            c,
            identity_instruments: matches!(cfg.a_kind, AKind::Identity),
            y,
            x,
            a_star,
            weights,
            ratio,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Realized weight cutoff.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn identity_instruments(&self) -> bool {
        self.identity_instruments
    }

    pub fn weight(&self, t: usize) -> f64 {
        self.weights[t - 1]
    }

    /// `a*(X_{t-1})` for `1 <= t <= n`.
    pub fn a_star_row(&self, t: usize) -> &[f64] {
        &self.a_star[(t - 1) * self.m..t * self.m]
    }

    /// `X_{t-1}` for `1 <= t <= n`.
    pub fn lag_row(&self, t: usize) -> &[f64] {
        &self.x[(t - 1) * self.p..t * self.p]
    }

    pub fn y_obs(&self, t: usize) -> f64 {
        self.y[t - 1]
    }

    /// p = 1 breakpoint ratio `y_t / y_{t-1}`, NaN where the lag is zero.
    pub(crate) fn ratio(&self, t: usize) -> f64 {
        self.ratio[t - 1]
    }

    /// Indicator `I(y_t - X_{t-1}'beta <= 0)` (0-based observation index).
    pub(crate) fn sign_at(&self, idx: usize, beta: &[f64]) -> bool {
        if self.p == 1 {
            let x = self.x[idx];
            if x > 0.0 {
                self.ratio[idx] <= beta[0]
            } else if x < 0.0 {
                self.ratio[idx] >= beta[0]
            } else {
                self.y[idx] <= 0.0
            }
        } else {
            let row = &self.x[idx * self.p..(idx + 1) * self.p];
            let mut fit = 0.0;
            for j in 0..self.p {
                fit += row[j] * beta[j];
            }
            self.y[idx] - fit <= 0.0
        }
    }

    /// Moment vector `g(Y_t^p, beta)` for `1 <= t <= n`.
    pub fn moment_vector(&self, t: usize, beta: &[f64]) -> Vec<f64> {
        let factor = self.psi(self.sign_at(t - 1, beta));
        self.a_star_row(t).iter().map(|a| factor * a).collect()
    }

    /// `tau - I(u <= 0)` given the indicator value.
    pub(crate) fn psi(&self, sign: bool) -> f64 {
        if sign {
            self.tau - 1.0
        } else {
            self.tau
        }
    }
}

impl fmt::Debug for MomentPanel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MomentPanel")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("m", &self.m)
            .field("tau", &self.tau)
            .field("c", &self.c)
            .finish()
    }
}

/// Sample second-moment matrix of the moment vectors over a 0-based
/// observation range: `tau(1-tau)/|range| * sum a* a*'`. Errors when the
/// result is singular, since everything downstream needs its inverse.
pub fn omega_hat(panel: &MomentPanel, range: Range<usize>) -> Result<DMatrix<f64>> {
    if range.is_empty() || range.end > panel.n() {
        return Err(Error::invalid(format!(
            "bad omega range {range:?} for n = {}",
            panel.n()
        )));
    }
    let m = panel.m();
    let mut acc = DMatrix::zeros(m, m);
    for idx in range.clone() {
        let a = panel.a_star_row(idx + 1);
        for i in 0..m {
            for j in i..m {
                acc[(i, j)] += a[i] * a[j];
            }
        }
    }
    let scale = panel.tau() * (1.0 - panel.tau()) / range.len() as f64;
    for i in 0..m {
        for j in i..m {
            let v = acc[(i, j)] * scale;
            acc[(i, j)] = v;
            acc[(j, i)] = v;
        }
    }
    let ev = linalg::sym_eigenvalues(&acc);
    let min = ev[0];
    let max = ev[ev.len() - 1];
    if min <= linalg::EIGEN_FLOOR * max.max(1.0) {
        return Err(Error::SingularMatrix {
            name: "omega_hat",
            min_eigenvalue: min,
        });
    }
    Ok(acc)
}
