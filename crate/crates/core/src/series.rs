//! AR(p) path simulation with an optional coefficient break, plus CSV I/O.

use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Cauchy, Distribution, Normal, StudentT};

use crate::error::{Error, Result};

/// Innovation law for the simulated autoregression. Every variant has
/// median zero.
#[derive(Clone, Debug, PartialEq)]
pub enum InnovationKind {
    Gaussian { sigma: f64 },
    StudentT { df: f64 },
    Cauchy { scale: f64 },
}

impl InnovationKind {
    pub fn validate(&self) -> Result<()> {
        let (name, v) = match self {
            InnovationKind::Gaussian { sigma } => ("gaussian sigma", *sigma),
            InnovationKind::StudentT { df } => ("student_t df", *df),
            InnovationKind::Cauchy { scale } => ("cauchy scale", *scale),
        };
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::invalid(format!("{name} must be positive, got {v}")));
        }
        Ok(())
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match self {
            InnovationKind::Gaussian { sigma } => {
                Normal::new(0.0, *sigma).expect("validated").sample(rng)
            }
            InnovationKind::StudentT { df } => {
                StudentT::new(*df).expect("validated").sample(rng)
            }
            InnovationKind::Cauchy { scale } => {
                Cauchy::new(0.0, *scale).expect("validated").sample(rng)
            }
        }
    }
}

impl fmt::Display for InnovationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnovationKind::Gaussian { sigma } => write!(f, "gaussian:{sigma}"),
            InnovationKind::StudentT { df } => write!(f, "student_t:{df}"),
            InnovationKind::Cauchy { scale } => write!(f, "cauchy:{scale}"),
        }
    }
}

/// Parses `kind` or `kind:param`, e.g. `cauchy`, `gaussian:0.5`, `student_t:2`.
impl FromStr for InnovationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, param) = match s.split_once(':') {
            Some((k, p)) => (k, Some(p)),
            None => (s, None),
        };
        let value = match param {
            Some(p) => p
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid(format!("bad innovation parameter {p:?}")))?,
            None => 1.0,
        };
        let innov = match kind.trim().to_ascii_lowercase().as_str() {
            "gaussian" | "normal" => InnovationKind::Gaussian { sigma: value },
            "student_t" | "student-t" | "t" => InnovationKind::StudentT { df: value },
            "cauchy" => InnovationKind::Cauchy { scale: value },
            other => return Err(Error::invalid(format!("unknown innovation kind {other:?}"))),
        };
        innov.validate()?;
        Ok(innov)
    }
}

/// Simulation recipe: AR(p) with coefficients `theta1`, switching to
/// `theta2` after observation `round(break_fraction * n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ARChangeSpec {
    pub p: usize,
    pub theta1: Vec<f64>,
    pub theta2: Vec<f64>,
    /// Break fraction in (0,1); `None` simulates under `theta1` throughout.
    pub break_fraction: Option<f64>,
    pub n: usize,
    pub burn_in: usize,
    pub seed: u64,
}

impl ARChangeSpec {
    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::invalid("lag order p must be >= 1"));
        }
        if self.theta1.len() != self.p {
            return Err(Error::invalid(format!(
                "theta1 has length {}, expected p = {}",
                self.theta1.len(),
                self.p
            )));
        }
        if self.theta2.len() != self.p {
            return Err(Error::invalid(format!(
                "theta2 has length {}, expected p = {}",
                self.theta2.len(),
                self.p
            )));
        }
        if self.n < 2 {
            return Err(Error::invalid("sample length n must be >= 2"));
        }
        if let Some(r) = self.break_fraction {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::invalid(format!(
                    "break fraction must lie in (0,1), got {r}"
                )));
            }
            let k = self.break_index().expect("break present");
            if !(1..self.n).contains(&k) {
                return Err(Error::invalid(format!(
                    "break index k* = {k} outside 1..={}",
                    self.n - 1
                )));
            }
        }
        Ok(())
    }

    /// `k* = round(r * n)`, the last observation generated under `theta1`.
    pub fn break_index(&self) -> Option<usize> {
        self.break_fraction
            .map(|r| (r * self.n as f64).round() as usize)
    }
}

/// Observed stretch `y_{1-p}, ..., y_n` of an AR(p) sample.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    p: usize,
    values: Vec<f64>,
}

impl Series {
    /// `values` holds `y_{1-p}..y_n`, so it must have length `n + p` with
    /// `n >= 2`, all entries finite.
    pub fn new(p: usize, values: Vec<f64>) -> Result<Self> {
        if p == 0 {
            return Err(Error::invalid("lag order p must be >= 1"));
        }
        if values.len() < p + 2 {
            return Err(Error::TooShort {
                needed: p + 2,
                got: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "non-finite value at position {pos}"
            )));
        }
        Ok(Series { p, values })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of usable observations `n`.
    pub fn n(&self) -> usize {
        self.values.len() - self.p
    }

    /// All stored values `y_{1-p}..y_n`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `y_t` for `1-p <= t <= n`.
    pub fn y(&self, t: i64) -> f64 {
        let idx = t + self.p as i64 - 1;
        self.values[idx as usize]
    }

    /// Lag vector `X_{t-1} = (y_{t-1}, ..., y_{t-p})'` for `1 <= t <= n`.
    pub fn lag_vector(&self, t: usize) -> Vec<f64> {
        (1..=self.p).map(|j| self.y(t as i64 - j as i64)).collect()
    }

    /// Series scaled by `alpha`, keeping the lag order.
    pub fn scaled(&self, alpha: f64) -> Series {
        Series {
            p: self.p,
            values: self.values.iter().map(|v| alpha * v).collect(),
        }
    }
}

/// Simulates the spec and returns the series together with the innovation
/// stream `e_1..e_n` that generated the observed stretch.
pub fn simulate_with_innovations(
    spec: &ARChangeSpec,
    innov: &InnovationKind,
) -> Result<(Series, Vec<f64>)> {
    spec.validate()?;
    innov.validate()?;

    let p = spec.p;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    // state[0] is the most recent value y_{t-1}.
    let mut state = vec![0.0f64; p];

    let step = |state: &[f64], theta: &[f64], e: f64| -> f64 {
        let mut acc = 0.0;
        for j in 0..state.len() {
            acc += theta[j] * state[j];
        }
        acc + e
    };
    let push = |state: &mut Vec<f64>, y: f64| {
        state.rotate_right(1);
        state[0] = y;
    };

    for b in 0..spec.burn_in {
        let e = innov.sample(&mut rng);
        let y = step(&state, &spec.theta1, e);
        if !y.is_finite() {
            return Err(Error::NonFiniteGeneration {
                index: b as i64 + 1 - spec.burn_in as i64,
            });
        }
        push(&mut state, y);
    }

    let mut values = Vec::with_capacity(spec.n + p);
    // Carry the last p burn-in values as y_{1-p}..y_0 (oldest first).
    for j in (0..p).rev() {
        values.push(state[j]);
    }

    let k_star = spec.break_index().unwrap_or(spec.n);
    let mut innovations = Vec::with_capacity(spec.n);
    for t in 1..=spec.n {
        let theta = if t <= k_star {
            &spec.theta1
        } else {
            &spec.theta2
        };
        let e = innov.sample(&mut rng);
        let y = step(&state, theta, e);
        if !y.is_finite() {
            return Err(Error::NonFiniteGeneration { index: t as i64 });
        }
        values.push(y);
        innovations.push(e);
        push(&mut state, y);
    }

    Ok((Series::new(p, values)?, innovations))
}

/// Simulates an AR(p) path according to `spec`. Deterministic given the seed.
pub fn simulate(spec: &ARChangeSpec, innov: &InnovationKind) -> Result<Series> {
    simulate_with_innovations(spec, innov).map(|(s, _)| s)
}

/// Loads a one-column CSV (optional single header line) as a series with
/// lag order `p`.
pub fn load_series(path: &Path, p: usize) -> Result<Series> {
    let file = std::fs::File::open(path)?;
    let reader = BufReader::new(file);
    let mut values = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        match trimmed.parse::<f64>() {
            Ok(v) => values.push(v),
            // A single non-numeric first line is tolerated as a header.
            Err(_) if i == 0 => continue,
            Err(_) => {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected a number, found {trimmed:?}"),
                })
            }
        }
    }
    if values.len() < p + 2 {
        return Err(Error::TooShort {
            needed: p + 2,
            got: values.len(),
        });
    }
    Series::new(p, values)
}

/// Writes the series as one-column CSV with a `y` header. Values carry 17
/// significant digits so that a reload reproduces them exactly.
pub fn save_series(series: &Series, path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "y")?;
    for v in series.values() {
        writeln!(out, "{v:.16e}")?;
    }
    out.flush()?;
    Ok(())
}
