//! Sum-rate sweeps over an SNR grid, deterministic or averaged over Rayleigh
//! fading.
//!
//! Two x-axes are supported:
//!
//! * `symmetric-pgamma-db`: both users at `p·γ = x` dB.
//! * `gain-ratio-db`: user 2 pinned at the anchor (`p·γ2`, default 0 dB) and
//!   user 1 at `x` dB above it.
//!
//! With fading enabled, grid point `i` draws its realizations from its own
//! generator seeded with `seed + i`, so results do not depend on how grid
//! points are scheduled across threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{db_to_linear, sample_rayleigh, worker_seed, LinkBudget, RngState, User};
use crate::error::{Error, Result};
use crate::rates::{
    noma_rates, oma_rates, rama1_rates, rama2_rates, reconfig_noma_rates, RatePair, Scheme,
};
use crate::transceiver::PowerAllocation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum XAxis {
    SymmetricPgammaDb,
    GainRatioDb,
}

impl XAxis {
    pub fn name(self) -> &'static str {
        match self {
            XAxis::SymmetricPgammaDb => "symmetric-pgamma-db",
            XAxis::GainRatioDb => "gain-ratio-db",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FadingConfig {
    pub num_samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub schemes: Vec<Scheme>,
    pub x_axis: XAxis,
    /// Strictly increasing grid in dB.
    pub grid_db: Vec<f64>,
    /// Power fractions `p1/p`. OMA also uses the split as its bandwidth
    /// fraction `β`; RAMA-I ignores it.
    pub splits: Vec<f64>,
    /// `p·γ2` in dB for the gain-ratio axis.
    pub anchor_db: f64,
    /// Beam power division for reconfigurable-antenna NOMA.
    pub alpha: f64,
    pub fading: Option<FadingConfig>,
}

pub const DEFAULT_SPLITS: [f64; 3] = [0.25, 0.5, 0.75];

/// `start, start + step, ...` up to and including `stop`.
pub fn db_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|k| start + k as f64 * step).collect()
}

impl SweepConfig {
    /// NOMA against RAMA-I on symmetric channels, −10 to 40 dB in 1 dB steps.
    pub fn symmetric_default() -> Self {
        SweepConfig {
            schemes: vec![Scheme::Noma, Scheme::Rama1],
            x_axis: XAxis::SymmetricPgammaDb,
            grid_db: db_grid(-10.0, 40.0, 1.0),
            splits: DEFAULT_SPLITS.to_vec(),
            anchor_db: 0.0,
            alpha: 0.5,
            fading: None,
        }
    }

    /// NOMA against RAMA-I for gain ratios 0 to 40 dB over a 0 dB weak user.
    pub fn ratio_default() -> Self {
        SweepConfig {
            x_axis: XAxis::GainRatioDb,
            grid_db: db_grid(0.0, 40.0, 1.0),
            ..SweepConfig::symmetric_default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.schemes.is_empty() {
            return Err(Error::config("schemes", "at least one scheme is required"));
        }
        if self.grid_db.is_empty() {
            return Err(Error::config("grid", "grid must not be empty"));
        }
        if self.grid_db.iter().any(|x| !x.is_finite()) {
            return Err(Error::config("grid", "grid values must be finite"));
        }
        if self.grid_db.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::config("grid", "grid must be strictly increasing"));
        }
        if self.splits.is_empty() {
            return Err(Error::config("splits", "at least one split is required"));
        }
        if let Some(s) = self.splits.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(Error::config("splits", format!("split {s} outside [0, 1]")));
        }
        if !self.anchor_db.is_finite() {
            return Err(Error::config("anchor_db", "must be finite"));
        }
        if self.schemes.contains(&Scheme::ReconfigNoma) && !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::config(
                "alpha",
                format!("{} outside (0, 1)", self.alpha),
            ));
        }
        if let Some(f) = self.fading {
            if f.num_samples == 0 {
                return Err(Error::config("num_samples", "must be >= 1"));
            }
        }
        Ok(())
    }

    /// Mean `(p·γ1, p·γ2)` in linear scale at grid value `x_db`.
    pub fn grid_point(&self, x_db: f64) -> (f64, f64) {
        match self.x_axis {
            XAxis::SymmetricPgammaDb => {
                let v = db_to_linear(x_db);
                (v, v)
            }
            XAxis::GainRatioDb => (
                db_to_linear(x_db + self.anchor_db),
                db_to_linear(self.anchor_db),
            ),
        }
    }

    fn distinct_schemes(&self) -> Vec<Scheme> {
        let mut seen = Vec::with_capacity(self.schemes.len());
        for s in &self.schemes {
            if !seen.contains(s) {
                seen.push(*s);
            }
        }
        seen
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub x_db: f64,
    pub scheme: Scheme,
    pub split: f64,
    pub sum_rate: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn row(&self, x_db: f64, scheme: Scheme, split: f64) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.x_db == x_db && r.scheme == scheme && r.split == split)
    }

    /// Rows for one `(scheme, split)` curve, in grid order.
    pub fn curve(&self, scheme: Scheme, split: f64) -> Vec<&SweepRow> {
        self.rows
            .iter()
            .filter(|r| r.scheme == scheme && r.split == split)
            .collect()
    }
}

/// Rates of `scheme` at power fraction `split` on budget `lb`.
pub fn scheme_rates(scheme: Scheme, split: f64, lb: &LinkBudget, alpha: f64) -> Result<RatePair> {
    let alloc = PowerAllocation::from_fraction(lb.p(), split)?;
    match scheme {
        Scheme::Noma => Ok(noma_rates(&alloc, lb)),
        Scheme::ReconfigNoma => reconfig_noma_rates(&alloc, lb, alpha),
        Scheme::Rama1 => Ok(rama1_rates(lb)),
        Scheme::Rama2 => Ok(rama2_rates(&alloc, lb)),
        Scheme::Oma => oma_rates(&alloc, lb, split),
    }
}

/// Welford running mean/variance.
#[derive(Debug, Clone, Copy, Default)]
struct Running {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Running {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn stderr(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            (self.m2 / (self.n - 1) as f64 / self.n as f64).sqrt()
        }
    }
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let schemes = cfg.distinct_schemes();
    let cells: Vec<(Scheme, f64)> = schemes
        .iter()
        .flat_map(|&s| cfg.splits.iter().map(move |&t| (s, t)))
        .collect();

    let per_point: Vec<Vec<SweepRow>> = cfg
        .grid_db
        .par_iter()
        .enumerate()
        .map(|(index, &x_db)| {
            let (pg1, pg2) = cfg.grid_point(x_db);
            let stats = match cfg.fading {
                None => {
                    let lb = LinkBudget::from_linear(pg1, pg2)?;
                    cells
                        .iter()
                        .map(|&(s, t)| {
                            let mut r = Running::default();
                            r.push(scheme_rates(s, t, &lb, cfg.alpha)?.sum());
                            Ok(r)
                        })
                        .collect::<Result<Vec<_>>>()?
                }
                Some(f) => {
                    let mut rng = RngState::new(worker_seed(f.seed, index as u64));
                    let mut stats = vec![Running::default(); cells.len()];
                    for _ in 0..f.num_samples {
                        let ch = sample_rayleigh(&mut rng, pg1, pg2, 1.0)?;
                        let lb = ch.link_budget(1.0)?;
                        for (acc, &(s, t)) in stats.iter_mut().zip(&cells) {
                            acc.push(scheme_rates(s, t, &lb, cfg.alpha)?.sum());
                        }
                    }
                    stats
                }
            };
            Ok(cells
                .iter()
                .zip(stats)
                .map(|(&(scheme, split), acc)| SweepRow {
                    x_db,
                    scheme,
                    split,
                    sum_rate: acc.mean,
                    stderr: acc.stderr(),
                })
                .collect())
        })
        .collect::<Result<_>>()?;

    Ok(SweepResult {
        rows: per_point.concat(),
    })
}

/// Gap between RAMA-I and NOMA sum rates along a symmetric grid.
pub fn symmetric_gap(grid_db: &[f64]) -> Vec<f64> {
    grid_db
        .iter()
        .map(|&x| {
            let lb = LinkBudget::from_db(x, x);
            let pg = lb.p_gamma(User::One);
            crate::rates::rama1_sum_symmetric(pg) - crate::rates::noma_sum_symmetric(pg)
        })
        .collect()
}
