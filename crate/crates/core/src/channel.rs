//! Two-user channel state, link budgets in linear/dB form, and seeded Rayleigh
//! fading draws.
//!
//! Every rate formula in this crate depends on the channel only through the
//! products `p·|h_i|²/σ_i²`, so the rate code consumes a [`LinkBudget`]. The
//! complex gains in [`ChannelState`] are kept for symbol-level simulation where
//! the phase of `h_i` matters.

use std::fmt;

use num_complex::Complex64;
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum User {
    One,
    Two,
}

impl User {
    pub fn other(self) -> User {
        match self {
            User::One => User::Two,
            User::Two => User::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            User::One => 1,
            User::Two => 2,
        }
    }
}

impl fmt::Display for User {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "user {}", self.index())
    }
}

/// SIC decoding order: the strong user cancels the weak user's signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UserOrder {
    pub strong: User,
    pub weak: User,
}

/// Sorts users by normalized gain, descending. Ties go to user 1 as strong.
pub fn order_by_gain(gamma1: f64, gamma2: f64) -> UserOrder {
    if gamma2 > gamma1 {
        UserOrder {
            strong: User::Two,
            weak: User::One,
        }
    } else {
        UserOrder {
            strong: User::One,
            weak: User::Two,
        }
    }
}

/// Complex gains and noise powers seen by both users.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelState {
    h1: Complex64,
    h2: Complex64,
    sigma1_sq: f64,
    sigma2_sq: f64,
}

impl ChannelState {
    pub fn new(h1: Complex64, h2: Complex64, sigma1_sq: f64, sigma2_sq: f64) -> Result<Self> {
        for (name, sigma) in [("sigma1_sq", sigma1_sq), ("sigma2_sq", sigma2_sq)] {
            if !(sigma > 0.0 && sigma.is_finite()) {
                return Err(Error::param(
                    name,
                    format!("noise power must be positive, got {sigma}"),
                ));
            }
        }
        if !(h1.is_finite() && h2.is_finite()) {
            return Err(Error::param("h", "channel gains must be finite"));
        }
        Ok(ChannelState {
            h1,
            h2,
            sigma1_sq,
            sigma2_sq,
        })
    }

    pub fn h(&self, user: User) -> Complex64 {
        match user {
            User::One => self.h1,
            User::Two => self.h2,
        }
    }

    pub fn sigma_sq(&self, user: User) -> f64 {
        match user {
            User::One => self.sigma1_sq,
            User::Two => self.sigma2_sq,
        }
    }

    /// `|h_i|² / σ_i²`.
    pub fn gamma(&self, user: User) -> f64 {
        self.h(user).norm_sqr() / self.sigma_sq(user)
    }

    pub fn order_users(&self) -> UserOrder {
        order_by_gain(self.gamma(User::One), self.gamma(User::Two))
    }

    /// Link budget for total transmit power `p`.
    pub fn link_budget(&self, p: f64) -> Result<LinkBudget> {
        LinkBudget::new(p, self.gamma(User::One), self.gamma(User::Two))
    }
}

/// Total power and per-user normalized gains `γ_i = |h_i|²/σ_i²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    p: f64,
    gamma1: f64,
    gamma2: f64,
}

impl LinkBudget {
    pub fn new(p: f64, gamma1: f64, gamma2: f64) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::param(
                "p",
                format!("total power must be positive, got {p}"),
            ));
        }
        for (name, g) in [("gamma1", gamma1), ("gamma2", gamma2)] {
            if !(g >= 0.0 && g.is_finite()) {
                return Err(Error::param(
                    name,
                    format!("gain must be finite and >= 0, got {g}"),
                ));
            }
        }
        Ok(LinkBudget { p, gamma1, gamma2 })
    }

    /// Budget with `p = 1` and `p·γ_i = 10^(dB/10)`.
    pub fn from_db(p_gamma1_db: f64, p_gamma2_db: f64) -> LinkBudget {
        LinkBudget {
            p: 1.0,
            gamma1: db_to_linear(p_gamma1_db),
            gamma2: db_to_linear(p_gamma2_db),
        }
    }

    /// Budget with `p = 1` and the given linear SNR products.
    pub fn from_linear(p_gamma1: f64, p_gamma2: f64) -> Result<LinkBudget> {
        LinkBudget::new(1.0, p_gamma1, p_gamma2)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn gamma(&self, user: User) -> f64 {
        match user {
            User::One => self.gamma1,
            User::Two => self.gamma2,
        }
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    /// `p·γ_i`, the single-user SNR at full power.
    pub fn p_gamma(&self, user: User) -> f64 {
        self.p * self.gamma(user)
    }

    pub fn symmetric(&self) -> bool {
        let scale = self.gamma1.abs().max(self.gamma2.abs());
        (self.gamma1 - self.gamma2).abs() <= 1e-9 * scale
    }

    pub fn order_users(&self) -> UserOrder {
        order_by_gain(self.gamma1, self.gamma2)
    }

    /// Same budget with the user labels exchanged.
    pub fn swapped(&self) -> LinkBudget {
        LinkBudget {
            p: self.p,
            gamma1: self.gamma2,
            gamma2: self.gamma1,
        }
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Name of the generator behind [`RngState`], written into output headers.
pub const PRNG_ID: &str = "xoshiro256++ seeded via splitmix64; gaussian via box-muller";

/// Seed for parallel worker `index` derived from a base seed.
pub fn worker_seed(base_seed: u64, index: u64) -> u64 {
    base_seed.wrapping_add(index)
}

/// Seedable generator state. Identical seeds and call sequences give
/// identical draws on every platform.
#[derive(Debug, Clone)]
pub struct RngState {
    seed: u64,
    draws: u64,
    inner: Xoshiro256PlusPlus,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        RngState {
            seed,
            draws: 0,
            inner: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of 64-bit words consumed so far.
    pub fn position(&self) -> u64 {
        self.draws
    }

    pub fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        self.inner.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 bits of resolution.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * f64::EPSILON / 2.0
    }

    /// Uniform on `(0, 1]`; safe as a logarithm argument.
    pub fn uniform_open_low(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * f64::EPSILON / 2.0
    }

    /// Two independent standard normals from one Box–Muller step.
    ///
    /// Consumes exactly two words: the radius uniform first, then the angle.
    pub fn standard_normal_pair(&mut self) -> (f64, f64) {
        let u1 = self.uniform_open_low();
        let u2 = self.uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let (sin, cos) = (std::f64::consts::TAU * u2).sin_cos();
        (radius * cos, radius * sin)
    }

    /// Circularly-symmetric complex Gaussian with `E[|z|²] = variance`.
    pub fn complex_gaussian(&mut self, variance: f64) -> Complex64 {
        let (re, im) = self.standard_normal_pair();
        Complex64::new(re, im) * (variance / 2.0).sqrt()
    }
}

/// One Rayleigh realization with `E[|h_i|²] = mean_gain_i` and equal noise
/// power on both links. Draws `h1` before `h2`.
pub fn sample_rayleigh(
    rng: &mut RngState,
    mean_gain1: f64,
    mean_gain2: f64,
    sigma_sq: f64,
) -> Result<ChannelState> {
    for (name, v) in [
        ("mean_gain1", mean_gain1),
        ("mean_gain2", mean_gain2),
        ("sigma_sq", sigma_sq),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::param(name, format!("must be positive, got {v}")));
        }
    }
    let h1 = rng.complex_gaussian(mean_gain1);
    let h2 = rng.complex_gaussian(mean_gain2);
    ChannelState::new(h1, h2, sigma_sq, sigma_sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    #[test]
    fn from_db_anchor_values() {
        let lb = LinkBudget::from_db(15.0, 15.0);
        assert!((lb.p_gamma(User::One) - 31.6228).abs() < 1e-4);
        assert!((lb.p_gamma(User::Two) - 31.6228).abs() < 1e-4);
        assert!(lb.symmetric());

        let lb = LinkBudget::from_db(30.0, 0.0);
        assert!((lb.p_gamma(User::One) - 1000.0).abs() < 1e-9);
        assert_eq!(lb.p_gamma(User::Two), 1.0);
        assert!(!lb.symmetric());

        let lb = LinkBudget::from_db(0.0, 0.0);
        assert_eq!((lb.p_gamma(User::One), lb.p_gamma(User::Two)), (1.0, 1.0));
    }

    #[test]
    fn link_budget_validation() {
        assert!(LinkBudget::new(0.0, 1.0, 1.0).is_err());
        assert!(LinkBudget::new(1.0, -1.0, 1.0).is_err());
        assert!(LinkBudget::new(1.0, 1.0, f64::NAN).is_err());
        assert!(LinkBudget::new(2.0, 0.0, 0.0).is_ok());
    }

    #[test]
    fn channel_state_validation() {
        let one = Complex64::new(1.0, 0.0);
        assert!(ChannelState::new(one, one, 0.0, 1.0).is_err());
        assert!(ChannelState::new(one, one, 1.0, -2.0).is_err());
        let ch = ChannelState::new(Complex64::new(3.0, 4.0), one, 5.0, 2.0).unwrap();
        assert_eq!(ch.gamma(User::One), 5.0);
        assert_eq!(ch.gamma(User::Two), 0.5);
        let lb = ch.link_budget(2.0).unwrap();
        assert_eq!(lb.p_gamma(User::One), 10.0);
    }

    #[test]
    fn ordering_cases() {
        assert_eq!(order_by_gain(10.0, 1.0).strong, User::One);
        assert_eq!(order_by_gain(1.0, 1.0).strong, User::One);
        let o = order_by_gain(1.0, 10.0);
        assert_eq!((o.strong, o.weak), (User::Two, User::One));
    }

    #[test]
    fn seeded_draws_repeat() {
        let mut a = RngState::new(42);
        let mut b = RngState::new(42);
        let xs: Vec<_> = (0..100)
            .map(|_| sample_rayleigh(&mut a, 1.0, 2.0, 1.0).unwrap())
            .collect();
        let ys: Vec<_> = (0..100)
            .map(|_| sample_rayleigh(&mut b, 1.0, 2.0, 1.0).unwrap())
            .collect();
        assert_eq!(xs, ys);
        assert_eq!(a.position(), 400);
        assert_ne!(RngState::new(43).next_u64(), RngState::new(42).next_u64());
    }

    #[test]
    fn rejects_nonpositive_fading_params() {
        let mut rng = RngState::new(1);
        assert!(sample_rayleigh(&mut rng, 0.0, 1.0, 1.0).is_err());
        assert!(sample_rayleigh(&mut rng, 1.0, -1.0, 1.0).is_err());
        assert!(sample_rayleigh(&mut rng, 1.0, 1.0, 0.0).is_err());
        assert_eq!(rng.position(), 0);
    }

    fn empirical_mean_gain(seed: u64, mean_gain: f64, n: usize) -> f64 {
        let mut rng = RngState::new(seed);
        (0..n)
            .map(|_| {
                sample_rayleigh(&mut rng, mean_gain, 1.0, 1.0)
                    .unwrap()
                    .h(User::One)
                    .norm_sqr()
            })
            .sum::<f64>()
            / n as f64
    }

    #[test]
    fn rayleigh_mean_power_converges() {
        let m = empirical_mean_gain(7, 1.0, 1_000_000);
        assert!((m - 1.0).abs() < 0.01, "mean {m}");
        let m = empirical_mean_gain(8, 4.0, 1_000_000);
        assert!((m - 4.0).abs() < 0.04, "mean {m}");
    }

    #[test]
    fn rayleigh_phase_is_uniform() {
        const BINS: usize = 16;
        const N: usize = 1_000_000;
        let mut rng = RngState::new(2024);
        let mut counts = [0usize; BINS];
        for _ in 0..N {
            let h = sample_rayleigh(&mut rng, 1.0, 1.0, 1.0)
                .unwrap()
                .h(User::One);
            let phase = crate::constellations::wrap_angle(h.arg());
            let bin = ((phase / std::f64::consts::TAU) * BINS as f64) as usize;
            counts[bin.min(BINS - 1)] += 1;
        }
        let expected = N as f64 / BINS as f64;
        let stat: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        let critical = ChiSquared::new((BINS - 1) as f64)
            .unwrap()
            .inverse_cdf(1.0 - 0.001);
        assert!(stat < critical, "chi2 {stat} >= {critical}");
    }

    #[test]
    fn uniform_ranges() {
        let mut rng = RngState::new(0);
        for _ in 0..10_000 {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
            let v = rng.uniform_open_low();
            assert!(v > 0.0 && v <= 1.0);
        }
    }

    proptest! {
        #[test]
        fn db_round_trip(db in -200.0f64..200.0) {
            let lb = LinkBudget::from_db(db, -db);
            let v = lb.p_gamma(User::One);
            prop_assert!((linear_to_db(v) - db).abs() <= 1e-12 * db.abs().max(1.0));
            prop_assert!((db_to_linear(linear_to_db(v)) - v).abs() <= 1e-12 * v);
        }

        #[test]
        fn ordering_is_total_and_idempotent(g1 in 0.0f64..1e6, g2 in 0.0f64..1e6) {
            let o = order_by_gain(g1, g2);
            prop_assert_ne!(o.strong, o.weak);
            let lb = LinkBudget::new(1.0, g1, g2).unwrap();
            prop_assert!(lb.gamma(o.strong) >= lb.gamma(o.weak));
            // Re-ordering the already ordered gains keeps the strong user first.
            let again = order_by_gain(lb.gamma(o.strong), lb.gamma(o.weak));
            prop_assert_eq!(again.strong, User::One);
        }
    }
}
