//! Symbol-level transmit and receive chains.
//!
//! * NOMA: superposition `x = √p1·s1 + √p2·s2`, broadcast to both users.
//! * Reconfigurable-antenna NOMA: the superposed `x` is power-divided between
//!   two beams, `√α·x` and `√(1−α)·x`.
//! * RAMA-I: a single RF signal `√p·s1` is split equally between two beams and
//!   the second beam is phase-rotated by `e^{jΔθ}` so it carries `√(p/2)·s2`.
//! * RAMA-II: the RF signal `√(p1 + p2·s̄²)·s1` is divided into `√p1·s1` and
//!   `√p2·s̄·s1`, and the second branch is rotated into `√p2·s2`.
//!
//! Beams are modeled as perfectly directional: a user's incident signal under
//! RAMA is its own beam output, with no leakage from the other beam.

use num_complex::Complex64;

use crate::channel::{ChannelState, User};
use crate::constellations::relate;
use crate::error::{Error, Result};

const POWER_TOL: f64 = 1e-12;

/// Per-user transmit powers with `p1 + p2 = p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerAllocation {
    p: f64,
    p1: f64,
    p2: f64,
}

impl PowerAllocation {
    pub fn new(p: f64, p1: f64, p2: f64) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::param(
                "p",
                format!("total power must be positive, got {p}"),
            ));
        }
        if !(p1 >= 0.0 && p2 >= 0.0) {
            return Err(Error::param(
                "p1/p2",
                format!("powers must be >= 0, got ({p1}, {p2})"),
            ));
        }
        if (p1 + p2 - p).abs() > POWER_TOL * p.max(1.0) {
            return Err(Error::param(
                "p1/p2",
                format!("p1 + p2 = {} but p = {p}", p1 + p2),
            ));
        }
        Ok(PowerAllocation { p, p1, p2 })
    }

    /// `p1 = fraction·p`, `p2 = p − p1`.
    pub fn from_fraction(p: f64, fraction: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::param(
                "fraction",
                format!("p1/p must lie in [0, 1], got {fraction}"),
            ));
        }
        let p1 = fraction * p;
        PowerAllocation::new(p, p1, p - p1)
    }

    pub fn equal(p: f64) -> Result<Self> {
        PowerAllocation::from_fraction(p, 0.5)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn power(&self, user: User) -> f64 {
        match user {
            User::One => self.p1,
            User::Two => self.p2,
        }
    }

    /// `p1 / p`.
    pub fn fraction(&self) -> f64 {
        self.p1 / self.p
    }

    pub fn swapped(&self) -> PowerAllocation {
        PowerAllocation {
            p: self.p,
            p1: self.p2,
            p2: self.p1,
        }
    }
}

/// Outputs of the two beam feeds (TSA 1 serves user 1, TSA 2 serves user 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TxSignal {
    pub tsa1: Complex64,
    pub tsa2: Complex64,
}

impl TxSignal {
    /// Instantaneous radiated power `|tsa1|² + |tsa2|²`.
    pub fn power(&self) -> f64 {
        self.tsa1.norm_sqr() + self.tsa2.norm_sqr()
    }

    /// Signal on the beam steered toward `user`.
    pub fn beam(&self, user: User) -> Complex64 {
        match user {
            User::One => self.tsa1,
            User::Two => self.tsa2,
        }
    }
}

/// NOMA superposition coding.
pub fn superpose(s1: Complex64, s2: Complex64, alloc: &PowerAllocation) -> Complex64 {
    s1 * alloc.p1.sqrt() + s2 * alloc.p2.sqrt()
}

/// Power division of one RF signal between the two beams.
pub fn reconfig_noma_split(x: Complex64, alpha: f64) -> Result<TxSignal> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidSplit(alpha));
    }
    Ok(TxSignal {
        tsa1: x * alpha.sqrt(),
        tsa2: x * (1.0 - alpha).sqrt(),
    })
}

/// RAMA with partial CSI: equal power division plus a phase rotation on beam 2.
///
/// The symbols must have equal modulus (PSK); an equal divider cannot
/// reproduce an amplitude difference.
pub fn rama1_transmit(s1: Complex64, s2: Complex64, p: f64) -> Result<TxSignal> {
    if !(p >= 0.0 && p.is_finite()) {
        return Err(Error::param(
            "p",
            format!("total power must be >= 0, got {p}"),
        ));
    }
    let relation = relate(s1, s2)?;
    let (a1, a2) = (s1.norm(), s2.norm());
    if (a1 - a2).abs() > 1e-12 * a1.max(a2) {
        return Err(Error::PskRequired {
            s1_abs: a1,
            s2_abs: a2,
        });
    }
    let feed = s1 * p.sqrt();
    let branch = feed * 0.5f64.sqrt();
    Ok(TxSignal {
        tsa1: branch,
        tsa2: branch * relation.rotation(),
    })
}

/// The single RF-chain signal fed to the antenna under RAMA-II,
/// `√(p1 + p2·s̄²)·s1`.
pub fn rama2_feed(s1: Complex64, s2: Complex64, alloc: &PowerAllocation) -> Result<Complex64> {
    let relation = relate(s1, s2)?;
    Ok(s1 * feed_power(alloc, relation.s_bar).sqrt())
}

fn feed_power(alloc: &PowerAllocation, s_bar: f64) -> f64 {
    alloc.p1 + alloc.p2 * s_bar * s_bar
}

/// RAMA with full CSI: unequal division of the feed into `√p1·s1` and
/// `√p2·s̄·s1`, then rotation of beam 2 by `e^{jΔθ}`.
pub fn rama2_transmit(s1: Complex64, s2: Complex64, alloc: &PowerAllocation) -> Result<TxSignal> {
    let relation = relate(s1, s2)?;
    let fed = feed_power(alloc, relation.s_bar);
    if fed == 0.0 {
        return Ok(TxSignal {
            tsa1: Complex64::new(0.0, 0.0),
            tsa2: Complex64::new(0.0, 0.0),
        });
    }
    let feed = s1 * fed.sqrt();
    let branch1 = feed * (alloc.p1 / fed).sqrt();
    let branch2 = feed * (alloc.p2 * relation.s_bar * relation.s_bar / fed).sqrt();
    Ok(TxSignal {
        tsa1: branch1,
        tsa2: branch2 * relation.rotation(),
    })
}

/// `y = incident·h_user + noise`.
pub fn receive(incident: Complex64, ch: &ChannelState, user: User, noise: Complex64) -> Complex64 {
    incident * ch.h(user) + noise
}
