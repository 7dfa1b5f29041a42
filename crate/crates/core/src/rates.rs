//! Closed-form achievable rates (bits/s/Hz) for each multiple-access scheme,
//! and the NOMA vs RAMA-I sum-rate comparisons for symmetric and asymmetric
//! channels.
//!
//! All formulas work on linear SNR products `p_i·γ_i`; `log2(1 + x)` is
//! evaluated through `ln_1p` so that small SNRs keep full precision.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::{LinkBudget, User};
use crate::error::{Error, Result};
use crate::transceiver::PowerAllocation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Noma,
    ReconfigNoma,
    Rama1,
    Rama2,
    Oma,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::Noma,
        Scheme::ReconfigNoma,
        Scheme::Rama1,
        Scheme::Rama2,
        Scheme::Oma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Noma => "noma",
            Scheme::ReconfigNoma => "reconfig-noma",
            Scheme::Rama1 => "rama1",
            Scheme::Rama2 => "rama2",
            Scheme::Oma => "oma",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|scheme| scheme.name() == s.trim())
            .ok_or_else(|| {
                Error::config(
                    "schemes",
                    format!(
                        "unknown scheme `{s}` (expected noma, reconfig-noma, rama1, rama2 or oma)"
                    ),
                )
            })
    }
}

/// Rates of user 1 and user 2 under one scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
    pub scheme: Scheme,
}

impl RatePair {
    pub fn sum(&self) -> f64 {
        self.r1 + self.r2
    }

    pub fn rate(&self, user: User) -> f64 {
        match user {
            User::One => self.r1,
            User::Two => self.r2,
        }
    }

    fn from_users(scheme: Scheme, first: (User, f64), second: (User, f64)) -> RatePair {
        let (r1, r2) = if first.0 == User::One {
            (first.1, second.1)
        } else {
            (second.1, first.1)
        };
        RatePair { r1, r2, scheme }
    }
}

/// `log2(1 + x)`.
#[inline]
pub fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / std::f64::consts::LN_2
}

/// NOMA with SIC. The stronger user (by `γ_i`) cancels the weaker user's
/// signal first; the weaker user treats the stronger user's signal as noise.
/// With `γ1 ≥ γ2`:
///
/// `r1 = log2(1 + p1·γ1)`, `r2 = log2(1 + p2·γ2 / (p1·γ2 + 1))`.
///
/// No fairness constraint (`p1 ≤ p2`) is imposed.
pub fn noma_rates(alloc: &PowerAllocation, lb: &LinkBudget) -> RatePair {
    sic_rates(Scheme::Noma, alloc, lb, |_| 1.0)
}

/// NOMA through a reconfigurable antenna that divides the superposed signal
/// between the two beams: user 1 sees a fraction `α` of the power, user 2
/// sees `1 − α`.
pub fn reconfig_noma_rates(
    alloc: &PowerAllocation,
    lb: &LinkBudget,
    alpha: f64,
) -> Result<RatePair> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidSplit(alpha));
    }
    Ok(sic_rates(
        Scheme::ReconfigNoma,
        alloc,
        lb,
        |user| match user {
            User::One => alpha,
            User::Two => 1.0 - alpha,
        },
    ))
}

fn sic_rates(
    scheme: Scheme,
    alloc: &PowerAllocation,
    lb: &LinkBudget,
    beam_share: impl Fn(User) -> f64,
) -> RatePair {
    let order = lb.order_users();
    let (s, w) = (order.strong, order.weak);
    let strong_snr = beam_share(s) * alloc.power(s) * lb.gamma(s);
    let weak_gain = beam_share(w) * lb.gamma(w);
    let weak_sinr = alloc.power(w) * weak_gain / (alloc.power(s) * weak_gain + 1.0);
    RatePair::from_users(scheme, (s, log2_1p(strong_snr)), (w, log2_1p(weak_sinr)))
}

/// RAMA-I: equal power `p/2` per beam, no inter-user interference.
pub fn rama1_rates(lb: &LinkBudget) -> RatePair {
    RatePair {
        r1: log2_1p(lb.p_gamma(User::One) / 2.0),
        r2: log2_1p(lb.p_gamma(User::Two) / 2.0),
        scheme: Scheme::Rama1,
    }
}

/// RAMA-II: arbitrary per-beam power, no inter-user interference.
pub fn rama2_rates(alloc: &PowerAllocation, lb: &LinkBudget) -> RatePair {
    RatePair {
        r1: log2_1p(alloc.p1() * lb.gamma1()),
        r2: log2_1p(alloc.p2() * lb.gamma2()),
        scheme: Scheme::Rama2,
    }
}

/// OFDMA with bandwidth fraction `β` for user 1 and `1 − β` for user 2.
/// A user with zero bandwidth gets rate 0 (the `β → 0⁺` limit).
pub fn oma_rates(alloc: &PowerAllocation, lb: &LinkBudget, beta: f64) -> Result<RatePair> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::param(
            "beta",
            format!("bandwidth fraction must lie in [0, 1], got {beta}"),
        ));
    }
    Ok(RatePair {
        r1: ofdma_rate(beta, alloc.p1() * lb.gamma1()),
        r2: ofdma_rate(1.0 - beta, alloc.p2() * lb.gamma2()),
        scheme: Scheme::Oma,
    })
}

fn ofdma_rate(bandwidth: f64, snr: f64) -> f64 {
    if bandwidth <= 0.0 {
        0.0
    } else {
        bandwidth * log2_1p(snr / bandwidth)
    }
}

/// NOMA sum rate on a symmetric channel; independent of the power split.
pub fn noma_sum_symmetric(p_gamma: f64) -> f64 {
    log2_1p(p_gamma)
}

/// RAMA-I sum rate on a symmetric channel, `log2(1 + pγ + (pγ)²/4)`.
pub fn rama1_sum_symmetric(p_gamma: f64) -> f64 {
    log2_1p(p_gamma + p_gamma * p_gamma / 4.0)
}

/// Both sides of the asymmetric-channel comparison:
/// `(1 + p1·γ1)(1 + p2·γ2)` and `(1 + p·γ1/2)(1 + p·γ2/2)`.
///
/// The first bounds `2^(NOMA sum)` from above, the second equals
/// `2^(RAMA-I sum)`.
pub fn case2_sides(alloc: &PowerAllocation, lb: &LinkBudget) -> (f64, f64) {
    let lhs = (1.0 + alloc.p1() * lb.gamma1()) * (1.0 + alloc.p2() * lb.gamma2());
    let rhs = (1.0 + alloc.p() * lb.gamma1() / 2.0) * (1.0 + alloc.p() * lb.gamma2() / 2.0);
    (lhs, rhs)
}

/// Whether the sufficient condition for RAMA-I to beat NOMA holds exactly.
/// Requires `γ1 ≥ γ2`.
pub fn case2_holds(alloc: &PowerAllocation, lb: &LinkBudget) -> Result<bool> {
    if lb.gamma1() < lb.gamma2() {
        return Err(Error::InvalidOrdering {
            gamma1: lb.gamma1(),
            gamma2: lb.gamma2(),
        });
    }
    let (lhs, rhs) = case2_sides(alloc, lb);
    // Both sides are equal in exact arithmetic at p1 = p/2.
    Ok(lhs <= rhs * (1.0 + 4.0 * f64::EPSILON))
}

/// The simpler (not tight) test: giving the stronger user at most half the
/// power is enough for the exact condition to hold.
pub fn case2_sufficient(alloc: &PowerAllocation) -> bool {
    alloc.p1() <= alloc.p() / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Reference values computed independently (double precision, Python).
    const LOG2_1P_15DB: f64 = 5.0278076733505195;
    const RAMA1_RATE_15DB: f64 = 4.071366963544554;
    const RAMA1_SUM_15DB: f64 = 8.142733927089106;
    const OMA_HALF_15DB: f64 = 2.5139038366752597;
    const NOMA_R2_30_0: f64 = 0.6723126358239526;
    const RAMA2_R2_30_0: f64 = 0.8032270364349277;

    fn alloc(frac: f64) -> PowerAllocation {
        PowerAllocation::from_fraction(1.0, frac).unwrap()
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert!("nome".parse::<Scheme>().is_err());
    }

    #[test]
    fn noma_all_power_to_user2() {
        let lb = LinkBudget::from_db(20.0, 7.0);
        let r = noma_rates(&alloc(0.0), &lb);
        assert_eq!(r.r1, 0.0);
        assert!((r.r2 - log2_1p(lb.p_gamma(User::Two))).abs() <= 1e-12);
    }

    #[test]
    fn noma_symmetric_sum_is_split_independent() {
        let lb = LinkBudget::from_db(15.0, 15.0);
        for frac in [0.1, 0.5, 0.9] {
            let r = noma_rates(&alloc(frac), &lb);
            assert!((r.sum() - LOG2_1P_15DB).abs() <= 1e-12);
            assert!((r.sum() - 5.0279).abs() < 1e-4);
        }
    }

    #[test]
    fn noma_asymmetric_anchor() {
        let lb = LinkBudget::from_db(30.0, 0.0);
        let r = noma_rates(&alloc(0.255), &lb);
        assert!((r.r1 - 8.0).abs() <= 1e-9);
        assert!((r.r2 - NOMA_R2_30_0).abs() <= 1e-12);
    }

    #[test]
    fn noma_honors_decoding_order() {
        // User 2 stronger: roles of the formulas swap.
        let lb = LinkBudget::from_linear(1.0, 1000.0).unwrap();
        let r = noma_rates(&alloc(0.745), &lb);
        assert!((r.r2 - 8.0).abs() <= 1e-9);
        assert!((r.r1 - NOMA_R2_30_0).abs() <= 1e-12);
    }

    #[test]
    fn reconfig_noma_examples() {
        let lb = LinkBudget::from_linear(10.0, 10.0).unwrap();
        let r = reconfig_noma_rates(&alloc(0.5), &lb, 0.5).unwrap();
        assert!((r.r1 - 3.5f64.log2()).abs() <= 1e-12);
        assert!((r.r1 - 1.8074).abs() < 1e-4);

        let lb = LinkBudget::from_db(40.0, 10.0);
        let noma = noma_rates(&alloc(0.3), &lb);
        let near = reconfig_noma_rates(&alloc(0.3), &lb, 0.999).unwrap();
        assert!(near.r1 < noma.r1);
        // At high SNR the user-1 gap tends to -log2(α).
        assert!((noma.r1 - near.r1 + 0.999f64.log2()).abs() < 1e-5);

        for alpha in [0.0, 1.0, 2.0] {
            assert_eq!(
                reconfig_noma_rates(&alloc(0.3), &lb, alpha),
                Err(Error::InvalidSplit(alpha))
            );
        }
    }

    #[test]
    fn rama1_examples() {
        let zero = LinkBudget::from_linear(0.0, 0.0).unwrap();
        let r = rama1_rates(&zero);
        assert_eq!((r.r1, r.r2), (0.0, 0.0));

        let lb = LinkBudget::from_db(15.0, 15.0);
        let r = rama1_rates(&lb);
        assert!((r.r1 - RAMA1_RATE_15DB).abs() <= 1e-12);
        assert!((r.r2 - RAMA1_RATE_15DB).abs() <= 1e-12);
        assert!((r.sum() - rama1_sum_symmetric(lb.p_gamma(User::One))).abs() <= 1e-12);
    }

    #[test]
    fn rama2_examples() {
        let lb = LinkBudget::from_db(30.0, 0.0);
        let r = rama2_rates(&alloc(0.255), &lb);
        assert!((r.r1 - 8.0).abs() <= 1e-9);
        assert!((r.r2 - RAMA2_R2_30_0).abs() <= 1e-12);
        assert_eq!(rama2_rates(&alloc(1.0), &lb).r2, 0.0);
    }

    #[test]
    fn oma_examples() {
        let lb = LinkBudget::from_db(15.0, 15.0);
        let r = oma_rates(&alloc(1.0), &lb, 1.0).unwrap();
        assert!((r.r1 - LOG2_1P_15DB).abs() <= 1e-12);
        assert_eq!(r.r2, 0.0);

        let r = oma_rates(&alloc(0.5), &lb, 0.5).unwrap();
        assert!((r.r1 - OMA_HALF_15DB).abs() <= 1e-12);
        assert!((r.r2 - OMA_HALF_15DB).abs() <= 1e-12);

        let r = oma_rates(&alloc(0.0), &lb, 0.0).unwrap();
        assert_eq!(r.r1, 0.0);
        assert!((r.r2 - LOG2_1P_15DB).abs() <= 1e-12);

        assert!(oma_rates(&alloc(0.5), &lb, 1.5).is_err());
        assert!(oma_rates(&alloc(0.5), &lb, -0.1).is_err());
    }

    #[test]
    fn oma_endpoint_limit_is_continuous() {
        let lb = LinkBudget::from_db(30.0, 30.0);
        let tiny = oma_rates(&alloc(0.5), &lb, 1e-12).unwrap();
        assert!(tiny.r1 < 1e-9);
    }

    #[test]
    fn symmetric_sums() {
        assert_eq!(noma_sum_symmetric(0.0), 0.0);
        assert_eq!(rama1_sum_symmetric(0.0), 0.0);
        let pg = LinkBudget::from_db(15.0, 15.0).p_gamma(User::One);
        assert!((noma_sum_symmetric(pg) - LOG2_1P_15DB).abs() <= 1e-12);
        assert!((rama1_sum_symmetric(pg) - RAMA1_SUM_15DB).abs() <= 1e-12);

        let lb = LinkBudget::from_linear(pg, pg).unwrap();
        for frac in [0.1, 0.3, 0.7] {
            assert!((noma_rates(&alloc(frac), &lb).sum() - noma_sum_symmetric(pg)).abs() <= 1e-12);
        }
    }

    #[test]
    fn case2_examples() {
        let lb = LinkBudget::from_db(30.0, 0.0);
        let (l, r) = case2_sides(&alloc(0.5), &lb);
        assert_eq!(l, r);
        assert!(case2_holds(&alloc(0.5), &lb).unwrap());

        let (l, r) = case2_sides(&alloc(0.25), &lb);
        assert!((l - 439.25).abs() < 1e-9 && (r - 751.5).abs() < 1e-9);
        assert!(case2_holds(&alloc(0.25), &lb).unwrap());
        assert!(case2_sufficient(&alloc(0.25)));

        // Stronger user with most of the power: the bound fails and NOMA wins.
        let (l, r) = case2_sides(&alloc(0.75), &lb);
        assert!((l - 938.75).abs() < 1e-9 && (r - 751.5).abs() < 1e-9);
        assert!(!case2_holds(&alloc(0.75), &lb).unwrap());
        assert!(!case2_sufficient(&alloc(0.75)));
        assert!(noma_rates(&alloc(0.75), &lb).sum() > rama1_rates(&lb).sum());

        assert!(matches!(
            case2_holds(&alloc(0.25), &lb.swapped()),
            Err(Error::InvalidOrdering { .. })
        ));
    }

    fn budget() -> impl Strategy<Value = LinkBudget> {
        (-20.0f64..40.0, -20.0f64..40.0).prop_map(|(a, b)| LinkBudget::from_db(a, b))
    }

    proptest! {
        #[test]
        fn symmetric_noma_identity(db in -20.0f64..40.0, frac in 0.0f64..=1.0) {
            let lb = LinkBudget::from_db(db, db);
            let sum = noma_rates(&alloc(frac), &lb).sum();
            prop_assert!((sum - noma_sum_symmetric(lb.p_gamma(User::One))).abs() <= 1e-10);
        }

        #[test]
        fn rama1_beats_noma_on_symmetric(db in -20.0f64..40.0) {
            let pg = crate::channel::db_to_linear(db);
            prop_assert!(rama1_sum_symmetric(pg) > noma_sum_symmetric(pg));
        }

        #[test]
        fn rama2_dominates_noma(lb in budget(), frac in 0.0f64..=1.0) {
            let lb = if lb.gamma1() >= lb.gamma2() { lb } else { lb.swapped() };
            let a = alloc(frac);
            let noma = noma_rates(&a, &lb);
            let rama2 = rama2_rates(&a, &lb);
            prop_assert_eq!(noma.r1, rama2.r1);
            prop_assert!(rama2.r2 >= noma.r2);
        }

        #[test]
        fn case2_sufficient_implies_exact(lb in budget(), frac in 0.0f64..=0.5) {
            let lb = if lb.gamma1() >= lb.gamma2() { lb } else { lb.swapped() };
            let a = alloc(frac);
            prop_assert!(case2_holds(&a, &lb).unwrap());
            prop_assert!(rama1_rates(&lb).sum() >= noma_rates(&a, &lb).sum() - 1e-12);
        }

        #[test]
        fn reconfig_penalty(lb in budget(), frac in 0.01f64..0.99, alpha in 0.01f64..0.99) {
            let a = alloc(frac);
            let noma = noma_rates(&a, &lb);
            let rec = reconfig_noma_rates(&a, &lb, alpha).unwrap();
            prop_assert!(rec.r1 < noma.r1 && rec.r2 < noma.r2);
        }

        #[test]
        fn rates_monotone_in_own_power(lb in budget(), f in 0.0f64..0.99, df in 0.0f64..0.01) {
            let (lo, hi) = (alloc(f), alloc(f + df));
            prop_assert!(rama2_rates(&hi, &lb).r1 >= rama2_rates(&lo, &lb).r1);
            prop_assert!(rama2_rates(&hi, &lb).r2 <= rama2_rates(&lo, &lb).r2);
            prop_assert!(oma_rates(&hi, &lb, 0.5).unwrap().r1 >= oma_rates(&lo, &lb, 0.5).unwrap().r1);
            let lb = if lb.gamma1() >= lb.gamma2() { lb } else { lb.swapped() };
            prop_assert!(noma_rates(&hi, &lb).r1 >= noma_rates(&lo, &lb).r1);
            prop_assert!(noma_rates(&hi, &lb).r2 <= noma_rates(&lo, &lb).r2);
        }

        #[test]
        fn rates_monotone_in_gain(db in -20.0f64..40.0, ddb in 0.0f64..5.0, frac in 0.0f64..=1.0) {
            let a = alloc(frac);
            let lo = LinkBudget::from_db(db, -30.0);
            let hi = LinkBudget::from_db(db + ddb, -30.0);
            prop_assert!(rama2_rates(&a, &hi).r1 >= rama2_rates(&a, &lo).r1);
            prop_assert!(rama1_rates(&hi).r1 >= rama1_rates(&lo).r1);
            prop_assert!(noma_rates(&a, &hi).r1 >= noma_rates(&a, &lo).r1);
        }
    }
}
