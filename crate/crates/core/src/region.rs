//! Achievable rate regions traced by sweeping the allocation parameters of
//! each scheme and keeping the Pareto frontier.

use rayon::prelude::*;

use crate::channel::LinkBudget;
use crate::error::{Error, Result};
use crate::rates::{
    noma_rates, oma_rates, rama1_rates, rama2_rates, reconfig_noma_rates, RatePair, Scheme,
};
use crate::transceiver::PowerAllocation;

/// Grid resolution used when none is given.
pub const DEFAULT_RESOLUTION: usize = 1000;

/// Power division used for reconfigurable-antenna NOMA regions unless set.
pub const DEFAULT_ALPHA: f64 = 0.5;

/// Pareto frontier of one scheme, sorted by strictly increasing `r1` with
/// nonincreasing `r2`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegion {
    pub scheme: Scheme,
    pub frontier: Vec<RatePair>,
    pub grid_resolution: usize,
}

impl RateRegion {
    pub fn max_r1(&self) -> f64 {
        self.frontier.last().map_or(0.0, |p| p.r1)
    }

    pub fn max_r2(&self) -> f64 {
        self.frontier.first().map_or(0.0, |p| p.r2)
    }
}

/// `n` uniformly spaced points on `[0, 1]`, both endpoints included.
pub fn unit_grid(n: usize) -> impl Iterator<Item = f64> + Clone {
    let last = (n - 1) as f64;
    (0..n).map(move |k| if k + 1 == n { 1.0 } else { k as f64 / last })
}

/// Frontier of `scheme` at grid resolution `n`.
///
/// * NOMA, RAMA-II, reconfigurable NOMA: `n` power splits `p1/p ∈ [0, 1]`.
/// * OMA: the `n × n` product of bandwidth fraction `β` and power split.
/// * RAMA-I: the single equal-split operating point.
pub fn trace_region(scheme: Scheme, lb: &LinkBudget, n: usize) -> Result<RateRegion> {
    trace_region_with_alpha(scheme, lb, n, DEFAULT_ALPHA)
}

/// As [`trace_region`], with the beam power division `alpha` used for
/// reconfigurable-antenna NOMA.
pub fn trace_region_with_alpha(
    scheme: Scheme,
    lb: &LinkBudget,
    n: usize,
    alpha: f64,
) -> Result<RateRegion> {
    if n < 2 {
        return Err(Error::param(
            "n",
            format!("grid resolution must be >= 2, got {n}"),
        ));
    }
    let p = lb.p();
    let split = |t: f64| PowerAllocation::from_fraction(p, t);
    let points: Vec<RatePair> = match scheme {
        Scheme::Rama1 => vec![rama1_rates(lb)],
        Scheme::Noma => unit_grid(n)
            .map(|t| split(t).map(|a| noma_rates(&a, lb)))
            .collect::<Result<_>>()?,
        Scheme::Rama2 => unit_grid(n)
            .map(|t| split(t).map(|a| rama2_rates(&a, lb)))
            .collect::<Result<_>>()?,
        Scheme::ReconfigNoma => unit_grid(n)
            .map(|t| reconfig_noma_rates(&split(t)?, lb, alpha))
            .collect::<Result<_>>()?,
        Scheme::Oma => {
            let rows: Vec<Vec<RatePair>> = unit_grid(n)
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|beta| {
                    unit_grid(n)
                        .map(|t| oma_rates(&split(t)?, lb, beta))
                        .collect::<Result<Vec<_>>>()
                        .map(|row| pareto_filter(&row))
                })
                .collect::<Result<_>>()?;
            rows.concat()
        }
    };
    Ok(RateRegion {
        scheme,
        frontier: pareto_filter(&points),
        grid_resolution: n,
    })
}

/// Points not dominated by any other point, sorted by ascending `r1`.
///
/// `a` dominates `b` when it is at least as good in both rates and strictly
/// better in one. Exact duplicates collapse to a single point.
pub fn pareto_filter(points: &[RatePair]) -> Vec<RatePair> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (&points[a], &points[b]);
        pb.r1
            .total_cmp(&pa.r1)
            .then_with(|| pb.r2.total_cmp(&pa.r2))
    });
    let mut frontier = Vec::new();
    let mut best_r2 = f64::NEG_INFINITY;
    for i in order {
        let pt = points[i];
        if pt.r2 > best_r2 {
            best_r2 = pt.r2;
            frontier.push(pt);
        }
    }
    frontier.reverse();
    frontier
}

/// Largest `r2` on the region boundary at `r1 = r1_target`, by linear
/// interpolation between frontier points.
///
/// Targets below the first frontier point take that point's `r2`, since the
/// region contains everything below and to the left of its frontier.
pub fn r2_at_r1(region: &RateRegion, r1_target: f64) -> Result<f64> {
    let frontier = &region.frontier;
    let max = region.max_r1();
    if frontier.is_empty() || !(0.0..=max).contains(&r1_target) {
        return Err(Error::OutOfRange {
            target: r1_target,
            max,
        });
    }
    let idx = frontier.partition_point(|p| p.r1 < r1_target);
    if idx == 0 {
        return Ok(frontier[0].r2);
    }
    let (a, b) = (&frontier[idx - 1], &frontier[idx]);
    let w = (r1_target - a.r1) / (b.r1 - a.r1);
    Ok(a.r2 + w * (b.r2 - a.r2))
}

/// Sup-norm distance in `r2` between two frontiers, sampled at `samples`
/// uniformly spaced `r1` values over their common range.
pub fn frontier_distance(a: &RateRegion, b: &RateRegion, samples: usize) -> Result<f64> {
    let top = a.max_r1().min(b.max_r1());
    unit_grid(samples.max(2))
        .map(|t| {
            let r1 = t * top;
            Ok((r2_at_r1(a, r1)? - r2_at_r1(b, r1)?).abs())
        })
        .try_fold(0.0f64, |acc, d: Result<f64>| Ok(acc.max(d?)))
}
