//! Unit-average-power PSK and square QAM constellations, and the phase/amplitude
//! relation between two symbols that the RAMA transmit chains consume.
//!
//! Point order is fixed so that anything serialized from a constellation is
//! reproducible:
//!
//! * PSK: increasing angle, point `k` at `2πk/M`.
//! * QAM: row-major over the `√M × √M` grid, rows by ascending imaginary
//!   coordinate, columns by ascending real coordinate.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstellationKind {
    Psk,
    Qam,
}

impl fmt::Display for ConstellationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstellationKind::Psk => f.write_str("psk"),
            ConstellationKind::Qam => f.write_str("qam"),
        }
    }
}

/// A finite symbol alphabet normalized to `E[|s|²] = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    kind: ConstellationKind,
    points: Vec<Complex64>,
}

/// `s2 = s1 · s_bar · e^{j·delta_theta}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolRelation {
    /// Phase rotation in `[0, 2π)`.
    pub delta_theta: f64,
    /// Amplitude ratio `|s2| / |s1|`.
    pub s_bar: f64,
}

impl SymbolRelation {
    /// The rotation `e^{jΔθ}` applied by the per-beam phase shifter.
    pub fn rotation(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.delta_theta)
    }

    /// Rebuilds `s2` from `s1`.
    pub fn apply(&self, s1: Complex64) -> Complex64 {
        s1 * self.s_bar * self.rotation()
    }
}

/// M-ary PSK on the unit circle.
pub fn make_psk(order: usize) -> Result<Constellation> {
    if order < 2 {
        return Err(Error::InvalidOrder { kind: "psk", order });
    }
    let points = (0..order)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / order as f64))
        .collect();
    Ok(Constellation {
        kind: ConstellationKind::Psk,
        points,
    })
}

/// Square M-QAM on the odd-integer grid, scaled to unit average power.
pub fn make_qam(order: usize) -> Result<Constellation> {
    let side = order.isqrt();
    if order < 4 || side * side != order {
        return Err(Error::InvalidOrder { kind: "qam", order });
    }
    // Coordinates -(side-1), ..., -1, 1, ..., side-1.
    let levels: Vec<f64> = (0..side)
        .map(|i| (2 * i) as f64 - (side - 1) as f64)
        .collect();
    // Mean of a² + b² over the grid is 2(M - 1)/3.
    let scale = (2.0 * (order as f64 - 1.0) / 3.0).sqrt().recip();
    let points = levels
        .iter()
        .flat_map(|&im| levels.iter().map(move |&re| Complex64::new(re, im) * scale))
        .collect();
    Ok(Constellation {
        kind: ConstellationKind::Qam,
        points,
    })
}

/// Phase difference and amplitude ratio taking `s1` to `s2`.
pub fn relate(s1: Complex64, s2: Complex64) -> Result<SymbolRelation> {
    let s1_abs = s1.norm();
    if s1_abs == 0.0 {
        return Err(Error::UndefinedRatio);
    }
    Ok(SymbolRelation {
        delta_theta: wrap_angle(s2.arg() - s1.arg()),
        s_bar: s2.norm() / s1_abs,
    })
}

/// Maps an angle onto `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let wrapped = theta.rem_euclid(TAU);
    // rem_euclid rounds tiny negative inputs up to exactly TAU.
    if wrapped >= TAU {
        0.0
    } else {
        wrapped
    }
}

impl Constellation {
    pub fn kind(&self) -> ConstellationKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn point(&self, index: usize) -> Option<Complex64> {
        self.points.get(index).copied()
    }

    /// Empirical `E[|s|²]` over the alphabet.
    pub fn mean_power(&self) -> f64 {
        self.points.iter().map(|s| s.norm_sqr()).sum::<f64>() / self.points.len() as f64
    }

    /// Relation between points `from` and `to`.
    ///
    /// For PSK the relation is taken from the index difference, so `s_bar`
    /// is exactly 1 and `delta_theta` is an exact multiple of `2π/M`.
    pub fn relation(&self, from: usize, to: usize) -> Result<SymbolRelation> {
        let m = self.order();
        if from >= m || to >= m {
            return Err(Error::param(
                "index",
                format!("({from}, {to}) outside constellation of order {m}"),
            ));
        }
        match self.kind {
            ConstellationKind::Psk => {
                let steps = (to + m - from) % m;
                Ok(SymbolRelation {
                    delta_theta: TAU * steps as f64 / m as f64,
                    s_bar: 1.0,
                })
            }
            ConstellationKind::Qam => relate(self.points[from], self.points[to]),
        }
    }

    /// Every ordered pair `(s1, s2)`, `order²` in total.
    pub fn ordered_pairs(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.points
            .iter()
            .flat_map(move |&a| self.points.iter().map(move |&b| (a, b)))
    }

    /// Index of the point nearest `s`, and its distance.
    pub fn nearest(&self, s: Complex64) -> (usize, f64) {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| (i, (p - s).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("constellation is never empty")
    }
}
