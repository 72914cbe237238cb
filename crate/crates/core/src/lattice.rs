//! Square r-lattices of the plane and lattice ball-sum sequences.
//!
//! Centers sit at `s (m + i n)` with `s = r√2`, so closed balls of radius
//! `r` cover the plane (the half-diagonal of a cell is exactly `r`) and no
//! point lies in more than four of them.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{check_positive, invalid, Result};
use crate::measure::{Atom, Measure};
use crate::quadrature::QuadratureSpec;
use crate::space::{ComplexPoint, Exponent};
use crate::transforms::ball_measure;
use crate::verdict::{classify_growth, GrowthCurve};

#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    pub r: f64,
    pub spacing: f64,
    /// Ordered by increasing modulus, ties by angle in `[0, 2π)`.
    pub centers: Vec<ComplexPoint>,
    pub extent_radius: f64,
    pub multiplicity_bound: usize,
}

/// Integer points `(m, n)` with `spacing * |m + i n| <= radius`, in
/// enumeration order.
fn ordered_indices(spacing: f64, radius: f64) -> Vec<(i64, i64)> {
    let k = (radius / spacing).floor() as i64 + 1;
    let limit = radius / spacing;
    let mut pts: Vec<(i64, i64)> = (-k..=k)
        .flat_map(|m| (-k..=k).map(move |n| (m, n)))
        .filter(|&(m, n)| ((m * m + n * n) as f64).sqrt() <= limit * (1.0 + 1e-12))
        .collect();
    pts.sort_by(|a, b| {
        let ra = a.0 * a.0 + a.1 * a.1;
        let rb = b.0 * b.0 + b.1 * b.1;
        ra.cmp(&rb).then_with(|| angle(*a).total_cmp(&angle(*b)))
    });
    pts
}

fn angle((m, n): (i64, i64)) -> f64 {
    let a = (n as f64).atan2(m as f64);
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Square grid nodes `spacing * (m + i n)` inside the disk of radius
/// `radius`, in lattice enumeration order.
pub fn square_grid(spacing: f64, radius: f64) -> Vec<ComplexPoint> {
    ordered_indices(spacing, radius)
        .into_iter()
        .map(|(m, n)| Complex64::new(m as f64 * spacing, n as f64 * spacing))
        .collect()
}

impl Lattice {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Distance from `z` to the closest center, by exhaustive scan.
    pub fn distance_to_nearest(&self, z: ComplexPoint) -> f64 {
        self.centers
            .iter()
            .map(|a| (z - a).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether each point lies in some closed ball `B(a_k, r)`.
    pub fn covers(&self, points: &[ComplexPoint]) -> bool {
        points
            .iter()
            .all(|&z| self.distance_to_nearest(z) <= self.r * (1.0 + 1e-12))
    }

    /// Number of closed balls containing `z`.
    pub fn multiplicity_at(&self, z: ComplexPoint) -> usize {
        self.centers
            .iter()
            .filter(|&&a| (z - a).norm() <= self.r * (1.0 + 1e-12))
            .count()
    }

    pub fn min_pairwise_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.centers.iter().enumerate() {
            for b in &self.centers[i + 1..] {
                best = best.min((a - b).norm());
            }
        }
        best
    }

    /// Atomic measure placing `mass(k)` on the `k`-th center (`k` from 1).
    pub fn comb(&self, mass: impl Fn(usize) -> f64) -> Result<Measure> {
        self.centers
            .iter()
            .enumerate()
            .map(|(i, &a)| Atom::new(a, mass(i + 1)))
            .collect::<Result<Vec<_>>>()
            .map(Measure::Atomic)
    }
}

/// Square r-lattice whose balls cover the disk `|z| <= extent_radius`.
pub fn make_lattice(r: f64, extent_radius: f64) -> Result<Lattice> {
    check_positive("r", r)?;
    if !extent_radius.is_finite() || extent_radius < 0.0 {
        return Err(invalid("extentRadius", "must be finite and >= 0"));
    }
    let spacing = r * SQRT_2;
    Ok(Lattice {
        r,
        spacing,
        centers: square_grid(spacing, extent_radius + r),
        extent_radius,
        multiplicity_bound: 4,
    })
}

/// `μ(B(a_k, r))` in center enumeration order.
pub fn lattice_ball_sums(mu: &Measure, lat: &Lattice, spec: &QuadratureSpec) -> Result<Vec<f64>> {
    if lat.is_empty() {
        return Err(crate::error::FockError::Empty("lattice"));
    }
    lat.centers
        .par_iter()
        .map(|&a| ball_measure(mu, a, lat.r, spec))
        .collect()
}

/// Truncated `l^p` norms of a lattice sequence, accumulated over index
/// blocks of sizes 1, 4, 16, 64, ... Lattice indices grow like the area
/// enclosed, so each block corresponds to a doubling of the shell radius.
/// A trailing incomplete block contributes to the final norm but not to the
/// growth verdict. Curve points are `(cumulative term count, norm)`.
pub fn sequence_lp(seq: &[f64], p: Exponent) -> GrowthCurve {
    let mut bounds = Vec::new();
    let (mut end, mut size) = (1usize, 1usize);
    while end <= seq.len() {
        bounds.push(end);
        size *= 4;
        end += size;
    }
    let complete = bounds.len();
    if bounds.last().copied() != Some(seq.len()) && !seq.is_empty() {
        bounds.push(seq.len());
    }
    let mut points = Vec::with_capacity(bounds.len());
    let mut powers = Vec::with_capacity(bounds.len());
    let mut acc = 0.0_f64;
    let mut start = 0;
    for &b in &bounds {
        for &x in &seq[start..b] {
            acc = match p {
                Exponent::Finite(p) => acc + x.abs().powf(p),
                Exponent::Infinity => acc.max(x.abs()),
            };
        }
        start = b;
        powers.push(acc);
        let norm = match p {
            Exponent::Finite(p) => acc.powf(1.0 / p),
            Exponent::Infinity => acc,
        };
        points.push((b as f64, norm));
    }
    GrowthCurve {
        growth: classify_growth(&powers[..complete]),
        points,
    }
}
