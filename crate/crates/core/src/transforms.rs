//! Berezin transforms of measures and functions, and ball measures.
//!
//! The t-Berezin transform is `μ̃_t(z) = (α/π) ∫ e^{-(αt/2)|z-w|²} dμ(w)`.
//! Atomic, Lebesgue and Gaussian measures have closed forms; everything
//! else goes through quadrature, which also serves as their cross-check.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::envelope::Envelope;
use crate::error::{check_positive, invalid, Result};
use crate::measure::{Measure, PlaneFunction};
use crate::quadrature::{integrate_disk, integrate_interval, integrate_measure, integrate_plane, QuadratureOutcome, QuadratureSpec};
use crate::lattice::square_grid;
use crate::space::{check_point, ComplexPoint, FockWeight};

/// Spacing and extent of a sampling grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMeta {
    pub spacing: f64,
    pub radius: f64,
}

impl GridMeta {
    pub fn cell_area(&self) -> f64 {
        self.spacing * self.spacing
    }
}

/// A nonnegative field sampled on a square grid.
pub trait SampledField {
    fn grid(&self) -> GridMeta;
    fn samples(&self) -> &[(ComplexPoint, f64)];
}

#[derive(Debug, Clone, PartialEq)]
pub struct BerezinField {
    pub t: f64,
    pub weight: FockWeight,
    pub grid: GridMeta,
    pub samples: Vec<(ComplexPoint, f64)>,
}

impl SampledField for BerezinField {
    fn grid(&self) -> GridMeta {
        self.grid
    }
    fn samples(&self) -> &[(ComplexPoint, f64)] {
        &self.samples
    }
}

/// Samples of `z ↦ μ(B(z, δ))`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallField {
    pub delta: f64,
    pub grid: GridMeta,
    pub samples: Vec<(ComplexPoint, f64)>,
}

impl SampledField for BallField {
    fn grid(&self) -> GridMeta {
        self.grid
    }
    fn samples(&self) -> &[(ComplexPoint, f64)] {
        &self.samples
    }
}

/// `μ̃_t(z)`, dispatching to closed forms where available.
pub fn berezin_measure(mu: &Measure, t: f64, z: ComplexPoint, w: FockWeight, spec: &QuadratureSpec) -> Result<f64> {
    check_positive("t", t)?;
    check_point("z", z)?;
    let alpha = w.alpha();
    let gamma = alpha * t / 2.0;
    Ok(match mu {
        Measure::Atomic(atoms) => {
            alpha / PI
                * atoms
                    .iter()
                    .fold(0.0, |s, a| s + a.mass * (-gamma * (z - a.point).norm_sqr()).exp())
        }
        Measure::Lebesgue { scale } => 2.0 * scale / t,
        Measure::GaussianDensity { beta, scale } => {
            // Gaussian-Gaussian convolution
            let s = beta + gamma;
            scale * alpha / s * (-(beta * gamma / s) * z.norm_sqr()).exp()
        }
        _ => berezin_measure_quadrature(mu, t, z, w, spec)?.value,
    })
}

/// `μ̃_t(z)` by quadrature for every variant, bypassing closed forms.
pub fn berezin_measure_quadrature(
    mu: &Measure,
    t: f64,
    z: ComplexPoint,
    w: FockWeight,
    spec: &QuadratureSpec,
) -> Result<QuadratureOutcome<f64>> {
    check_positive("t", t)?;
    let alpha = w.alpha();
    let gamma = alpha * t / 2.0;
    let env = Envelope::gaussian(z, gamma, alpha / PI);
    integrate_measure(
        |u: ComplexPoint| alpha / PI * (-gamma * (z - u).norm_sqr()).exp(),
        Some(&env),
        mu,
        spec,
    )
}

/// Upper bound on `sup_z μ̃_t(z)` known without sampling.
pub fn berezin_sup_bound(mu: &Measure, t: f64, w: FockWeight) -> Option<f64> {
    let alpha = w.alpha();
    match mu {
        Measure::Atomic(atoms) => Some(alpha / PI * atoms.iter().fold(0.0, |s, a| s + a.mass)),
        Measure::Lebesgue { scale } => Some(2.0 * scale / t),
        Measure::GaussianDensity { beta, scale } => Some(scale * alpha / (beta + alpha * t / 2.0)),
        Measure::Density(d) if d.growth == 0.0 => d.bound.map(|b| 2.0 * b / t),
        Measure::Radial(p) if p.growth == 0.0 => p.bound.map(|b| 2.0 * b / t),
        _ => None,
    }
}

/// `B_a f(z) = (a/π) ∫ f(w) e^{-a|z-w|²} dA(w)`.
///
/// With this normalization `f̃_t = (2/t) B_{αt/2} f` for `dμ = f dA`.
pub fn berezin_function(f: &PlaneFunction, a: f64, z: ComplexPoint, spec: &QuadratureSpec) -> Result<QuadratureOutcome<f64>> {
    check_positive("a", a)?;
    check_point("z", z)?;
    let kernel_env = Envelope::gaussian(z, a, a / PI);
    let env = Envelope::combine(Some(kernel_env), f.envelope());
    let g = |u: ComplexPoint| {
        let v = f.eval(u);
        if v == 0.0 {
            0.0
        } else {
            a / PI * v * (-a * (z - u).norm_sqr()).exp()
        }
    };
    match env {
        Some(env) => integrate_plane(g, Some(&env), spec),
        None => {
            let radius = f.support_radius.unwrap_or(spec.cutoff_radius);
            let fixed = QuadratureSpec {
                auto_cutoff: false,
                cutoff_radius: (z.norm() + radius).max(radius),
                ..*spec
            };
            integrate_plane(g, Some(&kernel_env), &fixed)
        }
    }
}

/// `μ(B(z, δ))` for the closed ball.
pub fn ball_measure(mu: &Measure, z: ComplexPoint, delta: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_positive("delta", delta)?;
    check_point("z", z)?;
    Ok(match mu {
        Measure::Atomic(atoms) => atoms
            .iter()
            .filter(|a| (a.point - z).norm() <= delta)
            .fold(0.0, |s, a| s + a.mass),
        Measure::Lebesgue { scale } => scale * PI * delta * delta,
        Measure::GaussianDensity { beta, scale } if z.norm_sqr() == 0.0 => {
            scale * PI * (1.0 - (-beta * delta * delta).exp()) / beta
        }
        Measure::Radial(p) if z.norm_sqr() == 0.0 => {
            let panel = 1.0 / spec.cells_per_unit as f64;
            2.0 * PI * integrate_interval(|r| p.eval(r) * r, 0.0, delta, panel)
        }
        _ => integrate_disk(|u: ComplexPoint| mu.density_at(u), z, delta, spec),
    })
}

fn grid_meta(grid_radius: f64, spacing: f64) -> Result<GridMeta> {
    check_positive("spacing", spacing)?;
    if !grid_radius.is_finite() || grid_radius < spacing {
        return Err(invalid("gridRadius", "must be finite and >= spacing"));
    }
    Ok(GridMeta {
        spacing,
        radius: grid_radius,
    })
}

/// Samples `μ̃_t` on the square grid covering `|z| <= grid_radius`.
pub fn berezin_field(
    mu: &Measure,
    t: f64,
    w: FockWeight,
    grid_radius: f64,
    spacing: f64,
    spec: &QuadratureSpec,
) -> Result<BerezinField> {
    check_positive("t", t)?;
    let grid = grid_meta(grid_radius, spacing)?;
    let samples = square_grid(spacing, grid_radius)
        .into_par_iter()
        .map(|z| berezin_measure(mu, t, z, w, spec).map(|v| (z, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BerezinField {
        t,
        weight: w,
        grid,
        samples,
    })
}

/// Samples `z ↦ μ(B(z, δ))` on the square grid covering `|z| <= grid_radius`.
pub fn ball_field(mu: &Measure, delta: f64, grid_radius: f64, spacing: f64, spec: &QuadratureSpec) -> Result<BallField> {
    let grid = grid_meta(grid_radius, spacing)?;
    let samples = square_grid(spacing, grid_radius)
        .into_par_iter()
        .map(|z| ball_measure(mu, z, delta, spec).map(|v| (z, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BallField { delta, grid, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gaussian_as_density(beta: f64, scale: f64) -> Measure {
        Measure::Density(
            PlaneFunction::new("gaussian", move |u: Complex64| scale * (-beta * u.norm_sqr()).exp()).bounded_by(scale),
        )
    }

    #[test]
    fn berezin_examples() {
        let w = FockWeight::default();
        let spec = QuadratureSpec::default();
        let leb = Measure::lebesgue(1.0).unwrap();
        assert_relative_eq!(berezin_measure(&leb, 2.0, c(3.0, -1.0), w, &spec).unwrap(), 1.0);
        let dirac = Measure::dirac(c(0.0, 0.0), 1.0).unwrap();
        assert_relative_eq!(berezin_measure(&dirac, 2.0, c(0.0, 0.0), w, &spec).unwrap(), 1.0 / PI);
        assert_eq!(berezin_measure(&Measure::empty(), 3.0, c(1.0, 1.0), w, &spec).unwrap(), 0.0);
        let g = Measure::gaussian(1.0, 1.0).unwrap();
        assert_relative_eq!(berezin_measure(&g, 2.0, c(0.0, 0.0), w, &spec).unwrap(), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let spec = QuadratureSpec::default();
        for alpha in [0.5, 1.0, 2.0] {
            let w = FockWeight::new(alpha).unwrap();
            for t in [1.0, 2.0, 3.5] {
                for z in [c(0.0, 0.0), c(1.0, -0.5), c(-2.0, 1.5)] {
                    let closed = berezin_measure(&Measure::gaussian(1.3, 0.7).unwrap(), t, z, w, &spec).unwrap();
                    let quad = berezin_measure(&gaussian_as_density(1.3, 0.7), t, z, w, &spec).unwrap();
                    assert!((closed - quad).abs() < 1e-8, "alpha={alpha} t={t} z={z}");
                    let leb = berezin_measure_quadrature(&Measure::lebesgue(1.0).unwrap(), t, z, w, &spec).unwrap();
                    assert!((leb.value - 2.0 / t).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn berezin_function_examples() {
        let spec = QuadratureSpec::default();
        let one = PlaneFunction::new("one", |_| 1.0).bounded_by(1.0);
        for a in [0.5, 1.0, 3.0] {
            let v = berezin_function(&one, a, c(0.7, -1.0), &spec).unwrap();
            assert!((v.value - 1.0).abs() < 1e-8);
        }
        let five = PlaneFunction::new("five", |_| 5.0).bounded_by(5.0);
        assert!((berezin_function(&five, 1.0, c(0.0, 2.0), &spec).unwrap().value - 5.0).abs() < 1e-7);
        let sq = PlaneFunction::new("|w|^2", |u: Complex64| u.norm_sqr()).bounded_by(1.0).with_growth(2.0);
        assert!((berezin_function(&sq, 1.0, c(0.0, 0.0), &spec).unwrap().value - 1.0).abs() < 1e-8);
    }

    #[test]
    fn berezin_measure_vs_function() {
        // f̃_t = (2/t) B_{αt/2} f; at t = 2 the two coincide
        let spec = QuadratureSpec::default();
        let f = PlaneFunction::new("gauss", |u: Complex64| (-u.norm_sqr()).exp()).bounded_by(1.0);
        let mu = Measure::Density(f.clone());
        for alpha in [0.5, 1.0, 2.0] {
            let w = FockWeight::new(alpha).unwrap();
            for t in [1.0, 2.0, 4.0] {
                let z = c(0.4, -0.9);
                let lhs = berezin_measure(&mu, t, z, w, &spec).unwrap();
                let rhs = berezin_function(&f, alpha * t / 2.0, z, &spec).unwrap().value;
                assert!((lhs - 2.0 / t * rhs).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn ball_examples() {
        let spec = QuadratureSpec::default();
        assert_relative_eq!(ball_measure(&Measure::lebesgue(1.0).unwrap(), c(5.0, 1.0), 1.0, &spec).unwrap(), PI);
        let atom = Measure::dirac(c(0.0, 0.0), 2.0).unwrap();
        assert_eq!(ball_measure(&atom, c(0.0, 0.0), 0.5, &spec).unwrap(), 2.0);
        assert_eq!(ball_measure(&atom, c(3.0, 0.0), 0.5, &spec).unwrap(), 0.0);
        let g = Measure::gaussian(1.0, 1.0).unwrap();
        let expect = PI * (1.0 - (-1.0_f64).exp());
        assert_relative_eq!(ball_measure(&g, c(0.0, 0.0), 1.0, &spec).unwrap(), expect, max_relative = 1e-14);
        assert_relative_eq!(expect, 1.98587, epsilon = 1e-5);
        // off-center goes through the disk rule; compare with the density path
        let off = ball_measure(&g, c(0.5, 0.5), 1.0, &spec).unwrap();
        let off2 = ball_measure(&gaussian_as_density(1.0, 1.0), c(0.5, 0.5), 1.0, &spec).unwrap();
        assert_relative_eq!(off, off2, max_relative = 1e-14);
        // centered disk via the disk rule
        let centered = integrate_disk(|u: Complex64| (-u.norm_sqr()).exp(), c(0.0, 0.0), 1.0, &spec);
        assert_relative_eq!(centered, expect, max_relative = 1e-12);
    }

    #[test]
    fn field_examples() {
        let w = FockWeight::default();
        let spec = QuadratureSpec::default();
        let f = berezin_field(&Measure::lebesgue(1.0).unwrap(), 2.0, w, 3.0, 0.5, &spec).unwrap();
        assert!(f.samples.iter().all(|(_, v)| (v - 1.0).abs() < 1e-15));
        let f = berezin_field(&Measure::empty(), 2.0, w, 3.0, 0.5, &spec).unwrap();
        assert!(f.samples.iter().all(|(_, v)| *v == 0.0));
        let f = berezin_field(&Measure::dirac(c(0.0, 0.0), 1.0).unwrap(), 2.0, w, 3.0, 0.5, &spec).unwrap();
        for (z, v) in &f.samples {
            assert_relative_eq!(*v, (-z.norm_sqr()).exp() / PI, max_relative = 1e-14);
        }
        assert!(berezin_field(&Measure::empty(), 2.0, w, 0.1, 0.5, &spec).is_err());
    }

    #[test]
    fn ball_dominated_by_berezin() {
        let spec = QuadratureSpec::default();
        let measures = [
            Measure::atomic([(c(0.0, 0.0), 1.0), (c(2.0, 0.0), 3.0), (c(-1.0, 2.0), 0.5)]).unwrap(),
            Measure::gaussian(1.0, 1.0).unwrap(),
            Measure::lebesgue(1.0).unwrap(),
        ];
        for alpha in [0.5, 1.0] {
            let w = FockWeight::new(alpha).unwrap();
            for mu in &measures {
                for t in [1.0, 2.0] {
                    for r in [0.5, 1.0] {
                        for z in [c(0.0, 0.0), c(1.5, 0.5), c(-1.0, 2.0)] {
                            let ball = ball_measure(mu, z, r, &spec).unwrap();
                            let bound = (alpha * t * r * r / 2.0).exp() * PI / alpha
                                * berezin_measure(mu, t, z, w, &spec).unwrap();
                            assert!(ball <= bound + spec.tolerance);
                        }
                    }
                }
            }
        }
    }
}
