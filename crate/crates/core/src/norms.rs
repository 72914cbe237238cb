//! Weighted norms `‖f‖_{p,α}`, `‖f‖_{p,μ}` (finite and infinite `p`), the
//! `p → ∞` limit probe, the local pointwise estimate, and truncated `L^p`
//! norms of sampled fields.
//!
//! Finite-`p` norms integrate `(|f e^{-α|z|²/2}| / S)^p` where `S` is the
//! sampled supremum, so the integrand peaks near 1 and the absolute
//! quadrature tolerance acts as a relative one.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{check_positive, invalid, FockError, Result};
use crate::function::EntireFunction;
use crate::measure::Measure;
use crate::quadrature::{integrate_disk, integrate_measure, integrate_measure_series, integrate_plane, integrate_plane_series, QuadratureSpec};
use crate::space::{check_point, ComplexPoint, Exponent, FockWeight};
use crate::transforms::SampledField;
use crate::verdict::{classify_growth, Growth, GrowthCurve, Verdict};

#[derive(Debug, Clone)]
pub struct NormParams {
    pub p: Exponent,
    pub weight: FockWeight,
    /// `None` selects `‖·‖_{p,α}`.
    pub measure: Option<Measure>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormValue {
    pub value: f64,
    /// `Converging` when the value is a settled finite norm.
    pub growth: Growth,
    pub note: Option<String>,
}

impl NormValue {
    fn settled(value: f64) -> Self {
        Self {
            value,
            growth: Growth::Converging,
            note: None,
        }
    }

    pub fn is_finite_norm(&self) -> bool {
        self.growth == Growth::Converging && self.value.is_finite()
    }
}

/// Sampled supremum of `ln |f e^{-α|z|²/2}|` over grid nodes accepted by
/// `keep`, plus the analytic peak hints. Returns `(ln sup, spacing)`.
fn ln_sup<K>(f: &EntireFunction, w: FockWeight, spec: &QuadratureSpec, keep: K, region: Option<(ComplexPoint, f64)>) -> (f64, f64)
where
    K: Fn(ComplexPoint) -> bool + Sync,
{
    let hint_best = f
        .sup_hints(w)
        .into_iter()
        .filter(|z| keep(*z))
        .map(|z| f.ln_abs_weighted(z, w))
        .fold(f64::NEG_INFINITY, f64::max);
    let env = f.weighted_envelope(w).filter(|e| e.is_decaying());
    let (center, radius) = match (region, env) {
        (Some(r), _) => r,
        (None, Some(env)) => {
            let level = if hint_best.is_finite() {
                hint_best - 14.0
            } else {
                env.ln_amplitude - 30.0
            };
            (env.center, env.radius_below(level).unwrap_or(spec.cutoff_radius))
        }
        (None, None) => (Complex64::new(0.0, 0.0), spec.cutoff_radius),
    };
    let h = 1.0 / spec.cells_per_unit as f64;
    // snap to the h-lattice so the axes through the origin are sampled
    let center = Complex64::new((center.re / h).round() * h, (center.im / h).round() * h);
    let n = (radius / h).ceil() as i64;
    let grid_best = (-n..=n)
        .into_par_iter()
        .map(|j| {
            let mut best = f64::NEG_INFINITY;
            for i in -n..=n {
                let z = center + Complex64::new(i as f64 * h, j as f64 * h);
                if keep(z) {
                    best = best.max(f.ln_abs_weighted(z, w));
                }
            }
            best
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);
    (hint_best.max(grid_best), h)
}

fn resolution_for(spec: &QuadratureSpec, p: f64, w: FockWeight) -> QuadratureSpec {
    // |f w|^p has Gaussian width about 1/sqrt(p α)
    let cells = (2.0 * (p * w.alpha()).sqrt()).ceil() as u32;
    spec.with_cells(spec.cells_per_unit.max(cells))
}

/// `‖f‖_{p,α}`. For `p = ∞` the value is a grid supremum (with analytic
/// maximizers for monomials and kernels) and the note records the spacing.
pub fn fock_norm(f: &EntireFunction, p: Exponent, w: FockWeight, spec: &QuadratureSpec) -> Result<NormValue> {
    let (s_ln, h) = ln_sup(f, w, spec, |_| true, None);
    let p = match p {
        Exponent::Infinity => {
            return Ok(NormValue {
                value: s_ln.exp(),
                growth: Growth::Converging,
                note: Some(format!("grid supremum at spacing {h}")),
            })
        }
        Exponent::Finite(p) => p,
    };
    if s_ln == f64::NEG_INFINITY {
        return Ok(NormValue::settled(0.0));
    }
    let spec = resolution_for(spec, p, w);
    let g = |z: ComplexPoint| (p * (f.ln_abs_weighted(z, w) - s_ln)).exp();
    let env = f
        .weighted_envelope(w)
        .map(|e| e.pow(p).scaled_ln(-p * s_ln))
        .filter(|e| e.is_decaying());
    let prefactor = p * w.alpha() / (2.0 * PI);
    let (integral, growth, note) = match env {
        Some(env) if spec.auto_cutoff => {
            let (value, settled) = refined_plane(&g, &env, &spec, p)?;
            let growth = if settled {
                Growth::Converging
            } else {
                Growth::Inconclusive
            };
            (value, growth, None)
        }
        _ => {
            let series = integrate_plane_series(g, Complex64::new(0.0, 0.0), &spec.probe_radii(), &spec);
            let values: Vec<f64> = series.iter().map(|s| s.1).collect();
            let growth = classify_growth(&values);
            let note = format!("truncated at |z| <= {}", spec.cutoff_radius);
            (values.last().copied().unwrap_or(0.0), growth, Some(note))
        }
    };
    Ok(NormValue {
        value: s_ln.exp() * (prefactor * integral).powf(1.0 / p),
        growth,
        note,
    })
}

const MAX_REFINED_CELLS: u32 = 256;

/// Plane integral of `|f w|^p / S^p`. When `p` is not an even integer the
/// integrand has `|z - z₀|^p` kinks at zeros of `f`, where the midpoint rule
/// is only `O(h^{2+p})`; the grid is then doubled with Richardson
/// extrapolation at that order until the error estimate is below tolerance.
fn refined_plane<G>(g: &G, env: &crate::envelope::Envelope, spec: &QuadratureSpec, p: f64) -> Result<(f64, bool)>
where
    G: Fn(ComplexPoint) -> f64 + Sync,
{
    let out = integrate_plane(g, Some(env), spec)?;
    if out.verdict != Verdict::Holds {
        return Ok((out.value, false));
    }
    if p % 2.0 == 0.0 {
        return Ok((out.value, true));
    }
    let factor = 2f64.powf(2.0 + p) - 1.0;
    let mut coarse = out.value;
    let mut cells = out.cells_per_unit;
    while cells < MAX_REFINED_CELLS {
        cells *= 2;
        let fine = integrate_plane(g, Some(env), &spec.with_cells(cells))?;
        let correction = (fine.value - coarse) / factor;
        if correction.abs() <= spec.tolerance * fine.value.abs().max(1.0) {
            return Ok((fine.value + correction, true));
        }
        coarse = fine.value;
    }
    Ok((coarse, false))
}

/// `‖f‖_{p,μ}` with no normalizing prefactor. For `p = ∞` and atomic `μ`
/// the essential supremum is the exact maximum over atoms.
pub fn mu_norm(f: &EntireFunction, p: Exponent, w: FockWeight, mu: &Measure, spec: &QuadratureSpec) -> Result<NormValue> {
    match (p, mu) {
        (Exponent::Infinity, Measure::Atomic(atoms)) => Ok(NormValue::settled(
            atoms
                .iter()
                .map(|a| f.ln_abs_weighted(a.point, w))
                .fold(f64::NEG_INFINITY, f64::max)
                .exp(),
        )),
        (Exponent::Infinity, Measure::Lebesgue { .. } | Measure::GaussianDensity { .. }) => fock_norm(f, p, w, spec),
        (Exponent::Infinity, _) => {
            let region = mu.support_radius().map(|r| (Complex64::new(0.0, 0.0), r));
            let (s_ln, h) = ln_sup(f, w, spec, |z| mu.density_at(z) > 0.0, region);
            Ok(NormValue {
                value: s_ln.exp(),
                growth: Growth::Converging,
                note: Some(format!("grid supremum over the support at spacing {h}")),
            })
        }
        (Exponent::Finite(p), Measure::Atomic(atoms)) => {
            let terms: Vec<f64> = atoms
                .iter()
                .map(|a| a.mass.ln() + p * f.ln_abs_weighted(a.point, w))
                .collect();
            Ok(NormValue::settled((log_sum_exp(&terms) / p).exp()))
        }
        (Exponent::Finite(p), _) => {
            let (s_ln, _) = ln_sup(f, w, spec, |_| true, None);
            if s_ln == f64::NEG_INFINITY {
                return Ok(NormValue::settled(0.0));
            }
            let spec = resolution_for(spec, p, w);
            let g = |z: ComplexPoint| (p * (f.ln_abs_weighted(z, w) - s_ln)).exp();
            let env = f.weighted_envelope(w).map(|e| e.pow(p).scaled_ln(-p * s_ln));
            let out = integrate_measure(g, env.as_ref(), mu, &spec)?;
            let (integral, growth, note) = if out.verdict == Verdict::Holds {
                (out.value, Growth::Converging, None)
            } else {
                let series = integrate_measure_series(g, mu, &spec.probe_radii(), &spec);
                let values: Vec<f64> = series.iter().map(|s| s.1).collect();
                let note = format!("truncated at |z| <= {}", spec.cutoff_radius);
                (values.last().copied().unwrap_or(0.0), classify_growth(&values), Some(note))
            };
            Ok(NormValue {
                value: s_ln.exp() * integral.powf(1.0 / p),
                growth,
                note,
            })
        }
    }
}

pub fn norm(f: &EntireFunction, params: &NormParams, spec: &QuadratureSpec) -> Result<NormValue> {
    match &params.measure {
        None => fock_norm(f, params.p, params.weight, spec),
        Some(mu) => mu_norm(f, params.p, params.weight, mu, spec),
    }
}

pub(crate) fn log_sum_exp(terms: &[f64]) -> f64 {
    let peak = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if peak == f64::NEG_INFINITY {
        return peak;
    }
    peak + terms.iter().map(|t| (t - peak).exp()).sum::<f64>().ln()
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormLimitProbe {
    pub curve: Vec<(f64, f64)>,
    /// The `p = ∞` norm the curve should approach.
    pub limit: f64,
}

impl NormLimitProbe {
    pub fn final_gap(&self) -> f64 {
        self.curve.last().map_or(f64::INFINITY, |(_, v)| (v - self.limit).abs())
    }
}

/// Norms along an increasing sequence of exponents, with the `p = ∞` norm
/// as the limit target. The measure case requires finite total mass.
pub fn norm_limit_probe(
    f: &EntireFunction,
    w: FockWeight,
    measure: Option<&Measure>,
    p_sequence: &[f64],
    spec: &QuadratureSpec,
) -> Result<NormLimitProbe> {
    if p_sequence.is_empty() {
        return Err(FockError::Empty("p sequence"));
    }
    if p_sequence.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("pSequence", "must be strictly increasing"));
    }
    if let Some(mu) = measure {
        let mass = total_mass(mu, spec)?;
        if !mass.is_finite() {
            return Err(invalid("measure", "the limit probe requires finite total mass"));
        }
    }
    let params = |p: Exponent| NormParams {
        p,
        weight: w,
        measure: measure.cloned(),
    };
    let curve = p_sequence
        .iter()
        .map(|&p| {
            let e = Exponent::new(p)?;
            Ok((p, norm(f, &params(e), spec)?.value))
        })
        .collect::<Result<Vec<_>>>()?;
    let limit = norm(f, &params(Exponent::Infinity), spec)?.value;
    Ok(NormLimitProbe { curve, limit })
}

/// Total mass `μ(ℂ)`; infinite when the truncations diverge.
pub fn total_mass(mu: &Measure, spec: &QuadratureSpec) -> Result<f64> {
    if let Some(m) = mu.closed_form_mass() {
        return Ok(m);
    }
    let out = integrate_measure(|_| 1.0_f64, Some(&crate::envelope::Envelope::bounded(1.0)), mu, spec)?;
    if out.verdict == Verdict::Holds {
        return Ok(out.value);
    }
    let series = integrate_measure_series(|_| 1.0_f64, mu, &spec.probe_radii(), spec);
    let values: Vec<f64> = series.iter().map(|s| s.1).collect();
    Ok(match classify_growth(&values) {
        Growth::Diverging => f64::INFINITY,
        _ => values.last().copied().unwrap_or(0.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointwiseEstimate {
    /// `|f(a) e^{-α|a|²/2}|^p`
    pub lhs: f64,
    /// `(1/r²) ∫_{B(a,r)} |f e^{-α|z|²/2}|^p dA`
    pub rhs: f64,
    /// The constant making the estimate an equality, `lhs / rhs`.
    pub measured_c: f64,
}

pub fn pointwise_estimate_check(
    f: &EntireFunction,
    a: ComplexPoint,
    r: f64,
    p: f64,
    w: FockWeight,
    spec: &QuadratureSpec,
) -> Result<PointwiseEstimate> {
    check_point("a", a)?;
    check_positive("r", r)?;
    check_positive("p", p)?;
    let lhs = (p * f.ln_abs_weighted(a, w)).exp();
    let integral: f64 = integrate_disk(|z| (p * f.ln_abs_weighted(z, w)).exp(), a, r, spec);
    let rhs = integral / (r * r);
    let measured_c = if rhs > 0.0 { lhs / rhs } else { 0.0 };
    Ok(PointwiseEstimate { lhs, rhs, measured_c })
}

/// Truncated `L^p(dA)` norms of a sampled field over the disks `|z| <= R`.
/// The verdict is taken on the accumulated `p`-th powers (running maxima
/// for `p = ∞`).
pub fn field_lp_norm<F: SampledField>(field: &F, p: Exponent, radii: &[f64]) -> Result<GrowthCurve> {
    let grid = field.grid();
    if radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("radii", "must be strictly increasing"));
    }
    if radii.last().is_some_and(|&r| r > grid.radius * (1.0 + 1e-12)) {
        return Err(invalid("radii", "exceed the sampled grid radius"));
    }
    let area = grid.cell_area();
    let mut acc = vec![0.0_f64; radii.len()];
    for (z, v) in field.samples() {
        let rho = z.norm();
        if let Some(k) = radii.iter().position(|&r| rho <= r * (1.0 + 1e-12)) {
            acc[k] = match p {
                Exponent::Finite(p) => acc[k] + v.abs().powf(p) * area,
                Exponent::Infinity => acc[k].max(v.abs()),
            };
        }
    }
    let mut powers = Vec::with_capacity(radii.len());
    let mut running = 0.0_f64;
    for a in acc {
        running = match p {
            Exponent::Finite(_) => running + a,
            Exponent::Infinity => running.max(a),
        };
        powers.push(running);
    }
    let points = radii
        .iter()
        .zip(&powers)
        .map(|(&r, &s)| match p {
            Exponent::Finite(p) => (r, s.powf(1.0 / p)),
            Exponent::Infinity => (r, s),
        })
        .collect();
    Ok(GrowthCurve {
        points,
        growth: classify_growth(&powers),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::berezin_field;
    use approx::assert_relative_eq;
    use statrs::function::gamma::ln_gamma;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// `‖z‖_{p,α} = (2/(pα))^{1/2} Γ(p/2+1)^{1/p}`
    fn monomial_norm_oracle(p: f64, alpha: f64) -> f64 {
        (2.0 / (p * alpha)).sqrt() * (ln_gamma(p / 2.0 + 1.0) / p).exp()
    }

    #[test]
    fn fock_norm_examples() {
        let spec = QuadratureSpec::default();
        let w = FockWeight::default();
        let one = fock_norm(&EntireFunction::constant(1.0), Exponent::Finite(2.0), w, &spec).unwrap();
        assert!((one.value - 1.0).abs() < 1e-8);
        let z = fock_norm(&EntireFunction::monomial(1), Exponent::Finite(2.0), w, &spec).unwrap();
        assert!((z.value - 1.0).abs() < 1e-8);
        let zinf = fock_norm(&EntireFunction::monomial(1), Exponent::Infinity, w, &spec).unwrap();
        assert_relative_eq!(zinf.value, (-0.5_f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn kernel_has_unit_norm() {
        let spec = QuadratureSpec::default();
        for alpha in [0.5, 1.0, 2.0] {
            let w = FockWeight::new(alpha).unwrap();
            for z in [c(0.0, 0.0), c(1.0, 0.0), c(2.0, 1.0)] {
                let k = EntireFunction::kernel(z);
                for p in [1.0, 2.0, 4.0] {
                    let v = fock_norm(&k, Exponent::Finite(p), w, &spec).unwrap();
                    assert!((v.value - 1.0).abs() < 1e-6, "alpha={alpha} z={z} p={p}: {}", v.value);
                }
                let sup = fock_norm(&k, Exponent::Infinity, w, &spec).unwrap().value;
                assert!((1.0 - 1e-6..=1.0).contains(&sup));
            }
        }
    }

    #[test]
    fn monomial_norms_match_gamma_formula() {
        let spec = QuadratureSpec::default();
        for alpha in [0.5, 1.0] {
            let w = FockWeight::new(alpha).unwrap();
            for p in [1.0, 2.0, 3.0, 8.0, 32.0, 128.0] {
                let v = fock_norm(&EntireFunction::monomial(1), Exponent::Finite(p), w, &spec).unwrap();
                assert!((v.value - monomial_norm_oracle(p, alpha)).abs() < 1e-6, "p={p} alpha={alpha}: {} vs {}", v.value, monomial_norm_oracle(p, alpha));
            }
        }
    }

    #[test]
    fn boundary_quadratic_exponential_diverges() {
        let w = FockWeight::default();
        let f = EntireFunction::QuadraticExponential {
            a: c(0.5, 0.0),
            b: c(0.0, 0.0),
            c: c(0.0, 0.0),
        };
        let spec = QuadratureSpec::default();
        let v = fock_norm(&f, Exponent::Finite(2.0), w, &spec).unwrap();
        assert_eq!(v.growth, Growth::Diverging);
        let sup = fock_norm(&f, Exponent::Infinity, w, &spec).unwrap();
        assert_relative_eq!(sup.value, 1.0);
    }

    #[test]
    fn mu_norm_examples() {
        let spec = QuadratureSpec::default();
        let w = FockWeight::default();
        let mu = Measure::atomic([(c(0.0, 0.0), 1.0), (c(2.0, 0.0), 3.0)]).unwrap();
        let one = EntireFunction::constant(1.0);
        let v = mu_norm(&one, Exponent::Finite(2.0), w, &mu, &spec).unwrap();
        assert_relative_eq!(v.value, (1.0 + 3.0 * (-4.0_f64).exp()).sqrt(), max_relative = 1e-14);
        assert_eq!(mu_norm(&one, Exponent::Infinity, w, &mu, &spec).unwrap().value, 1.0);
        assert_eq!(
            mu_norm(&EntireFunction::monomial(3), Exponent::Finite(2.0), w, &Measure::empty(), &spec)
                .unwrap()
                .value,
            0.0
        );
        // dμ = dA carries no (pα/2π) factor
        let leb = Measure::lebesgue(1.0).unwrap();
        let v = mu_norm(&one, Exponent::Finite(2.0), w, &leb, &spec).unwrap();
        assert!((v.value - std::f64::consts::PI.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn sup_is_dominated_by_p_norms() {
        let spec = QuadratureSpec::default();
        let w = FockWeight::new(1.5).unwrap();
        let fs = [
            EntireFunction::constant(2.0),
            EntireFunction::monomial(2),
            EntireFunction::orthonormal(4),
            EntireFunction::kernel(c(1.0, -1.0)),
            EntireFunction::Polynomial(vec![c(1.0, 0.0), c(0.0, 1.0), c(0.5, 0.0)]),
        ];
        for f in &fs {
            let sup = fock_norm(f, Exponent::Infinity, w, &spec).unwrap().value;
            for p in [1.0, 2.0, 5.0] {
                let v = fock_norm(f, Exponent::Finite(p), w, &spec).unwrap().value;
                assert!(sup <= v * (1.0 + 1e-9), "{f:?} p={p}: sup {sup} > {v}");
            }
        }
    }

    #[test]
    fn homogeneity() {
        let spec = QuadratureSpec::default();
        let w = FockWeight::default();
        let mu = Measure::atomic([(c(0.5, 0.0), 1.0), (c(-1.0, 1.0), 2.0)]).unwrap();
        let k = c(-2.0, 1.5);
        for f in [EntireFunction::kernel(c(0.3, 0.3)), EntireFunction::Polynomial(vec![c(1.0, 0.0), c(2.0, 0.0)])] {
            let g = f.scaled(k, w);
            for p in [Exponent::Finite(1.0), Exponent::Finite(3.0), Exponent::Infinity] {
                let a = mu_norm(&f, p, w, &mu, &spec).unwrap().value;
                let b = mu_norm(&g, p, w, &mu, &spec).unwrap().value;
                assert_relative_eq!(b, k.norm() * a, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn limit_probe_examples() {
        let spec = QuadratureSpec::default();
        let w = FockWeight::default();
        let ps: Vec<f64> = (1..=8).map(|k| 2f64.powi(k)).collect();
        let probe = norm_limit_probe(&EntireFunction::monomial(1), w, None, &ps, &spec).unwrap();
        assert!(probe.curve.windows(2).all(|p| p[1].1 < p[0].1));
        assert!(probe.final_gap() < 0.05);
        let k = norm_limit_probe(&EntireFunction::kernel(c(1.0, 1.0)), w, None, &ps[..3], &spec).unwrap();
        assert!(k.curve.iter().all(|(_, v)| (v - 1.0).abs() < 1e-6));
        let dirac = Measure::dirac(c(0.0, 0.0), 1.0).unwrap();
        let d = norm_limit_probe(&EntireFunction::constant(1.0), w, Some(&dirac), &ps, &spec).unwrap();
        assert!(d.curve.iter().all(|(_, v)| (v - 1.0).abs() < 1e-14));
        assert_eq!(d.limit, 1.0);
        assert!(norm_limit_probe(&EntireFunction::constant(1.0), w, Some(&Measure::lebesgue(1.0).unwrap()), &ps, &spec).is_err());
    }

    #[test]
    fn pointwise_examples() {
        let spec = QuadratureSpec::default();
        let w = FockWeight::default();
        let e = pointwise_estimate_check(&EntireFunction::constant(1.0), c(0.0, 0.0), 1.0, 2.0, w, &spec).unwrap();
        let integral = std::f64::consts::PI * (1.0 - (-1.0_f64).exp());
        assert_relative_eq!(e.lhs, 1.0);
        assert_relative_eq!(e.rhs, integral, max_relative = 1e-12);
        assert_relative_eq!(e.measured_c, 0.50356, epsilon = 1e-5);
        let z = pointwise_estimate_check(&EntireFunction::monomial(1), c(0.0, 0.0), 1.0, 2.0, w, &spec).unwrap();
        assert_eq!(z.lhs, 0.0);
        assert!(z.rhs > 0.0);
        let k = pointwise_estimate_check(&EntireFunction::kernel(c(0.0, 0.0)), c(1.0, 0.0), 0.5, 2.0, w, &spec).unwrap();
        assert_relative_eq!(k.lhs, (-1.0_f64).exp(), max_relative = 1e-14);
        assert!(k.measured_c.is_finite() && k.measured_c > 0.0);
    }

    #[test]
    fn field_norm_examples() {
        let spec = QuadratureSpec::default();
        let w = FockWeight::default();
        let radii = [1.0, 2.0, 4.0, 8.0];
        let leb = berezin_field(&Measure::lebesgue(1.0).unwrap(), 2.0, w, 8.0, 0.25, &spec).unwrap();
        let curve = field_lp_norm(&leb, Exponent::Finite(1.0), &radii).unwrap();
        assert_eq!(curve.growth, Growth::Diverging);
        for (r, v) in &curve.points {
            assert!((v - PI * r * r).abs() / (PI * r * r) < 0.05);
        }
        let atom = berezin_field(&Measure::dirac(c(0.0, 0.0), 1.0).unwrap(), 2.0, w, 8.0, 0.25, &spec).unwrap();
        let curve = field_lp_norm(&atom, Exponent::Finite(1.0), &radii).unwrap();
        assert_eq!(curve.growth, Growth::Converging);
        assert!((curve.last_value() - 1.0).abs() < 1e-10);
        let zero = berezin_field(&Measure::empty(), 2.0, w, 8.0, 0.25, &spec).unwrap();
        for p in [Exponent::Finite(2.0), Exponent::Infinity] {
            let curve = field_lp_norm(&zero, p, &radii).unwrap();
            assert_eq!(curve.growth, Growth::Converging);
            assert_eq!(curve.last_value(), 0.0);
        }
        assert!(field_lp_norm(&zero, Exponent::Finite(1.0), &[1.0, 9.0]).is_err());
    }
}
