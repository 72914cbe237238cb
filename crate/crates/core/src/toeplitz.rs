//! Toeplitz operators `T_μ f(z) = (α/π) ∫ f(ω) conj(K_z(ω)) e^{-α|ω|²} dμ(ω)`:
//! pointwise application, truncated matrices in the orthonormal monomial
//! basis, and boundedness/compactness diagnostics on `F^∞_α`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::carleson::FIELD_SPACING;
use crate::envelope::Envelope;
use crate::error::{invalid, FockError, Result};
use crate::function::{EntireFunction, LogValue};
use crate::kernel::MAX_LN;
use crate::measure::{Measure, PlaneFunction};
use crate::norms::{field_lp_norm, fock_norm};
use crate::quadrature::{integrate_measure, integrate_measure_radial, integrate_plane, QuadratureOutcome, QuadratureSpec};
use crate::space::{check_point, ComplexPoint, Exponent, FockWeight};
use crate::transforms::{berezin_field, berezin_measure, berezin_sup_bound};
use crate::verdict::{classify_decay, Decay, Growth, Verdict};

/// Every operator here carries the `(α/π)` factor, so `T_{dA}` is the
/// identity.
pub const NORMALIZATION: &str = "(alpha/pi) prefactor";

/// Relative rounding floor of a quadrature sum, as a multiple of `∫ |g|`.
const ROUNDING: f64 = 1e-13;

/// `T_μ f(z) e^{-α|z|²/2}`, computed entirely in the log domain.
pub fn apply_toeplitz_weighted(
    mu: &Measure,
    f: &EntireFunction,
    z: ComplexPoint,
    w: FockWeight,
    spec: &QuadratureSpec,
) -> Result<QuadratureOutcome<Complex64>> {
    let (mut out, ln_peak) = toeplitz_integral(mu, f, z, w, spec, false)?;
    let peak = ln_peak.exp();
    out.value *= peak;
    out.tail_bound *= peak;
    out.last_ring *= peak;
    Ok(out)
}

/// `T_μ f(z) e^{-α|z|²/2} / P` (or the integral of the modulus of the
/// integrand when `absolute`), where `P = e^{ln_peak}` is the envelope peak
/// of the integrand, so the quadrature tolerance acts relative to it.
fn toeplitz_integral(
    mu: &Measure,
    f: &EntireFunction,
    z: ComplexPoint,
    w: FockWeight,
    spec: &QuadratureSpec,
    absolute: bool,
) -> Result<(QuadratureOutcome<Complex64>, f64)> {
    check_point("z", z)?;
    let alpha = w.alpha();
    let env = f
        .weighted_envelope(w)
        .map(|e| e.product(&Envelope::gaussian(z, alpha / 2.0, alpha / PI)));
    // ln |f(u) e^{-α|u|²/2}| - α|z-u|²/2 + ln(α/π)
    let ln_mod = |u: ComplexPoint| f.ln_abs_weighted(u, w) - alpha * (z - u).norm_sqr() / 2.0 + (alpha / PI).ln();
    let mut candidates = vec![z];
    for h in f.sup_hints(w).into_iter().chain(env.map(|e| e.center)) {
        candidates.push(h);
        candidates.push((h + z) / 2.0);
    }
    let sampled = candidates.into_iter().map(ln_mod).fold(f64::NEG_INFINITY, f64::max);
    let ln_peak = match env {
        Some(e) if sampled.is_finite() => sampled.min(e.ln_amplitude),
        Some(e) => e.ln_amplitude,
        None if sampled.is_finite() => sampled,
        None => 0.0,
    };
    let scale = LogValue::from_exponent(Complex64::new((alpha / PI).ln() - ln_peak, 0.0));
    let g = |u: ComplexPoint| {
        // conj(K_z(u)) e^{-α|u|²/2} e^{-α|z|²/2}; real part is -α|z-u|²/2
        let e = alpha * z * u.conj() - 0.5 * alpha * (u.norm_sqr() + z.norm_sqr());
        let v = (f.weighted_log(u, w) * LogValue::from_exponent(e) * scale).to_complex();
        if absolute {
            Complex64::new(v.norm(), 0.0)
        } else {
            v
        }
    };
    let env = env.map(|e| e.scaled_ln(-ln_peak));
    let spec = resolve_oscillation(spec, alpha * (z.norm() + kernel_reach(f)), env.map_or(alpha, |e| e.rate));
    Ok((integrate_measure(g, env.as_ref(), mu, &spec)?, ln_peak))
}

/// Largest kernel center modulus in `f`; its phase oscillates at `α` times this.
fn kernel_reach(f: &EntireFunction) -> f64 {
    match f {
        EntireFunction::NormalizedKernel(c) => c.norm(),
        EntireFunction::KernelCombination(terms) => terms.iter().fold(0.0, |m, t| m.max(t.1.norm())),
        _ => 0.0,
    }
}

/// The midpoint rule aliases a Gaussian of the given rate times a plane wave
/// of frequency `k` with error about `exp(-(2π/h - k)²/(4·rate))`.
fn resolve_oscillation(spec: &QuadratureSpec, k: f64, rate: f64) -> QuadratureSpec {
    let band = 2.0 * (rate * (1.0 / spec.tolerance).ln()).sqrt();
    let cells = ((k + 2.0 * band) / (2.0 * PI)).ceil() as u32;
    spec.with_cells(spec.cells_per_unit.max(cells))
}

/// `T_μ f(z)`. Fails with `Overflow` when the unweighted value leaves the
/// double range, with `Divergent` when the quadrature verdict fails, and
/// with `Unresolved` when cancellation in the integral leaves a rounding
/// floor that the factor `e^{α|z|²/2}` lifts above the tolerance.
pub fn apply_toeplitz(mu: &Measure, f: &EntireFunction, z: ComplexPoint, w: FockWeight, spec: &QuadratureSpec) -> Result<Complex64> {
    let lift = w.alpha() * z.norm_sqr() / 2.0;
    let (out, ln_peak) = toeplitz_integral(mu, f, z, w, spec, false)?;
    if out.verdict == Verdict::Fails {
        return Err(FockError::Divergent(format!("T_mu f at {z}")));
    }
    let (value, ln_scale) = (out.value, ln_peak + lift);
    if value.norm() == 0.0 && mu.is_atomic() {
        return Ok(value);
    }
    let mass = toeplitz_integral(mu, f, z, w, spec, true)?.0.value.re;
    if !mass.is_finite() || !value.is_finite() {
        return Err(FockError::Overflow { log_magnitude: ln_scale + mass.ln() });
    }
    let tol = if mu.is_atomic() { 0.0 } else { spec.tolerance };
    let floor = tol + ROUNDING * mass;
    if value.norm() <= floor && (floor.ln() + ln_scale).exp() > spec.tolerance {
        return Err(FockError::Unresolved(format!("T_mu f at {z}")));
    }
    let ln = value.norm().ln() + ln_scale;
    if ln > MAX_LN {
        return Err(FockError::Overflow { log_magnitude: ln });
    }
    Ok(Complex64::from_polar(ln.exp(), value.arg()))
}

/// `T_φ = T_μ` for `dμ = φ dA`.
pub fn function_symbol_apply(
    phi: &PlaneFunction,
    f: &EntireFunction,
    z: ComplexPoint,
    w: FockWeight,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    apply_toeplitz(&Measure::Density(phi.clone()), f, z, w, spec)
}

/// `M[n][m] = ⟨T_μ e_m, e_n⟩` for `0 <= n, m < N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzMatrix {
    pub entries: DMatrix<Complex64>,
    pub weight: FockWeight,
    pub source: String,
    pub verdict: Verdict,
}

impl ToeplitzMatrix {
    pub fn dimension(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, n: usize, m: usize) -> Complex64 {
        self.entries[(n, m)]
    }

    pub fn hermitian_defect(&self) -> f64 {
        let d = &self.entries - self.entries.adjoint();
        d.iter().fold(0.0, |m, x| m.max(x.norm()))
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let h = (&self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self.entries.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    /// Largest entrywise deviation from the identity.
    pub fn identity_defect(&self) -> f64 {
        let n = self.dimension();
        let d = &self.entries - DMatrix::<Complex64>::identity(n, n);
        d.iter().fold(0.0, |m, x| m.max(x.norm()))
    }
}

pub fn toeplitz_matrix(mu: &Measure, n: usize, w: FockWeight, spec: &QuadratureSpec) -> Result<ToeplitzMatrix> {
    if n == 0 {
        return Err(invalid("N", "must be >= 1"));
    }
    let alpha = w.alpha();
    let basis: Vec<EntireFunction> = (0..n as u32).map(EntireFunction::orthonormal).collect();
    let mut entries = DMatrix::<Complex64>::zeros(n, n);
    let mut verdict = Verdict::Holds;
    match mu {
        Measure::GaussianDensity { beta, scale } => {
            for k in 0..n {
                entries[(k, k)] = Complex64::new(scale * (alpha / (alpha + beta)).powi(k as i32 + 1), 0.0);
            }
        }
        Measure::Radial(_) | Measure::Lebesgue { .. } => {
            // rotation invariance kills the off-diagonal entries
            let diag = basis
                .par_iter()
                .map(|e| {
                    let env = e.weighted_envelope(w).map(|v| v.pow(2.0));
                    let g = |r: f64| (2.0 * e.ln_abs_weighted(Complex64::new(r, 0.0), w)).exp();
                    integrate_measure_radial(g, env.as_ref(), mu, spec).map(|v| alpha / PI * v)
                })
                .collect::<Result<Vec<_>>>()?;
            for (k, v) in diag.into_iter().enumerate() {
                entries[(k, k)] = Complex64::new(v, 0.0);
            }
        }
        Measure::Atomic(_) | Measure::Density(_) => {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|r| (r..n).map(move |c| (r, c))).collect();
            let values = pairs
                .par_iter()
                .map(|&(row, col)| {
                    let (en, em) = (&basis[row], &basis[col]);
                    let g = |u: ComplexPoint| {
                        let a = em.weighted_log(u, w);
                        let b = en.weighted_log(u, w);
                        LogValue {
                            ln_mag: a.ln_mag + b.ln_mag,
                            phase: a.phase - b.phase,
                        }
                        .to_complex()
                            * (alpha / PI)
                    };
                    let env = match (em.weighted_envelope(w), en.weighted_envelope(w)) {
                        (Some(a), Some(b)) => Some(a.product(&b).scaled(alpha / PI)),
                        _ => None,
                    };
                    integrate_measure(g, env.as_ref(), mu, spec)
                })
                .collect::<Result<Vec<_>>>()?;
            for (&(row, col), out) in pairs.iter().zip(values) {
                verdict = verdict.and(out.verdict);
                entries[(row, col)] = out.value;
                entries[(col, row)] = out.value.conj();
            }
        }
    }
    Ok(ToeplitzMatrix {
        entries,
        weight: w,
        source: mu.describe(),
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundednessEstimate {
    /// `sup μ̃_1` over the grid: `|T_μ f(z)| e^{-α|z|²/2} <= ‖f‖_{∞,α} μ̃_1(z)`.
    pub upper_proxy: f64,
    /// `sup μ̃_2` over the grid: `μ̃_2(z) = |⟨T_μ k_z, k_z⟩| <= ‖T_μ‖`.
    pub lower_proxy: f64,
    pub growth: Growth,
    pub verdict: Verdict,
    pub normalization: &'static str,
}

pub fn boundedness_estimate(mu: &Measure, w: FockWeight, grid_radius: f64, spec: &QuadratureSpec) -> Result<BoundednessEstimate> {
    let t1 = berezin_field(mu, 1.0, w, grid_radius, FIELD_SPACING, spec)?;
    let t2 = berezin_field(mu, 2.0, w, grid_radius, FIELD_SPACING, spec)?;
    let max = |s: &[(ComplexPoint, f64)]| s.iter().fold(0.0_f64, |m, v| m.max(v.1));
    let r = grid_radius;
    let curve = field_lp_norm(&t1, Exponent::Infinity, &[r / 8.0, r / 4.0, r / 2.0, r])?;
    let verdict = match berezin_sup_bound(mu, 1.0, w) {
        Some(_) => Verdict::Holds,
        None => curve.growth.finiteness(),
    };
    Ok(BoundednessEstimate {
        upper_proxy: max(&t1.samples),
        lower_proxy: max(&t2.samples),
        growth: curve.growth,
        verdict,
        normalization: NORMALIZATION,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompactnessProbe {
    /// `(R, max_{|z| = R} μ̃_1(z))`
    pub ring_maxima: Vec<(f64, f64)>,
    pub decay: Decay,
    /// Singular values of the `N = 8` truncation, descending.
    pub singular_values: Vec<f64>,
}

impl CompactnessProbe {
    pub const MATRIX_SIZE: usize = 8;

    pub fn verdict(&self) -> Verdict {
        self.decay.vanishing()
    }
}

fn ring_points(r: f64) -> Vec<ComplexPoint> {
    if r == 0.0 {
        return vec![Complex64::new(0.0, 0.0)];
    }
    let n = ((2.0 * PI * r / FIELD_SPACING).ceil() as usize).max(16);
    (0..n).map(|k| Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64)).collect()
}

/// Ring maxima of `μ̃_1` classified as decaying (`C₀`-like) or not, with the
/// singular values of a matrix truncation as a cross-diagnostic.
pub fn compactness_probe(mu: &Measure, w: FockWeight, rings: &[f64], spec: &QuadratureSpec) -> Result<CompactnessProbe> {
    if rings.len() < 4 {
        return Err(invalid("rings", "needs at least 4 radii"));
    }
    if rings[0] < 0.0 || rings.windows(2).any(|r| r[1] <= r[0]) {
        return Err(invalid("rings", "must be nonnegative and strictly increasing"));
    }
    let ring_maxima = rings
        .iter()
        .map(|&r| {
            let vals = ring_points(r)
                .into_par_iter()
                .map(|z| berezin_measure(mu, 1.0, z, w, spec))
                .collect::<Result<Vec<_>>>()?;
            Ok((r, vals.into_iter().fold(0.0_f64, f64::max)))
        })
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = ring_maxima.iter().map(|v| v.1).collect();
    let matrix = toeplitz_matrix(mu, CompactnessProbe::MATRIX_SIZE, w, spec)?;
    Ok(CompactnessProbe {
        decay: classify_decay(&values, spec.tolerance),
        ring_maxima,
        singular_values: matrix.singular_values(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    /// `μ̃_2(z)`
    pub lhs: f64,
    /// `|⟨T_μ k_z, k_z⟩|` by quadrature of the inner product
    pub rhs: f64,
    pub gap: f64,
}

/// Compares `μ̃_2(z)` with `|⟨T_μ k_z, k_z⟩|`, where `T_μ k_z` is applied
/// pointwise and the `F²_α` inner product is a plane quadrature. The cost is
/// that of the inner quadrature times the outer grid, so a coarse `spec` is
/// usually appropriate: both integrands are Gaussians.
pub fn berezin_operator_identity_check(mu: &Measure, z: ComplexPoint, w: FockWeight, spec: &QuadratureSpec) -> Result<IdentityCheck> {
    check_point("z", z)?;
    let alpha = w.alpha();
    let lhs = berezin_measure(mu, 2.0, z, w, spec)?;
    let kz = EntireFunction::kernel(z);
    let bound = berezin_sup_bound(mu, 1.0, w).unwrap_or(lhs.max(1.0));
    if bound == 0.0 {
        return Ok(IdentityCheck {
            lhs,
            rhs: 0.0,
            gap: lhs.abs(),
        });
    }
    // |T_μ k_z(u) e^{-α|u|²/2}| <= ‖k_z‖_∞ μ̃_1(u) and |k_z e^{-α|u|²/2}| = e^{-α|z-u|²/2}
    let env = Envelope::gaussian(z, alpha / 2.0, alpha / PI * bound);
    let failures = std::sync::atomic::AtomicBool::new(false);
    let g = |u: ComplexPoint| -> Complex64 {
        match apply_toeplitz_weighted(mu, &kz, u, w, spec) {
            Ok(t) => t.value * kz.eval_weighted(u, w).map_or(Complex64::new(0.0, 0.0), |k| k.conj()) * (alpha / PI),
            Err(_) => {
                failures.store(true, std::sync::atomic::Ordering::Relaxed);
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let out = integrate_plane(g, Some(&env), spec)?;
    if failures.into_inner() {
        return Err(FockError::Divergent("inner Toeplitz quadrature".into()));
    }
    let rhs = out.value.norm();
    Ok(IdentityCheck {
        lhs,
        rhs,
        gap: (lhs - rhs).abs(),
    })
}

/// `sup_z |T_μ f(z)| e^{-α|z|²/2} / (‖f‖_{∞,α} · upperProxy)` over the given
/// points and probes; the pointwise bound says this is at most 1.
pub fn bound_factor(
    mu: &Measure,
    probes: &[EntireFunction],
    points: &[ComplexPoint],
    upper_proxy: f64,
    w: FockWeight,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if upper_proxy == 0.0 {
        return Ok(0.0);
    }
    let mut worst = 0.0_f64;
    for f in probes {
        let sup = fock_norm(f, Exponent::Infinity, w, spec)?.value;
        if sup == 0.0 {
            continue;
        }
        for &z in points {
            let v = apply_toeplitz_weighted(mu, f, z, w, spec)?.value.norm();
            worst = worst.max(v / (sup * upper_proxy));
        }
    }
    Ok(worst)
}
