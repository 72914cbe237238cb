//! The reproducing kernel `K_z(w) = exp(α z̄ w)` and condition (M).

use num_complex::Complex64;

use crate::envelope::Envelope;
use crate::error::{FockError, Result};
use crate::measure::Measure;
use crate::quadrature::{integrate_measure, QuadratureSpec};
use crate::space::{check_point, ComplexPoint, FockWeight};
use crate::verdict::{DiagnosticEntry, DiagnosticReport, Verdict};

/// Largest log-magnitude handed to `exp` unweighted.
pub const MAX_LN: f64 = 700.0;

/// `K_z(w)`. Refuses arguments whose magnitude would overflow; callers with
/// large `|z||w|` must evaluate weighted quantities instead.
pub fn kernel_eval(z: ComplexPoint, w: ComplexPoint, weight: FockWeight) -> Result<Complex64> {
    check_point("z", z)?;
    check_point("w", w)?;
    let e = weight.alpha() * z.conj() * w;
    if e.re > MAX_LN {
        return Err(FockError::Overflow { log_magnitude: e.re });
    }
    Ok(e.exp())
}

/// Evaluates `∫ |K_z(w)| e^{-α|w|²} dμ(w)` at each sample point.
///
/// The integrand equals `e^{α|z|²/4} e^{-α|w - z/2|²}`, so it always carries
/// a Gaussian envelope; finiteness then depends only on the measure.
pub fn condition_m_probe(
    mu: &Measure,
    weight: FockWeight,
    sample: &[ComplexPoint],
    spec: &QuadratureSpec,
) -> Result<DiagnosticReport> {
    if sample.is_empty() {
        return Err(FockError::Empty("condition (M) sample"));
    }
    let alpha = weight.alpha();
    let mut report = DiagnosticReport::new("condition (M)");
    for &z in sample {
        check_point("sample point", z)?;
        let half = z / 2.0;
        let ln_amp = alpha * z.norm_sqr() / 4.0;
        let env = Envelope::gaussian(half, alpha, 1.0).scaled_ln(ln_amp);
        let g = |w: ComplexPoint| (ln_amp - alpha * (w - half).norm_sqr()).exp();
        let out = integrate_measure(g, Some(&env), mu, spec)?;
        let verdict = if !out.value.is_finite() {
            Verdict::Fails
        } else if out.verdict == Verdict::Holds {
            Verdict::Holds
        } else if mu.density_envelope().is_none() {
            // no growth information: the truncated value did not settle
            Verdict::Fails
        } else {
            Verdict::Inconclusive
        };
        report.push(DiagnosticEntry {
            name: "∫|K_z|e^{-α|w|²}dμ".into(),
            point: Some(z),
            value: out.value,
            verdict,
            note: Some(format!("cutoff {:.3}, tail bound {:.2e}", out.cutoff, out.tail_bound)),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::PlaneFunction;
    use approx::assert_relative_eq;
    use std::f64::consts::{E, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_examples() {
        let w = FockWeight::default();
        assert_eq!(kernel_eval(c(3.0, -1.0), c(0.0, 0.0), w).unwrap(), c(1.0, 0.0));
        assert_relative_eq!(kernel_eval(c(1.0, 0.0), c(1.0, 0.0), w).unwrap().re, E, max_relative = 1e-15);
        let z = c(2.0, 1.0);
        let kzz = kernel_eval(z, z, w).unwrap();
        assert_eq!(kzz.im, 0.0);
        assert_relative_eq!(kzz.re, 5.0_f64.exp(), max_relative = 1e-14);
    }

    #[test]
    fn kernel_overflow_guard() {
        let w = FockWeight::default();
        assert!(matches!(
            kernel_eval(c(30.0, 0.0), c(30.0, 0.0), w),
            Err(FockError::Overflow { .. })
        ));
    }

    #[test]
    fn kernel_hermitian_symmetry() {
        let w = FockWeight::new(0.8).unwrap();
        let (z, u) = (c(1.2, -0.4), c(-0.3, 2.0));
        let a = kernel_eval(z, u, w).unwrap();
        let b = kernel_eval(u, z, w).unwrap();
        assert!((a - b.conj()).norm() < 1e-14);
    }

    #[test]
    fn condition_m_examples() {
        let w = FockWeight::default();
        let spec = QuadratureSpec::default();
        let z0 = [c(0.0, 0.0)];

        let r = condition_m_probe(&Measure::empty(), w, &[c(1.0, 1.0), c(-3.0, 0.0)], &spec).unwrap();
        assert!(r.entries.iter().all(|e| e.value == 0.0));
        assert_eq!(r.verdict(), Verdict::Holds);

        let r = condition_m_probe(&Measure::lebesgue(1.0).unwrap(), w, &z0, &spec).unwrap();
        assert!((r.entries[0].value - PI).abs() < 1e-8);
        assert_eq!(r.verdict(), Verdict::Holds);

        let r = condition_m_probe(&Measure::dirac(c(0.0, 0.0), 1.0).unwrap(), w, &[c(4.0, -2.0)], &spec).unwrap();
        assert_eq!(r.entries[0].value, 1.0);
    }

    #[test]
    fn unbounded_density_fails() {
        let w = FockWeight::default();
        // e^{2|w|²} outgrows the kernel weight
        let mu = Measure::Density(PlaneFunction::new("superexp", |w: Complex64| (2.0 * w.norm_sqr()).exp()));
        let r = condition_m_probe(&mu, w, &[c(0.0, 0.0)], &QuadratureSpec::default()).unwrap();
        assert_eq!(r.verdict(), Verdict::Fails);
    }

    #[test]
    fn empty_sample_rejected() {
        assert!(condition_m_probe(&Measure::empty(), FockWeight::default(), &[], &QuadratureSpec::default()).is_err());
    }
}
