//! Entire functions with overflow-safe Gaussian-weighted evaluation.
//!
//! Every variant is evaluated as `f(z) e^{-α|z|²/2}` by accumulating the
//! log-magnitude and the phase of each factor separately and exponentiating
//! once at the end.

use std::ops::Mul;

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::envelope::Envelope;
use crate::error::{FockError, Result};
use crate::space::{check_point, ComplexPoint, FockWeight};

#[derive(Debug, Clone, PartialEq)]
pub enum EntireFunction {
    /// `c_0 + c_1 z + ... + c_d z^d`
    Polynomial(Vec<Complex64>),
    /// `Σ c_j K_{z_j}` as `(coefficient, center)` pairs.
    KernelCombination(Vec<(Complex64, ComplexPoint)>),
    /// `k_w = K_w / sqrt(K_w(w))`
    NormalizedKernel(ComplexPoint),
    /// `z^n`, or `e_n(z) = sqrt(α^n / n!) z^n` when normalized.
    Monomial { n: u32, normalized: bool },
    /// `exp(a z² + b z + c)`
    QuadraticExponential { a: Complex64, b: Complex64, c: Complex64 },
}

/// A complex number stored as `exp(ln_mag) * cis(phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub ln_mag: f64,
    pub phase: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        ln_mag: f64::NEG_INFINITY,
        phase: 0.0,
    };

    pub fn from_exponent(e: Complex64) -> Self {
        Self {
            ln_mag: e.re,
            phase: e.im,
        }
    }

    pub fn from_complex(c: Complex64) -> Self {
        if c.re == 0.0 && c.im == 0.0 {
            Self::ZERO
        } else {
            Self {
                ln_mag: c.norm().ln(),
                phase: c.arg(),
            }
        }
    }

    pub fn to_complex(self) -> Complex64 {
        if self.ln_mag == f64::NEG_INFINITY {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.ln_mag.exp(), self.phase)
    }

    /// Log-sum-exp over complex terms.
    pub fn sum(terms: &[LogValue]) -> LogValue {
        let peak = terms
            .iter()
            .fold(f64::NEG_INFINITY, |m, t| m.max(t.ln_mag));
        if peak == f64::NEG_INFINITY {
            return LogValue::ZERO;
        }
        let s: Complex64 = terms
            .iter()
            .filter(|t| t.ln_mag > f64::NEG_INFINITY)
            .map(|t| Complex64::from_polar((t.ln_mag - peak).exp(), t.phase))
            .sum();
        let mut out = LogValue::from_complex(s);
        out.ln_mag += peak;
        out
    }
}

fn ln_factorial(n: u32) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// Log of `sqrt(α^n / n!)`.
pub(crate) fn ln_monomial_norm(n: u32, alpha: f64) -> f64 {
    0.5 * (n as f64 * alpha.ln() - ln_factorial(n))
}

impl Mul for LogValue {
    type Output = LogValue;

    fn mul(self, other: LogValue) -> LogValue {
        LogValue {
            ln_mag: self.ln_mag + other.ln_mag,
            phase: self.phase + other.phase,
        }
    }
}

impl EntireFunction {
    pub fn constant(c: f64) -> Self {
        EntireFunction::Polynomial(vec![Complex64::new(c, 0.0)])
    }

    pub fn monomial(n: u32) -> Self {
        EntireFunction::Monomial { n, normalized: false }
    }

    pub fn orthonormal(n: u32) -> Self {
        EntireFunction::Monomial { n, normalized: true }
    }

    pub fn kernel(center: ComplexPoint) -> Self {
        EntireFunction::NormalizedKernel(center)
    }

    /// `f(z) e^{-α|z|²/2}` in log-polar form.
    pub fn weighted_log(&self, z: ComplexPoint, w: FockWeight) -> LogValue {
        let alpha = w.alpha();
        let gauss = -0.5 * alpha * z.norm_sqr();
        match self {
            EntireFunction::Polynomial(coeffs) => {
                let ln_r = z.norm().ln();
                let arg = z.arg();
                let terms: Vec<LogValue> = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        let base = LogValue::from_complex(*c);
                        if k == 0 {
                            base
                        } else {
                            base * LogValue {
                                ln_mag: k as f64 * ln_r,
                                phase: k as f64 * arg,
                            }
                        }
                    })
                    .collect();
                let mut v = LogValue::sum(&terms);
                v.ln_mag += gauss;
                v
            }
            EntireFunction::KernelCombination(terms) => {
                let terms: Vec<LogValue> = terms
                    .iter()
                    .map(|(c, center)| {
                        LogValue::from_complex(*c) * LogValue::from_exponent(alpha * center.conj() * z)
                    })
                    .collect();
                let mut v = LogValue::sum(&terms);
                v.ln_mag += gauss;
                v
            }
            EntireFunction::NormalizedKernel(center) => {
                // |k_w(z)| e^{-α|z|²/2} = e^{-α|z-w|²/2}
                LogValue {
                    ln_mag: -0.5 * alpha * (z - center).norm_sqr(),
                    phase: (alpha * center.conj() * z).im,
                }
            }
            EntireFunction::Monomial { n, normalized } => {
                if *n == 0 {
                    let ln_c = if *normalized { ln_monomial_norm(0, alpha) } else { 0.0 };
                    return LogValue {
                        ln_mag: ln_c + gauss,
                        phase: 0.0,
                    };
                }
                if z.norm_sqr() == 0.0 {
                    return LogValue::ZERO;
                }
                let ln_c = if *normalized { ln_monomial_norm(*n, alpha) } else { 0.0 };
                LogValue {
                    ln_mag: ln_c + *n as f64 * z.norm().ln() + gauss,
                    phase: *n as f64 * z.arg(),
                }
            }
            EntireFunction::QuadraticExponential { a, b, c } => {
                LogValue::from_exponent(a * z * z + b * z + c + gauss)
            }
        }
    }

    /// `f(z) e^{-α|z|²/2}`; rejects non-finite `z`.
    pub fn eval_weighted(&self, z: ComplexPoint, w: FockWeight) -> Result<Complex64> {
        check_point("z", z)?;
        Ok(self.weighted_log(z, w).to_complex())
    }

    /// `ln |f(z) e^{-α|z|²/2}|`.
    pub fn ln_abs_weighted(&self, z: ComplexPoint, w: FockWeight) -> f64 {
        self.weighted_log(z, w).ln_mag
    }

    /// Unweighted value `f(z)`, refused when it would overflow.
    pub fn eval(&self, z: ComplexPoint, w: FockWeight) -> Result<Complex64> {
        check_point("z", z)?;
        let mut v = self.weighted_log(z, w);
        v.ln_mag += 0.5 * w.alpha() * z.norm_sqr();
        if v.ln_mag > crate::kernel::MAX_LN {
            return Err(FockError::Overflow { log_magnitude: v.ln_mag });
        }
        Ok(v.to_complex())
    }

    /// Majorant of `|f(z)| e^{-α|z|²/2}`; `None` when the weighted modulus
    /// may be unbounded.
    pub fn weighted_envelope(&self, w: FockWeight) -> Option<Envelope> {
        let alpha = w.alpha();
        let origin = Complex64::new(0.0, 0.0);
        match self {
            EntireFunction::Polynomial(coeffs) => {
                let amp: f64 = coeffs.iter().map(|c| c.norm()).sum();
                let degree = coeffs.len().saturating_sub(1) as f64;
                Some(Envelope::gaussian(origin, alpha / 2.0, amp).with_growth(degree))
            }
            EntireFunction::KernelCombination(terms) => {
                // e^{-α(|z|-ρ)²/2} <= e^{αρ²/2} e^{-α|z|²/4}
                let rho = terms.iter().fold(0.0_f64, |m, (_, c)| m.max(c.norm()));
                let ln_amp = LogValue::sum(
                    &terms
                        .iter()
                        .map(|(c, center)| LogValue {
                            ln_mag: c.norm().ln() + 0.5 * alpha * center.norm_sqr(),
                            phase: 0.0,
                        })
                        .collect::<Vec<_>>(),
                )
                .ln_mag;
                Some(Envelope {
                    center: origin,
                    rate: alpha / 4.0,
                    ln_amplitude: ln_amp + 0.5 * alpha * rho * rho,
                    growth: 0.0,
                })
            }
            EntireFunction::NormalizedKernel(center) => Some(Envelope::gaussian(*center, alpha / 2.0, 1.0)),
            EntireFunction::Monomial { n, normalized } => {
                let ln_c = if *normalized { ln_monomial_norm(*n, alpha) } else { 0.0 };
                Some(Envelope {
                    center: origin,
                    rate: alpha / 2.0,
                    ln_amplitude: ln_c,
                    growth: *n as f64,
                })
            }
            EntireFunction::QuadraticExponential { a, b, c } => {
                let kappa = alpha / 2.0 - a.norm();
                if kappa > 0.0 {
                    // -κ|z|² + |b||z| <= -(κ/2)|z|² + |b|²/(2κ)
                    Some(Envelope {
                        center: origin,
                        rate: kappa / 2.0,
                        ln_amplitude: c.re + b.norm_sqr() / (2.0 * kappa),
                        growth: 0.0,
                    })
                } else if kappa == 0.0 && b.norm() == 0.0 {
                    Some(Envelope {
                        center: origin,
                        rate: 0.0,
                        ln_amplitude: c.re,
                        growth: 0.0,
                    })
                } else {
                    None
                }
            }
        }
    }

    /// Points where the weighted modulus is known to peak, used alongside
    /// grid sampling for suprema.
    pub fn sup_hints(&self, w: FockWeight) -> Vec<ComplexPoint> {
        let origin = Complex64::new(0.0, 0.0);
        match self {
            EntireFunction::NormalizedKernel(center) => vec![*center],
            EntireFunction::Monomial { n, .. } => {
                vec![Complex64::new((*n as f64 / w.alpha()).sqrt(), 0.0)]
            }
            EntireFunction::KernelCombination(terms) => {
                let mut pts: Vec<_> = terms.iter().map(|(_, c)| *c).collect();
                pts.push(origin);
                pts
            }
            EntireFunction::QuadraticExponential { a, b, .. } if a.norm() == 0.0 => {
                // exp(b z) e^{-α|z|²/2} peaks at z = conj(b)/α
                vec![b.conj() / w.alpha(), origin]
            }
            _ => vec![origin],
        }
    }

    /// `c * f`, staying inside the closed set of representations.
    pub fn scaled(&self, c: Complex64, w: FockWeight) -> EntireFunction {
        if c.norm() == 0.0 {
            return EntireFunction::Polynomial(vec![Complex64::new(0.0, 0.0)]);
        }
        match self {
            EntireFunction::Polynomial(coeffs) => {
                EntireFunction::Polynomial(coeffs.iter().map(|x| x * c).collect())
            }
            EntireFunction::KernelCombination(terms) => {
                EntireFunction::KernelCombination(terms.iter().map(|(x, p)| (x * c, *p)).collect())
            }
            EntireFunction::NormalizedKernel(center) => EntireFunction::QuadraticExponential {
                a: Complex64::new(0.0, 0.0),
                b: w.alpha() * center.conj(),
                c: Complex64::new(-0.5 * w.alpha() * center.norm_sqr(), 0.0) + c.ln(),
            },
            EntireFunction::Monomial { n, normalized } => {
                let scale = if *normalized {
                    ln_monomial_norm(*n, w.alpha()).exp()
                } else {
                    1.0
                };
                let mut coeffs = vec![Complex64::new(0.0, 0.0); *n as usize + 1];
                coeffs[*n as usize] = c * scale;
                EntireFunction::Polynomial(coeffs)
            }
            EntireFunction::QuadraticExponential { a, b, c: c0 } => EntireFunction::QuadraticExponential {
                a: *a,
                b: *b,
                c: c0 + c.ln(),
            },
        }
    }

    pub fn label(&self) -> String {
        match self {
            EntireFunction::Polynomial(coeffs) => {
                if coeffs.len() == 1 {
                    fmt_c(coeffs[0])
                } else {
                    let terms: Vec<String> = coeffs
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| c.norm() != 0.0)
                        .map(|(k, c)| match k {
                            0 => fmt_c(*c),
                            1 => format!("{}z", fmt_coef(*c)),
                            _ => format!("{}z^{k}", fmt_coef(*c)),
                        })
                        .collect();
                    if terms.is_empty() {
                        "0".into()
                    } else {
                        terms.join("+")
                    }
                }
            }
            EntireFunction::KernelCombination(terms) => format!("kernel-combination({} terms)", terms.len()),
            EntireFunction::NormalizedKernel(c) => format!("k_{{{}}}", fmt_c(*c)),
            EntireFunction::Monomial { n, normalized: true } => format!("e_{n}"),
            EntireFunction::Monomial { n, normalized: false } => format!("z^{n}"),
            EntireFunction::QuadraticExponential { a, b, c } => {
                format!("exp({}z^2+{}z+{})", fmt_c(*a), fmt_c(*b), fmt_c(*c))
            }
        }
    }
}

fn fmt_c(c: Complex64) -> String {
    if c.im == 0.0 {
        fmt_r(c.re)
    } else {
        let im = fmt_r(c.im);
        let sign = if im.starts_with('-') { "" } else { "+" };
        format!("({}{sign}{im}i)", fmt_r(c.re))
    }
}

fn fmt_r(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn fmt_coef(c: Complex64) -> String {
    if c == Complex64::new(1.0, 0.0) {
        String::new()
    } else {
        fmt_c(c)
    }
}
