//! Gaussian envelopes: pointwise majorants of the form
//!
//! ```text
//! |g(w)| <= A * max(1, |w - c|)^d * exp(-rate * |w - c|^2)
//! ```
//!
//! Every integrand in this crate carries one, which is what makes truncation
//! of plane integrals rigorous. `rate == 0` encodes a bounded (non-decaying)
//! integrand; such envelopes cannot drive an automatic cutoff.

use num_complex::Complex64;
use statrs::function::gamma::{gamma_ur, ln_gamma};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub center: Complex64,
    pub rate: f64,
    /// Natural log of the amplitude `A`.
    pub ln_amplitude: f64,
    /// Polynomial growth degree `d`.
    pub growth: f64,
}

impl Envelope {
    pub fn gaussian(center: Complex64, rate: f64, amplitude: f64) -> Self {
        Self {
            center,
            rate,
            ln_amplitude: amplitude.ln(),
            growth: 0.0,
        }
    }

    pub fn bounded(amplitude: f64) -> Self {
        Self::gaussian(Complex64::new(0.0, 0.0), 0.0, amplitude)
    }

    pub fn with_growth(mut self, growth: f64) -> Self {
        self.growth = growth;
        self
    }

    pub fn is_decaying(&self) -> bool {
        self.rate > 0.0
    }

    pub fn ln_bound(&self, w: Complex64) -> f64 {
        let rho = (w - self.center).norm();
        self.ln_amplitude + self.growth * rho.max(1.0).ln() - self.rate * rho * rho
    }

    /// Envelope of `|g|^q`.
    pub fn pow(&self, q: f64) -> Self {
        Self {
            center: self.center,
            rate: self.rate * q,
            ln_amplitude: self.ln_amplitude * q,
            growth: self.growth * q,
        }
    }

    /// Envelope of `c * g`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            ln_amplitude: self.ln_amplitude + c.abs().ln(),
            ..*self
        }
    }

    pub fn scaled_ln(&self, ln_c: f64) -> Self {
        Self {
            ln_amplitude: self.ln_amplitude + ln_c,
            ..*self
        }
    }

    /// Envelope of a product `g * h`, completing the square of the two
    /// Gaussians and re-centering both growth factors via
    /// `max(1, |w - a|) <= (1 + |c - a|) max(1, |w - c|)`.
    pub fn product(&self, other: &Envelope) -> Self {
        let rate = self.rate + other.rate;
        let (center, cross) = if rate > 0.0 {
            let c = (self.center * self.rate + other.center * other.rate) / rate;
            let cross = self.rate * other.rate / rate * (self.center - other.center).norm_sqr();
            (c, cross)
        } else {
            (self.center, 0.0)
        };
        let shift_a = (1.0 + (center - self.center).norm()).ln() * self.growth;
        let shift_b = (1.0 + (center - other.center).norm()).ln() * other.growth;
        Self {
            center,
            rate,
            ln_amplitude: self.ln_amplitude + other.ln_amplitude - cross + shift_a + shift_b,
            growth: self.growth + other.growth,
        }
    }

    /// Product of optional envelopes; unknown on either side stays unknown.
    pub fn combine(a: Option<Envelope>, b: Option<Envelope>) -> Option<Envelope> {
        Some(a?.product(&b?))
    }

    /// Log of the bound on the integral of the envelope outside the disk
    /// `|w - c| > radius`, valid for `radius >= 1`:
    /// `A * pi * rate^{-(d/2+1)} * Gamma(d/2+1, rate * R^2)`.
    pub fn ln_tail(&self, radius: f64) -> f64 {
        if self.rate <= 0.0 {
            return f64::INFINITY;
        }
        let r = radius.max(1.0);
        let a = self.growth / 2.0 + 1.0;
        let q = gamma_ur(a, self.rate * r * r);
        if q <= 0.0 {
            return f64::NEG_INFINITY;
        }
        self.ln_amplitude + std::f64::consts::PI.ln() - a * self.rate.ln() + ln_gamma(a) + q.ln()
    }

    /// Smallest radius (at least 1) whose tail bound is below `tolerance`.
    pub fn cutoff(&self, tolerance: f64) -> Option<f64> {
        if self.rate <= 0.0 {
            return None;
        }
        let target = tolerance.ln();
        let mut hi = 1.0;
        while self.ln_tail(hi) > target {
            hi *= 2.0;
            if hi > 1e6 {
                return None;
            }
        }
        if hi == 1.0 {
            return Some(1.0);
        }
        let mut lo = hi / 2.0;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.ln_tail(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(hi)
    }

    /// Radius beyond which the envelope stays below `exp(ln_level)`.
    pub fn radius_below(&self, ln_level: f64) -> Option<f64> {
        if self.rate <= 0.0 {
            return None;
        }
        // the bound decreases past its peak at sqrt(d / (2 rate))
        let peak = (self.growth / (2.0 * self.rate)).sqrt().max(1.0);
        let mut hi = peak;
        while self.ln_at_radius(hi) > ln_level {
            hi *= 2.0;
            if hi > 1e6 {
                return None;
            }
        }
        let mut lo = peak.min(hi);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.ln_at_radius(mid) > ln_level {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(hi)
    }

    fn ln_at_radius(&self, rho: f64) -> f64 {
        self.ln_amplitude + self.growth * rho.max(1.0).ln() - self.rate * rho * rho
    }
}
