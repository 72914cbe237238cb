use std::fmt;

use num_complex::Complex64;

use crate::error::{check_positive, invalid, FockError, Result};

/// A point of the complex plane. Operations validate finiteness at their
/// boundaries.
pub type ComplexPoint = Complex64;

pub(crate) fn check_point(name: &'static str, z: ComplexPoint) -> Result<ComplexPoint> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(FockError::NonFinite(name))
    }
}

/// The Gaussian weight parameter `alpha > 0` of `dλ_α = (α/π) e^{-α|z|²} dA`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockWeight {
    alpha: f64,
}

impl FockWeight {
    pub fn new(alpha: f64) -> Result<Self> {
        check_positive("alpha", alpha)?;
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Density of the Gaussian probability measure at `z`.
    pub fn gaussian_density(&self, z: ComplexPoint) -> f64 {
        self.alpha / std::f64::consts::PI * (-self.alpha * z.norm_sqr()).exp()
    }
}

impl Default for FockWeight {
    fn default() -> Self {
        Self { alpha: 1.0 }
    }
}

/// An integrability exponent `p` in `[1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Accepts `f64::INFINITY` as the distinguished value.
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            return Ok(Exponent::Infinity);
        }
        if !p.is_finite() || p < 1.0 {
            return Err(invalid("p", format!("must lie in [1, inf], got {p}")));
        }
        Ok(Exponent::Finite(p))
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}
