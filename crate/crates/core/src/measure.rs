//! Positive Borel measures in computable form.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::envelope::Envelope;
use crate::error::{check_positive, invalid, Result};
use crate::space::{check_point, ComplexPoint};

pub type DensityFn = Arc<dyn Fn(ComplexPoint) -> f64 + Send + Sync>;
pub type ProfileFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub point: ComplexPoint,
    pub mass: f64,
}

impl Atom {
    pub fn new(point: ComplexPoint, mass: f64) -> Result<Self> {
        check_point("atom point", point)?;
        check_positive("atom mass", mass)?;
        Ok(Self { point, mass })
    }
}

/// A real function on the plane with a declared growth bound
/// `|φ(w)| <= bound * max(1, |w|)^growth`. Used both as a density (then
/// nonnegative) and as a symbol for Berezin transforms of functions. A
/// missing bound means nothing is known, which rules out automatic
/// truncation.
#[derive(Clone)]
pub struct PlaneFunction {
    func: DensityFn,
    pub bound: Option<f64>,
    pub growth: f64,
    pub support_radius: Option<f64>,
    pub label: String,
}

impl PlaneFunction {
    pub fn new(label: impl Into<String>, func: impl Fn(ComplexPoint) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            func: Arc::new(func),
            bound: None,
            growth: 0.0,
            support_radius: None,
            label: label.into(),
        }
    }

    pub fn bounded_by(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn with_growth(mut self, growth: f64) -> Self {
        self.growth = growth;
        self
    }

    pub fn supported_in(mut self, radius: f64) -> Self {
        self.support_radius = Some(radius);
        self
    }

    pub fn eval(&self, w: ComplexPoint) -> f64 {
        if let Some(r) = self.support_radius {
            if w.norm() > r {
                return 0.0;
            }
        }
        (self.func)(w)
    }

    pub fn envelope(&self) -> Option<Envelope> {
        self.bound
            .map(|b| Envelope::bounded(b).with_growth(self.growth))
    }
}

/// A rotation-invariant density `w ↦ profile(|w|)`.
#[derive(Clone)]
pub struct RadialProfile {
    func: ProfileFn,
    pub bound: Option<f64>,
    pub growth: f64,
    pub support_radius: Option<f64>,
    pub label: String,
}

impl RadialProfile {
    pub fn new(label: impl Into<String>, func: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            func: Arc::new(func),
            bound: None,
            growth: 0.0,
            support_radius: None,
            label: label.into(),
        }
    }

    pub fn bounded_by(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn with_growth(mut self, growth: f64) -> Self {
        self.growth = growth;
        self
    }

    pub fn supported_in(mut self, radius: f64) -> Self {
        self.support_radius = Some(radius);
        self
    }

    pub fn eval(&self, r: f64) -> f64 {
        if let Some(s) = self.support_radius {
            if r > s {
                return 0.0;
            }
        }
        (self.func)(r)
    }

    pub fn envelope(&self) -> Option<Envelope> {
        self.bound
            .map(|b| Envelope::bounded(b).with_growth(self.growth))
    }
}

#[derive(Clone)]
pub enum Measure {
    Atomic(Vec<Atom>),
    Density(PlaneFunction),
    Radial(RadialProfile),
    /// `scale * exp(-beta |w|^2) dA`
    GaussianDensity { beta: f64, scale: f64 },
    /// `scale * dA`
    Lebesgue { scale: f64 },
}

impl Measure {
    pub fn empty() -> Self {
        Measure::Atomic(Vec::new())
    }

    pub fn dirac(point: ComplexPoint, mass: f64) -> Result<Self> {
        Ok(Measure::Atomic(vec![Atom::new(point, mass)?]))
    }

    pub fn atomic(atoms: impl IntoIterator<Item = (ComplexPoint, f64)>) -> Result<Self> {
        atoms
            .into_iter()
            .map(|(p, m)| Atom::new(p, m))
            .collect::<Result<Vec<_>>>()
            .map(Measure::Atomic)
    }

    pub fn gaussian(beta: f64, scale: f64) -> Result<Self> {
        check_positive("beta", beta)?;
        check_positive("scale", scale)?;
        Ok(Measure::GaussianDensity { beta, scale })
    }

    pub fn lebesgue(scale: f64) -> Result<Self> {
        check_positive("scale", scale)?;
        Ok(Measure::Lebesgue { scale })
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Measure::Atomic(_))
    }

    pub fn atoms(&self) -> Option<&[Atom]> {
        match self {
            Measure::Atomic(a) => Some(a),
            _ => None,
        }
    }

    /// Density with respect to area measure; zero for atomic measures.
    pub fn density_at(&self, w: ComplexPoint) -> f64 {
        match self {
            Measure::Atomic(_) => 0.0,
            Measure::Density(d) => d.eval(w),
            Measure::Radial(p) => p.eval(w.norm()),
            Measure::GaussianDensity { beta, scale } => scale * (-beta * w.norm_sqr()).exp(),
            Measure::Lebesgue { scale } => *scale,
        }
    }

    /// Majorant of the density, about the origin.
    pub fn density_envelope(&self) -> Option<Envelope> {
        match self {
            Measure::Atomic(_) => Some(Envelope::bounded(0.0)),
            Measure::Density(d) => d.envelope(),
            Measure::Radial(p) => p.envelope(),
            Measure::GaussianDensity { beta, scale } => {
                Some(Envelope::gaussian(Complex64::new(0.0, 0.0), *beta, *scale))
            }
            Measure::Lebesgue { scale } => Some(Envelope::bounded(*scale)),
        }
    }

    /// Radius of a disk about the origin containing the support, if bounded.
    pub fn support_radius(&self) -> Option<f64> {
        match self {
            Measure::Atomic(atoms) => Some(atoms.iter().fold(0.0, |r: f64, a| r.max(a.point.norm()))),
            Measure::Density(d) => d.support_radius,
            Measure::Radial(p) => p.support_radius,
            Measure::GaussianDensity { .. } | Measure::Lebesgue { .. } => None,
        }
    }

    /// Total mass when it is known in closed form.
    pub fn closed_form_mass(&self) -> Option<f64> {
        match self {
            Measure::Atomic(atoms) => Some(atoms.iter().fold(0.0, |s, a| s + a.mass)),
            Measure::GaussianDensity { beta, scale } => Some(scale * PI / beta),
            Measure::Lebesgue { .. } => Some(f64::INFINITY),
            _ => None,
        }
    }

    /// `c * μ` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Measure> {
        check_positive("scale factor", c)?;
        Ok(match self {
            Measure::Atomic(atoms) => Measure::Atomic(
                atoms
                    .iter()
                    .map(|a| Atom {
                        point: a.point,
                        mass: a.mass * c,
                    })
                    .collect(),
            ),
            Measure::Density(d) => {
                let inner = d.clone();
                let mut out = PlaneFunction::new(format!("{c}*{}", d.label), move |w| c * inner.eval(w));
                out.bound = d.bound.map(|b| b * c);
                out.growth = d.growth;
                out.support_radius = d.support_radius;
                Measure::Density(out)
            }
            Measure::Radial(p) => {
                let inner = p.clone();
                let mut out = RadialProfile::new(format!("{c}*{}", p.label), move |r| c * inner.eval(r));
                out.bound = p.bound.map(|b| b * c);
                out.growth = p.growth;
                out.support_radius = p.support_radius;
                Measure::Radial(out)
            }
            Measure::GaussianDensity { beta, scale } => Measure::GaussianDensity {
                beta: *beta,
                scale: scale * c,
            },
            Measure::Lebesgue { scale } => Measure::Lebesgue { scale: scale * c },
        })
    }

    /// Pushforward under `w ↦ w + shift`; only atomic measures support it.
    pub fn translated(&self, shift: ComplexPoint) -> Result<Measure> {
        match self {
            Measure::Atomic(atoms) => Ok(Measure::Atomic(
                atoms
                    .iter()
                    .map(|a| Atom {
                        point: a.point + shift,
                        mass: a.mass,
                    })
                    .collect(),
            )),
            _ => Err(invalid("measure", "translation is only defined for atomic measures")),
        }
    }

    /// Sum of two atomic measures.
    pub fn superpose(&self, other: &Measure) -> Result<Measure> {
        match (self, other) {
            (Measure::Atomic(a), Measure::Atomic(b)) => {
                Ok(Measure::Atomic(a.iter().chain(b.iter()).copied().collect()))
            }
            _ => Err(invalid("measure", "superposition is only defined for atomic measures")),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Measure::Atomic(atoms) => format!("atomic({} atoms)", atoms.len()),
            Measure::Density(d) => format!("density({})", d.label),
            Measure::Radial(p) => format!("radial({})", p.label),
            Measure::GaussianDensity { beta, scale } => format!("gaussian(beta={beta}, scale={scale})"),
            Measure::Lebesgue { scale } => format!("lebesgue(scale={scale})"),
        }
    }
}

impl fmt::Debug for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Atomic(atoms) => f.debug_tuple("Atomic").field(atoms).finish(),
            _ => f.write_str(&self.describe()),
        }
    }
}
