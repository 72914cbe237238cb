//! JSON measure files.
//!
//! ```json
//! {"type": "atomic", "alpha": 1.0, "atoms": [{"re": 0.0, "im": 0.0, "mass": 3.141592653589793}]}
//! ```

use std::path::Path;
use std::sync::Arc;

use fock_core::{FockWeight, Measure, PlaneFunction, RadialProfile};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub re: f64,
    pub im: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MeasureKind {
    Atomic {
        atoms: Vec<AtomSpec>,
    },
    /// Samples `values[j][i]` at `(x0 + i h, y0 + j h)`, bilinear in between
    /// and zero outside the grid.
    DensityGrid {
        x0: f64,
        y0: f64,
        spacing: f64,
        values: Vec<Vec<f64>>,
    },
    /// Samples `values[k]` at `r = k h`, linear in between and zero past the
    /// last sample.
    Radial {
        spacing: f64,
        values: Vec<f64>,
    },
    Gaussian {
        beta: f64,
        scale: f64,
    },
    Lebesgue {
        scale: f64,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Defaults {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_radius: Option<f64>,
}

impl Defaults {
    fn is_empty(&self) -> bool {
        *self == Defaults::default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureSpecFile {
    #[serde(flatten)]
    pub measure: MeasureKind,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Defaults::is_empty")]
    pub defaults: Defaults,
}

fn finite(field: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::field(field, "must be finite"))
    }
}

fn nonnegative(field: &str, x: f64) -> Result<f64, CliError> {
    if finite(field, x)? < 0.0 {
        return Err(CliError::field(field, format!("must be >= 0, got {x}")));
    }
    Ok(x)
}

fn positive(field: &str, x: f64) -> Result<f64, CliError> {
    if finite(field, x)? <= 0.0 {
        return Err(CliError::field(field, format!("must be > 0, got {x}")));
    }
    Ok(x)
}

impl MeasureSpecFile {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let file = Self::from_json(&text).map_err(|source| CliError::Parse {
            path: path.to_path_buf(),
            source,
        })?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("measure files serialize")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        positive("alpha", self.alpha)?;
        let d = &self.defaults;
        if let Some(t) = d.t {
            positive("defaults.t", t)?;
        }
        for (name, v) in [("defaults.p", d.p), ("defaults.q", d.q)] {
            if let Some(v) = v {
                if v.is_nan() || v < 1.0 {
                    return Err(CliError::field(name, format!("must lie in [1, inf], got {v}")));
                }
            }
        }
        if let Some(r) = d.lattice_r {
            positive("defaults.lattice_r", r)?;
        }
        if let Some(r) = d.grid_radius {
            positive("defaults.grid_radius", r)?;
        }
        match &self.measure {
            MeasureKind::Atomic { atoms } => {
                for (k, a) in atoms.iter().enumerate() {
                    finite(&format!("atoms[{k}].re"), a.re)?;
                    finite(&format!("atoms[{k}].im"), a.im)?;
                    nonnegative(&format!("atoms[{k}].mass"), a.mass)?;
                }
            }
            MeasureKind::DensityGrid { x0, y0, spacing, values } => {
                finite("x0", *x0)?;
                finite("y0", *y0)?;
                positive("spacing", *spacing)?;
                if values.len() < 2 {
                    return Err(CliError::field("values", "needs at least 2 rows"));
                }
                let width = values[0].len();
                if width < 2 {
                    return Err(CliError::field("values[0]", "needs at least 2 columns"));
                }
                for (j, row) in values.iter().enumerate() {
                    if row.len() != width {
                        return Err(CliError::field(format!("values[{j}]"), format!("expected {width} columns")));
                    }
                    for (i, &v) in row.iter().enumerate() {
                        nonnegative(&format!("values[{j}][{i}]"), v)?;
                    }
                }
            }
            MeasureKind::Radial { spacing, values } => {
                positive("spacing", *spacing)?;
                if values.len() < 2 {
                    return Err(CliError::field("values", "needs at least 2 samples"));
                }
                for (k, &v) in values.iter().enumerate() {
                    nonnegative(&format!("values[{k}]"), v)?;
                }
            }
            MeasureKind::Gaussian { beta, scale } => {
                positive("beta", *beta)?;
                nonnegative("scale", *scale)?;
            }
            MeasureKind::Lebesgue { scale } => {
                nonnegative("scale", *scale)?;
            }
        }
        Ok(())
    }

    pub fn weight(&self) -> Result<FockWeight, CliError> {
        Ok(FockWeight::new(positive("alpha", self.alpha)?)?)
    }

    /// Zero masses and scales give the zero measure.
    pub fn to_measure(&self) -> Result<Measure, CliError> {
        self.validate()?;
        let measure = match &self.measure {
            MeasureKind::Atomic { atoms } => Measure::atomic(
                atoms
                    .iter()
                    .filter(|a| a.mass > 0.0)
                    .map(|a| (Complex64::new(a.re, a.im), a.mass)),
            )?,
            MeasureKind::DensityGrid { x0, y0, spacing, values } => density_grid(*x0, *y0, *spacing, values),
            MeasureKind::Radial { spacing, values } => radial(*spacing, values),
            MeasureKind::Gaussian { scale, .. } | MeasureKind::Lebesgue { scale } if *scale == 0.0 => Measure::empty(),
            MeasureKind::Gaussian { beta, scale } => Measure::gaussian(*beta, *scale)?,
            MeasureKind::Lebesgue { scale } => Measure::lebesgue(*scale)?,
        };
        Ok(measure)
    }
}

fn max_of(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, f64::max)
}

fn density_grid(x0: f64, y0: f64, h: f64, values: &[Vec<f64>]) -> Measure {
    let rows = values.len();
    let cols = values[0].len();
    let bound = max_of(values.iter().flatten().copied());
    let (x1, y1) = (x0 + h * (cols - 1) as f64, y0 + h * (rows - 1) as f64);
    let reach = max_of([(x0, y0), (x1, y0), (x0, y1), (x1, y1)].iter().map(|&(x, y)| x.hypot(y)));
    let grid: Arc<Vec<Vec<f64>>> = Arc::new(values.to_vec());
    let label = format!("grid {cols}x{rows} h={h}");
    let density = PlaneFunction::new(label, move |w: Complex64| {
        let (u, v) = ((w.re - x0) / h, (w.im - y0) / h);
        if !(0.0..=(cols - 1) as f64).contains(&u) || !(0.0..=(rows - 1) as f64).contains(&v) {
            return 0.0;
        }
        let (i, j) = ((u.floor() as usize).min(cols - 2), (v.floor() as usize).min(rows - 2));
        let (fu, fv) = (u - i as f64, v - j as f64);
        let g = &grid;
        (1.0 - fv) * ((1.0 - fu) * g[j][i] + fu * g[j][i + 1]) + fv * ((1.0 - fu) * g[j + 1][i] + fu * g[j + 1][i + 1])
    })
    .bounded_by(bound)
    .supported_in(reach);
    Measure::Density(density)
}

fn radial(h: f64, values: &[f64]) -> Measure {
    let n = values.len();
    let bound = max_of(values.iter().copied());
    let samples: Arc<Vec<f64>> = Arc::new(values.to_vec());
    let label = format!("samples {n} h={h}");
    let profile = RadialProfile::new(label, move |r: f64| {
        let u = r / h;
        if !(0.0..=(n - 1) as f64).contains(&u) {
            return 0.0;
        }
        let k = (u.floor() as usize).min(n - 2);
        let f = u - k as f64;
        (1.0 - f) * samples[k] + f * samples[k + 1]
    })
    .bounded_by(bound)
    .supported_in(h * (n - 1) as f64);
    Measure::Radial(profile)
}
