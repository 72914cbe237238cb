//! Three-valued verdicts and the shared growth/decay classification rule.
//!
//! Truncated quantities (norms over growing disks, partial sums over lattice
//! shells, ring maxima) are classified from the ratio of their last two
//! increments: below [`CONVERGING_RATIO`] the sequence is taken to settle,
//! above [`DIVERGING_RATIO`] it is taken to grow without bound, and anything
//! in between is reported as inconclusive.

use std::fmt;

use num_complex::Complex64;

/// Increment ratio below which a truncated sequence is classified as settling.
pub const CONVERGING_RATIO: f64 = 0.5;
/// Increment ratio above which a truncated sequence is classified as growing.
pub const DIVERGING_RATIO: f64 = 0.95;

/// Relative size under which an increment counts as zero.
const NEGLIGIBLE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn is_decided(self) -> bool {
        self != Verdict::Inconclusive
    }

    /// Combines two verdicts about the same conjunction: any failure wins,
    /// then any inconclusive part.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Holds,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Growth {
    Converging,
    Diverging,
    Inconclusive,
}

impl Growth {
    /// A converging truncation means the quantity is finite.
    pub fn finiteness(self) -> Verdict {
        match self {
            Growth::Converging => Verdict::Holds,
            Growth::Diverging => Verdict::Fails,
            Growth::Inconclusive => Verdict::Inconclusive,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Growth::Converging => "converging",
            Growth::Diverging => "diverging",
            Growth::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decay {
    Decaying,
    NonDecaying,
    Inconclusive,
}

impl Decay {
    pub fn vanishing(self) -> Verdict {
        match self {
            Decay::Decaying => Verdict::Holds,
            Decay::NonDecaying => Verdict::Fails,
            Decay::Inconclusive => Verdict::Inconclusive,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Decay::Decaying => "decaying",
            Decay::NonDecaying => "non-decaying",
            Decay::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Decay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies a nondecreasing sequence of truncated values (cumulative
/// norms or partial sums at increasing truncation).
pub fn classify_growth(cumulative: &[f64]) -> Growth {
    if cumulative.iter().any(|v| !v.is_finite()) {
        return Growth::Diverging;
    }
    let scale = cumulative.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Growth::Converging;
    }
    if cumulative.len() < 3 {
        return Growth::Inconclusive;
    }
    let n = cumulative.len();
    let last = (cumulative[n - 1] - cumulative[n - 2]).abs();
    let prev = (cumulative[n - 2] - cumulative[n - 3]).abs();
    let floor = NEGLIGIBLE * scale;
    if last <= floor {
        return Growth::Converging;
    }
    if prev <= floor {
        // mass appearing only in the outermost shell
        return Growth::Inconclusive;
    }
    ratio_class(last / prev, Growth::Converging, Growth::Diverging, Growth::Inconclusive)
}

/// Classifies a curve of nonnegative values sampled along an escaping path
/// or on rings of increasing radius. `tolerance` is relative to the curve
/// maximum.
pub fn classify_decay(curve: &[f64], tolerance: f64) -> Decay {
    if curve.iter().any(|v| !v.is_finite()) {
        return Decay::NonDecaying;
    }
    let max = curve.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if max == 0.0 {
        return Decay::Decaying;
    }
    let n = curve.len();
    if n < 2 {
        return Decay::Inconclusive;
    }
    let last = curve[n - 1].abs();
    if last <= tolerance * max {
        return Decay::Decaying;
    }
    let prev = curve[n - 2].abs();
    if prev == 0.0 {
        return Decay::Inconclusive;
    }
    ratio_class(last / prev, Decay::Decaying, Decay::NonDecaying, Decay::Inconclusive)
}

fn ratio_class<T>(ratio: f64, low: T, high: T, mid: T) -> T {
    if ratio < CONVERGING_RATIO {
        low
    } else if ratio > DIVERGING_RATIO {
        high
    } else {
        mid
    }
}

/// Truncated values at increasing truncation parameter, with their growth
/// classification.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthCurve {
    pub points: Vec<(f64, f64)>,
    pub growth: Growth,
}

impl GrowthCurve {
    pub fn last_value(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticEntry {
    pub name: String,
    pub point: Option<Complex64>,
    pub value: f64,
    pub verdict: Verdict,
    pub note: Option<String>,
}

/// Per-test values with verdicts.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiagnosticReport {
    pub title: String,
    pub entries: Vec<DiagnosticEntry>,
}

impl DiagnosticReport {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, entry: DiagnosticEntry) {
        self.entries.push(entry);
    }

    pub fn verdict(&self) -> Verdict {
        self.entries
            .iter()
            .fold(Verdict::Holds, |acc, e| acc.and(e.verdict))
    }
}
