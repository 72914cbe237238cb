//! Fock–Carleson classification: the direct embedding test over a probe
//! family, the equivalent field and lattice tests, and consistency
//! reporting across them.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{invalid, FockError, Result};
use crate::function::EntireFunction;
use crate::lattice::{lattice_ball_sums, make_lattice, sequence_lp, Lattice};
use crate::measure::{Atom, Measure};
use crate::norms::{fock_norm, log_sum_exp, mu_norm, total_mass};
use crate::quadrature::QuadratureSpec;
use crate::space::{ComplexPoint, Exponent, FockWeight};
use crate::transforms::{ball_field, berezin_field, berezin_measure, berezin_sup_bound};
use crate::verdict::{classify_decay, classify_growth, Decay, Growth, GrowthCurve, Verdict};

/// Sampling step of the Berezin and ball fields used by the classifiers.
pub const FIELD_SPACING: f64 = 0.25;

/// `{1, z, z², k_w (|w| = 2, eight directions), e_1..e_8, e^{(α/2) z²}}`.
pub fn standard_probes(w: FockWeight) -> Vec<EntireFunction> {
    let mut probes = vec![
        EntireFunction::constant(1.0),
        EntireFunction::monomial(1),
        EntireFunction::monomial(2),
    ];
    probes.extend((0..8).map(|k| EntireFunction::kernel(Complex64::from_polar(2.0, k as f64 * PI / 4.0))));
    probes.extend((1..=8).map(EntireFunction::orthonormal));
    probes.push(EntireFunction::QuadraticExponential {
        a: Complex64::new(w.alpha() / 2.0, 0.0),
        b: Complex64::new(0.0, 0.0),
        c: Complex64::new(0.0, 0.0),
    });
    probes
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRatio {
    pub probe: String,
    pub source: f64,
    pub target: f64,
    pub target_growth: Growth,
}

impl ProbeRatio {
    pub fn ratio(&self) -> f64 {
        if self.target_growth == Growth::Diverging {
            f64::INFINITY
        } else {
            self.target / self.source
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingOutcome {
    /// Infinite when some target norm diverges.
    pub best_ratio: f64,
    pub witness: Option<String>,
    pub verdict: Verdict,
    pub ratios: Vec<ProbeRatio>,
    pub skipped: Vec<String>,
}

/// Target norm over atoms, with growth judged from the shell partial sums at
/// the probe radii so that truncated infinite combs are recognized.
fn atomic_target(f: &EntireFunction, q: Exponent, w: FockWeight, atoms: &[Atom], radii: &[f64]) -> (f64, Growth) {
    let q = match q {
        Exponent::Infinity => {
            let sup = atoms.iter().map(|a| f.ln_abs_weighted(a.point, w)).fold(f64::NEG_INFINITY, f64::max);
            return (sup.exp(), Growth::Converging);
        }
        Exponent::Finite(q) => q,
    };
    let terms: Vec<(f64, f64)> = atoms
        .iter()
        .map(|a| (a.point.norm(), a.mass.ln() + q * f.ln_abs_weighted(a.point, w)))
        .collect();
    let all: Vec<f64> = terms.iter().map(|t| t.1).collect();
    let total = log_sum_exp(&all);
    let partial: Vec<f64> = radii
        .iter()
        .map(|&r| {
            let inside: Vec<f64> = terms.iter().filter(|t| t.0 <= r).map(|t| t.1).collect();
            log_sum_exp(&inside).exp()
        })
        .collect();
    ((total / q).exp(), classify_growth(&partial))
}

/// `max ‖f‖_{q,μ} / ‖f‖_{p,α}` over the probes. Probes whose source norm is
/// zero or not a settled finite value are skipped with a note.
pub fn embedding_test(
    mu: &Measure,
    p: Exponent,
    q: Exponent,
    probes: &[EntireFunction],
    w: FockWeight,
    spec: &QuadratureSpec,
) -> Result<EmbeddingOutcome> {
    if probes.is_empty() {
        return Err(FockError::Empty("probes"));
    }
    let radii = spec.probe_radii();
    let mut ratios = Vec::new();
    let mut skipped = Vec::new();
    for f in probes {
        let source = fock_norm(f, p, w, spec)?;
        if !source.is_finite_norm() {
            skipped.push(format!("{}: source norm not finite ({})", f.label(), source.growth));
            continue;
        }
        if source.value == 0.0 {
            skipped.push(format!("{}: zero source norm", f.label()));
            continue;
        }
        let (target, target_growth) = match mu {
            Measure::Atomic(atoms) => atomic_target(f, q, w, atoms, &radii),
            _ => {
                let v = mu_norm(f, q, w, mu, spec)?;
                (v.value, v.growth)
            }
        };
        ratios.push(ProbeRatio {
            probe: f.label(),
            source: source.value,
            target,
            target_growth,
        });
    }
    let verdict = if ratios.iter().any(|r| r.target_growth == Growth::Diverging) {
        Verdict::Fails
    } else if ratios.iter().all(|r| r.target_growth == Growth::Converging) {
        Verdict::Holds
    } else {
        Verdict::Inconclusive
    };
    let mut best: Option<&ProbeRatio> = None;
    for r in &ratios {
        if best.is_none_or(|b| r.ratio() > b.ratio()) {
            best = Some(r);
        }
    }
    Ok(EmbeddingOutcome {
        best_ratio: best.map_or(0.0, |b| b.ratio()),
        witness: best.map(|b| b.probe.clone()),
        verdict,
        ratios,
        skipped,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// `(∞, q)`
    InfinityQ { q: f64 },
    /// `(p, ∞)`
    PInfinity { p: f64 },
    /// `(p, q)`, with `q = ∞` allowed for the sup battery.
    PQ { p: Exponent, q: Exponent },
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::InfinityQ { q } => write!(f, "(inf,{q})"),
            Regime::PInfinity { p } => write!(f, "({p},inf)"),
            Regime::PQ { p, q } => write!(f, "({p},{q})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportEntry {
    pub name: String,
    pub value: f64,
    pub curve: Option<Vec<(f64, f64)>>,
    pub verdict: Verdict,
    /// Whether the entry belongs to the set of mutually equivalent tests.
    pub equivalent: bool,
    pub note: Option<String>,
}

impl ReportEntry {
    fn from_curve(name: impl Into<String>, curve: &GrowthCurve, equivalent: bool) -> Self {
        Self {
            name: name.into(),
            value: curve.last_value(),
            curve: Some(curve.points.clone()),
            verdict: curve.growth.finiteness(),
            equivalent,
            note: None,
        }
    }

    fn from_embedding(name: impl Into<String>, e: &EmbeddingOutcome, equivalent: bool) -> Self {
        let mut note = e.witness.as_ref().map(|w| format!("witness {w}"));
        if !e.skipped.is_empty() {
            let skipped = format!("skipped {}", e.skipped.len());
            note = Some(match note {
                Some(n) => format!("{n}; {skipped}"),
                None => skipped,
            });
        }
        Self {
            name: name.into(),
            value: e.best_ratio,
            curve: None,
            verdict: e.verdict,
            equivalent,
            note,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CarlesonReport {
    pub regime: Regime,
    pub measure: String,
    pub entries: Vec<ReportEntry>,
    /// False whenever two decided verdicts among equivalent tests disagree.
    pub consistent: bool,
    /// `(s, s')` with `s = p/q` for the `q < p` regime.
    pub conjugate_exponents: Option<(f64, f64)>,
    pub notes: Vec<String>,
}

impl CarlesonReport {
    fn new(regime: Regime, mu: &Measure, entries: Vec<ReportEntry>) -> Self {
        let consistent = agree(entries.iter().filter(|e| e.equivalent).map(|e| e.verdict));
        Self {
            regime,
            measure: mu.describe(),
            entries,
            consistent,
            conjugate_exponents: None,
            notes: Vec::new(),
        }
    }

    /// The common verdict of the equivalent tests, or `Inconclusive` when
    /// none is decided or they disagree.
    pub fn verdict(&self) -> Verdict {
        if !self.consistent {
            return Verdict::Inconclusive;
        }
        self.entries
            .iter()
            .filter(|e| e.equivalent)
            .map(|e| e.verdict)
            .find(|v| v.is_decided())
            .unwrap_or(Verdict::Inconclusive)
    }

    pub fn entry(&self, name: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn has_failures(&self) -> bool {
        self.entries.iter().any(|e| e.verdict == Verdict::Fails)
    }
}

fn agree(verdicts: impl Iterator<Item = Verdict>) -> bool {
    let decided: Vec<Verdict> = verdicts.filter(|v| v.is_decided()).collect();
    decided.windows(2).all(|w| w[0] == w[1])
}

impl fmt::Display for CarlesonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "regime {} for {}", self.regime, self.measure)?;
        for e in &self.entries {
            write!(f, "  {:<28} {:>14.6e}  {}", e.name, e.value, e.verdict)?;
            if !e.equivalent {
                write!(f, "  [auxiliary]")?;
            }
            if let Some(n) = &e.note {
                write!(f, "  ({n})")?;
            }
            writeln!(f)?;
        }
        if let Some((s, sp)) = self.conjugate_exponents {
            writeln!(f, "  conjugate exponents s = {s}, s' = {sp}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        write!(
            f,
            "  consistent: {}  verdict: {}",
            if self.consistent { "yes" } else { "no" },
            self.verdict()
        )
    }
}

/// `(∞, q)` classification: the embedding test, `L¹` norms of `μ̃_q` and
/// `μ̃_2`, the `L¹` norm of `z ↦ μ(B(z, r))` and the `l¹` norm of the
/// lattice ball sums, plus the necessary bound `sup μ̃_t < ∞`.
pub fn classify_infty_q(mu: &Measure, q: f64, w: FockWeight, lat: &Lattice, spec: &QuadratureSpec) -> Result<CarlesonReport> {
    let qe = Exponent::new(q)?;
    let radii = spec.probe_radii();
    let grid = spec.cutoff_radius;
    let embedding = embedding_test(mu, Exponent::Infinity, qe, &standard_probes(w), w, spec)?;
    let mut entries = vec![ReportEntry::from_embedding("embedding", &embedding, true)];
    let ts: Vec<f64> = if q == 2.0 { vec![2.0] } else { vec![q, 2.0] };
    let mut sup_verdict = Verdict::Holds;
    for &t in &ts {
        let field = berezin_field(mu, t, w, grid, FIELD_SPACING, spec)?;
        let l1 = crate::norms::field_lp_norm(&field, Exponent::Finite(1.0), &radii)?;
        entries.push(ReportEntry::from_curve(format!("berezin_t{t}_L1"), &l1, true));
        let sup = crate::norms::field_lp_norm(&field, Exponent::Infinity, &radii)?;
        let mut entry = ReportEntry::from_curve(format!("berezin_t{t}_sup"), &sup, false);
        if let Some(b) = berezin_sup_bound(mu, t, w) {
            entry.note = Some(format!("closed-form bound {b:.6e}"));
            entry.verdict = Verdict::Holds;
        }
        sup_verdict = sup_verdict.and(entry.verdict);
        entries.push(entry);
    }
    let balls = ball_field(mu, lat.r, grid, FIELD_SPACING, spec)?;
    let ball_l1 = crate::norms::field_lp_norm(&balls, Exponent::Finite(1.0), &radii)?;
    entries.push(ReportEntry::from_curve("ball_L1", &ball_l1, true));
    let sums = lattice_ball_sums(mu, lat, spec)?;
    entries.push(ReportEntry::from_curve("lattice_l1", &sequence_lp(&sums, Exponent::Finite(1.0)), true));
    let mut report = CarlesonReport::new(Regime::InfinityQ { q }, mu, entries);
    let l1_holds = report
        .entries
        .iter()
        .filter(|e| e.equivalent)
        .any(|e| e.verdict == Verdict::Holds);
    if l1_holds && sup_verdict == Verdict::Fails {
        report.consistent = false;
        report.notes.push("L1 tests hold but the Berezin supremum is unbounded".into());
    }
    if !embedding.skipped.is_empty() {
        report.notes.extend(embedding.skipped.iter().cloned());
    }
    Ok(report)
}

/// Equivalent tests at exponent `p`: `L^p` norm of `μ̃_t`, `L^p` norm
/// of `z ↦ μ(B(z, δ))` and `l^p` norm of the lattice ball sums. When
/// `q < p` the three quantities are also evaluated at `s' = p/(p-q)`.
#[allow(clippy::too_many_arguments)]
pub fn equivalence_crosscheck(
    mu: &Measure,
    p: Exponent,
    t: f64,
    delta: f64,
    lat: &Lattice,
    q: Option<f64>,
    w: FockWeight,
    spec: &QuadratureSpec,
) -> Result<CarlesonReport> {
    let radii = spec.probe_radii();
    let grid = spec.cutoff_radius;
    let field = berezin_field(mu, t, w, grid, FIELD_SPACING, spec)?;
    let balls = ball_field(mu, delta, grid, FIELD_SPACING, spec)?;
    let sums = lattice_ball_sums(mu, lat, spec)?;
    let battery = |e: Exponent, suffix: &str, equivalent: bool| -> Result<Vec<ReportEntry>> {
        Ok(vec![
            ReportEntry::from_curve(format!("berezin_L{e}{suffix}"), &crate::norms::field_lp_norm(&field, e, &radii)?, equivalent),
            ReportEntry::from_curve(format!("ball_L{e}{suffix}"), &crate::norms::field_lp_norm(&balls, e, &radii)?, equivalent),
            ReportEntry::from_curve(format!("lattice_l{e}{suffix}"), &sequence_lp(&sums, e), equivalent),
        ])
    };
    let entries = battery(p, "", true)?;
    let conjugate = match (p, q) {
        (Exponent::Finite(p), Some(q)) if q < p => {
            if q.is_nan() || q < 1.0 {
                return Err(invalid("q", "must be >= 1"));
            }
            Some((p / q, p / (p - q)))
        }
        _ => None,
    };
    let mut report = CarlesonReport::new(Regime::PQ { p, q: q.map_or(Exponent::Infinity, Exponent::Finite) }, mu, entries);
    if let Some((s, sp)) = conjugate {
        let extra = battery(Exponent::Finite(sp), "_conjugate", false)?;
        let group_ok = agree(extra.iter().map(|e| e.verdict));
        report.consistent &= group_ok;
        report.entries.extend(extra);
        report.conjugate_exponents = Some((s, sp));
    }
    Ok(report)
}

/// `(p, ∞)` classification for finite measures: total mass, the `(p, p)`
/// battery (embedding plus the bounded-field tests) and a direct scan of
/// `‖f‖_{∞,μ} / ‖f‖_{p,α}`.
pub fn classify_p_infty(mu: &Measure, p: f64, w: FockWeight, lat: &Lattice, spec: &QuadratureSpec) -> Result<CarlesonReport> {
    let pe = Exponent::new(p)?;
    if pe.is_infinite() {
        return Err(invalid("p", "must be finite"));
    }
    let radii = spec.probe_radii();
    let grid = spec.cutoff_radius;
    let mass = total_mass(mu, spec)?;
    let probes = standard_probes(w);
    let mut entries = vec![ReportEntry {
        name: "total_mass".into(),
        value: mass,
        curve: None,
        verdict: if mass.is_finite() { Verdict::Holds } else { Verdict::Fails },
        equivalent: false,
        note: None,
    }];
    let pp = embedding_test(mu, pe, pe, &probes, w, spec)?;
    entries.push(ReportEntry::from_embedding("embedding_pp", &pp, true));
    let field = berezin_field(mu, 2.0, w, grid, FIELD_SPACING, spec)?;
    entries.push(ReportEntry::from_curve(
        "berezin_sup",
        &crate::norms::field_lp_norm(&field, Exponent::Infinity, &radii)?,
        true,
    ));
    let balls = ball_field(mu, lat.r, grid, FIELD_SPACING, spec)?;
    entries.push(ReportEntry::from_curve(
        "ball_sup",
        &crate::norms::field_lp_norm(&balls, Exponent::Infinity, &radii)?,
        true,
    ));
    let sums = lattice_ball_sums(mu, lat, spec)?;
    entries.push(ReportEntry::from_curve("lattice_sup", &sequence_lp(&sums, Exponent::Infinity), true));
    let direct = embedding_test(mu, pe, Exponent::Infinity, &probes, w, spec)?;
    entries.push(ReportEntry::from_embedding("direct_sup_embedding", &direct, false));
    let mut report = CarlesonReport::new(Regime::PInfinity { p }, mu, entries);
    if !mass.is_finite() {
        report
            .notes
            .push("infinite total mass: outside the finite-measure hypothesis, equivalence not asserted".into());
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VanishingProbe {
    /// `(z_n, ∫ |k_{z_n} e^{-α|ω|²/2}|^q dμ(ω))`
    pub curve: Vec<(ComplexPoint, f64)>,
    pub decay: Decay,
}

impl VanishingProbe {
    /// Vanishing on the kernel escape family is only a necessary condition.
    pub const LABEL: &'static str = "necessary-condition check";

    pub fn verdict(&self) -> Verdict {
        self.decay.vanishing()
    }
}

/// Evaluates `(π/α) μ̃_q(z_n)` along an escaping path.
pub fn vanishing_probe(mu: &Measure, q: f64, w: FockWeight, path: &[ComplexPoint], spec: &QuadratureSpec) -> Result<VanishingProbe> {
    Exponent::new(q)?;
    if path.len() < 4 {
        return Err(invalid("escapePath", "needs at least 4 points"));
    }
    if path.windows(2).any(|p| p[1].norm() <= p[0].norm()) {
        return Err(invalid("escapePath", "modulus must be strictly increasing"));
    }
    let curve = path
        .iter()
        .map(|&z| Ok((z, PI / w.alpha() * berezin_measure(mu, q, z, w, spec)?)))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = curve.iter().map(|c| c.1).collect();
    Ok(VanishingProbe {
        decay: classify_decay(&values, spec.tolerance),
        curve,
    })
}

/// The standard test measures with their names: empty, a unit atom at the
/// origin, three atoms, a Gaussian density, Lebesgue measure, and lattice
/// combs with masses `1/k²` and `1` (truncated past `comb_extent`).
pub fn standard_suite(comb_extent: f64) -> Result<Vec<(String, Measure)>> {
    let lat = make_lattice(1.0, comb_extent)?;
    let c = Complex64::new;
    Ok(vec![
        ("empty".into(), Measure::empty()),
        ("dirac0".into(), Measure::dirac(c(0.0, 0.0), 1.0)?),
        (
            "three_atoms".into(),
            Measure::atomic([(c(0.0, 0.0), 1.0), (c(2.0, 0.0), 3.0), (c(-1.0, 2.0), 0.5)])?,
        ),
        ("gaussian".into(), Measure::gaussian(1.0, 1.0)?),
        ("lebesgue".into(), Measure::lebesgue(1.0)?),
        ("comb_inverse_square".into(), lat.comb(|k| 1.0 / (k * k) as f64)?),
        ("comb_unit".into(), lat.comb(|_| 1.0)?),
    ])
}
