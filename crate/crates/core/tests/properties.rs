use fock_core::kernel::kernel_eval;
use fock_core::lattice::{lattice_ball_sums, make_lattice};
use fock_core::norms::{fock_norm, mu_norm};
use fock_core::toeplitz::apply_toeplitz;
use fock_core::transforms::{ball_measure, berezin_measure};
use fock_core::verdict::classify_growth;
use fock_core::{EntireFunction, Exponent, FockWeight, Measure, QuadratureSpec};
use num_complex::Complex64;
use proptest::prelude::*;

fn point(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| Complex64::new(a, b))
}

fn atoms(n: usize) -> impl Strategy<Value = Vec<(Complex64, f64)>> {
    prop::collection::vec((point(4.0), 0.01..5.0_f64), 1..n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_hermitian(z in point(3.0), u in point(3.0), alpha in 0.1..3.0_f64) {
        let w = FockWeight::new(alpha).unwrap();
        let a = kernel_eval(z, u, w).unwrap();
        let b = kernel_eval(u, z, w).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn atomic_norms_are_homogeneous(pts in atoms(6), k in 0.1..10.0_f64, p in 1.0..6.0_f64) {
        let w = FockWeight::default();
        let mu = Measure::atomic(pts).unwrap();
        let f = EntireFunction::Polynomial(vec![Complex64::new(1.0, 0.5), Complex64::new(-0.3, 0.0), Complex64::new(0.0, 0.2)]);
        let g = f.scaled(Complex64::new(0.0, k), w);
        let spec = QuadratureSpec::default();
        for e in [Exponent::Finite(p), Exponent::Infinity] {
            let a = mu_norm(&f, e, w, &mu, &spec).unwrap().value;
            let b = mu_norm(&g, e, w, &mu, &spec).unwrap().value;
            prop_assert!((b - k * a).abs() <= 1e-12 * (k * a).max(1e-300));
        }
    }

    #[test]
    fn berezin_scales_with_mass(pts in atoms(6), s in 0.1..10.0_f64, z in point(5.0), t in 0.5..4.0_f64) {
        let w = FockWeight::default();
        let spec = QuadratureSpec::default();
        let mu = Measure::atomic(pts).unwrap();
        let a = berezin_measure(&mu, t, z, w, &spec).unwrap();
        let b = berezin_measure(&mu.scaled(s).unwrap(), t, z, w, &spec).unwrap();
        prop_assert!((b - s * a).abs() <= 1e-12 * (s * a).max(1e-300));
    }

    #[test]
    fn toeplitz_is_linear_in_the_measure(p1 in atoms(4), p2 in atoms(4), z in point(2.0)) {
        let w = FockWeight::default();
        let spec = QuadratureSpec::default();
        let a = Measure::atomic(p1).unwrap();
        let b = Measure::atomic(p2).unwrap();
        let f = EntireFunction::Polynomial(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]);
        let lhs = apply_toeplitz(&a.superpose(&b).unwrap(), &f, z, w, &spec).unwrap();
        let rhs = apply_toeplitz(&a, &f, z, w, &spec).unwrap() + apply_toeplitz(&b, &f, z, w, &spec).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1e-12));
    }

    #[test]
    fn lattice_covers_its_extent(r in 0.3..2.0_f64, u in 0.0..1.0_f64, theta in 0.0..std::f64::consts::TAU) {
        let lat = make_lattice(r, 6.0).unwrap();
        let z = Complex64::from_polar(6.0 * u.sqrt(), theta);
        prop_assert!(lat.covers(&[z]));
        prop_assert!(lat.multiplicity_at(z) <= lat.multiplicity_bound);
    }

    #[test]
    fn ball_sums_grow_with_radius(pts in atoms(8), z in point(4.0), d in 0.1..2.0_f64, extra in 0.0..1.0_f64) {
        let spec = QuadratureSpec::default();
        let mu = Measure::atomic(pts).unwrap();
        prop_assert!(ball_measure(&mu, z, d, &spec).unwrap() <= ball_measure(&mu, z, d + extra, &spec).unwrap());
    }

    #[test]
    fn growth_verdict_is_scale_invariant(incs in prop::collection::vec(0.0..10.0_f64, 4), s in 1e-3..1e3_f64) {
        let cum: Vec<f64> = incs.iter().scan(0.0, |a, x| { *a += x; Some(*a) }).collect();
        let scaled: Vec<f64> = cum.iter().map(|v| v * s).collect();
        prop_assert_eq!(classify_growth(&cum), classify_growth(&scaled));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sup_norm_is_below_p_norms(re in prop::collection::vec(-2.0..2.0_f64, 1..4), alpha in 0.5..2.0_f64, p in 1.0..4.0_f64) {
        let w = FockWeight::new(alpha).unwrap();
        let spec = QuadratureSpec::default();
        let f = EntireFunction::Polynomial(re.iter().map(|&x| Complex64::new(x, 0.3 * x)).collect());
        let sup = fock_norm(&f, Exponent::Infinity, w, &spec).unwrap().value;
        let v = fock_norm(&f, Exponent::Finite(p), w, &spec).unwrap().value;
        prop_assert!(sup <= v * (1.0 + 1e-9));
    }
}

#[test]
fn lattice_ball_sums_are_monotone_in_r() {
    let spec = QuadratureSpec::default();
    let mu = Measure::gaussian(0.5, 2.0).unwrap();
    let small = make_lattice(0.8, 4.0).unwrap();
    let mut large = small.clone();
    large.r = 1.2;
    let a = lattice_ball_sums(&mu, &small, &spec).unwrap();
    let b = lattice_ball_sums(&mu, &large, &spec).unwrap();
    assert!(a.iter().zip(&b).all(|(x, y)| x <= y));
}
