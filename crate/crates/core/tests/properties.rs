use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;

use diskfactor::boundary::{builtin, omega_norm, BoundaryFunction, MIN_PAIR_BUDGET};
use diskfactor::circle::{
    conjugate_samples, gamma_exhaustion, CirclePoint, ClosedBoundarySet, HarmonicExtension, RealGrid,
};
use diskfactor::factorization::{outer_from_log_modulus, InnerFunction, SingularMeasure, ZeroList};
use diskfactor::ideal::carleson_integral;
use diskfactor::moduli::Modulus;

fn trig(n: usize, c: &[f64]) -> RealGrid {
    RealGrid::from_fn(n, |t| c.iter().enumerate().map(|(k, a)| a * ((k + 1) as f64 * t).cos()).sum()).unwrap()
}

fn angles() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..TAU, 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn conjugation_is_linear(a in prop::collection::vec(-2.0..2.0f64, 4), b in prop::collection::vec(-2.0..2.0f64, 4), s in -3.0..3.0f64) {
        let n = 256;
        let (u, v) = (trig(n, &a), trig(n, &b));
        let w = RealGrid::new(u.values().iter().zip(v.values()).map(|(x, y)| x + s * y).collect()).unwrap();
        let (cu, cv, cw) = (conjugate_samples(&u), conjugate_samples(&v), conjugate_samples(&w));
        for k in 0..n {
            prop_assert!((cw.values()[k] - cu.values()[k] - s * cv.values()[k]).abs() < 1e-10);
        }
    }

    #[test]
    fn poisson_is_real_part_of_herglotz(c in prop::collection::vec(-2.0..2.0f64, 5), r in 0.0..0.95f64, t in 0.0..TAU) {
        let h = HarmonicExtension::new(&trig(512, &c));
        let z = Complex64::from_polar(r, t);
        prop_assert!((h.herglotz(z).unwrap().re - h.poisson(z).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn distance_is_one_lipschitz(e in angles(), s in 0.0..TAU, t in 0.0..TAU) {
        let set = ClosedBoundarySet::from_angles(&e).unwrap();
        let (x, y) = (CirclePoint::new(s), CirclePoint::new(t));
        let gap = (set.chordal_distance(x).unwrap() - set.chordal_distance(y).unwrap()).abs();
        prop_assert!(gap <= x.chord(y) + 1e-12);
        prop_assert!(set.chordal_distance(CirclePoint::new(e[0])).unwrap() < 1e-12);
    }

    #[test]
    fn exhaustion_is_disjoint_and_nested(e in angles(), m in 1usize..8) {
        let set = ClosedBoundarySet::from_angles(&e).unwrap();
        let arcs = set.complementary_arcs().len();
        let g = gamma_exhaustion(&set, m).unwrap();
        let h = gamma_exhaustion(&set, m + 1).unwrap();
        prop_assert_eq!(g.len(), m.min(arcs));
        prop_assert!(g.total_length() <= h.total_length() + 1e-12);
        prop_assert!(g.total_length() <= TAU - set.measure() + 1e-12);
        for p in &e {
            prop_assert!(!g.contains(CirclePoint::new(*p)));
        }
    }

    #[test]
    fn carleson_grows_with_the_set(e in angles(), extra in angles()) {
        let small = ClosedBoundarySet::from_angles(&e).unwrap();
        let big = small.union(&ClosedBoundarySet::from_angles(&extra).unwrap()).unwrap();
        let (a, b) = (carleson_integral(&small).unwrap(), carleson_integral(&big).unwrap());
        prop_assert!(a.value().unwrap() <= b.value().unwrap() + 1e-12);
    }

    #[test]
    fn inner_functions_are_unimodular_on_the_circle(seed in any::<u64>(), t in 0.0..TAU) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let u = InnerFunction::random(&mut rng, 4, 0.9, 0, 0.0);
        prop_assert!((u.eval(Complex64::from_polar(1.0, t)).norm() - 1.0).abs() < 1e-9);
        prop_assert!(u.eval(Complex64::from_polar(0.5, t)).norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn outer_modulus_matches_data(c in prop::collection::vec(-0.5..0.5f64, 3), r in 0.0..0.9f64, t in 0.0..TAU) {
        let n = 512;
        let u = trig(n, &c);
        let o = outer_from_log_modulus(u.values()).unwrap();
        let want = HarmonicExtension::new(&u).poisson(Complex64::from_polar(r, t)).unwrap();
        prop_assert!((o.eval(Complex64::from_polar(r, t)).unwrap().norm().ln() - want).abs() < 1e-10);
        for k in 0..n {
            prop_assert!((o.boundary_value(k).norm().ln() - u.values()[k]).abs() < 1e-8);
        }
    }
}

#[test]
fn seminorm_estimate_grows_with_budget() {
    let f = builtin::parse("poly:0,1,0,0,0,0,0,1", 1024).unwrap();
    let w = Modulus::holder(0.5);
    let mut last = 0.0;
    for b in [MIN_PAIR_BUDGET, 4 * MIN_PAIR_BUDGET, 16 * MIN_PAIR_BUDGET] {
        let s = omega_norm(&f, &w, b, 11).unwrap().seminorm;
        assert!(s >= last - 1e-12, "budget {b}: {s} < {last}");
        last = s;
    }
}

#[test]
fn singular_factor_is_zero_free_inside() {
    let s = InnerFunction::new(ZeroList::default(), SingularMeasure::atom(0.0, 2.0).unwrap());
    for r in [0.0, 0.5, 0.9, 0.99] {
        let v = s.eval(Complex64::new(r, 0.0)).norm();
        let want = (-2.0 / TAU * (1.0 + r) / (1.0 - r)).exp();
        assert!((v - want).abs() <= 1e-12 * want.max(1e-300), "r = {r}");
    }
    let f = BoundaryFunction::closed_form("S", 64, move |z| s.eval(z)).unwrap();
    assert!(f.values().iter().skip(1).all(|v| (v.norm() - 1.0).abs() < 1e-12));
}
