use num_complex::Complex;
use proptest::prelude::*;

use super::theta::coefficients;
use super::*;
use crate::casimir::{casimir_matrix, Sign};
use crate::ncalg::{Generator::*, Lcg, Word};
use crate::qcore::QParams;

fn p(q: f64) -> QParams<f64> {
    QParams::new(q).unwrap()
}

fn bl_imp(q: f64, l2: u32, n: usize, reach: usize) -> ImplementingRep<f64> {
    ImplementingRep::bl(p(q), HalfInt::from_twice(l2), n, reach).unwrap()
}

/// Random banded matrix of bandwidth `band` supported on the window of `imp`.
fn random_banded(imp: &ImplementingRep<f64>, band: usize, seed: u64) -> CMatrix<f64> {
    let mut rng = Lcg::new(seed);
    let dim = imp.dim();
    let win: Vec<usize> = imp.window();
    let keep: std::collections::BTreeSet<usize> = win.iter().copied().collect();
    CMatrix::from_fn(dim, dim, |i, j| {
        let close = (i as i64 - j as i64).unsigned_abs() as usize <= band
            || ((i as i64 - j as i64).unsigned_abs() as usize).abs_diff(imp.m()) <= band;
        if close && keep.contains(&i) && keep.contains(&j) {
            Complex::new(rng.unit() - 0.5, rng.unit() - 0.5)
        } else {
            Complex::new(0.0, 0.0)
        }
    })
}

#[test]
fn ad_k_of_identity() {
    let imp = bl_imp(0.5, 1, 10, 1);
    let one = CMatrix::identity(imp.dim());
    assert!(ad(Action::K, &one, &imp).unwrap().max_abs_diff(&one) < 1e-15);
}

#[test]
fn ad_rejects_wrong_size() {
    let imp = bl_imp(0.5, 1, 10, 1);
    assert!(matches!(ad(Action::E, &CMatrix::identity(3), &imp), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn casimir_is_invariant_under_tensored_implementer() {
    let pp = p(0.5);
    let n = 16;
    let base = TruncatedRep::podles(pp, 0.7, PodlesVariant::Plus, n).unwrap();
    let imp = ImplementingRep::new(base.tensor_coaction().unwrap(), base.clone(), 1).unwrap();
    let t2 = imp.implementer().images_at(imp.m()).unwrap()[&Generator::T].clone();
    assert!(imp.crop(&t2).max_abs_diff(&casimir_matrix(&pp, 0.7, Sign::Plus, n).unwrap()) < 1e-14);
    for g in [Action::E, Action::F] {
        assert!(imp.crop(&cleared_defect(g, &t2, &imp).unwrap()).max_abs() < 1e-11, "{g}");
    }
    let k = ad(Action::K, &t2, &imp).unwrap();
    assert!(imp.crop(&k).max_abs_diff(&imp.crop(&t2)) < 1e-11);
}

#[test]
fn a_s_has_k_weight_two_s() {
    let imp = bl_imp(0.5, 2, 12, 5);
    for s in -2..=2 {
        let a = imp.element(&NCPoly::gen(A(s))).unwrap();
        let k = ad(Action::K, &a, &imp).unwrap();
        assert!(imp.crop(&k).max_abs_diff(&imp.crop(&a.scale_re(0.5f64.powi(2 * s)))) < 1e-13);
    }
}

#[test]
fn theta_lowest_coefficient() {
    // λ_{−2l} = q^{l(2l+1)}
    for l2 in 0..5u32 {
        let l = HalfInt::from_twice(l2);
        let c = theta_coefficient(&p(0.5), l, -(l2 as i32)).unwrap();
        let want = 0.5f64.powf(l.value() * (2.0 * l.value() + 1.0));
        assert!((c - want).abs() < 1e-15, "l2={l2}");
        assert!(theta_coefficient(&p(0.5), l, l2 as i32 + 1).is_err());
    }
}

#[test]
fn theta_coefficients_vanish_only_at_ends() {
    let pp = p(0.6);
    for l2 in 1..5i32 {
        for s in -l2..=l2 {
            let (ce, cf) = coefficients(&pp, l2, s);
            assert_eq!(ce == 0.0, s == -l2, "l2={l2} s={s}");
            assert_eq!(cf == 0.0, s == l2, "l2={l2} s={s}");
        }
    }
}

#[test]
fn spin2l_law_holds() {
    for l2 in 1..5u32 {
        let imp = bl_imp(0.5, l2, 24, 2 * l2 as usize);
        let r = spin2l_check(HalfInt::from_twice(l2), &imp, 1e-11).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn density_functional_of_identity_is_geometric_sum() {
    let (q, x, n) = (0.5f64, 0.35f64, 20usize);
    let imp = ImplementingRep::podles(p(q), x, n, 1).unwrap();
    let phi = DensityFunctional::from_implementer(&imp).unwrap();
    let got = phi.eval(&CMatrix::identity(2 * n)).unwrap();
    let want = (q.powf(x + 1.0) + q.powf(1.0 - x)) * (1.0 - q.powi(2 * n as i32)) / (1.0 - q * q);
    assert!((got.re - want).abs() < 1e-14);
    let xm = imp.crop(&imp.element(&NCPoly::gen(X)).unwrap());
    assert_eq!(phi.eval(&xm).unwrap().norm(), 0.0);
}

#[test]
fn functionals_are_invariant() {
    let pp = p(0.8);
    for kind in [AlgebraKindF::Podles(1.0), AlgebraKindF::Bl(1)] {
        let kind = kind.get();
        let r = invariance_check(&pp, kind, 48, 3, functional_tail_bound(&pp, 48)).unwrap();
        assert!(r.passed(), "{kind}: {}", r.summary_line());
    }
}

enum AlgebraKindF {
    Podles(f64),
    Bl(u32),
}

impl AlgebraKindF {
    fn get(&self) -> crate::ncalg::AlgebraKind<f64> {
        match self {
            Self::Podles(x) => crate::ncalg::AlgebraKind::Podles { x: *x, extended: false },
            Self::Bl(l2) => crate::ncalg::AlgebraKind::Bl { l: HalfInt::from_twice(*l2) },
        }
    }
}

#[test]
fn conditional_expectation_kills_a_and_fixes_sphere() {
    let pp = p(0.5);
    let l = HalfInt::from_twice(2);
    let rep = TruncatedRep::bl(pp, l, 12).unwrap();
    for s in -2..=2 {
        let a = rep.image(A(s)).unwrap();
        assert_eq!(conditional_expectation(&a, &rep).unwrap().max_abs(), 0.0);
    }
    for g in [X, Y, Z] {
        let a = rep.image(g).unwrap();
        assert_eq!(conditional_expectation(&a, &rep).unwrap().max_abs_diff(&a), 0.0);
    }
}

#[test]
fn bl_functional_factors_through_expectation() {
    let pp = p(0.5);
    let l = HalfInt::from_twice(1);
    let n = 14;
    let imp = ImplementingRep::bl(pp, l, n, 8).unwrap();
    let phi = DensityFunctional::from_implementer(&imp).unwrap();
    let podles = ImplementingRep::podles(pp, 1.0, n, 8).unwrap();
    let phi_tau = DensityFunctional::from_implementer(&podles).unwrap();
    let mut rng = Lcg::new(7);
    for _ in 0..10 {
        let w = crate::ncalg::random_word(&mut rng, &[X, Y, Z, A(-1), A(0), A(1)], 4);
        let m = imp.crop(&imp.element(&NCPoly::term(w, Complex::new(1.0, 0.3))).unwrap());
        let e = conditional_expectation(&m, imp.plain()).unwrap();
        let a = phi.eval(&m).unwrap();
        let b = phi_tau.eval(&e).unwrap();
        assert!((a - b).norm() < 1e-12);
    }
}

#[test]
fn functional_equation_kernels() {
    let pp = p(0.5);
    assert_eq!(functional_equation_kernel(&pp, HalfInt::from_twice(0), 6), 1);
    for l2 in 1..5 {
        assert_eq!(functional_equation_kernel(&pp, HalfInt::from_twice(l2), 6), 0);
    }
}

#[test]
fn functional_equation_matches_commutator() {
    // [A_0 P(Z), 𝐗] = −e A_{−1} Q(Z), Q the image of P under the functional-equation map.
    let pp = p(0.5);
    for l2 in 1..4u32 {
        let l = HalfInt::from_twice(l2);
        let imp = ImplementingRep::bl(pp, l, 16, 2 * l2 as usize + 4).unwrap();
        let coeffs = [0.7, -1.3, 0.4, 2.0];
        let mut poly = NCPoly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            poly = &poly + &NCPoly::term(Word::new(&[A(0)]).pow(Z, j), Complex::new(*c, 0.0));
        }
        let lhs = CMatrix::commutator(&imp.element(&poly).unwrap(), imp.image(X));
        let fe = functional_equation(&pp, l, coeffs.len() - 1);
        let q_coeffs = fe.mul_vec(&coeffs.iter().map(|c| Complex::new(*c, 0.0)).collect::<Vec<_>>());
        let mut qpoly = NCPoly::zero();
        for (j, c) in q_coeffs.iter().enumerate() {
            qpoly = &qpoly + &NCPoly::term(Word::new(&[A(-1)]).pow(Z, j), -*c);
        }
        let rhs = imp.element(&qpoly).unwrap();
        let m = imp.m();
        let e = CMatrix::from_real_diag(&(0..2 * m).map(|i| if i < m { -1.0 } else { 1.0 }).collect::<Vec<_>>());
        let rhs = &e * &rhs;
        assert!(imp.crop(&lhs).max_abs_diff(&imp.crop(&rhs)) < 1e-12, "l2={l2}");
    }
}

#[test]
fn ergodic_dimensions_small() {
    let pp = p(0.8);
    assert_eq!(ergodic_bl(&pp, HalfInt::from_twice(0), 24, 4).unwrap().dim, 2);
    assert_eq!(ergodic_bl(&pp, HalfInt::from_twice(1), 24, 4).unwrap().dim, 1);
    assert_eq!(ergodic_podles(&pp, 0.35, 24, 4).unwrap().dim, 1);
    assert_eq!(b0_matrix_units(&pp, 24, 3).unwrap().dim, 4);
}

#[test]
fn ergodic_degree_guard() {
    assert!(ergodic_bl(&p(0.5), HalfInt::from_twice(0), 24, 9).is_err());
}

#[test]
fn star_scalar_calibration() {
    // Calibrate on the monomial M = Z first, then freeze.
    let pp = p(0.5);
    let imp = bl_imp(0.5, 1, 10, 2);
    let z = imp.element(&NCPoly::gen(Z)).unwrap();
    let lhs = imp.crop(&ad(Action::E, &z, &imp).unwrap()).adjoint();
    let rhs = imp.crop(&ad(Action::F, &z.adjoint(), &imp).unwrap());
    let (i, j) = (0..lhs.rows())
        .flat_map(|i| (0..lhs.cols()).map(move |j| (i, j)))
        .max_by(|a, b| rhs[*a].norm().partial_cmp(&rhs[*b].norm()).unwrap())
        .unwrap();
    let c = lhs[(i, j)] / rhs[(i, j)];
    assert!((c.re - star_scalar(&pp)).abs() < 1e-12 && c.im.abs() < 1e-12);
    assert_eq!(star_scalar(&pp), -0.25);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn star_compatibility(seed in any::<u64>(), l2 in 0u32..3) {
        let imp = bl_imp(0.5, l2, 10, 3);
        let m = random_banded(&imp, 2, seed);
        let lhs = imp.crop(&ad(Action::E, &m, &imp).unwrap()).adjoint();
        let rhs = imp.crop(&ad(Action::F, &m.adjoint(), &imp).unwrap()).scale_re(star_scalar(imp.params()));
        prop_assert!(lhs.mixed_diff(&rhs) < 1e-10);
    }

    #[test]
    fn right_module_law(seed in any::<u64>(), q in 0.3f64..0.8) {
        let imp = ImplementingRep::bl(p(q), HalfInt::from_twice(1), 10, 3).unwrap();
        let m = random_banded(&imp, 2, seed);
        let ek = ad(Action::E, &ad(Action::K, &m, &imp).unwrap(), &imp).unwrap();
        let ke = ad(Action::K, &ad(Action::E, &m, &imp).unwrap(), &imp).unwrap();
        prop_assert!(imp.crop(&ek).mixed_diff(&imp.crop(&ke.scale_re(q * q))) < 1e-10);
    }
}
