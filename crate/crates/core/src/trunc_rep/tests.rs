use num_complex::Complex;
use proptest::prelude::*;

use super::*;
use crate::ncalg::{parse, random_word, sigma, star, Lcg, Presentation};
use crate::ncalg::Generator::*;
use crate::qcore::tau;

fn p(q: f64) -> QParams<f64> {
    QParams::new(q).unwrap()
}

fn re(a: &CMatrix<f64>, i: usize, j: usize) -> f64 {
    a[(i, j)].re
}

#[test]
fn podles_plus_examples() {
    let rep = TruncatedRep::podles(p(0.5), 1.0, PodlesVariant::Plus, 8).unwrap();
    let z = rep.image(Z).unwrap();
    let x = rep.image(X).unwrap();
    assert!((re(&z, 0, 0) - 1.0).abs() < 1e-15);
    assert!((re(&x, 0, 1) - 1.5f64.sqrt()).abs() < 1e-15);
    assert_eq!(x.column(0).iter().map(|c| c.norm()).sum::<f64>(), 0.0);
}

#[test]
fn podles_small_truncation_rejected() {
    assert!(TruncatedRep::podles(p(0.5), 1.0, PodlesVariant::Plus, 3).is_err());
    assert!(TruncatedRep::bl(p(0.5), HalfInt::from_twice(2), 7).is_err());
}

#[test]
fn a_variant_is_sign_times_direct_sum() {
    let n = 10;
    let a = TruncatedRep::podles(p(0.4), 0.7, PodlesVariant::AVariant, n).unwrap();
    let d = TruncatedRep::podles(p(0.4), 0.7, PodlesVariant::DirectSum, n).unwrap();
    let e = CMatrix::from_real_diag(&(0..2 * n).map(|i| if i < n { -1.0 } else { 1.0 }).collect::<Vec<_>>());
    for g in [X, Y, Z, T] {
        let lhs = a.image(g).unwrap();
        let rhs = &e * &d.image(g).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-15, "{g}");
    }
}

#[test]
fn z_times_zi_is_identity() {
    let rep = TruncatedRep::bl(p(0.5), HalfInt::from_twice(1), 12).unwrap();
    let one = rep.evaluate(&NCPoly::mono(&[Z, Zi], 1.0)).unwrap();
    assert_eq!(one.max_abs_diff(&CMatrix::identity(24)), 0.0);
    assert_eq!(rep.evaluate(&NCPoly::one()).unwrap().max_abs_diff(&CMatrix::identity(24)), 0.0);
}

#[test]
fn bl_half_a0_coefficients() {
    // A(0) e_{k,±} = (1 − q^{4k+4})^{1/2} e_{k,∓}
    let q = 0.5f64;
    let n = 10;
    let rep = TruncatedRep::bl(p(q), HalfInt::from_twice(1), n).unwrap();
    let a = rep.image(A(0)).unwrap();
    for k in 0..n - 2 {
        let c = (1.0 - q.powi(4 * k as i32 + 4)).sqrt();
        // minus k -> plus label k, index n + k + 1
        assert!((a[(n + k + 1, k)].norm() - c).abs() < 1e-15);
        assert!((a[(k, n + k + 1)].norm() - c).abs() < 1e-15);
    }
}

#[test]
fn bl_plus_a_vanishes_below_zero_label() {
    let q = 0.6;
    let l2 = 3u32;
    let n = 14;
    let rep = TruncatedRep::bl(p(q), HalfInt::from_twice(l2), n).unwrap();
    for s in -(l2 as i32)..=l2 as i32 {
        let a = rep.image(A(s)).unwrap();
        for j in 0..n {
            let k = j as i32 - l2 as i32;
            let col: f64 = (0..n).map(|i| a[(i, n + j)].norm()).sum();
            if k + s < 0 {
                assert_eq!(col, 0.0, "s={s} k={k}");
            } else if ((k + s) as usize) < n {
                assert!(col > 0.0, "s={s} k={k}");
            }
        }
    }
}

#[test]
fn bl_sphere_part_is_direct_sum_podles() {
    let l2 = 2u32;
    let n = 12;
    let pp = p(0.5);
    let bl = TruncatedRep::bl(pp, HalfInt::from_twice(l2), n).unwrap();
    let ds = TruncatedRep::podles(pp, f64::from(l2), PodlesVariant::DirectSum, n).unwrap();
    for g in [X, Y, Z, Zi, T] {
        assert!(bl.image(g).unwrap().max_abs_diff(&ds.image(g).unwrap()) < 1e-15, "{g}");
    }
}

#[test]
fn relations_podles_and_quotient() {
    for &q in &[0.3, 0.8] {
        for &x in &[0.35, 2.5] {
            let pp = p(q);
            let rep = TruncatedRep::podles(pp, x, PodlesVariant::DirectSum, 32).unwrap();
            let r = relation_check(&Presentation::podles_extended(pp, x), &rep, 1e-11).unwrap();
            assert!(r.passed(), "{}", r.summary_line());
            let r = relation_check(&Presentation::uqmp(pp), &rep, 1e-11).unwrap();
            assert!(r.passed(), "{}", r.summary_line());
        }
    }
}

#[test]
fn relations_bl() {
    for l2 in 0..4 {
        let pp = p(0.5);
        let rep = TruncatedRep::bl(pp, HalfInt::from_twice(l2), 24).unwrap();
        let pres = Presentation::bl(pp, HalfInt::from_twice(l2));
        let r = relation_check(&pres, &rep, 1e-11).unwrap();
        assert!(r.passed(), "{}", r.summary_line());
        let s = star_check(&pres, &rep, 1e-14).unwrap();
        assert!(s.passed(), "{}", s.summary_line());
    }
}

#[test]
fn bl0_a0_squared_is_one() {
    let rep = TruncatedRep::bl(p(0.5), HalfInt::from_twice(0), 16).unwrap();
    let a2 = rep.evaluate(&NCPoly::mono(&[A(0), A(0)], 1.0)).unwrap();
    assert!(a2.max_abs_diff(&CMatrix::identity(32)) < 1e-13);
}

#[test]
fn spin_half_examples() {
    let pp = p(0.5);
    let s = spin_half(&pp);
    assert_eq!((&s.e * &s.e).max_abs(), 0.0);
    let comm = CMatrix::commutator(&s.e, &s.f);
    let rhs = (&s.k - &s.ki).scale_re(pp.lambda());
    assert!(comm.max_abs_diff(&rhs) < 1e-15);
    assert!((&s.ki * &s.f).max_abs_diff(&s.e.adjoint()) < 1e-15);
    let rep = TruncatedRep::spin_half(pp);
    let r = relation_check(&Presentation::uqsu2(pp), &rep, 1e-13).unwrap();
    assert!(r.passed(), "{}", r.summary_line());
}

#[test]
fn tensor_coaction_keeps_relations() {
    let pp = p(0.5);
    let base = TruncatedRep::podles(pp, 1.0, PodlesVariant::Plus, 20).unwrap();
    let t2 = base.tensor_coaction().unwrap();
    assert_eq!(t2.dim(), 40);
    let r = relation_check(&Presentation::uqmp(pp), &t2, 1e-11).unwrap();
    assert!(r.passed(), "{}", r.summary_line());
    let s = star_check(&Presentation::uqmp(pp), &t2, 1e-14).unwrap();
    assert!(s.passed(), "{}", s.summary_line());
    // Z ⊗ K^{-1}: e_k ⊗ e₊ carries q^{2k}·q
    let z = t2.image(Z).unwrap();
    assert!((re(&z, 3, 3) - 0.5f64.powi(6) * 0.5).abs() < 1e-15);
    assert!((re(&z, 23, 23) - 0.5f64.powi(6) / 0.5).abs() < 1e-14);
}

#[test]
fn tensor_of_explicit_without_t_fails() {
    let rep = TruncatedRep::spin_half(p(0.5));
    assert!(matches!(rep.tensor_coaction(), Err(Error::MissingGenerator(_))));
}

#[test]
fn scalar_t_matches_generator_expression() {
    // T = q^{-1} Z^{-1}(XY − 1 + q²Z²) against the scalar τ(x). The Z^{-1} route loses
    // q^{-2k} digits, so the full window is compared in cleared form q·T·Z = XY − 1 + q²Z².
    let pp = p(0.45);
    let pres = Presentation::uqmp(pp);
    for &x in &[0.35, 1.0, -1.7] {
        let small = TruncatedRep::podles(pp, x, PodlesVariant::DirectSum, 6).unwrap();
        let m = small.evaluate(&pres.t_via_generators().unwrap()).unwrap();
        let want = CMatrix::identity(12).scale_re(tau(&pp, x));
        assert!(m.mixed_diff(&want) < 1e-10, "x={x}");

        let rep = TruncatedRep::podles(pp, x, PodlesVariant::DirectSum, 24).unwrap();
        let lhs = rep.evaluate(&NCPoly::mono(&[T, Z], pp.q())).unwrap();
        let rhs = rep.evaluate(&parse("X*Y - 1 + q^2*Z*Z", &pres).unwrap()).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-14, "x={x}");
    }
}

#[test]
fn uqmp_difference_relation_vanishes() {
    let pp = p(0.5);
    let pres = Presentation::uqmp(pp);
    let rep = TruncatedRep::podles(pp, 1.0, PodlesVariant::DirectSum, 16).unwrap();
    let lam = pp.q().recip() - pp.q();
    let poly = parse("Y*X - X*Y", &pres).unwrap();
    let poly = &(&poly - &NCPoly::mono(&[T, Z], lam)) + &NCPoly::mono(&[Z, Z], pp.pow(-2) - pp.pow(2));
    assert!(rep.evaluate(&poly).unwrap().max_abs() < 1e-12);
}

#[test]
fn faithfulness_rank_bl() {
    use crate::linalg::svd;
    use crate::ncalg::basis_words;
    for l2 in 0..3 {
        let pp = p(0.5);
        let l = HalfInt::from_twice(l2);
        let pres = Presentation::bl(pp, l);
        let rep = TruncatedRep::bl(pp, l, 20).unwrap();
        let words = basis_words(&pres, 5);
        let imgs = rep.images_at(rep.internal_size(40)).unwrap();
        let dim = imgs[&Z].rows();
        let cols: Vec<Vec<Complex<f64>>> = words
            .iter()
            .map(|w| {
                let m = eval_with(&imgs, &NCPoly::term(w.clone(), Complex::new(1.0, 0.0)), dim).unwrap();
                let m = rep.crop(&m, rep.internal_size(40));
                let f = m.frobenius();
                m.data().iter().map(|c| c / f).collect()
            })
            .collect();
        let rows = cols[0].len();
        let a = CMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i]);
        let s = svd(&a);
        let smallest = *s.values.last().unwrap();
        assert!(smallest > 1e-9, "l2={l2} smallest={smallest}");
    }
}

#[test]
fn dump_round_trip() {
    let rep = TruncatedRep::podles(p(0.5), 1.0, PodlesVariant::Plus, 6).unwrap();
    let mut buf = Vec::new();
    rep.dump(X, &mut buf).unwrap();
    let back = CMatrix::<f64>::read_dump(&buf[..]).unwrap();
    assert_eq!(back.max_abs_diff(&rep.image(X).unwrap()), 0.0);
}

fn sphere_word(seed: u64, len: usize) -> Word {
    random_word(&mut Lcg::new(seed), &[X, Y, Z, Zi, T], len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn padded_interior_is_exact(seed in any::<u64>(), q in 0.3f64..0.8, l2 in 0u32..3) {
        let pp = p(q);
        let mut rng = Lcg::new(seed);
        let mut alphabet = vec![X, Y, Z, T];
        alphabet.extend((-(l2 as i32)..=l2 as i32).map(A));
        let w = random_word(&mut rng, &alphabet, 5);
        let rep = TruncatedRep::bl(pp, HalfInt::from_twice(l2), 12).unwrap();
        let poly = NCPoly::term(w.clone(), Complex::new(1.0, 0.0));
        let reach = rep.reach_of(&poly);
        let a = rep.evaluate_at(&poly, rep.internal_size(reach)).unwrap();
        let b = rep.evaluate_at(&poly, 12 + 2 * 2 * reach).unwrap();
        prop_assert!(a.max_abs_diff(&b) <= 1e-14 * a.max_abs().max(1.0), "{}", w);
    }

    #[test]
    fn sigma_intertwines_minus_and_plus(seed in any::<u64>(), x in -2.0f64..2.0) {
        let pp = p(0.5);
        let w = sphere_word(seed, 5);
        let poly = NCPoly::term(w, Complex::new(0.3, -1.1));
        let minus = TruncatedRep::podles(pp, x, PodlesVariant::Minus, 10).unwrap();
        let plus = TruncatedRep::podles(pp, -x, PodlesVariant::Plus, 10).unwrap();
        let a = minus.evaluate(&poly).unwrap();
        let b = plus.evaluate(&sigma(&poly).unwrap()).unwrap();
        prop_assert!(a.mixed_diff(&b) < 1e-12);
    }

    #[test]
    fn star_is_adjoint(seed in any::<u64>(), l2 in 0u32..3) {
        let pp = p(0.5);
        let l = HalfInt::from_twice(l2);
        let pres = Presentation::bl(pp, l);
        let mut alphabet = vec![X, Y, Z];
        alphabet.extend((-(l2 as i32)..=l2 as i32).map(A));
        let w = random_word(&mut Lcg::new(seed), &alphabet, 4);
        let poly = NCPoly::term(w, Complex::new(0.7, 0.2));
        let rep = TruncatedRep::bl(pp, l, 10).unwrap();
        let a = rep.evaluate(&poly).unwrap().adjoint();
        let b = rep.evaluate(&star(&poly, &pres).unwrap()).unwrap();
        prop_assert!(a.mixed_diff(&b) < 1e-12);
    }
}

#[test]
fn rewrite_oracle_small() {
    let pp = p(0.5);
    let l = HalfInt::from_twice(2);
    let pres = Presentation::bl(pp, l);
    let rep = TruncatedRep::bl(pp, l, 12).unwrap();
    let suite = RandomSuite { seed: 3, count: 40, max_len: 6 };
    let r = oracle_check(&pres, &rep, &pres.generators, suite, 1e-9).unwrap();
    assert!(r.passed(), "{:?}", r.details);
    let r = star_random_check(&pres, &rep, &pres.generators, suite, 1e-12).unwrap();
    assert!(r.passed(), "{:?}", r.details);
}

#[test]
fn factored_rhs_cancels_exactly_at_small_q() {
    // Expanded A·A products lose all digits here; the factored form keeps them.
    for l2 in 2..=4 {
        let pp = p(0.3);
        let l = HalfInt::from_twice(l2);
        let r = relation_check(&Presentation::bl(pp, l), &TruncatedRep::bl(pp, l, 24).unwrap(), 1e-11).unwrap();
        assert!(r.passed(), "l2={l2}: {}", r.summary_line());
    }
}

#[test]
fn rewrite_oracle_double_double() {
    use crate::scalar::TwoFloat;
    let pp = QParams::new(TwoFloat::from(0.5)).unwrap();
    let l = HalfInt::from_twice(4);
    let pres = Presentation::bl(pp, l);
    let rep = TruncatedRep::bl(pp, l, 16).unwrap();
    let suite = RandomSuite { seed: 1, count: 30, max_len: 6 };
    let r = oracle_check(&pres, &rep, &pres.generators, suite, 1e-20).unwrap();
    assert!(r.passed(), "{:?}", r.details);
}

#[test]
fn oracle_counts_overflowing_words() {
    let pp = p(0.3);
    let pres = Presentation::podles_extended(pp, 1.0);
    let rep = TruncatedRep::podles(pp, 1.0, PodlesVariant::DirectSum, 140).unwrap();
    let suite = RandomSuite { seed: 0, count: 60, max_len: 6 };
    let r = oracle_check(&pres, &rep, &[Zi], suite, 1e-9).unwrap();
    assert!(r.details.iter().any(|d| d.label == "non-finite" && d.residual > 0.0));
}
