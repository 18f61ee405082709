//! Block identities of the Morita chain B_l ⊗ M_2 ⊃ p_{2l±1}(…)p_{2l±1} ≅ B_{l±1/2}.

use super::BasisChange;
use crate::casimir::Branch;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::ncalg::{normal_form, basis_words, Generator, NCPoly, Presentation};
use crate::qcore::{HalfInt, QParams};
use crate::report::{ReportBuilder, VerificationReport};
use crate::scalar::Scalar;
use crate::trunc_rep::{GenImages, PodlesVariant, TruncatedRep};

use Generator::{A, X, Y, Z, Zi};

/// A(s)·(1 + a Z)(1 + b Z) with a, b given; pass 0 to drop a factor.
fn a_times<T: Scalar>(s: i32, a: T, b: T, scale: T) -> NCPoly<T> {
    let one = NCPoly::one();
    let fa = &one + &NCPoly::mono(&[Z], a);
    let fb = &one + &NCPoly::mono(&[Z], b);
    &(&NCPoly::mono(&[A(s)], scale) * &fa) * &fb
}

/// Block operator on V_{2l} ⊗ ℂ² (spin + first) built from the B_l images, normalized by 1/(1+q^{4l}).
pub fn a0_block_operator<T: Scalar>(p: &QParams<T>, l: HalfInt, branch: Branch, rep: &TruncatedRep<T>) -> Result<CMatrix<T>> {
    let l2 = l.twice() as i32;
    if l2 == 0 {
        return Err(Error::Unsupported("the A(0) block needs A(±1), which B_0 lacks".into()));
    }
    let zero = T::zero();
    let one = T::one();
    let ql = p.pow(l2);
    let entries = match branch {
        Branch::Up => {
            let z2 = |c: T| &NCPoly::one() - &NCPoly::mono(&[Z, Z], c);
            [
                &NCPoly::mono(&[A(0)], -one) * &z2(p.pow(2 * l2 + 2)),
                a_times(-1, p.pow(-l2 - 1), p.pow(l2 - 1), ql),
                a_times(1, -p.pow(-l2 + 1), -p.pow(l2 + 1), -ql),
                &NCPoly::mono(&[A(0)], p.pow(2 * l2)) * &z2(p.pow(-2 * l2 - 2)),
            ]
        }
        Branch::Down => [
            NCPoly::mono(&[A(0)], -p.pow(2 * l2)),
            a_times(-1, zero, zero, -ql),
            a_times(1, zero, zero, ql),
            NCPoly::mono(&[A(0)], one),
        ],
    };
    let m: Vec<CMatrix<T>> = entries.iter().map(|e| rep.evaluate(e)).collect::<Result<_>>()?;
    let blk = CMatrix::from_blocks(&[vec![m[0].clone(), m[1].clone()], vec![m[2].clone(), m[3].clone()]]);
    Ok(blk.scale_re(one / (one + p.pow(2 * l2))))
}

/// Compares the compressed block with A(0) of B_{l±1/2} and checks it lives in one corner.
pub fn a0_block<T: Scalar>(
    p: &QParams<T>,
    l: HalfInt,
    branch: Branch,
    n: usize,
    tol: f64,
    tol_wrong: f64,
) -> Result<(CMatrix<T>, VerificationReport)> {
    let rep = TruncatedRep::bl(*p, l, n)?;
    let blk = a0_block_operator(p, l, branch, &rep)?;
    let bc = BasisChange::new(p, l, n)?;
    let w = bc.family(branch);
    let wo = bc.family(branch.other());
    let target_l = match branch {
        Branch::Up => l.up(),
        Branch::Down => l.down().ok_or_else(|| Error::Unsupported("no B_{-1/2}".into()))?,
    };
    let target = TruncatedRep::bl(*p, target_l, n - 1)?.image(A(0))?;
    let got = &(&w.adjoint() * &blk) * w;
    let mut b = ReportBuilder::new("a0-block").param("l", l.to_string()).param("branch", branch.to_string()).param("N", n);
    b.item("match", got.max_abs_diff(&target).as_f64(), tol);
    b.item("wrong-summand", (&(&wo.adjoint() * &blk) * wo).max_abs().as_f64(), tol_wrong);
    b.item("cross", (&(&wo.adjoint() * &blk) * w).max_abs().as_f64(), tol_wrong);
    Ok((got, b.finish()))
}

fn compress_images<T: Scalar>(imgs: &GenImages<T>, w: &CMatrix<T>) -> GenImages<T> {
    imgs.iter().map(|(g, a)| (*g, &(&w.adjoint() * a) * w)).collect()
}

fn sphere_images<T: Scalar>(rep: &TruncatedRep<T>) -> Result<GenImages<T>> {
    [X, Y, Z, Zi, Generator::T].into_iter().map(|g| Ok((g, rep.image(g)?))).collect()
}

fn compare<T: Scalar>(b: &mut ReportBuilder, prefix: &str, got: &GenImages<T>, want: &TruncatedRep<T>, tol: f64) -> Result<()> {
    for (g, a) in got {
        b.item(format!("{prefix}{g}"), a.mixed_diff(&want.image(*g)?).as_f64(), tol);
    }
    Ok(())
}

/// p_{2l±1} (sphere ⊗ M_2) p_{2l±1} in the new basis against the Podleś sphere at 2l ± 1.
pub fn podles_part_check<T: Scalar>(p: &QParams<T>, l: HalfInt, n: usize, tol: f64) -> Result<VerificationReport> {
    let rep2 = TruncatedRep::bl(*p, l, n)?.tensor_coaction()?;
    let imgs = sphere_images(&rep2)?;
    let bc = BasisChange::new(p, l, n)?;
    let mut b = ReportBuilder::new("podles-part").param("l", l.to_string()).param("N", n);
    for branch in [Branch::Up, Branch::Down] {
        let x = T::lit(f64::from(l.twice())) + if branch == Branch::Up { T::one() } else { -T::one() };
        let want = TruncatedRep::podles(*p, x, PodlesVariant::DirectSum, n - 1)?;
        compare(&mut b, &format!("{branch}:"), &compress_images(&imgs, bc.family(branch)), &want, tol)?;
    }
    let fwd = bc.forward();
    let gram = &fwd.adjoint() * &fwd;
    b.item("orthonormal", gram.max_abs_diff(&CMatrix::identity(gram.rows())).as_f64(), tol);
    let idx = bc.interior();
    let sum = (&bc.p_up + &bc.p_down).principal(&idx);
    b.item("completeness", sum.max_abs_diff(&CMatrix::identity(idx.len())).as_f64(), tol);
    Ok(b.finish())
}

/// Up to B_{l+1/2} and back down: the sphere generators return to the Podleś sphere at 2l.
pub fn chain_check<T: Scalar>(p: &QParams<T>, l: HalfInt, n: usize, tol: f64) -> Result<VerificationReport> {
    let rep2 = TruncatedRep::bl(*p, l, n)?.tensor_coaction()?;
    let up = compress_images(&sphere_images(&rep2)?, BasisChange::new(p, l, n)?.family(Branch::Up));
    let mid = TruncatedRep::explicit(*p, up, 2, n - 1)?.tensor_coaction()?;
    let back = compress_images(&sphere_images(&mid)?, BasisChange::new(p, l.up(), n - 1)?.family(Branch::Down));
    let want = TruncatedRep::podles(*p, T::lit(f64::from(l.twice())), PodlesVariant::DirectSum, n - 2)?;
    let mut b = ReportBuilder::new("chain").param("l", l.to_string()).param("N", n);
    compare(&mut b, "", &back, &want, tol)?;
    Ok(b.finish())
}

/// Base case B_0: A(0) is a self-adjoint unitary implementing σ, it swaps p_1 and p_{−1}, and the
/// even part of the equatorial sphere is a subalgebra.
pub fn rp2_suite<T: Scalar>(p: &QParams<T>, n: usize, tol: f64) -> Result<VerificationReport> {
    let l = HalfInt::from_twice(0);
    let rep = TruncatedRep::bl(*p, l, n)?;
    let a0 = rep.image(A(0))?;
    let dim = a0.rows();
    let id = CMatrix::identity(dim);
    let mut b = ReportBuilder::new("rp2").param("q", p.q().as_f64()).param("N", n);

    let sq = rep.evaluate(&NCPoly::mono(&[A(0), A(0)], T::one()))?;
    let mut unit = sq.max_abs_diff(&id).max(a0.max_abs_diff(&a0.adjoint()));
    let half = T::lit(0.5);
    let pp = (&id + &a0).scale_re(half);
    let pm = (&id - &a0).scale_re(half);
    unit = unit.max((&(&pp + &pm) - &id).max_abs()).max((&pp * &pm).max_abs()).max((&(&pp * &pp) - &pp).max_abs());
    b.item("i:A0-unitary-projections", unit.as_f64(), tol);

    let mut sigma = T::zero();
    for g in [X, Y, Z] {
        let conj = rep.evaluate(&NCPoly::mono(&[A(0), g, A(0)], T::one()))?;
        sigma = sigma.max((&conj + &rep.image(g)?).max_abs());
    }
    b.item("ii:A0-implements-sigma", sigma.as_f64(), tol);

    let bc = BasisChange::new(p, l, n)?;
    let a2 = a0.tensor_spin(&CMatrix::identity(2));
    let swapped = &(&a2 * &bc.p_up) * &a2;
    let idx = bc.interior();
    b.item("iii:A0-swaps-p1-pm1", swapped.principal(&idx).max_abs_diff(&bc.p_down.principal(&idx)).as_f64(), tol);

    let pres = Presentation::podles(*p, T::zero());
    let even: Vec<_> = basis_words(&pres, 4).into_iter().filter(|w| w.len() % 2 == 0).collect();
    let mut odd = T::zero();
    for u in &even {
        for v in &even {
            let prod = NCPoly::mono(&[u.gens(), v.gens()].concat(), T::one());
            let nf = normal_form(&prod, &pres)?;
            for (w, c) in nf.terms() {
                if w.len() % 2 == 1 {
                    odd = odd.max(c.norm());
                }
            }
        }
    }
    b.item("iv:even-part-closed", odd.as_f64(), tol);
    Ok(b.finish())
}
