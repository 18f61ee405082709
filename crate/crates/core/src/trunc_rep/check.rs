//! Relation and star residuals of a presentation in a truncated representation.

use num_complex::Complex;

use super::{eval_with, GenImages, TruncatedRep};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::ncalg::{in_basis, FactoredRhs, normal_form_capped, random_word, star, Generator, Lcg, NCPoly, Presentation, DEFAULT_CAP};
use crate::report::{ReportBuilder, VerificationReport};
use crate::scalar::{Cx, Scalar};
use num_traits::Zero;

/// Residual of every rewrite rule `lhs → rhs` on the window, as the entrywise mixed measure
/// |L − R| / max(1, |L|, |R|). Right-hand sides with a factored form are evaluated from it.
pub fn relation_check<T: Scalar>(pres: &Presentation<T>, rep: &TruncatedRep<T>, tol: f64) -> Result<VerificationReport> {
    let reach = pres
        .rules
        .iter()
        .map(|r| rep.reach_of(&NCPoly::term(r.lhs.clone(), Complex::new(T::one(), T::zero()))).max(rep.reach_of(&r.rhs)))
        .max()
        .unwrap_or(1);
    for g in &pres.generators {
        rep.image(*g)?;
    }
    let m = rep.internal_size(reach);
    let imgs = rep.images_at(m)?;
    let dim = imgs.values().next().map_or(0, |a| a.rows());
    let idx = rep.exact_window(m, reach);
    let mut b = ReportBuilder::new("relations")
        .param("algebra", pres.name())
        .param("q", rep.params().q().as_f64())
        .param("N", rep.n());
    for r in &pres.rules {
        let lhs = NCPoly::term(r.lhs.clone(), Complex::new(T::one(), T::zero()));
        let l = eval_with(&imgs, &lhs, dim)?.principal(&idx);
        let rr = match &r.factored {
            Some(f) => eval_factored(&imgs, f, dim)?,
            None => eval_with(&imgs, &r.rhs, dim)?,
        }
        .principal(&idx);
        b.item(format!("{}", r.lhs), l.mixed_diff(&rr).as_f64(), tol);
    }
    Ok(b.finish())
}

/// Evaluates `scale · prefix · ∏(1 − r·Z)` factor by factor.
///
/// Roots and the diagonal of Z are signed powers of q, so each product r·z is ±q^n; a factor
/// within a few ulps of zero has n = 0 and is set to exactly zero, since |1 − q^n| ≥ 1 − q otherwise.
fn eval_factored<T: Scalar>(imgs: &GenImages<T>, f: &FactoredRhs<T>, dim: usize) -> Result<CMatrix<T>> {
    let z = imgs.get(&Generator::Z).ok_or_else(|| Error::MissingGenerator("Z".into()))?;
    let ulps = T::lit(8.0) * T::unit_roundoff();
    let one = T::one();
    let d: Vec<Cx<T>> = z
        .diag()
        .into_iter()
        .map(|zi| {
            f.roots.iter().fold(Complex::new(f.scale, T::zero()), |acc, r| {
                let w = zi.scale(*r);
                let factor = Complex::new(one, T::zero()) - w;
                if factor.norm() <= ulps * one.max(w.norm()) {
                    Complex::zero()
                } else {
                    acc * factor
                }
            })
        })
        .collect();
    let diagonal = (0..dim).all(|i| (0..dim).all(|j| i == j || z[(i, j)].is_zero()));
    if !diagonal {
        return Err(Error::Unsupported("factored right-hand sides need a diagonal Z".into()));
    }
    let pre = eval_with(imgs, &NCPoly::term(f.prefix.clone(), Complex::new(one, T::zero())), dim)?;
    Ok(CMatrix::from_fn(dim, dim, |i, j| pre[(i, j)] * d[j]))
}

/// Checks that the image of g* is the adjoint of the image of g for every generator.
pub fn star_check<T: Scalar>(pres: &Presentation<T>, rep: &TruncatedRep<T>, tol: f64) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("star").param("algebra", pres.name()).param("N", rep.n());
    for (g, img) in &pres.star_map {
        let a = rep.image(*g)?.adjoint();
        let s = rep.evaluate(img)?;
        b.item(format!("{g}*"), a.mixed_diff(&s).as_f64(), tol);
    }
    Ok(b.finish())
}

/// Settings of the randomized suites.
#[derive(Clone, Copy, Debug)]
pub struct RandomSuite {
    pub seed: u64,
    pub count: usize,
    pub max_len: usize,
}

impl Default for RandomSuite {
    fn default() -> Self {
        Self { seed: 0, count: 200, max_len: 6 }
    }
}

/// Rewriting oracle: evaluate(w) against evaluate(normal_form(w)) for random words, plus basis
/// membership of every normal-form term and the number of iteration-cap hits.
pub fn oracle_check<T: Scalar>(
    pres: &Presentation<T>,
    rep: &TruncatedRep<T>,
    alphabet: &[Generator],
    suite: RandomSuite,
    tol: f64,
) -> Result<VerificationReport> {
    let mut rng = Lcg::new(suite.seed);
    let mut worst = 0.0f64;
    let mut worst_word = String::new();
    let mut off_basis = 0usize;
    let mut cap_hits = 0usize;
    let mut non_finite = 0usize;
    for _ in 0..suite.count {
        let w = random_word(&mut rng, alphabet, suite.max_len);
        let poly = NCPoly::term(w.clone(), Complex::new(T::one(), T::zero()));
        let nf = match normal_form_capped(&poly, pres, DEFAULT_CAP) {
            Ok(r) => r.poly,
            Err(Error::IterationCap { .. }) => {
                cap_hits += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        off_basis += nf.terms().filter(|(t, _)| !in_basis(t, pres)).count();
        let a = rep.evaluate(&poly)?;
        let b = rep.evaluate(&nf)?;
        if !(a.is_finite() && b.is_finite()) {
            non_finite += 1;
            continue;
        }
        let r = a.mixed_diff(&b).as_f64();
        if r > worst || worst_word.is_empty() {
            worst = worst.max(r);
            worst_word = w.to_string();
        }
    }
    let mut b = ReportBuilder::new("rewrite-oracle")
        .param("algebra", pres.name())
        .param("seed", suite.seed as i64)
        .param("count", suite.count)
        .param("max_len", suite.max_len)
        .param("N", rep.n())
        .param("worst_word", worst_word);
    b.item("oracle", worst, tol);
    b.item("off-basis-terms", off_basis as f64, 0.0);
    b.item("cap-hits", cap_hits as f64, 0.0);
    b.item("non-finite", non_finite as f64, 0.0);
    Ok(b.finish())
}

/// evaluate(p*) against evaluate(p)^† for random polynomials with complex coefficients.
pub fn star_random_check<T: Scalar>(
    pres: &Presentation<T>,
    rep: &TruncatedRep<T>,
    alphabet: &[Generator],
    suite: RandomSuite,
    tol: f64,
) -> Result<VerificationReport> {
    let mut rng = Lcg::new(suite.seed ^ 0x5eed);
    let mut worst = 0.0f64;
    for _ in 0..suite.count {
        let mut poly = NCPoly::zero();
        for _ in 0..3 {
            let w = random_word(&mut rng, alphabet, suite.max_len);
            let c = Complex::new(T::lit(rng.unit() - 0.5), T::lit(rng.unit() - 0.5));
            poly = &poly + &NCPoly::term(w, c);
        }
        let a = rep.evaluate(&poly)?.adjoint();
        let s = rep.evaluate(&star(&poly, pres)?)?;
        worst = worst.max(a.mixed_diff(&s).as_f64());
    }
    let mut b = ReportBuilder::new("star-random")
        .param("algebra", pres.name())
        .param("seed", suite.seed as i64)
        .param("count", suite.count)
        .param("N", rep.n());
    b.item("adjoint", worst, tol);
    Ok(b.finish())
}
