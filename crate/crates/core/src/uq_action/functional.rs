//! Invariant functionals M ↦ tr(𝐙M), their invariance defects, and the conditional expectation.

use num_complex::Complex;

use super::{ad, Action, ImplementingRep};
use crate::error::{Error, Result};
use crate::linalg::{svd, CMatrix};
use crate::ncalg::{basis_words, AlgebraKind, NCPoly, Presentation};
use crate::qcore::{HalfInt, QParams};
use crate::report::{ReportBuilder, VerificationReport};
use crate::scalar::{Cx, Scalar};
use crate::trunc_rep::TruncatedRep;

/// M ↦ Σ_i d_i M_ii on the window.
#[derive(Clone, Debug)]
pub struct DensityFunctional<T> {
    pub density: Vec<T>,
}

impl<T: Scalar> DensityFunctional<T> {
    /// Density from the implementer's 𝐙, cropped to the window.
    pub fn from_implementer(imp: &ImplementingRep<T>) -> Result<Self> {
        let z = imp.crop(imp.image(crate::ncalg::Generator::Z));
        let density: Vec<T> = z.diag().iter().map(|c| c.re).collect();
        if let Some(bad) = density.iter().find(|d| **d <= T::zero()) {
            return Err(Error::InvalidParameter(format!("density entry {bad} is not positive")));
        }
        Ok(Self { density })
    }

    pub fn eval(&self, a: &CMatrix<T>) -> Result<Cx<T>> {
        if a.rows() != self.density.len() {
            return Err(Error::DimensionMismatch { expected: self.density.len(), got: a.rows() });
        }
        Ok(self.density.iter().enumerate().fold(Complex::new(T::zero(), T::zero()), |s, (i, d)| s + a[(i, i)] * *d))
    }
}

/// 100·q^{2(N−8)}.
pub fn functional_tail_bound<T: Scalar>(p: &QParams<T>, n: usize) -> f64 {
    100.0 * p.pow(2 * (n as i32 - 8)).as_f64()
}

fn implementer_for<T: Scalar>(p: &QParams<T>, kind: AlgebraKind<T>, n: usize, reach: usize) -> Result<ImplementingRep<T>> {
    match kind {
        AlgebraKind::Podles { x, .. } => ImplementingRep::podles(*p, x, n, reach),
        AlgebraKind::Bl { l } => ImplementingRep::bl(*p, l, n, reach),
        other => Err(Error::Unsupported(format!("no implementing representation for {other}"))),
    }
}

/// |φ(M◁E)|, |φ(M◁F)|, |φ(M◁K) − φ(M)| for the basis monomials of degree ≤ `max_deg`.
pub fn invariance_check<T: Scalar>(
    p: &QParams<T>,
    kind: AlgebraKind<T>,
    n: usize,
    max_deg: usize,
    threshold: f64,
) -> Result<VerificationReport> {
    let pres = Presentation::make(kind, *p)?;
    let words = basis_words(&pres, max_deg);
    let probe = implementer_for(p, kind, n, 0)?;
    let reach = words
        .iter()
        .map(|w| probe.plain().reach_of(&NCPoly::term(w.clone(), Complex::new(T::one(), T::zero()))))
        .max()
        .unwrap_or(0);
    let imp = implementer_for(p, kind, n, reach)?;
    let phi = DensityFunctional::from_implementer(&imp)?;
    let mut b = ReportBuilder::new("functional")
        .param("algebra", pres.name())
        .param("q", p.q().as_f64())
        .param("N", n)
        .param("degree", max_deg);
    for w in &words {
        let m = imp.element(&NCPoly::term(w.clone(), Complex::new(T::one(), T::zero())))?;
        let base = phi.eval(&imp.crop(&m))?;
        for g in [Action::E, Action::F, Action::K] {
            let v = phi.eval(&imp.crop(&ad(g, &m, &imp)?))?;
            let v = if g == Action::K { v - base } else { v };
            b.item(format!("{w}:{g}"), v.norm().as_f64(), threshold);
        }
    }
    Ok(b.finish())
}

/// Keeps the diagonal summand blocks of a window matrix of a two-summand representation.
pub fn conditional_expectation<T: Scalar>(a: &CMatrix<T>, rep: &TruncatedRep<T>) -> Result<CMatrix<T>> {
    if rep.summands() != 2 || rep.is_tensor() {
        return Err(Error::Unsupported("conditional expectation needs a two-summand representation".into()));
    }
    let n = rep.n();
    if a.rows() != 2 * n || a.cols() != 2 * n {
        return Err(Error::DimensionMismatch { expected: 2 * n, got: a.rows() });
    }
    Ok(CMatrix::from_fn(2 * n, 2 * n, |i, j| if (i < n) == (j < n) { a[(i, j)] } else { Complex::new(T::zero(), T::zero()) }))
}

/// Matrix of P ↦ (1 + q^{−2l−1}Z) P(q^{−2}Z) − (1 + q^{2l−1}Z) P(Z) on coefficients of degree ≤ D.
/// Its kernel is the obstruction to invariants A_0 P(Z).
pub fn functional_equation<T: Scalar>(p: &QParams<T>, l: HalfInt, d: usize) -> CMatrix<T> {
    let l2 = l.twice() as i32;
    let a = p.pow(-l2 - 1);
    let b = p.pow(l2 - 1);
    let mut m = CMatrix::zeros(d + 2, d + 1);
    for j in 0..=d {
        let s = p.pow(-2 * j as i32);
        m[(j, j)] = Complex::new(s - T::one(), T::zero());
        m[(j + 1, j)] = Complex::new(a * s - b, T::zero());
    }
    m
}

/// Kernel dimension of [`functional_equation`] by singular values relative to the largest.
pub fn functional_equation_kernel<T: Scalar>(p: &QParams<T>, l: HalfInt, d: usize) -> usize {
    let s = svd(&functional_equation(p, l, d));
    let top = s.values.first().copied().unwrap_or(T::zero());
    s.values.iter().filter(|v| **v <= top * T::lit(1e-12)).count()
}
