//! The spin-2l vector θ = (λ_s A(s))_s and its transformation law.

use std::collections::BTreeMap;

use super::{ad, Action, ImplementingRep};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::ncalg::{Generator, NCPoly};
use crate::qcore::{q_pochhammer_real, HalfInt, QParams};
use crate::report::{ReportBuilder, VerificationReport};
use crate::scalar::Scalar;

/// λ_s = q^{s(s−1)/2} ((q^{4l−2s+2};q²)_{s+2l} / (q²;q²)_{s+2l})^{1/2}.
pub fn theta_coefficient<T: Scalar>(p: &QParams<T>, l: HalfInt, s: i32) -> Result<T> {
    let l2 = l.twice() as i32;
    if s.abs() > l2 {
        return Err(Error::InvalidParameter(format!("θ label {s} outside [-{l2}, {l2}]")));
    }
    let r = (s + l2) as usize;
    let q2 = p.pow(2);
    let num = q_pochhammer_real(p.pow(2 * l2 - 2 * s + 2), q2, r);
    let den = q_pochhammer_real(q2, q2, r);
    Ok(p.powf(T::lit(f64::from(s * (s - 1)) / 2.0)) * (num / den).sqrt())
}

/// θ^{(s)} = λ_s · A(s) at the implementer's internal size.
pub fn theta<T: Scalar>(l: HalfInt, s: i32, imp: &ImplementingRep<T>) -> Result<CMatrix<T>> {
    let c = theta_coefficient(imp.params(), l, s)?;
    imp.element(&NCPoly::mono(&[Generator::A(s)], c))
}

/// All components of θ for one l.
#[derive(Clone, Debug)]
pub struct ThetaData<T> {
    pub l: HalfInt,
    pub lambdas: BTreeMap<i32, T>,
    pub components: BTreeMap<i32, CMatrix<T>>,
}

impl<T: Scalar> ThetaData<T> {
    pub fn new(l: HalfInt, imp: &ImplementingRep<T>) -> Result<Self> {
        let l2 = l.twice() as i32;
        let mut lambdas = BTreeMap::new();
        let mut components = BTreeMap::new();
        for s in -l2..=l2 {
            lambdas.insert(s, theta_coefficient(imp.params(), l, s)?);
            components.insert(s, theta(l, s, imp)?);
        }
        Ok(Self { l, lambdas, components })
    }
}

/// θ^{(s)} ◁ E = c_E(s) θ^{(s−1)}.
fn coeff_e<T: Scalar>(p: &QParams<T>, l2: i32, s: i32) -> T {
    let one = T::one();
    let rad = (one - p.pow(2 * l2 + 2 * s)) * (one - p.pow(2 * l2 - 2 * s + 2));
    p.powf(T::lit(f64::from(-s - l2) + 0.5)) * p.lambda() * rad.max(T::zero()).sqrt()
}

/// θ^{(s)} ◁ F = c_F(s) θ^{(s+1)}.
fn coeff_f<T: Scalar>(p: &QParams<T>, l2: i32, s: i32) -> T {
    let one = T::one();
    let rad = (one - p.pow(2 * l2 + 2 * s + 2)) * (one - p.pow(2 * l2 - 2 * s));
    p.powf(T::lit(f64::from(s - l2) - 0.5)) * p.lambda() * rad.max(T::zero()).sqrt()
}

/// K, E and F laws of every θ component. E/F are checked with Z⁻¹ cleared:
/// q^{1/2}λ[θ_s, 𝐗] = c_E 𝐙 θ_{s−1} and q^{−3/2}λ[θ_s, 𝐘] = c_F θ_{s+1} 𝐙.
pub fn spin2l_check<T: Scalar>(l: HalfInt, imp: &ImplementingRep<T>, tol: f64) -> Result<VerificationReport> {
    let p = *imp.params();
    let l2 = l.twice() as i32;
    let data = ThetaData::new(l, imp)?;
    let z = imp.image(Generator::Z);
    let zero = CMatrix::zeros(imp.dim(), imp.dim());
    let mut b = ReportBuilder::new("theta").param("l", l.to_string()).param("q", p.q().as_f64());
    for s in -l2..=l2 {
        let th = &data.components[&s];
        let lam = data.lambdas[&s];
        b.item(format!("{s:+}:lambda-positive"), if lam > T::zero() { 0.0 } else { 1.0 }, 0.0);

        let k = ad(Action::K, th, imp)?;
        let res = imp.crop(&k).max_abs_diff(&imp.crop(&th.scale_re(p.pow(2 * s))));
        b.item(format!("{s:+}:K"), res.as_f64(), tol);

        let lhs = CMatrix::commutator(th, imp.image(Generator::X)).scale_re(p.pow_half(1) * p.lambda());
        let below = data.components.get(&(s - 1)).unwrap_or(&zero);
        let rhs = (z * below).scale_re(coeff_e(&p, l2, s));
        b.item(format!("{s:+}:E"), imp.crop(&lhs).max_abs_diff(&imp.crop(&rhs)).as_f64(), tol);

        let lhs = CMatrix::commutator(th, imp.image(Generator::Y)).scale_re(p.pow_half(-3) * p.lambda());
        let above = data.components.get(&(s + 1)).unwrap_or(&zero);
        let rhs = (above * z).scale_re(coeff_f(&p, l2, s));
        b.item(format!("{s:+}:F"), imp.crop(&lhs).max_abs_diff(&imp.crop(&rhs)).as_f64(), tol);
    }
    b.item("E-coefficient-vanishes-at-lowest", coeff_e(&p, l2, -l2).as_f64(), tol);
    b.item("F-coefficient-vanishes-at-highest", coeff_f(&p, l2, l2).as_f64(), tol);
    Ok(b.finish())
}

#[cfg(test)]
pub(super) fn coefficients<T: Scalar>(p: &QParams<T>, l2: i32, s: i32) -> (T, T) {
    (coeff_e(p, l2, s), coeff_f(p, l2, s))
}
