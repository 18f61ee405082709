//! Right action of the quantized enveloping algebra through implementing operators.
//!
//! The action on an operator M is inner: with implementing images 𝐙, 𝐗, 𝐘,
//!
//! * M ◁ K = 𝐙 M 𝐙⁻¹
//! * M ◁ E = q^{1/2} λ 𝐙⁻¹ [M, 𝐗]
//! * M ◁ F = q^{−3/2} λ [M, 𝐘] 𝐙⁻¹
//!
//! For B_l and the direct-sum Podleś representation the implementer is the sign-twisted one
//! (𝐛 = e·b), whose 𝐙 is a positive density. All matrices here live at the implementer's padded
//! internal size; callers crop to the window once the products are done.

mod ergodic;
mod functional;
mod theta;

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::ncalg::{Generator, NCPoly};
use crate::qcore::{HalfInt, QParams};
use crate::scalar::Scalar;
use crate::trunc_rep::{GenImages, PodlesVariant, TruncatedRep};

pub use ergodic::{
    b0_matrix_units, ergodic_bl, ergodic_podles, invariant_subspace, InvariantSubspace, SINGULAR_THRESHOLD,
};
pub use functional::{
    conditional_expectation, functional_equation, functional_equation_kernel, functional_tail_bound, invariance_check,
    DensityFunctional,
};
pub use theta::{spin2l_check, theta, theta_coefficient, ThetaData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Action {
    K,
    E,
    F,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::K => "K",
            Self::E => "E",
            Self::F => "F",
        })
    }
}

/// An implementing representation frozen at one internal size, together with the plain
/// representation used to turn algebra elements into matrices on the same space.
#[derive(Clone, Debug)]
pub struct ImplementingRep<T> {
    implementer: TruncatedRep<T>,
    plain: TruncatedRep<T>,
    m: usize,
    images: GenImages<T>,
}

impl<T: Scalar> ImplementingRep<T> {
    /// Wraps an implementer and its plain counterpart; `reach` is the widest element reach the
    /// caller will act on.
    pub fn new(implementer: TruncatedRep<T>, plain: TruncatedRep<T>, reach: usize) -> Result<Self> {
        let m = implementer.internal_size(reach + 1);
        let images = implementer.images_at(m)?;
        for g in [Generator::X, Generator::Y, Generator::Z, Generator::Zi] {
            if !images.contains_key(&g) {
                return Err(Error::MissingGenerator(g.to_string()));
            }
        }
        Ok(Self { implementer, plain, m, images })
    }

    pub fn bl(p: QParams<T>, l: HalfInt, n: usize, reach: usize) -> Result<Self> {
        Self::new(TruncatedRep::bl_implementer(p, l, n)?, TruncatedRep::bl(p, l, n)?, reach)
    }

    /// 𝐛 operators of the Podleś sphere on the direct sum.
    pub fn podles(p: QParams<T>, x: T, n: usize, reach: usize) -> Result<Self> {
        Self::new(
            TruncatedRep::podles(p, x, PodlesVariant::AVariant, n)?,
            TruncatedRep::podles(p, x, PodlesVariant::DirectSum, n)?,
            reach,
        )
    }

    pub fn params(&self) -> &QParams<T> {
        self.implementer.params()
    }

    pub fn implementer(&self) -> &TruncatedRep<T> {
        &self.implementer
    }

    pub fn plain(&self) -> &TruncatedRep<T> {
        &self.plain
    }

    /// Internal per-summand size.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.images[&Generator::Z].rows()
    }

    pub fn image(&self, g: Generator) -> &CMatrix<T> {
        &self.images[&g]
    }

    /// Plain image of `poly` at the internal size (not cropped).
    pub fn element(&self, poly: &NCPoly<T>) -> Result<CMatrix<T>> {
        let imgs = self.plain.images_at(self.m)?;
        let dim = imgs[&Generator::Z].rows();
        crate::trunc_rep::eval_with(&imgs, poly, dim)
    }

    pub fn crop(&self, a: &CMatrix<T>) -> CMatrix<T> {
        self.implementer.crop(a, self.m)
    }

    pub fn window(&self) -> Vec<usize> {
        self.implementer.window(self.m)
    }

    fn check_dim(&self, a: &CMatrix<T>) -> Result<()> {
        if a.rows() != self.dim() || a.cols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: a.rows() });
        }
        Ok(())
    }
}

/// M ◁ g for g ∈ {K, E, F}.
pub fn ad<T: Scalar>(g: Action, a: &CMatrix<T>, imp: &ImplementingRep<T>) -> Result<CMatrix<T>> {
    imp.check_dim(a)?;
    let p = imp.params();
    let z = imp.image(Generator::Z);
    let zi = imp.image(Generator::Zi);
    Ok(match g {
        Action::K => &(z * a) * zi,
        Action::E => (zi * &CMatrix::commutator(a, imp.image(Generator::X))).scale_re(p.pow_half(1) * p.lambda()),
        Action::F => (&CMatrix::commutator(a, imp.image(Generator::Y)) * zi).scale_re(p.pow_half(-3) * p.lambda()),
    })
}

/// Constraint form of M ◁ g = ε(g) M with Z⁻¹ cleared: 𝐙M − M𝐙, [M, 𝐗], [M, 𝐘].
pub fn cleared_defect<T: Scalar>(g: Action, a: &CMatrix<T>, imp: &ImplementingRep<T>) -> Result<CMatrix<T>> {
    imp.check_dim(a)?;
    Ok(match g {
        Action::K => CMatrix::commutator(imp.image(Generator::Z), a),
        Action::E => CMatrix::commutator(a, imp.image(Generator::X)),
        Action::F => CMatrix::commutator(a, imp.image(Generator::Y)),
    })
}

/// Scalar c with (M ◁ E)* = c · (M* ◁ F); derived from 𝐗* = 𝐘 and frozen by a regression test.
pub fn star_scalar<T: Scalar>(p: &QParams<T>) -> T {
    -p.pow(2)
}

#[cfg(test)]
mod tests;
