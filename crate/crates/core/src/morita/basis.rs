//! The basis change V_{2l} ⊗ ℂ² ≅ V_{2l−1} ⊕ V_{2l+1}.
//!
//! Tensor index of e^{(l)}_{k,μ} ⊗ e_ν is ν·2n + μ·n + j with ν = 0 for e₊, μ = 0 for the minus
//! summand, j = k (minus) or j = k + 2l (plus). Each family's columns are ordered like the basis of
//! the target B_{l±1/2} representation with n − 1 vectors per summand.

use num_complex::Complex;

use crate::casimir::Branch;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::qcore::{HalfInt, QParams};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct BasisChange<T> {
    pub l: HalfInt,
    /// Vectors per summand of the source window.
    pub n: usize,
    /// Columns spanning the l + 1/2 family (4n × 2(n−1)).
    pub up: CMatrix<T>,
    /// Columns spanning the l − 1/2 family (4n × 2(n−1)).
    pub down: CMatrix<T>,
    pub p_up: CMatrix<T>,
    pub p_down: CMatrix<T>,
}

impl<T: Scalar> BasisChange<T> {
    pub fn new(p: &QParams<T>, l: HalfInt, n: usize) -> Result<Self> {
        if n < 2 * l.twice() as usize + 4 {
            return Err(Error::InvalidParameter(format!("basis change for l = {l} needs N >= {}", 2 * l.twice() + 4)));
        }
        let up = family(p, l.twice() as i32, n, Branch::Up);
        let down = family(p, l.twice() as i32, n, Branch::Down);
        let p_up = &up * &up.adjoint();
        let p_down = &down * &down.adjoint();
        Ok(Self { l, n, up, down, p_up, p_down })
    }

    pub fn family(&self, branch: Branch) -> &CMatrix<T> {
        match branch {
            Branch::Up => &self.up,
            Branch::Down => &self.down,
        }
    }

    pub fn projection(&self, branch: Branch) -> &CMatrix<T> {
        match branch {
            Branch::Up => &self.p_up,
            Branch::Down => &self.p_down,
        }
    }

    /// [up | down]: the new basis in old coordinates.
    pub fn forward(&self) -> CMatrix<T> {
        let rows = self.up.rows();
        let (a, b) = (self.up.cols(), self.down.cols());
        CMatrix::from_fn(rows, a + b, |i, j| if j < a { self.up[(i, j)] } else { self.down[(i, j - a)] })
    }

    /// Inverse on the span of the columns (the adjoint, since the columns are orthonormal).
    pub fn inverse(&self) -> CMatrix<T> {
        self.forward().adjoint()
    }

    /// Window indices with j < n − 2, where both families are complete.
    pub fn interior(&self) -> Vec<usize> {
        let n = self.n;
        (0..4).flat_map(|blk| (0..n - 2).map(move |j| blk * n + j)).collect()
    }
}

fn family<T: Scalar>(p: &QParams<T>, l2: i32, n: usize, branch: Branch) -> CMatrix<T> {
    let one = T::one();
    let c = one / (one + p.pow(2 * l2)).sqrt();
    let ql = p.pow(l2);
    let ni = n as i32;
    let m = n - 1;
    let mut w = CMatrix::zeros(4 * n, 2 * m);
    // tensor index for (spin ν, summand μ, label k)
    let idx = |nu: usize, mu: usize, k: i32| -> Option<usize> {
        let j = if mu == 0 { k } else { k + l2 };
        (0..ni).contains(&j).then(|| nu * 2 * n + mu * n + j as usize)
    };
    let mut put = |col: usize, at: Option<usize>, v: T| {
        if let Some(i) = at {
            w[(i, col)] = Complex::new(v * c, T::zero());
        }
    };
    match branch {
        Branch::Up => {
            for k in 0..=(ni - 2) {
                let col = k as usize;
                put(col, idx(0, 0, k), (one + p.pow(2 * k + 2 * l2 + 2)).sqrt());
                put(col, idx(1, 0, k + 1), ql * (one - p.pow(2 * k + 2)).sqrt());
            }
            for k in -(l2 + 1)..=(ni - 3 - l2) {
                let col = m + (k + l2 + 1) as usize;
                // the e_{k,+,+} factor (1 − q^{2k+2l+2}) is exactly zero at k = −2l − 1
                if k + l2 + 1 > 0 {
                    put(col, idx(0, 1, k), -(one - p.pow(2 * k + 2 * l2 + 2)).sqrt());
                }
                put(col, idx(1, 1, k + 1), ql * (one + p.pow(2 * k + 2)).sqrt());
            }
        }
        Branch::Down => {
            for k in 0..=(ni - 2) {
                let col = k as usize;
                if k > 0 {
                    put(col, idx(0, 0, k - 1), -ql * (one - p.pow(2 * k)).sqrt());
                }
                put(col, idx(1, 0, k), (one + p.pow(2 * k + 2 * l2)).sqrt());
            }
            for k in (1 - l2)..=(ni - 1 - l2) {
                let col = m + (k + l2 - 1) as usize;
                put(col, idx(0, 1, k - 1), ql * (one + p.pow(2 * k)).sqrt());
                put(col, idx(1, 1, k), (one - p.pow(2 * k + 2 * l2)).sqrt());
            }
        }
    }
    w
}
