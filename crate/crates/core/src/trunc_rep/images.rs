//! Closed-form generator matrices at a given per-block size.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::ncalg::Generator;
use crate::qcore::{tau, QParams};
use crate::scalar::Scalar;

use Generator::*;

pub type GenImages<T> = BTreeMap<Generator, CMatrix<T>>;

/// Spin-1/2 representation on (e₊, e₋): K = diag(q^{-1}, q), E e₊ = q^{1/2} e₋, F e₋ = q^{-1/2} e₊.
#[derive(Clone, Debug)]
pub struct SpinHalf<T> {
    pub k: CMatrix<T>,
    pub ki: CMatrix<T>,
    pub e: CMatrix<T>,
    pub f: CMatrix<T>,
}

pub fn spin_half<T: Scalar>(p: &QParams<T>) -> SpinHalf<T> {
    let k = CMatrix::from_real_diag(&[p.pow(-1), p.q()]);
    let ki = CMatrix::from_real_diag(&[p.q(), p.pow(-1)]);
    let mut e = CMatrix::zeros(2, 2);
    e[(1, 0)] = Complex::new(p.pow_half(1), T::zero());
    let mut f = CMatrix::zeros(2, 2);
    f[(0, 1)] = Complex::new(p.pow_half(-1), T::zero());
    SpinHalf { k, ki, e, f }
}

impl<T: Scalar> SpinHalf<T> {
    pub fn images(&self) -> GenImages<T> {
        [(K, self.k.clone()), (Ki, self.ki.clone()), (E, self.e.clone()), (F, self.f.clone())].into_iter().collect()
    }
}

/// ∏_{i<r} (1 − sign·q^{e0+2i}); `None` when a factor is exactly zero (sign = +1, exponent 0).
fn signed_poch<T: Scalar>(p: &QParams<T>, sign: i32, e0: i32, r: i32) -> Option<T> {
    let mut acc = T::one();
    for i in 0..r {
        let e = e0 + 2 * i;
        if sign > 0 && e == 0 {
            return None;
        }
        let t = p.pow(e);
        acc *= if sign > 0 { T::one() - t } else { T::one() + t };
    }
    Some(acc)
}

fn checked_sqrt<T: Scalar>(v: T, context: impl FnOnce() -> String) -> Result<T> {
    if v < T::zero() {
        return Err(Error::NegativeRadicand { value: v.as_f64(), context: context() });
    }
    Ok(v.sqrt())
}

/// Diagonal Z and lowering X of one Podleś summand: Z e_k = s q^{2k−sx+1} e_k,
/// X e_k = s ((1−q^{2k})(1+q^{2k−2sx}))^{1/2} e_{k−1} with s = ±1.
pub(crate) fn podles_block<T: Scalar>(p: &QParams<T>, x: T, sign: i32, m: usize) -> Result<(Vec<T>, Vec<T>)> {
    let s = T::lit(f64::from(sign));
    let two = T::lit(2.0);
    let mut z = Vec::with_capacity(m);
    let mut xo = vec![T::zero(); m];
    for k in 0..m {
        let kk = T::lit(k as f64);
        z.push(s * p.powf(two * kk - s * x + T::one()));
        if k > 0 {
            let rad = (T::one() - p.pow(2 * k as i32)) * (T::one() + p.powf(two * kk - two * s * x));
            xo[k] = s * checked_sqrt(rad, || format!("X e_{k}"))?;
        }
    }
    Ok((z, xo))
}

fn diag_block<T: Scalar>(z: &[T]) -> CMatrix<T> {
    CMatrix::from_real_diag(z)
}

fn lowering<T: Scalar>(xo: &[T]) -> CMatrix<T> {
    let m = xo.len();
    let mut x = CMatrix::zeros(m, m);
    for k in 1..m {
        x[(k - 1, k)] = Complex::new(xo[k], T::zero());
    }
    x
}

fn block_diag<T: Scalar>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    let z = CMatrix::zeros(a.rows(), b.cols());
    CMatrix::from_blocks(&[vec![a.clone(), z.clone()], vec![z, b.clone()]])
}

/// X, Y, Z, Zi, T from per-summand (z, x-offdiag, sign factor on the whole summand).
fn sphere_images<T: Scalar>(blocks: &[(Vec<T>, Vec<T>, T)], t: T) -> GenImages<T> {
    let mut zs = Vec::new();
    let mut xs = Vec::new();
    let mut ts = Vec::new();
    for (z, xo, f) in blocks {
        zs.push(diag_block(&z.iter().map(|v| *v * *f).collect::<Vec<_>>()));
        xs.push(lowering(&xo.iter().map(|v| *v * *f).collect::<Vec<_>>()));
        ts.push(CMatrix::identity(z.len()).scale_re(t * *f));
    }
    let join = |v: Vec<CMatrix<T>>| if v.len() == 1 { v.into_iter().next().unwrap_or_else(|| CMatrix::zeros(0, 0)) } else { block_diag(&v[0], &v[1]) };
    let z = join(zs);
    let x = join(xs);
    let zi = CMatrix::from_diag(&z.diag().iter().map(|v| Complex::new(v.re.inv(), T::zero())).collect::<Vec<_>>());
    let y = x.adjoint();
    [(X, x), (Y, y), (Z, z), (Zi, zi), (T, join(ts))].into_iter().collect()
}

/// Single or direct-sum Podleś images; `signs` lists (summand sign, overall factor) pairs.
pub(crate) fn podles_images<T: Scalar>(p: &QParams<T>, x: T, summands: &[(i32, T)], m: usize) -> Result<GenImages<T>> {
    let mut blocks = Vec::new();
    for (sign, f) in summands {
        let (z, xo) = podles_block(p, x, *sign, m)?;
        blocks.push((z, xo, *f));
    }
    Ok(sphere_images(&blocks, tau(p, x)))
}

/// B_l images on V ⊕ V (minus summand first); `twisted` multiplies X, Y, Z, Zi, T by e.
pub(crate) fn bl_images<T: Scalar>(p: &QParams<T>, l2: u32, twisted: bool, m: usize) -> Result<GenImages<T>> {
    let l2i = l2 as i32;
    let x = T::lit(f64::from(l2));
    let minus_f = if twisted { -T::one() } else { T::one() };
    let (zm, xm) = podles_block(p, x, -1, m)?;
    let (zp, xp) = podles_block(p, x, 1, m)?;
    let mut imgs = sphere_images(&[(zm, xm, minus_f), (zp, xp, T::one())], tau(p, x));
    let dim = 2 * m;
    let plus_index = |label: i32| -> Option<usize> {
        let j = label + l2i;
        (j >= 0 && (j as usize) < m).then_some(m + j as usize)
    };
    for s in -l2i..=l2i {
        let mut a = CMatrix::zeros(dim, dim);
        let parity = if s.rem_euclid(2) == 0 { T::one() } else { -T::one() };
        for k in 0..m as i32 {
            // e_{k,−} ↦ (−1)^s ((−q^{2k+2s+2};q²)_{2l−s} (q^{2k+2};q²)_{2l+s})^{1/2} e_{k+s,+}
            if let Some(target) = plus_index(k + s) {
                let f1 = signed_poch(p, -1, 2 * k + 2 * s + 2, l2i - s);
                let f2 = signed_poch(p, 1, 2 * k + 2, l2i + s);
                if let (Some(f1), Some(f2)) = (f1, f2) {
                    let c = parity * checked_sqrt(f1 * f2, || format!("A({s}) e_{{{k},-}}"))?;
                    a[(target, k as usize)] = Complex::new(c, T::zero());
                }
            }
        }
        for j in 0..m as i32 {
            // e_{k,+} ↦ ((q^{2k+2s+2};q²)_{2l−s} (−q^{2k+2};q²)_{2l+s})^{1/2} e_{k+s,−}, k = j − 2l
            let k = j - l2i;
            let target = k + s;
            if target < 0 || target as usize >= m {
                continue;
            }
            let f1 = signed_poch(p, 1, 2 * k + 2 * s + 2, l2i - s);
            let f2 = signed_poch(p, -1, 2 * k + 2, l2i + s);
            if let (Some(f1), Some(f2)) = (f1, f2) {
                let c = checked_sqrt(f1 * f2, || format!("A({s}) e_{{{k},+}}"))?;
                a[(target as usize, m + j as usize)] = Complex::new(c, T::zero());
            }
        }
        imgs.insert(A(s), a);
    }
    Ok(imgs)
}

/// π^(2) images on (space) ⊗ ℂ² from base images (which must contain X, Y, Z, Zi, T).
pub(crate) fn tensor_images<T: Scalar>(p: &QParams<T>, base: &GenImages<T>) -> Result<GenImages<T>> {
    let get = |g: Generator| base.get(&g).ok_or_else(|| Error::MissingGenerator(g.to_string()));
    let (x, y, z, zi, t) = (get(X)?, get(Y)?, get(Z)?, get(Zi)?, get(T)?);
    let sp = spin_half(p);
    let one2 = CMatrix::identity(2);
    let lam = p.lambda();
    let cx = p.pow_half(-1) * lam.inv();
    let ct = p.pow_half(1) * lam.inv();
    let kk = |a: &CMatrix<T>, b: &CMatrix<T>| a.tensor_spin(b);
    let ki_f = &sp.ki * &sp.f;
    let e_k = &sp.e * &sp.k;
    let fe = &sp.f * &sp.e;
    let kmk = &sp.k - &sp.ki;
    let z_part = &fe.scale_re(lam.powi(-2)) - &kmk.scale_re(p.pow(-1));
    let mut out = GenImages::new();
    out.insert(Z, kk(z, &sp.ki));
    out.insert(Zi, kk(zi, &sp.k));
    out.insert(X, &kk(x, &one2) + &kk(z, &sp.e.scale_re(cx)));
    out.insert(Y, &kk(y, &one2) + &kk(z, &ki_f.scale_re(cx)));
    let t2 = &(&(&kk(t, &sp.k) + &kk(z, &z_part)) + &kk(x, &sp.f.scale_re(ct))) + &kk(y, &e_k.scale_re(ct));
    out.insert(T, t2);
    for (g, m) in base {
        if let A(_) = g {
            out.insert(*g, kk(m, &one2));
        }
    }
    Ok(out)
}
