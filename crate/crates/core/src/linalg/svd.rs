use num_complex::Complex;
use num_traits::Zero;

use super::CMatrix;
use crate::scalar::{Cx, Scalar};

/// Singular values (descending) and right singular vectors (columns of `v`, same order).
#[derive(Clone, Debug)]
pub struct Svd<T> {
    pub values: Vec<T>,
    pub v: CMatrix<T>,
}

impl<T: Scalar> Svd<T> {
    /// Right singular vectors whose singular value is below `threshold`.
    pub fn null_vectors(&self, threshold: T) -> Vec<Vec<Cx<T>>> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, s)| **s < threshold)
            .map(|(k, _)| self.v.column(k))
            .collect()
    }
}

fn dot<T: Scalar>(a: &[Cx<T>], b: &[Cx<T>]) -> Cx<T> {
    a.iter().zip(b).fold(Complex::zero(), |s, (x, y)| s + x.conj() * *y)
}

/// Householder QR; returns the columns of the leading `cols x cols` block of R.
fn qr_r<T: Scalar>(mut cols: Vec<Vec<Cx<T>>>) -> Vec<Vec<Cx<T>>> {
    let m = cols.first().map_or(0, Vec::len);
    let c = cols.len();
    for k in 0..c.min(m) {
        let x: Vec<Cx<T>> = cols[k][k..].to_vec();
        let norm = x.iter().fold(T::zero(), |s, v| s + v.norm_sqr()).sqrt();
        if norm == T::zero() {
            continue;
        }
        let x0 = x[0];
        let alpha = if x0.norm() == T::zero() { Complex::new(-norm, T::zero()) } else { -(x0 / x0.norm()) * norm };
        let mut v = x;
        v[0] -= alpha;
        let vn = v.iter().fold(T::zero(), |s, e| s + e.norm_sqr());
        if vn == T::zero() {
            continue;
        }
        let two = T::lit(2.0) / vn;
        for col in cols.iter_mut().skip(k) {
            let w = dot(&v, &col[k..]) * two;
            for (e, vi) in col[k..].iter_mut().zip(&v) {
                *e -= *vi * w;
            }
        }
    }
    cols.into_iter().map(|mut col| {
        col.truncate(c.min(m));
        col
    }).collect()
}

/// One-sided Jacobi SVD. Tall inputs are first reduced to their R factor.
pub fn svd<T: Scalar>(a: &CMatrix<T>) -> Svd<T> {
    let (m, c) = (a.rows(), a.cols());
    let raw: Vec<Vec<Cx<T>>> = (0..c).map(|j| a.column(j)).collect();
    let mut g = if m > c { qr_r(raw) } else { raw };
    let mut v: Vec<Vec<Cx<T>>> = (0..c)
        .map(|j| (0..c).map(|i| if i == j { Complex::new(T::one(), T::zero()) } else { Complex::zero() }).collect())
        .collect();
    let eps = T::unit_roundoff();
    for _sweep in 0..120 {
        let mut rotated = false;
        for i in 0..c {
            for j in (i + 1)..c {
                let alpha = g[i].iter().fold(T::zero(), |s, e| s + e.norm_sqr());
                let beta = g[j].iter().fold(T::zero(), |s, e| s + e.norm_sqr());
                let gamma = dot(&g[i], &g[j]);
                let gn = gamma.norm();
                if gn == T::zero() || gn <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gn + gn);
                let t = if zeta == T::zero() {
                    T::one()
                } else {
                    zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt())
                };
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = cs * t;
                let ph = (gamma / gn).conj();
                for cols in [&mut g, &mut v] {
                    let (left, right) = cols.split_at_mut(j);
                    for (x, y) in left[i].iter_mut().zip(right[0].iter_mut()) {
                        let yt = *y * ph;
                        let xi = *x;
                        *x = xi * cs - yt * sn;
                        *y = xi * sn + yt * cs;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<T> = g.iter().map(|col| col.iter().fold(T::zero(), |s, e| s + e.norm_sqr()).sqrt()).collect();
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&k| norms[k]).collect();
    let vm = CMatrix::from_fn(c, c, |i, j| v[order[j]][i]);
    Svd { values, v: vm }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_deficient_tall() {
        // Third column = first + i * second.
        let a = CMatrix::from_fn(7, 3, |i, j| {
            let c0 = Complex::new(1.0 + i as f64, 0.5);
            let c1 = Complex::new((i * i) as f64 * 0.1, -1.0);
            match j {
                0 => c0,
                1 => c1,
                _ => c0 + c1 * Complex::new(0.0, 1.0),
            }
        });
        let s = svd(&a);
        assert!(s.values[2] < 1e-12 * s.values[0]);
        assert!(s.values[1] > 1e-3);
        let nv = &s.null_vectors(1e-9)[0];
        let img = a.mul_vec(nv);
        assert!(img.iter().all(|e| e.norm() < 1e-12));
    }

    #[test]
    fn diagonal_values() {
        let a = CMatrix::from_real_diag(&[3.0f64, -5.0, 1e-3]);
        let s = svd(&a);
        assert!((s.values[0] - 5.0).abs() < 1e-14);
        assert!((s.values[2] - 1e-3).abs() < 1e-16);
    }
}
