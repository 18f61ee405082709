use num_complex::Complex;
use num_traits::Zero;

use super::CMatrix;
use crate::scalar::{Cx, Scalar};

/// Eigenvalues (ascending) and eigenvectors (columns, same order) of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: CMatrix<T>,
}

/// Cyclic complex Jacobi. Only the Hermitian part of `m` is used.
pub fn hermitian_eigen<T: Scalar>(m: &CMatrix<T>) -> HermitianEigen<T> {
    assert!(m.is_square(), "hermitian_eigen needs a square matrix");
    let n = m.rows();
    let half = T::lit(0.5);
    let mut a: Vec<Vec<Cx<T>>> =
        (0..n).map(|i| (0..n).map(|j| (m[(i, j)] + m[(j, i)].conj()) * half).collect()).collect();
    let mut v: Vec<Vec<Cx<T>>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Complex::new(T::one(), T::zero()) } else { Complex::zero() }).collect())
        .collect();
    let scale = a.iter().flatten().fold(T::zero(), |s, x| s + x.norm_sqr()).sqrt();
    let target = T::unit_roundoff() * scale.max(T::min_positive_value());

    for _sweep in 0..80 {
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |s, (i, j)| s + a[i][j].norm_sqr())
            .sqrt();
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                let g = apq.norm();
                if g <= target / T::lit(n as f64 + 1.0) {
                    continue;
                }
                let phase = apq / g;
                let theta = (a[q][q].re - a[p][p].re) / (g + g);
                let t = if theta == T::zero() {
                    T::one()
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                let jpp = Complex::new(c, T::zero());
                let jpq = Complex::new(s, T::zero());
                let jqp = phase.conj() * (-s);
                let jqq = phase.conj() * c;
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * jpp + y * jqp;
                    row[q] = x * jpq + y * jqq;
                }
                for k in 0..n {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = jpp.conj() * x + jqp.conj() * y;
                    a[q][k] = jpq.conj() * x + jqq.conj() * y;
                }
                a[p][q] = Complex::zero();
                a[q][p] = Complex::zero();
                a[p][p].im = T::zero();
                a[q][q].im = T::zero();
                for row in v.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * jpp + y * jqp;
                    row[q] = x * jpq + y * jqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].re.partial_cmp(&a[j][j].re).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| a[i][i].re).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| v[i][order[j]]);
    HermitianEigen { values, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_known_spectrum() {
        // U diag(1,2,3,4) U^H for a complex unitary-ish rotation chain.
        let d = CMatrix::from_real_diag(&[1.0f64, 2.0, 3.0, 4.0]);
        let h = CMatrix::from_fn(4, 4, |i, j| {
            if i == j {
                Complex::new(0.0, 0.0)
            } else {
                Complex::new(0.1 * (i + j) as f64, 0.05 * (i as f64 - j as f64))
            }
        });
        let m = &d + &h;
        let e = hermitian_eigen(&m);
        for (k, lam) in e.values.iter().enumerate() {
            let col = e.vectors.column(k);
            let mv = m.mul_vec(&col);
            let res = mv.iter().zip(&col).fold(0.0f64, |s, (a, b)| s.max((*a - *b * *lam).norm()));
            assert!(res < 1e-12, "residual {res}");
        }
        let tr: f64 = e.values.iter().sum();
        assert!((tr - 10.0).abs() < 1e-12);
    }
}
