//! Two-eigenvalue splitting of the tensored Casimir and the compression x → x ± 1.
//!
//! On `π(2)` of a single Podleś summand, T preserves every plane span{e_{k,+}, e_{k+1,−}} and has
//! eigenvalues τ(x−1), τ(x+1) there. The closed-form eigenvectors are indexed so that, after
//! compression onto one branch, the generators act as the summand at x ± 1 with the same sign.
//! Tensor indices are `a·n + k` with a = 0 for the e₊ spin component.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix};
use crate::ncalg::{Generator, Presentation};
use crate::qcore::{tau, QParams};
use crate::report::{ReportBuilder, VerificationReport};
use crate::scalar::{Cx, Scalar};
use crate::trunc_rep::{relation_check, GenImages, PodlesVariant, TruncatedRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn variant(self) -> PodlesVariant {
        match self {
            Self::Plus => PodlesVariant::Plus,
            Self::Minus => PodlesVariant::Minus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Plus => "+",
            Self::Minus => "-",
        })
    }
}

/// Eigenvalue τ(x+1) (`Up`) or τ(x−1) (`Down`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Up,
    Down,
}

impl Branch {
    pub fn shift<T: Scalar>(self, x: T) -> T {
        match self {
            Self::Up => x + T::one(),
            Self::Down => x - T::one(),
        }
    }

    pub fn other(self) -> Self {
        match self {
            Self::Up => Self::Down,
            Self::Down => Self::Up,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Up => "x+1",
            Self::Down => "x-1",
        })
    }
}

/// T^(2) on the window of `π(2)` for one summand.
pub fn casimir_matrix<T: Scalar>(p: &QParams<T>, x: T, sign: Sign, n: usize) -> Result<CMatrix<T>> {
    tensored(p, x, sign, n)?.image(Generator::T)
}

fn tensored<T: Scalar>(p: &QParams<T>, x: T, sign: Sign, n: usize) -> Result<TruncatedRep<T>> {
    TruncatedRep::podles(*p, x, sign.variant(), n)?.tensor_coaction()
}

/// Labels k whose eigenvector is supported inside a window of `n` vectors per spin component.
pub fn label_range(sign: Sign, branch: Branch, n: usize) -> std::ops::Range<usize> {
    match (sign, branch) {
        (Sign::Plus, Branch::Up) | (Sign::Minus, Branch::Down) => 0..n,
        (Sign::Plus, Branch::Down) | (Sign::Minus, Branch::Up) => 0..n.saturating_sub(1),
    }
}

/// ξ_k of the branch as a vector of length 2n.
pub fn closed_form_eigvec<T: Scalar>(p: &QParams<T>, x: T, sign: Sign, branch: Branch, k: usize, n: usize) -> Result<Vec<Cx<T>>> {
    if !label_range(sign, branch, n).contains(&k) {
        return Err(Error::InvalidParameter(format!("label {k} outside the {sign} {branch} range for N = {n}")));
    }
    let one = T::one();
    let qx = p.powf(x);
    let c = one / (one + p.powf(x + x)).sqrt();
    let kk = T::lit(k as f64);
    let two = T::lit(2.0);
    let q2k = |off: i32| p.powf(two * kk + T::lit(f64::from(off)));
    let plus = |i: usize| i;
    let minus = |i: usize| n + i;
    let mut v = vec![Complex::new(T::zero(), T::zero()); 2 * n];
    let mut set = |i: usize, val: T| v[i] = Complex::new(val * c, T::zero());
    match (sign, branch) {
        (Sign::Plus, Branch::Up) => {
            if k > 0 {
                set(plus(k - 1), -(one - p.pow(2 * k as i32)).sqrt());
            }
            set(minus(k), qx * (one + q2k(0) * p.powf(-two * x)).sqrt());
        }
        (Sign::Plus, Branch::Down) => {
            set(plus(k), qx * (one + q2k(2) * p.powf(-two * x)).sqrt());
            set(minus(k + 1), (one - p.pow(2 * k as i32 + 2)).sqrt());
        }
        (Sign::Minus, Branch::Up) => {
            set(plus(k), (one + q2k(2) * p.powf(two * x)).sqrt());
            set(minus(k + 1), qx * (one - p.pow(2 * k as i32 + 2)).sqrt());
        }
        (Sign::Minus, Branch::Down) => {
            if k > 0 {
                set(plus(k - 1), -qx * (one - p.pow(2 * k as i32)).sqrt());
            }
            set(minus(k), (one + q2k(0) * p.powf(two * x)).sqrt());
        }
    }
    Ok(v)
}

/// Closed-form eigenvectors of one branch with their projection.
#[derive(Clone, Debug)]
pub struct EigenData<T> {
    pub x: T,
    pub sign: Sign,
    pub branch: Branch,
    pub n: usize,
    pub value: T,
    /// ξ_k for k in [`label_range`], as columns of a 2n × m isometry.
    pub vectors: CMatrix<T>,
    pub projection: CMatrix<T>,
}

pub fn eigen_data<T: Scalar>(p: &QParams<T>, x: T, sign: Sign, branch: Branch, n: usize) -> Result<EigenData<T>> {
    let (up, down) = (tau(p, x + T::one()), tau(p, x - T::one()));
    if up == down {
        return Err(Error::InvalidParameter(format!("eigenvalues τ(x±1) collide at x = {x}")));
    }
    let range = label_range(sign, branch, n);
    let cols: Vec<Vec<Cx<T>>> = range.map(|k| closed_form_eigvec(p, x, sign, branch, k, n)).collect::<Result<_>>()?;
    let vectors = CMatrix::from_fn(2 * n, cols.len(), |i, j| cols[j][i]);
    let projection = &vectors * &vectors.adjoint();
    let value = if branch == Branch::Up { up } else { down };
    Ok(EigenData { x, sign, branch, n, value, vectors, projection })
}

pub fn eigenprojection<T: Scalar>(p: &QParams<T>, x: T, sign: Sign, branch: Branch, n: usize) -> Result<CMatrix<T>> {
    Ok(eigen_data(p, x, sign, branch, n)?.projection)
}

/// Window indices away from the truncation edge: per spin component, k < n − 1.
fn interior(n: usize) -> Vec<usize> {
    (0..n - 1).chain(n..2 * n - 1).collect()
}

/// Eigen-equation, normalization, orthogonality, projection and completeness residuals.
/// `tol` bounds the eigen-equation and Gram residuals, `tol_proj` the projection identities.
pub fn eigen_check<T: Scalar>(p: &QParams<T>, x: T, sign: Sign, n: usize, tol: f64, tol_proj: f64) -> Result<VerificationReport> {
    let t2 = casimir_matrix(p, x, sign, n)?;
    let mut b = ReportBuilder::new("casimir-eigen").param("x", x.as_f64()).param("sign", sign.to_string()).param("N", n);
    let up = eigen_data(p, x, sign, Branch::Up, n)?;
    let down = eigen_data(p, x, sign, Branch::Down, n)?;
    for d in [&up, &down] {
        let tv = &t2 * &d.vectors;
        let res = tv.max_abs_diff(&d.vectors.scale_re(d.value)).as_f64();
        b.item(format!("{}:xi", d.branch), res, tol);
        let gram = &d.vectors.adjoint() * &d.vectors;
        b.item(format!("{}:gram", d.branch), gram.max_abs_diff(&CMatrix::identity(gram.rows())).as_f64(), tol);
        let pp = &d.projection * &d.projection;
        b.item(format!("{}:idempotent", d.branch), pp.max_abs_diff(&d.projection).as_f64(), tol_proj);
        b.item(format!("{}:self-adjoint", d.branch), d.projection.max_abs_diff(&d.projection.adjoint()).as_f64(), tol_proj);
        let comm = CMatrix::commutator(&d.projection, &t2);
        b.item(format!("{}:commutes", d.branch), comm.max_abs().as_f64(), tol_proj);
    }
    let cross = &up.vectors.adjoint() * &down.vectors;
    b.item("cross-orthogonal", cross.max_abs().as_f64(), tol);
    let idx = interior(n);
    let sum = (&up.projection + &down.projection).principal(&idx);
    b.item("completeness", sum.max_abs_diff(&CMatrix::identity(idx.len())).as_f64(), tol_proj);
    Ok(b.finish())
}

/// Numerical spectrum of T^(2) restricted to eigenvectors with no weight within `pad` of the edge.
pub fn spectrum_check<T: Scalar>(p: &QParams<T>, x: T, sign: Sign, n: usize, pad: usize, tol: f64) -> Result<VerificationReport> {
    let t2 = casimir_matrix(p, x, sign, n)?;
    let e = hermitian_eigen(&t2);
    let targets = [tau(p, x - T::one()), tau(p, x + T::one())];
    let edge = |i: usize| i % n >= n.saturating_sub(pad);
    let mut b = ReportBuilder::new("casimir-spectrum").param("x", x.as_f64()).param("sign", sign.to_string()).param("N", n);
    let mut kept = 0usize;
    let mut worst = 0.0f64;
    for (j, lam) in e.values.iter().enumerate() {
        let edge_weight: T = (0..2 * n).filter(|&i| edge(i)).fold(T::zero(), |s, i| s + e.vectors[(i, j)].norm_sqr());
        if edge_weight.as_f64() > 1e-20 {
            continue;
        }
        kept += 1;
        let d = targets.iter().map(|t| (*lam - *t).abs()).fold(T::infinity(), T::min);
        worst = worst.max(d.as_f64());
    }
    b.set_param("interior_eigenvalues", kept);
    b.item("distance-to-{tau(x-1),tau(x+1)}", worst, tol);
    // The interior must not be empty: at least one plane per retained label.
    b.item("retained", if kept + 2 * pad + 2 >= 2 * n { 0.0 } else { 1.0 }, 0.0);
    Ok(b.finish())
}

/// Compresses X, Y, Z, Zi, T of π(2) onto one branch and compares with the summand at x ± 1.
pub fn compress_identify<T: Scalar>(
    p: &QParams<T>,
    x: T,
    sign: Sign,
    branch: Branch,
    n: usize,
    tol: f64,
    tol_t: f64,
) -> Result<(TruncatedRep<T>, VerificationReport)> {
    use Generator as G;
    let data = eigen_data(p, x, sign, branch, n)?;
    let w = &data.vectors;
    let m = w.cols();
    let rep2 = tensored(p, x, sign, n)?;
    let mut images = GenImages::new();
    for g in [G::X, G::Y, G::Z, G::Zi, G::T] {
        let a = rep2.image(g)?;
        images.insert(g, &(&w.adjoint() * &a) * w);
    }
    let x2 = branch.shift(x);
    let target = TruncatedRep::podles(*p, x2, sign.variant(), m)?;
    let mut b = ReportBuilder::new("compress")
        .param("x", x.as_f64())
        .param("sign", sign.to_string())
        .param("branch", branch.to_string())
        .param("N", n);
    for g in [G::X, G::Y, G::Z, G::Zi] {
        let want = target.image(g)?;
        b.item(g.to_string(), images[&g].mixed_diff(&want).as_f64(), tol);
    }
    let t_want = CMatrix::identity(m).scale_re(tau(p, x2));
    b.item("T", images[&G::T].max_abs_diff(&t_want).as_f64(), tol_t);
    if sign == Sign::Plus {
        let mut z: Vec<T> = (0..m).map(|i| images[&G::Z][(i, i)].re).collect();
        z.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        let ok = z.first().is_some_and(|v| *v > T::zero()) && z.windows(2).all(|w| w[1] > w[0]);
        b.item("Z-positive-distinct", if ok { 0.0 } else { 1.0 }, 0.0);
    }
    let rep = TruncatedRep::explicit(*p, images, 1, m)?;
    let rel = relation_check(&Presentation::podles_extended(*p, x2), &rep, tol)?;
    b.absorb("relation:", &rel);
    Ok((rep, b.finish()))
}

/// ⟨ξ, T^(2) ξ⟩ written out for one plane, used by the 2×2 block example.
pub fn plane_block<T: Scalar>(t2: &CMatrix<T>, n: usize, k: usize) -> [[Cx<T>; 2]; 2] {
    let (a, b) = (k, n + k + 1);
    [[t2[(a, a)], t2[(a, b)]], [t2[(b, a)], t2[(b, b)]]]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: f64) -> QParams<f64> {
        QParams::new(q).unwrap()
    }

    #[test]
    fn planes_are_preserved() {
        let n = 12;
        let t2 = casimir_matrix(&p(0.5), 0.7, Sign::Plus, n).unwrap();
        for k in 0..n - 1 {
            let (a, b) = (k, n + k + 1);
            for i in 0..2 * n {
                if i != a && i != b {
                    assert!(t2[(i, a)].norm() < 1e-15, "k={k} i={i}");
                    assert!(t2[(i, b)].norm() < 1e-15, "k={k} i={i}");
                }
            }
        }
    }

    #[test]
    fn plane_block_diagonal_matches_closed_form() {
        let (q, x, n) = (0.5f64, 0.7f64, 12);
        let t2 = casimir_matrix(&p(q), x, Sign::Plus, n).unwrap();
        let tx = q.powf(-x) - q.powf(x);
        for k in 0..n - 1 {
            let blk = plane_block(&t2, n, k);
            let s = (1.0 / q - q) * q.powf(2.0 * k as f64 - x + 2.0);
            assert!((blk[0][0].re - (tx / q - s)).abs() < 1e-13, "k={k}");
            assert!((blk[1][1].re - (tx * q + s)).abs() < 1e-13, "k={k}");
        }
    }

    #[test]
    fn minus_is_negated_plus_at_minus_x() {
        let a = casimir_matrix(&p(0.4), 1.3, Sign::Minus, 10).unwrap();
        let b = casimir_matrix(&p(0.4), -1.3, Sign::Plus, 10).unwrap();
        assert!((&a + &b).max_abs() < 1e-14);
    }

    #[test]
    fn orphan_vector_is_e0_minus() {
        let (q, x, n) = (0.5f64, 0.35f64, 8);
        let v = closed_form_eigvec(&p(q), x, Sign::Plus, Branch::Up, 0, n).unwrap();
        let want = q.powf(x) * (1.0 + q.powf(-2.0 * x)).sqrt() / (1.0 + q.powf(2.0 * x)).sqrt();
        assert!((v[n].re - want).abs() < 1e-15);
        assert!((want - 1.0).abs() < 1e-15);
        assert_eq!(v.iter().filter(|c| c.norm() > 0.0).count(), 1);
    }

    #[test]
    fn eigen_suite_passes() {
        for &x in &[0.35, 1.0, 2.5] {
            for sign in [Sign::Plus, Sign::Minus] {
                let r = eigen_check(&p(0.5), x, sign, 24, 1e-12, 1e-11).unwrap();
                assert!(r.passed(), "{}", r.summary_line());
            }
        }
    }

    #[test]
    fn trace_counts_vectors() {
        let n = 16;
        let pr = eigenprojection(&p(0.5), 1.0, Sign::Plus, Branch::Down, n).unwrap();
        assert!((pr.trace().re - (n - 1) as f64).abs() < 1e-12);
    }

    #[test]
    fn minus_branches_mirror_plus() {
        // T_{τ,−} = −T_{−τ,+}: the up branch at (x, −) is the down branch at (−x, +) up to the
        // spin/sign relabeling, so projections share their traces and spectra.
        let n = 12;
        let a = eigen_data(&p(0.5), 0.6, Sign::Minus, Branch::Up, n).unwrap();
        let b = eigen_data(&p(0.5), -0.6, Sign::Plus, Branch::Down, n).unwrap();
        assert!((a.value + b.value).abs() < 1e-14);
        assert_eq!(a.vectors.cols(), b.vectors.cols());
        assert!(a.projection.max_abs_diff(&b.projection) < 1e-14);
    }

    #[test]
    fn spectrum_interior() {
        let r = spectrum_check(&p(0.5), 1.0, Sign::Plus, 20, 2, 1e-9).unwrap();
        assert!(r.passed(), "{}", r.summary_line());
    }

    #[test]
    fn compression_reproduces_shifted_summand() {
        for &x in &[0.35, 1.0, 2.5] {
            for sign in [Sign::Plus, Sign::Minus] {
                for branch in [Branch::Up, Branch::Down] {
                    let (rep, r) = compress_identify(&p(0.5), x, sign, branch, 24, 1e-10, 1e-11).unwrap();
                    assert!(r.passed(), "{x} {sign} {branch}: {:?}", r.failures().collect::<Vec<_>>());
                    assert_eq!(rep.n(), label_range(sign, branch, 24).len());
                }
            }
        }
    }

    #[test]
    fn out_of_range_label_errors() {
        assert!(closed_form_eigvec(&p(0.5), 1.0, Sign::Plus, Branch::Down, 7, 8).is_err());
    }
}
