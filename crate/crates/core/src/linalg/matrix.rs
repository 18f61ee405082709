use std::fmt;
use std::io::{self, BufRead, Write};
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::{Cx, Scalar};

/// Dense row-major complex matrix.
///
/// Products skip zero entries, which keeps banded operators cheap without a sparse format.
#[derive(Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Cx<T>>,
}

impl<T: Scalar> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_diag(d: &[Cx<T>]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn from_real_diag(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = Complex::new(*v, T::zero());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cx<T>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Cx<T>>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Cx<T>] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Cx<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn diag(&self) -> Vec<Cx<T>> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: Cx<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| *v * c).collect() }
    }

    pub fn scale_re(&self, c: T) -> Self {
        self.scale(Complex::new(c, T::zero()))
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: Cx<T>, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "axpy shape");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * *b;
        }
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "diff shape");
        self.data.iter().zip(&other.data).fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    /// max_ij |a_ij − b_ij| / max(1, |a_ij|, |b_ij|).
    pub fn mixed_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "diff shape");
        self.data.iter().zip(&other.data).fold(T::zero(), |m, (a, b)| {
            let scale = T::one().max(a.norm()).max(b.norm());
            m.max((*a - *b).norm() / scale)
        })
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().fold(T::zero(), |s, v| s + v.norm_sqr()).sqrt()
    }

    pub fn trace(&self) -> Cx<T> {
        self.diag().into_iter().fold(Complex::zero(), |s, v| s + v)
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// Principal submatrix on an index list.
    pub fn principal(&self, idx: &[usize]) -> Self {
        self.select(idx, idx)
    }

    /// Numpy-style Kronecker product: entry ((a·r + i), (b·c + j)) = self[a,b]·inner[i,j].
    pub fn kron(&self, inner: &Self) -> Self {
        let (r, c) = (inner.rows, inner.cols);
        let mut out = Self::zeros(self.rows * r, self.cols * c);
        for a in 0..self.rows {
            for b in 0..self.cols {
                let s = self[(a, b)];
                if s.is_zero() {
                    continue;
                }
                for i in 0..r {
                    for j in 0..c {
                        out[(a * r + i, b * c + j)] = s * inner[(i, j)];
                    }
                }
            }
        }
        out
    }

    /// `self ⊗ spin` on the layout where the spin index is the slow one:
    /// entry ((α·n + i), (β·n + j)) = self[i,j]·spin[α,β].
    pub fn tensor_spin(&self, spin: &Self) -> Self {
        spin.kron(self)
    }

    /// Block matrix from a square grid of equally sized blocks.
    pub fn from_blocks(blocks: &[Vec<Self>]) -> Self {
        let nb = blocks.len();
        let (r, c) = (blocks[0][0].rows, blocks[0][0].cols);
        let mut out = Self::zeros(nb * r, blocks[0].len() * c);
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, b) in row.iter().enumerate() {
                assert_eq!((b.rows, b.cols), (r, c), "block shape");
                for i in 0..r {
                    for j in 0..c {
                        out[(bi * r + i, bj * c + j)] = b[(i, j)];
                    }
                }
            }
        }
        out
    }

    pub fn commutator(a: &Self, b: &Self) -> Self {
        &(a * b) - &(b * a)
    }

    /// Column ranges [lo, hi) of the nonzero entries of every row.
    fn row_support(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                match row.iter().position(|v| !v.is_zero()) {
                    None => (0, 0),
                    Some(lo) => {
                        let hi = row.iter().rposition(|v| !v.is_zero()).unwrap_or(lo) + 1;
                        (lo, hi)
                    }
                }
            })
            .collect()
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape {}x{} * {}x{}", self.rows, self.cols, rhs.rows, rhs.cols);
        let support = rhs.row_support();
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let orow = i * rhs.cols;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let (lo, hi) = support[k];
                let brow = k * rhs.cols;
                for j in lo..hi {
                    out.data[orow + j] += a * rhs.data[brow + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cx<T>]) -> Vec<Cx<T>> {
        assert_eq!(self.cols, v.len(), "mul_vec shape");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(Complex::zero(), |s, (a, b)| s + *a * *b)
            })
            .collect()
    }

    /// Dense text dump: header "rows cols", then one "re im" entry per line, row-major.
    pub fn write_dump<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{} {}", self.rows, self.cols)?;
        for v in &self.data {
            writeln!(w, "{:e} {:e}", v.re, v.im)?;
        }
        Ok(())
    }

    pub fn read_dump<R: BufRead>(r: R) -> io::Result<Self> {
        let bad = |m: &str| io::Error::new(io::ErrorKind::InvalidData, m.to_string());
        let mut lines = r.lines();
        let header = lines.next().ok_or_else(|| bad("missing header"))??;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("bad header")))
            .collect::<io::Result<_>>()?;
        if dims.len() != 2 {
            return Err(bad("header must be `rows cols`"));
        }
        let mut data = Vec::with_capacity(dims[0] * dims[1]);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let mut next = || -> io::Result<T> {
                it.next().and_then(|t| T::parse_lit(t)).ok_or_else(|| bad("bad entry"))
            };
            let (re, im) = (next()?, next()?);
            data.push(Complex::new(re, im));
        }
        if data.len() != dims[0] * dims[1] {
            return Err(bad("entry count does not match header"));
        }
        Ok(Self::from_rows(dims[0], dims[1], data))
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Cx<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Cx<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cx<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        self.matmul(rhs)
    }
}

impl<T: Scalar> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        let mut out = self.clone();
        out.axpy(Complex::new(T::one(), T::zero()), rhs);
        out
    }
}

impl<T: Scalar> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        let mut out = self.clone();
        out.axpy(Complex::new(-T::one(), T::zero()), rhs);
        out
    }
}

impl<T: Scalar> Neg for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn neg(self) -> CMatrix<T> {
        self.scale_re(-T::one())
    }
}

impl<T: fmt::Debug> fmt::Debug for CMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows.min(6) {
            let row: Vec<String> = (0..self.cols.min(6)).map(|j| format!("{:?}", self.data[i * self.cols + j])).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}
