//! Truncated operator representations and padded-interior evaluation.
//!
//! A [`TruncatedRep`] does not store matrices of a fixed size. It knows how to build the generator
//! images at any per-block size, so that [`TruncatedRep::evaluate`] can work at an enlarged size and
//! crop back to the `n × n` window of every block, where the entries are exact.

mod check;
mod images;

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex;
use num_traits::Zero;


use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::ncalg::{Generator, NCPoly, Word};
use crate::qcore::{HalfInt, QParams};
use crate::scalar::{Cx, Scalar};

pub use check::{oracle_check, relation_check, star_check, star_random_check, RandomSuite};
pub use images::{spin_half, GenImages, SpinHalf};

/// Which Podleś representation to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PodlesVariant {
    Plus,
    Minus,
    /// minus ⊕ plus, minus summand first.
    DirectSum,
    /// e·(minus ⊕ plus) with e = −1 on the first summand.
    AVariant,
}

impl PodlesVariant {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "plus" => Self::Plus,
            "minus" => Self::Minus,
            "direct_sum" | "direct-sum" => Self::DirectSum,
            "a_variant" | "a-variant" => Self::AVariant,
            _ => return None,
        })
    }

    fn blocks(self) -> usize {
        match self {
            Self::Plus | Self::Minus => 1,
            _ => 2,
        }
    }
}

/// How the generator images are produced.
#[derive(Clone, Debug)]
pub enum Family<T> {
    Podles { x: T, variant: PodlesVariant },
    /// `twisted` is the implementer variant: X, Y, Z, Zi, T multiplied by the sign operator e.
    Bl { l: HalfInt, twisted: bool },
    /// Fixed matrices (compressions, spin-1/2); evaluated without padding. `truncated` marks
    /// matrices cut from an infinite operator, whose products are exact only away from the edge.
    Explicit { images: GenImages<T>, blocks: usize, block_size: usize, truncated: bool },
}

/// Truncation of a representation to `n` basis vectors per summand.
#[derive(Clone, Debug)]
pub struct TruncatedRep<T> {
    params: QParams<T>,
    family: Family<T>,
    tensor: bool,
    n: usize,
    pad: usize,
}

pub const DEFAULT_PAD: usize = 2;

impl<T: Scalar> TruncatedRep<T> {
    pub fn podles(p: QParams<T>, x: T, variant: PodlesVariant, n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidParameter(format!("truncation N must be at least 4, got {n}")));
        }
        if !x.is_finite() {
            return Err(Error::InvalidParameter(format!("x must be finite, got {x}")));
        }
        Ok(Self { params: p, family: Family::Podles { x, variant }, tensor: false, n, pad: DEFAULT_PAD })
    }

    pub fn bl(p: QParams<T>, l: HalfInt, n: usize) -> Result<Self> {
        Self::bl_with(p, l, n, false)
    }

    /// The sign-twisted B_l representation whose A(s) implement the module maps.
    pub fn bl_implementer(p: QParams<T>, l: HalfInt, n: usize) -> Result<Self> {
        Self::bl_with(p, l, n, true)
    }

    fn bl_with(p: QParams<T>, l: HalfInt, n: usize, twisted: bool) -> Result<Self> {
        let need = 2 * l.twice() as usize + 4;
        if n < need.max(4) {
            return Err(Error::InvalidParameter(format!("truncation N must be at least 4l+4 = {need}, got {n}")));
        }
        Ok(Self { params: p, family: Family::Bl { l, twisted }, tensor: false, n, pad: DEFAULT_PAD })
    }

    /// Fixed truncated images; every matrix must be `blocks·block_size` square.
    pub fn explicit(p: QParams<T>, images: GenImages<T>, blocks: usize, block_size: usize) -> Result<Self> {
        let dim = blocks * block_size;
        for m in images.values() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: m.rows() });
            }
        }
        Ok(Self { params: p, family: Family::Explicit { images, blocks, block_size, truncated: true }, tensor: false, n: block_size, pad: 0 })
    }

    /// The spin-1/2 representation of the quantized enveloping algebra.
    pub fn spin_half(p: QParams<T>) -> Self {
        let images = spin_half(&p).images();
        Self { params: p, family: Family::Explicit { images, blocks: 1, block_size: 2, truncated: false }, tensor: false, n: 2, pad: 0 }
    }

    /// π^(2): the representation composed with the coaction, acting on (space) ⊗ ℂ².
    pub fn tensor_coaction(&self) -> Result<Self> {
        if self.tensor {
            return Err(Error::Unsupported("representation is already tensored".into()));
        }
        if let Family::Explicit { images, .. } = &self.family {
            if !images.contains_key(&Generator::T) {
                return Err(Error::MissingGenerator("T".into()));
            }
        }
        Ok(Self { tensor: true, ..self.clone() })
    }

    pub fn with_pad(mut self, pad: usize) -> Self {
        if !matches!(self.family, Family::Explicit { .. }) {
            self.pad = pad;
        }
        self
    }

    pub fn params(&self) -> &QParams<T> {
        &self.params
    }

    pub fn family(&self) -> &Family<T> {
        &self.family
    }

    pub fn is_tensor(&self) -> bool {
        self.tensor
    }

    /// Basis vectors kept per summand.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pad(&self) -> usize {
        self.pad
    }

    /// Number of summands of the underlying space (before the spin factor).
    pub fn summands(&self) -> usize {
        match &self.family {
            Family::Podles { variant, .. } => variant.blocks(),
            Family::Bl { .. } => 2,
            Family::Explicit { blocks, .. } => *blocks,
        }
    }

    /// Dimension of the cropped window.
    pub fn dim(&self) -> usize {
        self.n * self.summands() * if self.tensor { 2 } else { 1 }
    }

    pub fn generators(&self) -> Vec<Generator> {
        use Generator::*;
        match &self.family {
            Family::Podles { .. } => vec![X, Y, Z, Zi, T],
            Family::Bl { l, .. } => {
                let l2 = l.twice() as i32;
                let mut g = vec![X, Y, Z, Zi, T];
                g.extend((-l2..=l2).map(A));
                g
            }
            Family::Explicit { images, .. } => images.keys().copied().collect(),
        }
    }

    fn has(&self, g: Generator) -> bool {
        match &self.family {
            Family::Explicit { images, .. } => images.contains_key(&g),
            Family::Bl { l, .. } => match g {
                Generator::A(s) => s.unsigned_abs() <= l.twice(),
                _ => self.generators().contains(&g),
            },
            _ => self.generators().contains(&g),
        }
    }

    /// How far one generator can move a basis index.
    pub fn reach(&self, g: Generator) -> usize {
        match (&self.family, g) {
            (Family::Bl { l, .. }, Generator::A(s)) => (s.unsigned_abs() + l.twice()).max(1) as usize,
            _ => 1,
        }
    }

    fn word_reach(&self, w: &Word) -> usize {
        w.gens().iter().map(|g| self.reach(*g)).sum()
    }

    /// Generator images with `m` basis vectors per summand (untruncated window).
    pub fn images_at(&self, m: usize) -> Result<GenImages<T>> {
        let p = &self.params;
        let one = T::one();
        let base = match &self.family {
            Family::Podles { x, variant } => {
                let summands: Vec<(i32, T)> = match variant {
                    PodlesVariant::Plus => vec![(1, one)],
                    PodlesVariant::Minus => vec![(-1, one)],
                    PodlesVariant::DirectSum => vec![(-1, one), (1, one)],
                    PodlesVariant::AVariant => vec![(-1, -one), (1, one)],
                };
                images::podles_images(p, *x, &summands, m)?
            }
            Family::Bl { l, twisted } => images::bl_images(p, l.twice(), *twisted, m)?,
            Family::Explicit { images, .. } => images.clone(),
        };
        if self.tensor {
            images::tensor_images(p, &base)
        } else {
            Ok(base)
        }
    }

    /// Images cropped to the window.
    pub fn images(&self) -> Result<GenImages<T>> {
        let m = self.internal_size(1);
        let imgs = self.images_at(m)?;
        Ok(imgs.into_iter().map(|(g, a)| (g, self.crop(&a, m))).collect())
    }

    pub fn image(&self, g: Generator) -> Result<CMatrix<T>> {
        if !self.has(g) {
            return Err(Error::MissingGenerator(g.to_string()));
        }
        self.evaluate(&NCPoly::gen(g))
    }

    /// Per-summand size needed to evaluate words of total reach `reach` exactly on the window.
    pub fn internal_size(&self, reach: usize) -> usize {
        match &self.family {
            Family::Explicit { block_size, .. } => *block_size,
            _ => self.n + self.pad * reach.max(1),
        }
    }

    /// Window indices inside a layout with `m` vectors per summand.
    pub fn window(&self, m: usize) -> Vec<usize> {
        let blocks = self.summands() * if self.tensor { 2 } else { 1 };
        (0..blocks).flat_map(|b| (0..self.n).map(move |i| b * m + i)).collect()
    }

    /// Window indices on which words of total reach `reach`, evaluated at `m`, are exact. Fixed-size
    /// families lose the last `reach` vectors of every summand.
    pub fn exact_window(&self, m: usize, reach: usize) -> Vec<usize> {
        match &self.family {
            Family::Explicit { blocks, block_size, truncated: true, .. } => {
                let keep = block_size.saturating_sub(reach);
                (0..*blocks).flat_map(|b| (0..keep).map(move |i| b * block_size + i)).collect()
            }
            _ => self.window(m),
        }
    }

    pub fn crop(&self, a: &CMatrix<T>, m: usize) -> CMatrix<T> {
        if m == self.n {
            return a.clone();
        }
        a.principal(&self.window(m))
    }

    /// Reach of the widest term of `poly`.
    pub fn reach_of(&self, poly: &NCPoly<T>) -> usize {
        poly.terms().map(|(w, _)| self.word_reach(w)).max().unwrap_or(0)
    }

    /// Matrix of `poly` on the window, computed at the padded size and cropped.
    pub fn evaluate(&self, poly: &NCPoly<T>) -> Result<CMatrix<T>> {
        self.evaluate_at(poly, self.internal_size(self.reach_of(poly)))
    }

    /// Matrix of `poly` computed at `m` vectors per summand, then cropped to the window.
    pub fn evaluate_at(&self, poly: &NCPoly<T>, m: usize) -> Result<CMatrix<T>> {
        for g in poly.generators() {
            if !self.has(g) {
                return Err(Error::MissingGenerator(g.to_string()));
            }
        }
        let imgs = self.images_at(m)?;
        let full = eval_with(&imgs, poly, imgs.values().next().map_or(0, |a| a.rows()))?;
        Ok(self.crop(&full, m))
    }

    /// Writes the cropped image of `g` in the matrix dump format.
    pub fn dump<W: Write>(&self, g: Generator, w: W) -> Result<()> {
        let a = self.image(g)?;
        a.write_dump(w).map_err(|e| Error::Unsupported(format!("dump failed: {e}")))
    }
}

/// Evaluates `poly` against fixed images of dimension `dim`.
///
/// When the image of Z is diagonal, terms `w·Z^n` sharing the prefix `w` are summed as one
/// diagonal with compensated summation before the prefix is applied. Normal forms carry large
/// cancelling coefficients on Z-powers, and this keeps that cancellation out of the matrix sums.
pub fn eval_with<T: Scalar>(imgs: &BTreeMap<Generator, CMatrix<T>>, poly: &NCPoly<T>, dim: usize) -> Result<CMatrix<T>> {
    let zdiag = imgs.get(&Generator::Z).filter(|z| is_diagonal(z)).map(|z| z.diag());
    let mut groups: BTreeMap<Vec<Generator>, Vec<(usize, Cx<T>)>> = BTreeMap::new();
    for (w, c) in poly.terms() {
        let gens = w.gens();
        let split = match zdiag {
            Some(_) => gens.iter().rposition(|g| *g != Generator::Z).map_or(0, |i| i + 1),
            None => gens.len(),
        };
        groups.entry(gens[..split].to_vec()).or_default().push((gens.len() - split, *c));
    }
    let mut out = CMatrix::zeros(dim, dim);
    for (prefix, powers) in groups {
        let d = match &zdiag {
            Some(z) => z.iter().map(|zi| compensated_poly(*zi, &powers)).collect(),
            None => vec![powers.iter().fold(Cx::<T>::zero(), |s, (_, c)| s + *c); dim],
        };
        let mut acc: Option<CMatrix<T>> = None;
        for g in &prefix {
            let a = imgs.get(g).ok_or_else(|| Error::MissingGenerator(g.to_string()))?;
            acc = Some(match acc {
                None => a.clone(),
                Some(m) => &m * a,
            });
        }
        match acc {
            None => {
                for i in 0..dim {
                    out[(i, i)] += d[i];
                }
            }
            Some(m) => {
                for i in 0..dim {
                    for j in 0..dim {
                        out[(i, j)] += m[(i, j)] * d[j];
                    }
                }
            }
        }
    }
    Ok(out)
}

fn is_diagonal<T: Scalar>(a: &CMatrix<T>) -> bool {
    let n = a.rows();
    (0..n).all(|i| (0..n).all(|j| i == j || a[(i, j)].is_zero()))
}

/// Sum of `c·z^n` over `(n, c)` with Neumaier summation on each component.
fn compensated_poly<T: Scalar>(z: Cx<T>, powers: &[(usize, Cx<T>)]) -> Cx<T> {
    let (mut re, mut im) = (Neumaier::new(), Neumaier::new());
    for (n, c) in powers {
        let t = *c * z.powu(*n as u32);
        re.add(t.re);
        im.add(t.im);
    }
    Complex::new(re.total(), im.total())
}

struct Neumaier<T> {
    sum: T,
    comp: T,
}

impl<T: Scalar> Neumaier<T> {
    fn new() -> Self {
        Self { sum: T::zero(), comp: T::zero() }
    }

    fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> T {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests;
