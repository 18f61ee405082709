use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use super::{Generator, Word};
use crate::scalar::{Cx, Scalar};

/// Coefficients below this are dropped; lowered to 45 unit roundoffs for wider scalars.
pub const DEFAULT_PRUNE: f64 = 1e-14;

fn default_prune<T: Scalar>() -> T {
    T::lit(DEFAULT_PRUNE).min(T::lit(45.0) * T::unit_roundoff())
}

/// Noncommutative polynomial: words with complex coefficients.
#[derive(Clone)]
pub struct NCPoly<T> {
    terms: BTreeMap<Word, Cx<T>>,
    prune: T,
}

impl<T: Scalar> NCPoly<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new(), prune: default_prune() }
    }

    pub fn one() -> Self {
        Self::constant(Complex::new(T::one(), T::zero()))
    }

    pub fn constant(c: Cx<T>) -> Self {
        Self::term(Word::unit(), c)
    }

    pub fn real(c: T) -> Self {
        Self::constant(Complex::new(c, T::zero()))
    }

    pub fn gen(g: Generator) -> Self {
        Self::term(Word(vec![g]), Complex::new(T::one(), T::zero()))
    }

    pub fn term(w: Word, c: Cx<T>) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    /// Monomial with a real coefficient.
    pub fn mono(gens: &[Generator], c: T) -> Self {
        Self::term(Word::new(gens), Complex::new(c, T::zero()))
    }

    pub fn with_prune(mut self, prune: T) -> Self {
        self.prune = prune;
        self.terms.retain(|_, c| c.norm() >= prune);
        self
    }

    pub fn prune_threshold(&self) -> T {
        self.prune
    }

    pub fn add_term(&mut self, w: Word, c: Cx<T>) {
        let prune = self.prune;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                if c.norm() >= prune {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.norm() < prune {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Cx<T>)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Cx<T>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Cx<T> {
        self.terms.get(w).copied().unwrap_or_else(Complex::zero)
    }

    /// Longest word length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).collect()
    }

    pub fn scale(&self, c: Cx<T>) -> Self {
        let mut out = Self { terms: BTreeMap::new(), prune: self.prune };
        for (w, v) in &self.terms {
            out.add_term(w.clone(), *v * c);
        }
        out
    }

    pub fn scale_re(&self, c: T) -> Self {
        self.scale(Complex::new(c, T::zero()))
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one().with_prune(self.prune), |acc, _| &acc * self)
    }

    /// Largest coefficient difference over the union of supports.
    pub fn max_coeff_diff(&self, other: &Self) -> T {
        let keys: BTreeSet<&Word> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().fold(T::zero(), |m, w| m.max((self.coefficient(w) - other.coefficient(w)).norm()))
    }

    /// Applies a map word → polynomial to every term (used by star and sigma).
    pub(crate) fn map_words(&self, mut f: impl FnMut(&Word, Cx<T>) -> Self) -> Self {
        let mut out = Self { terms: BTreeMap::new(), prune: self.prune };
        for (w, c) in &self.terms {
            for (w2, c2) in f(w, *c).terms {
                out.add_term(w2, c2);
            }
        }
        out
    }
}

impl<T: Scalar> PartialEq for NCPoly<T> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<T: fmt::Debug> fmt::Debug for NCPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(w, c)| (w.to_string(), c))).finish()
    }
}

impl<T: Scalar> fmt::Display for NCPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format(self))
    }
}

impl<T: Scalar> Add for &NCPoly<T> {
    type Output = NCPoly<T>;
    fn add(self, rhs: &NCPoly<T>) -> NCPoly<T> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), *c);
        }
        out
    }
}

impl<T: Scalar> Sub for &NCPoly<T> {
    type Output = NCPoly<T>;
    fn sub(self, rhs: &NCPoly<T>) -> NCPoly<T> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -*c);
        }
        out
    }
}

impl<T: Scalar> Mul for &NCPoly<T> {
    type Output = NCPoly<T>;
    fn mul(self, rhs: &NCPoly<T>) -> NCPoly<T> {
        let mut out = NCPoly { terms: BTreeMap::new(), prune: self.prune };
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(Word::concat(&[&a.0, &b.0]), *ca * *cb);
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &NCPoly<T> {
    type Output = NCPoly<T>;
    fn neg(self) -> NCPoly<T> {
        self.scale_re(-T::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for NCPoly<T> {
            type Output = NCPoly<T>;
            fn $m(self, rhs: NCPoly<T>) -> NCPoly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn cancellation_prunes() {
        let a = NCPoly::<f64>::mono(&[X, Z], 1.0);
        let b = NCPoly::mono(&[X, Z], 1.0 - 1e-16);
        let d = &a - &b;
        assert!(d.is_zero());
    }

    #[test]
    fn product_concatenates() {
        let a = &NCPoly::<f64>::gen(X) + &NCPoly::one();
        let sq = &a * &a;
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coefficient(&Word::new(&[X])).re, 2.0);
        assert_eq!(sq.degree(), 2);
    }
}
