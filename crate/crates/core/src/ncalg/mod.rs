//! Noncommutative polynomials, their text syntax, and rewriting for the four presented algebras.

mod generator;
mod parse;
mod poly;
mod presentation;
mod rewrite;

pub use generator::{Generator, Grade, Word};
pub use parse::{format, parse, ParseError, ParseErrorKind};
pub use poly::{NCPoly, DEFAULT_PRUNE};
pub use presentation::{AlgebraKind, FactoredRhs, Presentation, Rule, TermOrder};
pub use rewrite::{
    basis_words, in_basis, normal_form, normal_form_capped, random_word, sigma, star, Lcg, Reduction, DEFAULT_CAP,
};

use crate::scalar::Scalar;

/// Grade of a word in the presentation's grading.
pub fn grade<T: Scalar>(w: &Word, pres: &Presentation<T>) -> Grade {
    pres.grade(w)
}
