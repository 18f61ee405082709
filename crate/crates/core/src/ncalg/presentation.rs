use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex;

use super::{Generator, Grade, NCPoly, Word};
use crate::error::{Error, Result};
use crate::qcore::{HalfInt, QParams};
use crate::scalar::Scalar;

use Generator::*;

/// Which algebra a presentation describes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AlgebraKind<T> {
    UqSu2,
    Uqmp,
    /// Podleś sphere at parameter x; `extended` adjoins Zi.
    Podles { x: T, extended: bool },
    Bl { l: HalfInt },
}

impl<T: Scalar> fmt::Display for AlgebraKind<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UqSu2 => write!(f, "uqsu2"),
            Self::Uqmp => write!(f, "uqmp"),
            Self::Podles { x, extended: false } => write!(f, "podles({x})"),
            Self::Podles { x, extended: true } => write!(f, "podles-ext({x})"),
            Self::Bl { l } => write!(f, "bl({l})"),
        }
    }
}

/// Oriented rewrite rule `lhs -> rhs`.
#[derive(Clone, Debug)]
pub struct Rule<T> {
    pub lhs: Word,
    pub rhs: NCPoly<T>,
    /// The same right-hand side kept as a product of linear factors in Z, when it has one.
    pub factored: Option<FactoredRhs<T>>,
}

/// `scale · prefix · ∏_k (1 − roots[k]·Z)`.
///
/// Expanding the product gives coefficients far larger than its values wherever |Z| > 1, so
/// numerical checks evaluate this form instead of the expanded polynomial.
#[derive(Clone, Debug)]
pub struct FactoredRhs<T> {
    pub scale: T,
    pub prefix: Word,
    pub roots: Vec<T>,
}

/// Weighted degree, then length, then reverse-lex on generator classes, then A labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    a_weight: u32,
}

impl TermOrder {
    pub fn weight(&self, g: Generator) -> u32 {
        match g {
            A(_) => self.a_weight,
            _ => 1,
        }
    }

    /// Sort key; larger key means larger word.
    pub fn key(&self, w: &Word) -> Vec<u32> {
        let mut k = Vec::with_capacity(2 + 2 * w.len());
        k.push(w.0.iter().map(|g| self.weight(*g)).sum());
        k.push(w.len() as u32);
        k.extend(w.0.iter().rev().map(|g| g.class_rank()));
        k.extend(w.0.iter().rev().map(|g| g.fine_rank()));
        k
    }
}

/// Generators, star structure, oriented rules and grading of one algebra at fixed q.
#[derive(Clone, Debug)]
pub struct Presentation<T> {
    pub kind: AlgebraKind<T>,
    pub generators: Vec<Generator>,
    pub star_map: BTreeMap<Generator, NCPoly<T>>,
    pub rules: Vec<Rule<T>>,
    pub grading: BTreeMap<Generator, Grade>,
    pub params: QParams<T>,
    pub order: TermOrder,
    index: HashMap<(Generator, Generator), usize>,
}

fn grade_of(g: Generator) -> Grade {
    let (degree, odd) = match g {
        X | F => (-1, false),
        Y | E => (1, false),
        Z | Zi | T | K | Ki => (0, false),
        A(s) => (s, true),
    };
    Grade { degree, odd }
}

fn poly_mul<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += *x * *y;
        }
    }
    out
}

impl<T: Scalar> Presentation<T> {
    fn build(
        kind: AlgebraKind<T>,
        params: QParams<T>,
        generators: Vec<Generator>,
        star: Vec<(Generator, NCPoly<T>)>,
        rules: Vec<Rule<T>>,
        a_weight: u32,
    ) -> Self {
        let grading = generators.iter().map(|g| (*g, grade_of(*g))).collect();
        let mut index = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            assert_eq!(r.lhs.len(), 2, "rules are keyed by two-letter words");
            index.entry((r.lhs.0[0], r.lhs.0[1])).or_insert(i);
        }
        Self {
            kind,
            generators,
            star_map: star.into_iter().collect(),
            rules,
            grading,
            params,
            order: TermOrder { a_weight },
            index,
        }
    }

    pub fn uqsu2(p: QParams<T>) -> Self {
        let m = |g: &[Generator], c: T| NCPoly::mono(g, c);
        let lam = p.lambda();
        let rules = vec![
            rule(&[K, E], m(&[E, K], p.pow(2))),
            rule(&[K, F], m(&[F, K], p.pow(-2))),
            rule(&[Ki, E], m(&[E, Ki], p.pow(-2))),
            rule(&[Ki, F], m(&[F, Ki], p.pow(2))),
            rule(&[K, Ki], NCPoly::one()),
            rule(&[Ki, K], NCPoly::one()),
            rule(&[F, E], &(&m(&[E, F], T::one()) - &m(&[K], lam)) + &m(&[Ki], lam)),
        ];
        let star = vec![(K, m(&[K], T::one())), (Ki, m(&[Ki], T::one())), (E, m(&[Ki, F], T::one())), (F, m(&[E, K], T::one()))];
        Self::build(AlgebraKind::UqSu2, p, vec![K, Ki, E, F], star, rules, 1)
    }

    pub fn uqmp(p: QParams<T>) -> Self {
        let m = |g: &[Generator], c: T| NCPoly::mono(g, c);
        let one = T::one();
        let mut rules = commutation_rules(&p, true);
        rules.extend([
            rule(&[T, X], m(&[X, T], one)),
            rule(&[T, Y], m(&[Y, T], one)),
            rule(&[Z, T], m(&[T, Z], one)),
            rule(&[Zi, T], m(&[T, Zi], one)),
            rule(&[Y, X], &(&NCPoly::one() + &m(&[T, Z], p.pow(-1))) - &m(&[Z, Z], p.pow(-2))),
            rule(&[X, Y], &(&NCPoly::one() + &m(&[T, Z], p.q())) - &m(&[Z, Z], p.pow(2))),
        ]);
        Self::build(AlgebraKind::Uqmp, p, vec![X, Y, Z, Zi, T], podles_star(true, true), rules, 1)
    }

    pub fn podles(p: QParams<T>, x: T) -> Self {
        Self::podles_with(p, x, false)
    }

    pub fn podles_extended(p: QParams<T>, x: T) -> Self {
        Self::podles_with(p, x, true)
    }

    fn podles_with(p: QParams<T>, x: T, extended: bool) -> Self {
        let mut rules = commutation_rules(&p, extended);
        rules.extend(sphere_rules(&p, x));
        let mut gens = vec![X, Y, Z];
        if extended {
            gens.push(Zi);
        }
        Self::build(AlgebraKind::Podles { x, extended }, p, gens, podles_star(extended, false), rules, 1)
    }

    pub fn bl(p: QParams<T>, l: HalfInt) -> Self {
        let l2 = l.twice() as i32;
        let x = T::lit(f64::from(l2));
        let m = |g: &[Generator], c: T| NCPoly::mono(g, c);
        let one = T::one();
        let mut rules = commutation_rules(&p, false);
        rules.extend(sphere_rules(&p, x));
        for s in -l2..=l2 {
            let sign = if s % 2 == 0 { one } else { -one };
            rules.push(rule(&[Z, A(s)], m(&[A(s), Z], -p.pow(2 * s))));
            if s > -l2 {
                rules.push(rule(&[X, A(s)], &m(&[A(s - 1)], -one) - &m(&[A(s - 1), Z], p.pow(2 * s + l2 - 1))));
                rules.push(rule(&[A(s), X], &m(&[A(s - 1)], one) + &m(&[A(s - 1), Z], p.pow(-l2 - 1))));
            } else {
                rules.push(rule(&[X, A(s)], m(&[A(s), X], -one)));
            }
            if s < l2 {
                rules.push(rule(&[Y, A(s)], &m(&[A(s + 1)], -one) + &m(&[A(s + 1), Z], p.pow(2 * s - l2 + 1))));
                rules.push(rule(&[A(s), Y], &m(&[A(s + 1)], one) - &m(&[A(s + 1), Z], p.pow(l2 + 1))));
            } else {
                rules.push(rule(&[Y, A(s)], m(&[A(s), Y], -one)));
            }
            for t in -l2..=l2 {
                let f = a_product(&p, l2, s, t);
                let rhs = f.expand().scale_re(sign);
                rules.push(Rule { lhs: Word::new(&[A(s), A(t)]), rhs, factored: Some(FactoredRhs { scale: sign, ..f }) });
            }
        }
        let mut gens = vec![X, Y, Z];
        gens.extend((-l2..=l2).map(A));
        let mut star = podles_star(false, false);
        for s in -l2..=l2 {
            let sign = if s % 2 == 0 { one } else { -one };
            star.push((A(s), m(&[A(-s)], sign)));
        }
        Self::build(AlgebraKind::Bl { l }, p, gens, star, rules, (l2 + 1) as u32)
    }

    /// Dispatch on the kind.
    pub fn make(kind: AlgebraKind<T>, p: QParams<T>) -> Result<Self> {
        Ok(match kind {
            AlgebraKind::UqSu2 => Self::uqsu2(p),
            AlgebraKind::Uqmp => Self::uqmp(p),
            AlgebraKind::Podles { x, extended } => {
                if !x.is_finite() {
                    return Err(Error::InvalidParameter(format!("podles parameter x must be finite, got {x}")));
                }
                Self::podles_with(p, x, extended)
            }
            AlgebraKind::Bl { l } => Self::bl(p, l),
        })
    }

    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    pub fn has_a_generators(&self) -> bool {
        matches!(self.kind, AlgebraKind::Bl { .. })
    }

    pub(crate) fn rule_for(&self, a: Generator, b: Generator) -> Option<&Rule<T>> {
        self.index.get(&(a, b)).map(|&i| &self.rules[i])
    }

    pub fn grade(&self, w: &Word) -> Grade {
        w.0.iter().fold(Grade::default(), |acc, g| acc.combine(grade_of(*g)))
    }

    /// Checks that every rule is decreasing and grade preserving, and that star is involutive on labels.
    pub fn validate(&self) -> Result<()> {
        for r in &self.rules {
            let lk = self.order.key(&r.lhs);
            let lg = self.grade(&r.lhs);
            for (w, _) in r.rhs.terms() {
                if self.order.key(w) >= lk {
                    return Err(Error::Unsupported(format!("rule {} -> {w} is not decreasing", r.lhs)));
                }
                if self.grade(w) != lg {
                    return Err(Error::Unsupported(format!("rule {} -> {w} changes the grade", r.lhs)));
                }
            }
        }
        for (g, img) in &self.star_map {
            let back: Vec<Generator> = img.terms().flat_map(|(w, _)| w.0.clone()).collect();
            if back.iter().any(|h| !self.star_map.contains_key(h)) {
                return Err(Error::Unsupported(format!("star image of {g} leaves the alphabet")));
            }
        }
        Ok(())
    }

    /// Explicit T in terms of the other generators: T = q^{-1} Z^{-1}(XY − 1 + q²Z²).
    pub fn t_via_generators(&self) -> Result<NCPoly<T>> {
        if !matches!(self.kind, AlgebraKind::Uqmp) {
            return Err(Error::Unsupported("T elimination exists only for uqmp".into()));
        }
        let p = &self.params;
        let inner = &(&NCPoly::mono(&[X, Y], T::one()) - &NCPoly::one()) + &NCPoly::mono(&[Z, Z], p.pow(2));
        Ok((&NCPoly::mono(&[Zi], p.pow(-1)) * &inner).with_prune(T::zero()))
    }
}

fn rule<T: Scalar>(lhs: &[Generator], rhs: NCPoly<T>) -> Rule<T> {
    Rule { lhs: Word::new(lhs), rhs, factored: None }
}

fn commutation_rules<T: Scalar>(p: &QParams<T>, with_inverse: bool) -> Vec<Rule<T>> {
    let m = |g: &[Generator], c: T| NCPoly::mono(g, c);
    let mut rules = vec![rule(&[Z, X], m(&[X, Z], p.pow(-2))), rule(&[Z, Y], m(&[Y, Z], p.pow(2)))];
    if with_inverse {
        rules.extend([
            rule(&[Zi, X], m(&[X, Zi], p.pow(2))),
            rule(&[Zi, Y], m(&[Y, Zi], p.pow(-2))),
            rule(&[Z, Zi], NCPoly::one()),
            rule(&[Zi, Z], NCPoly::one()),
        ]);
    }
    rules
}

/// Y X and X Y for the sphere at parameter x.
fn sphere_rules<T: Scalar>(p: &QParams<T>, x: T) -> Vec<Rule<T>> {
    let m = |g: &[Generator], c: T| NCPoly::mono(g, c);
    let one = T::one();
    let yx = p.powf(-x - one) - p.powf(x - one);
    let xy = p.powf(-x + one) - p.powf(x + one);
    vec![
        rule(&[Y, X], &(&NCPoly::one() + &m(&[Z], yx)) - &m(&[Z, Z], p.pow(-2))),
        rule(&[X, Y], &(&NCPoly::one() + &m(&[Z], xy)) - &m(&[Z, Z], p.pow(2))),
    ]
}

fn podles_star<T: Scalar>(with_inverse: bool, with_t: bool) -> Vec<(Generator, NCPoly<T>)> {
    let one = T::one();
    let mut v = vec![(X, NCPoly::mono(&[Y], one)), (Y, NCPoly::mono(&[X], one)), (Z, NCPoly::mono(&[Z], one))];
    if with_inverse {
        v.push((Zi, NCPoly::mono(&[Zi], one)));
    }
    if with_t {
        v.push((T, NCPoly::mono(&[T], one)));
    }
    v
}

/// A_s A_t without the (−1)^s sign: X^m P(Z) for s+t ≤ 0, Y^m P(Z) for s+t > 0.
fn a_product<T: Scalar>(p: &QParams<T>, l2: i32, s: i32, t: i32) -> FactoredRhs<T> {
    let q2 = p.pow(2);
    let ((a, ra), (b, rb), g, m) = if s + t <= 0 {
        ((p.pow(2 * t - l2 + 1), s + l2), (-p.pow(-l2 + 1), t + l2), X, -(s + t))
    } else {
        ((p.pow(2 * t - l2 + 1), l2 - t), (-p.pow(2 * s + 2 * t - l2 + 1), l2 - s), Y, s + t)
    };
    let geometric = |c: T, r: i32| (0..r).scan(c, move |acc, _| {
        let v = *acc;
        *acc *= q2;
        Some(v)
    });
    let roots = geometric(a, ra).chain(geometric(b, rb)).collect();
    FactoredRhs { scale: T::one(), prefix: Word::unit().pow(g, m as usize), roots }
}

impl<T: Scalar> FactoredRhs<T> {
    /// The expanded polynomial.
    pub fn expand(&self) -> NCPoly<T> {
        let mut coeffs = vec![T::one()];
        for r in &self.roots {
            coeffs = poly_mul(&coeffs, &[T::one(), -*r]);
        }
        let mut out = NCPoly::zero();
        for (j, c) in coeffs.into_iter().enumerate() {
            out.add_term(self.prefix.clone().pow(Z, j), Complex::new(self.scale * c, T::zero()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> QParams<f64> {
        QParams::new(0.5).unwrap()
    }

    #[test]
    fn all_presentations_validate() {
        let p = p();
        Presentation::uqsu2(p).validate().unwrap();
        Presentation::uqmp(p).validate().unwrap();
        Presentation::podles(p, 0.7).validate().unwrap();
        Presentation::podles_extended(p, -1.3).validate().unwrap();
        for l2 in 0..5 {
            Presentation::bl(p, HalfInt::from_twice(l2)).validate().unwrap();
        }
    }

    #[test]
    fn bl0_has_single_a_and_a0_squared_is_one() {
        let pres = Presentation::bl(p(), HalfInt::from_twice(0));
        let a_count = pres.generators.iter().filter(|g| matches!(g, A(_))).count();
        assert_eq!(a_count, 1);
        let r = pres.rule_for(A(0), A(0)).unwrap();
        assert_eq!(r.rhs, NCPoly::one());
    }

    #[test]
    fn a_product_half_spin() {
        // l = 1/2, s = 1, s' = -1: −(1 − q^{-2}Z)(1 − Z).
        let q = 0.5f64;
        let pres = Presentation::bl(p(), HalfInt::from_twice(1));
        let r = pres.rule_for(A(1), A(-1)).unwrap();
        let z = |n| Word::unit().pow(Z, n);
        assert!((r.rhs.coefficient(&z(0)).re + 1.0).abs() < 1e-15);
        assert!((r.rhs.coefficient(&z(1)).re - (1.0 + q.powi(-2))).abs() < 1e-14);
        assert!((r.rhs.coefficient(&z(2)).re + q.powi(-2)).abs() < 1e-14);
        assert_eq!(r.rhs.len(), 3);
    }

    #[test]
    fn sample_rules() {
        let p = p();
        let su = Presentation::uqsu2(p);
        assert_eq!(su.rule_for(K, E).unwrap().rhs, NCPoly::mono(&[E, K], 0.25));
        let pod = Presentation::podles(p, 1.0);
        let xy = &pod.rule_for(X, Y).unwrap().rhs;
        // (1 − q²Z)(1 + Z) = 1 + (1 − q²)Z − q²Z².
        assert!((xy.coefficient(&Word::new(&[Z])).re - 0.75).abs() < 1e-15);
        assert!((xy.coefficient(&Word::new(&[Z, Z])).re + 0.25).abs() < 1e-15);
    }

    #[test]
    fn grades() {
        let pres = Presentation::bl(p(), HalfInt::from_twice(2));
        assert_eq!(pres.grade(&Word::new(&[X, Z])), Grade { degree: -1, odd: false });
        assert_eq!(pres.grade(&Word::new(&[A(0)])), Grade { degree: 0, odd: true });
        assert_eq!(pres.grade(&Word::unit()), Grade::default());
    }

    #[test]
    fn invalid_x_rejected() {
        let r = Presentation::make(AlgebraKind::Podles { x: f64::INFINITY, extended: false }, p());
        assert!(r.is_err());
    }
}
