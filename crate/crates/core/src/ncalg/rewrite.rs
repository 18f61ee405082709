use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Zero;

use super::{AlgebraKind, Generator, NCPoly, Presentation, Word};
use crate::error::{Error, Result};
use crate::scalar::{Cx, Scalar};

use Generator::*;

pub const DEFAULT_CAP: usize = 10_000;

/// Outcome of a rewrite run.
#[derive(Clone, Debug)]
pub struct Reduction<T> {
    pub poly: NCPoly<T>,
    pub steps: usize,
}

/// Rewrites to normal form with the default cap.
pub fn normal_form<T: Scalar>(poly: &NCPoly<T>, pres: &Presentation<T>) -> Result<NCPoly<T>> {
    normal_form_capped(poly, pres, DEFAULT_CAP).map(|r| r.poly)
}

/// Rewrites the largest pending term first, leftmost match, rules in list order.
///
/// Since every rule is decreasing, all contributions to a word have arrived before the word is popped.
pub fn normal_form_capped<T: Scalar>(poly: &NCPoly<T>, pres: &Presentation<T>, cap: usize) -> Result<Reduction<T>> {
    for g in poly.generators() {
        if !pres.generators.contains(&g) {
            return Err(Error::ForeignGenerator(g.to_string()));
        }
    }
    let prune = poly.prune_threshold();
    let mut work: BTreeMap<Vec<u32>, (Word, Cx<T>)> = BTreeMap::new();
    let push = |work: &mut BTreeMap<Vec<u32>, (Word, Cx<T>)>, w: Word, c: Cx<T>| {
        let key = pres.order.key(&w);
        let entry = work.entry(key).or_insert_with(|| (w, Complex::zero()));
        entry.1 += c;
    };
    for (w, c) in poly.terms() {
        push(&mut work, w.clone(), *c);
    }
    let mut out = NCPoly::zero().with_prune(prune);
    let mut steps = 0;
    while let Some((_, (w, c))) = work.pop_last() {
        if c.norm() < prune {
            continue;
        }
        let hit = (0..w.len().saturating_sub(1)).find_map(|i| pres.rule_for(w.0[i], w.0[i + 1]).map(|r| (i, r)));
        match hit {
            None => out.add_term(w, c),
            Some((i, r)) => {
                steps += 1;
                if steps > cap {
                    return Err(Error::IterationCap { cap });
                }
                for (rw, rc) in r.rhs.terms() {
                    let nw = Word::concat(&[&w.0[..i], &rw.0, &w.0[i + 2..]]);
                    push(&mut work, nw, c * *rc);
                }
            }
        }
    }
    Ok(Reduction { poly: out, steps })
}

/// Anti-linear anti-homomorphism: reverse words, map generators, conjugate coefficients.
pub fn star<T: Scalar>(poly: &NCPoly<T>, pres: &Presentation<T>) -> Result<NCPoly<T>> {
    let mut missing = None;
    let out = poly.map_words(|w, c| {
        let mut acc = NCPoly::constant(c.conj()).with_prune(poly.prune_threshold());
        for g in w.0.iter().rev() {
            match pres.star_map.get(g) {
                Some(img) => acc = &acc * img,
                None => {
                    missing = Some(*g);
                    return NCPoly::zero();
                }
            }
        }
        acc
    });
    match missing {
        Some(g) => Err(Error::ForeignGenerator(g.to_string())),
        None => Ok(out),
    }
}

/// The automorphism b ↦ −b on X, Y, Z, T (and Zi ↦ −Zi).
pub fn sigma<T: Scalar>(poly: &NCPoly<T>) -> Result<NCPoly<T>> {
    let mut bad = None;
    let out = poly.map_words(|w, c| {
        if let Some(g) = w.0.iter().find(|g| !matches!(g, X | Y | Z | Zi | T)) {
            bad = Some(*g);
        }
        let c = if w.len() % 2 == 1 { -c } else { c };
        NCPoly::term(w.clone(), c)
    });
    match bad {
        Some(g) => Err(Error::ForeignGenerator(g.to_string())),
        None => Ok(out),
    }
}

fn run_len(w: &[Generator], g: Generator) -> usize {
    w.iter().take_while(|h| **h == g).count()
}

/// `g^a h^b` prefix splitter: returns the remainder after a maximal run of `g`.
fn strip(w: &[Generator], g: Generator) -> &[Generator] {
    &w[run_len(w, g)..]
}

fn is_z_power(w: &[Generator], allow_inverse: bool) -> bool {
    w.iter().all(|g| *g == Z) || (allow_inverse && w.iter().all(|g| *g == Zi))
}

/// Whether a word belongs to the normal-form monomial basis of the presentation.
pub fn in_basis<T: Scalar>(w: &Word, pres: &Presentation<T>) -> bool {
    let g = w.gens();
    match pres.kind {
        AlgebraKind::UqSu2 => {
            let rest = strip(strip(g, E), F);
            rest.iter().all(|h| *h == K) || rest.iter().all(|h| *h == Ki)
        }
        AlgebraKind::Uqmp => {
            let rest = if g.first() == Some(&Y) { strip(g, Y) } else { strip(g, X) };
            is_z_power(strip(rest, T), true)
        }
        AlgebraKind::Podles { extended, .. } => {
            let rest = if g.first() == Some(&Y) { strip(g, Y) } else { strip(g, X) };
            is_z_power(rest, extended)
        }
        AlgebraKind::Bl { l } => {
            let l2 = l.twice() as i32;
            match g.first() {
                Some(A(s)) => {
                    let rest = &g[1..];
                    if let Some(A(_)) = rest.first() {
                        return false;
                    }
                    let after_x = strip(rest, X);
                    let after_y = strip(rest, Y);
                    let x_ok = *s == -l2 && is_z_power(after_x, false);
                    let y_ok = *s == l2 && is_z_power(after_y, false);
                    let plain = is_z_power(rest, false) && (-l2..=l2).contains(s);
                    x_ok || y_ok || plain
                }
                Some(Y) => is_z_power(strip(g, Y), false),
                _ => is_z_power(strip(g, X), false),
            }
        }
    }
}

/// Normal-form basis words of length ≤ `max_deg` for podles and bl presentations.
pub fn basis_words<T: Scalar>(pres: &Presentation<T>, max_deg: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let sphere = |out: &mut Vec<Word>, head: &[Generator], budget: usize| {
        for m in 0..=budget {
            for n in 0..=(budget - m) {
                out.push(Word::new(head).pow(X, m).pow(Z, n));
                if m > 0 {
                    out.push(Word::new(head).pow(Y, m).pow(Z, n));
                }
            }
        }
    };
    match pres.kind {
        AlgebraKind::Bl { l } => {
            let l2 = l.twice() as i32;
            sphere(&mut out, &[], max_deg);
            if max_deg >= 1 {
                let budget = max_deg - 1;
                for s in -l2..=l2 {
                    for n in 0..=budget {
                        out.push(Word::new(&[A(s)]).pow(Z, n));
                    }
                    for m in 1..=budget {
                        for n in 0..=(budget - m) {
                            if s == -l2 {
                                out.push(Word::new(&[A(s)]).pow(X, m).pow(Z, n));
                            }
                            if s == l2 {
                                out.push(Word::new(&[A(s)]).pow(Y, m).pow(Z, n));
                            }
                        }
                    }
                }
            }
        }
        _ => sphere(&mut out, &[], max_deg),
    }
    out
}

/// Linear congruential generator (MMIX constants); output is the high 32 bits.
#[derive(Clone, Debug)]
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u32(&mut self) -> u32 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 32) as u32
    }

    /// Uniform in [0, n).
    pub fn below(&mut self, n: usize) -> usize {
        ((u64::from(self.next_u32()) * n as u64) >> 32) as usize
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        f64::from(self.next_u32()) / 4_294_967_296.0
    }
}

/// Random word of length 1..=max_len over `alphabet`.
pub fn random_word(rng: &mut Lcg, alphabet: &[Generator], max_len: usize) -> Word {
    let len = 1 + rng.below(max_len);
    Word((0..len).map(|_| alphabet[rng.below(alphabet.len())]).collect())
}
