//! Invariant elements among the images of low-degree monomials.

use std::collections::HashMap;

use num_complex::Complex;

use super::{cleared_defect, Action, ImplementingRep};
use crate::error::{Error, Result};
use crate::linalg::{svd, CMatrix};
use crate::ncalg::{basis_words, NCPoly, Presentation, Word};
use crate::qcore::{HalfInt, QParams};
use crate::scalar::{Cx, Scalar};
use crate::trunc_rep::TruncatedRep;

pub const SINGULAR_THRESHOLD: f64 = 1e-8;
const MAX_DEGREE: usize = 8;

/// Joint kernel of the three invariance constraints over a family of elements.
#[derive(Clone, Debug)]
pub struct InvariantSubspace {
    pub dim: usize,
    /// Kernel vectors as (element label, coefficient of the window-normalized element).
    pub basis: Vec<Vec<(String, Complex<f64>)>>,
    /// Smallest singular value kept as nonzero (gap indicator).
    pub smallest_retained: f64,
    /// Largest singular value counted as zero.
    pub largest_discarded: f64,
    pub elements: usize,
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Solves M◁K = M, M◁E = 0, M◁F = 0 over the span of `elements` (matrices at the implementer's
/// internal size). Each element is normalized by its window Frobenius norm; columns that share
/// no constraint rows are solved separately.
pub fn invariant_subspace<T: Scalar>(
    elements: &[(String, CMatrix<T>)],
    imp: &ImplementingRep<T>,
    threshold: f64,
) -> Result<InvariantSubspace> {
    let w = imp.window().len();
    let mut columns: Vec<Vec<(usize, Cx<T>)>> = Vec::with_capacity(elements.len());
    for (label, m) in elements {
        let f = imp.crop(m).frobenius();
        if f == T::zero() {
            log::warn!("element {label} vanishes on the window");
            return Err(Error::DependentMonomials(0.0));
        }
        let mut col = Vec::new();
        for (gi, g) in [Action::K, Action::E, Action::F].into_iter().enumerate() {
            let d = imp.crop(&cleared_defect(g, m, imp)?);
            for (k, v) in d.data().iter().enumerate() {
                if *v != Complex::new(T::zero(), T::zero()) {
                    col.push((gi * w * w + k, *v / f));
                }
            }
        }
        columns.push(col);
    }

    let mut parent: Vec<usize> = (0..columns.len()).collect();
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (r, _) in col {
            match owner.get(r) {
                Some(&o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, j));
                    parent[a] = b;
                }
                None => {
                    owner.insert(*r, j);
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for j in 0..columns.len() {
        let root = find(&mut parent, j);
        groups.entry(root).or_default().push(j);
    }
    let mut roots: Vec<usize> = groups.keys().copied().collect();
    roots.sort_unstable();

    let thr = T::lit(threshold);
    let mut out = InvariantSubspace {
        dim: 0,
        basis: Vec::new(),
        smallest_retained: f64::INFINITY,
        largest_discarded: 0.0,
        elements: elements.len(),
    };
    for root in roots {
        let cols = &groups[&root];
        let mut rows: Vec<usize> = cols.iter().flat_map(|&j| columns[j].iter().map(|(r, _)| *r)).collect();
        rows.sort_unstable();
        rows.dedup();
        let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let nrows = rows.len().max(cols.len());
        let mut a = CMatrix::zeros(nrows, cols.len());
        for (c, &j) in cols.iter().enumerate() {
            for (r, v) in &columns[j] {
                a[(pos[r], c)] = *v;
            }
        }
        let s = svd(&a);
        for v in &s.values {
            let v64 = v.as_f64();
            if *v < thr {
                out.largest_discarded = out.largest_discarded.max(v64);
            } else {
                out.smallest_retained = out.smallest_retained.min(v64);
            }
        }
        for nv in s.null_vectors(thr) {
            out.dim += 1;
            out.basis.push(
                cols.iter()
                    .zip(&nv)
                    .filter(|(_, c)| c.norm().as_f64() > 1e-14)
                    .map(|(&j, c)| (elements[j].0.clone(), Complex::new(c.re.as_f64(), c.im.as_f64())))
                    .collect(),
            );
        }
    }
    Ok(out)
}

fn guard(d: usize) -> Result<()> {
    if d > MAX_DEGREE {
        return Err(Error::InvalidParameter(format!("degree bound D = {d} exceeds {MAX_DEGREE}")));
    }
    Ok(())
}

fn word_poly<T: Scalar>(w: &Word) -> NCPoly<T> {
    NCPoly::term(w.clone(), Complex::new(T::one(), T::zero()))
}

fn max_reach<T: Scalar>(rep: &TruncatedRep<T>, words: &[Word]) -> usize {
    words.iter().map(|w| rep.reach_of(&word_poly(w))).max().unwrap_or(0)
}

fn monomial_elements<T: Scalar>(imp: &ImplementingRep<T>, words: &[Word]) -> Result<Vec<(String, CMatrix<T>)>> {
    words.iter().map(|w| Ok((w.to_string(), imp.element(&word_poly(w))?))).collect()
}

/// Invariants of B_l among normal-form monomials of degree ≤ D.
pub fn ergodic_bl<T: Scalar>(p: &QParams<T>, l: HalfInt, n: usize, d: usize) -> Result<InvariantSubspace> {
    guard(d)?;
    let words = basis_words(&Presentation::bl(*p, l), d);
    let reach = max_reach(&TruncatedRep::bl(*p, l, n)?, &words);
    let imp = ImplementingRep::bl(*p, l, n, reach)?;
    invariant_subspace(&monomial_elements(&imp, &words)?, &imp, SINGULAR_THRESHOLD)
}

/// Invariants of the Podleś sphere (direct sum, 𝐛 implementer) among monomials of degree ≤ D.
pub fn ergodic_podles<T: Scalar>(p: &QParams<T>, x: T, n: usize, d: usize) -> Result<InvariantSubspace> {
    guard(d)?;
    let words = basis_words(&Presentation::podles(*p, x), d);
    let imp = ImplementingRep::podles(*p, x, n, d)?;
    invariant_subspace(&monomial_elements(&imp, &words)?, &imp, SINGULAR_THRESHOLD)
}

/// Invariants of B_0 ⊗ M_2 among (monomial of degree ≤ D) ⊗ (matrix unit), acted on through the
/// coaction-tensored B_0 implementer.
pub fn b0_matrix_units<T: Scalar>(p: &QParams<T>, n: usize, d: usize) -> Result<InvariantSubspace> {
    guard(d)?;
    let l = HalfInt::from_twice(0);
    let words = basis_words(&Presentation::bl(*p, l), d);
    let plain = TruncatedRep::bl(*p, l, n)?;
    let reach = max_reach(&plain, &words);
    let imp = ImplementingRep::new(TruncatedRep::bl_implementer(*p, l, n)?.tensor_coaction()?, plain, reach)?;
    let mut elements = Vec::new();
    for w in &words {
        let m = imp.element(&word_poly(w))?;
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let mut unit = CMatrix::zeros(2, 2);
            unit[(i, j)] = Complex::new(T::one(), T::zero());
            elements.push((format!("{w}|e{}{}", i + 1, j + 1), m.tensor_spin(&unit)));
        }
    }
    invariant_subspace(&elements, &imp, SINGULAR_THRESHOLD)
}
