//! Sweedler products against specific coalgebras: matrix algebras A^[n], the
//! differential algebra 𝔽δ₊▷A and (divided) jets.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{omega_bimodule, DgAlgebra};
use crate::coalgebra::DgCoalgebra;
use crate::error::{Error, Result};
use crate::graded::Truncation;
use crate::linalg::Echelon;
use crate::lincomb::Vector;
use crate::presets;

use super::product::{sweedler_product, SweedlerProduct};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example {
    /// Mat(n)⋆▷A.
    Matrix(usize),
    /// 𝔽δ₊▷A with |δ| = n.
    DiffAlg(i64),
    /// T^c_{≤N}(x)▷A, deconcatenation.
    Jet(usize),
    /// T^c_{≤N}(x)▷A, binomial coproduct.
    DividedJet(usize),
}

/// The coalgebra the example multiplies against.
pub fn example_coalgebra(kind: Example, a: &DgAlgebra) -> Result<DgCoalgebra> {
    let field = a.field();
    let point = Truncation::new(0, 0, 1)?;
    match kind {
        Example::Matrix(n) => presets::matrix_coalgebra(field, n, point),
        Example::DiffAlg(n) => presets::primitive_coalgebra(field, n, Truncation::new(n.min(0), n.max(0), 1)?),
        Example::Jet(n) => presets::jet_coalgebra(field, n, false, point.with_cap(n.max(1))),
        Example::DividedJet(n) => presets::jet_coalgebra(field, n, true, point.with_cap(n.max(1))),
    }
}

/// The unpointed Sweedler product for the chosen example.
pub fn example_construction(kind: Example, a: &DgAlgebra, trunc: Truncation) -> Result<SweedlerProduct> {
    let c = example_coalgebra(kind, a)?;
    sweedler_product(&c, a, trunc, false)
}

/// Dimensions of T_A(SⁿΩ_A) per (degree, weight) up to the weight cap, computed from
/// the kernel of multiplication. Needs a weight grading with everything but the unit
/// of positive weight; words in Ω are divided out by (ωa)⊗ω' = (−1)^{n|a|} ω⊗(aω').
pub fn derham_dims(a: &DgAlgebra, n: i64, cap: usize) -> Result<BTreeMap<(i64, usize), usize>> {
    let weights = a.weights.clone().ok_or_else(|| Error::MissingStructure("de Rham dimensions need weights".into()))?;
    let field = a.field();
    let sp = a.space();
    let unit = a.unit_index();
    if (0..a.dim()).any(|i| Some(i) != unit && weights[i] == 0) {
        return Err(Error::MissingStructure("only the unit may have weight 0".into()));
    }
    let om = omega_bimodule(a)?;
    let odeg = |k: usize| om.space.degree(k) + n;
    let mut dims: BTreeMap<(i64, usize), usize> = BTreeMap::new();
    for i in 0..a.dim() {
        if weights[i] <= cap {
            *dims.entry((sp.degree(i), weights[i])).or_default() += 1;
        }
    }
    // all words in the Ω basis of total weight ≤ cap, by length
    let mut layers: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    loop {
        let mut next = Vec::new();
        for w in layers.last().unwrap() {
            let wt: usize = w.iter().map(|k| om.weights[*k]).sum();
            for k in 0..om.dim() {
                if wt + om.weights[k] <= cap {
                    let mut v = w.clone();
                    v.push(k);
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    for words in layers.iter().skip(1) {
        let index: HashMap<&[usize], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let key = |w: &[usize]| -> (i64, usize) {
            (w.iter().map(|k| odeg(*k)).sum(), w.iter().map(|k| om.weights[*k]).sum())
        };
        let mut groups: BTreeMap<(i64, usize), (usize, Echelon)> = BTreeMap::new();
        for w in words {
            groups.entry(key(w)).or_insert_with(|| (0, Echelon::new())).0 += 1;
        }
        let len = words[0].len();
        let expand = |prefix: &[usize], left: &Vector, right: &Vector, suffix: &[usize]| -> Option<Vector> {
            let mut out = Vector::zero();
            for (l, s) in left.iter() {
                for (r, t) in right.iter() {
                    let mut w = prefix.to_vec();
                    w.push(*l);
                    w.push(*r);
                    w.extend_from_slice(suffix);
                    out.add_term(*index.get(w.as_slice())?, s * t);
                }
            }
            Some(out)
        };
        // relations live on words of length `len`: take a shorter-by-weight word u and an element a
        for u in words {
            let wu: usize = u.iter().map(|k| om.weights[*k]).sum();
            for x in 0..a.dim() {
                if Some(x) == unit || wu + weights[x] > cap {
                    continue;
                }
                for p in 0..len.saturating_sub(1) {
                    let (Some(l), Some(r)) = (om.right(a, u[p], x), om.left(a, x, u[p + 1])) else {
                        continue;
                    };
                    let lhs = expand(&u[..p], &l, &Vector::term(u[p + 1], field.one()), &u[p + 2..]);
                    let rhs = expand(&u[..p], &Vector::term(u[p], field.one()), &r, &u[p + 2..]);
                    let (Some(lhs), Some(rhs)) = (lhs, rhs) else { continue };
                    let mut rel = lhs;
                    rel.add_scaled(&rhs, &field.sign(n * sp.degree(x) + 1));
                    if rel.is_zero() {
                        continue;
                    }
                    let w0 = &words[*rel.first().unwrap().0];
                    if let Some(g) = groups.get_mut(&key(w0)) {
                        g.1.insert(&rel);
                    }
                }
            }
        }
        for (k, (count, ech)) in groups {
            *dims.entry(k).or_default() += count - ech.rank();
        }
    }
    Ok(dims)
}

/// Dimensions of a Sweedler product per (degree, weight).
pub fn product_dims(p: &SweedlerProduct) -> BTreeMap<(i64, usize), usize> {
    let alg = p.algebra();
    let mut out = BTreeMap::new();
    for i in 0..alg.dim() {
        *out.entry((alg.space().degree(i), alg.weight(i).unwrap_or(0))).or_default() += 1;
    }
    out
}
