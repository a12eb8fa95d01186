//! The Sweedler hom out of a free dg-algebra: {T(X),B} = T^c([X,B]) when the cogenerators
//! sit in strictly positive or strictly negative degrees (and T^c([X,B̄]) for the
//! conilpotent part).

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{free_algebra, DgAlgebra};
use crate::coalgebra::{check_cofree_regime, word_coalgebra, DgCoalgebra, Splitting};
use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Space, Truncation};
use crate::lincomb::{LinComb, Poly, Vector};
use crate::words::{coextend_coderivation_on_word, koszul_evaluation_exponent, Word, WordBasis};

use super::measuring::{verify_measuring, MeasuringReport};

#[derive(Clone, Debug)]
pub struct SweedlerHom {
    pub coalgebra: DgCoalgebra,
    /// Words in the cogenerators [x>y].
    pub words: WordBasis,
    /// Cogenerator → (letter of X, basis element of B).
    pub cogenerators: Vec<(usize, usize)>,
    pub source: DgAlgebra,
    pub source_words: WordBasis,
    pub target: DgAlgebra,
    pub conilpotent: bool,
}

impl SweedlerHom {
    pub fn cogenerator(&self, x: usize, y: usize) -> Option<usize> {
        self.cogenerators.iter().position(|p| *p == (x, y))
    }

    /// h♭(x1⋯xn) = Π f_i(x_i) · (−1)^{Σ_{i<j}|f_j||x_i|} for h = f1⋯fn; `None` if B truncates the product.
    pub fn flat(&self, h: &[usize], w: &[usize]) -> Option<Vector> {
        flat(&self.words.letters, &self.cogenerators, &self.source_words.letters, &self.target, h, w)
    }

    /// The couniversal measuring ev(h, w) = h♭(w), on basis indices of the two carriers.
    pub fn evaluation(&self, h: usize, w: usize) -> Option<Vector> {
        self.flat(self.words.word(h), self.source_words.word(w))
    }

    /// Length-one part of d(h), as a combination of cogenerators.
    pub fn corestriction(&self, h: usize) -> Vector {
        let mut out = Vector::zero();
        for (k, s) in self.coalgebra.d().column(h).iter() {
            if let [l] = self.words.word(*k).as_slice() {
                out.add_term(*l, s.clone());
            }
        }
        out
    }

    pub fn verify_measuring(&self) -> MeasuringReport {
        verify_measuring(&self.coalgebra, &self.source, &self.target, &|h, w| self.evaluation(h, w), self.conilpotent)
    }
}

fn flat(
    z: &GradedSpace,
    cogens: &[(usize, usize)],
    x: &GradedSpace,
    b: &DgAlgebra,
    h: &[usize],
    w: &[usize],
) -> Option<Vector> {
    if h.len() != w.len() {
        return Some(Vector::zero());
    }
    if h.iter().zip(w).any(|(f, l)| cogens[*f].0 != *l) {
        return Some(Vector::zero());
    }
    let fd: Vec<i64> = h.iter().map(|f| z.degree(*f)).collect();
    let xd: Vec<i64> = w.iter().map(|l| x.degree(*l)).collect();
    let mut acc = b.unit_vector().ok()?;
    for f in h {
        acc = b.mul_exact(&acc, &b.space().basis_vector(cogens[*f].1))?;
    }
    Some(acc.scaled(&b.field().sign(koszul_evaluation_exponent(&fd, &xd))))
}

/// T^c([X,B]) (or T^c([X,B̄]) when `conilpotent`) with the coderivation whose corestriction is
/// q(dh)(x) = d_B h♭(x) − (−1)^{|h|} h♭(dx), and the couniversal measuring into B.
/// `phi[l]` is d of the l-th letter as a polynomial in letters.
pub fn sweedler_hom_free(
    letters: Space,
    phi: &[Poly],
    b: &DgAlgebra,
    trunc: Truncation,
    conilpotent: bool,
) -> Result<SweedlerHom> {
    if letters.field() != b.field() {
        return Err(Error::MixedFields(letters.field(), b.field()));
    }
    if phi.len() != letters.dim() {
        return Err(Error::OutOfRange("one differential per letter".into()));
    }
    let field = b.field();
    let bs = b.space();
    let targets: Vec<usize> = if conilpotent {
        let u = b.unit_index().ok_or_else(|| Error::MissingStructure("unit is not a basis element".into()))?;
        let aug = b.augmentation.as_ref().ok_or_else(|| Error::MissingStructure("B needs an augmentation".into()))?;
        if (0..b.dim()).any(|i| aug[i] != if i == u { field.one() } else { field.zero() }) {
            return Err(Error::MissingStructure("augmentation must be dual to the unit basis element".into()));
        }
        (0..b.dim()).filter(|i| *i != u).collect()
    } else {
        (0..b.dim()).collect()
    };
    let mut pairs: Vec<((usize, usize), String, i64)> = Vec::new();
    for l in 0..letters.dim() {
        for y in &targets {
            pairs.push(((l, *y), format!("[{}>{}]", letters.name(l), bs.name(*y)), bs.degree(*y) - letters.degree(l)));
        }
    }
    let lo = pairs.iter().map(|p| p.2).min().unwrap_or(0).min(0);
    let hi = pairs.iter().map(|p| p.2).max().unwrap_or(0).max(0);
    let z = GradedSpace::new(field, Truncation::new(lo, hi, trunc.weight_cap)?, pairs.iter().map(|p| (p.1.clone(), p.2)))?;
    check_cofree_regime(&z)?;
    // GradedSpace sorts by degree; recover the pair behind each letter
    let by_name: HashMap<&str, (usize, usize)> = pairs.iter().map(|p| (p.1.as_str(), p.0)).collect();
    let cogenerators: Vec<(usize, usize)> = (0..z.dim()).map(|i| by_name[z.name(i)]).collect();
    let z: Space = Arc::new(z);

    let xlo = (0..letters.dim()).map(|l| letters.degree(l)).min().unwrap_or(0).min(0);
    let xhi = (0..letters.dim()).map(|l| letters.degree(l)).max().unwrap_or(0).max(0);
    let cap = trunc.weight_cap as i64;
    let swin = Truncation::new(cap * xlo, cap * xhi, trunc.weight_cap)?;
    let (source, source_words) = free_algebra(letters.clone(), phi, swin)?;

    let wb = WordBasis::new(z.clone(), trunc, "|")?;
    let index: HashMap<(usize, usize), usize> = cogenerators.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut cores: HashMap<Word, Option<LinComb<usize>>> = HashMap::new();
    for i in 0..wb.dim() {
        let h = wb.word(i).clone();
        if h.is_empty() {
            continue;
        }
        let hdeg = wb.space.degree(i);
        let mut q = Some(Vector::zero());
        for x in 0..letters.dim() {
            let mut img = Vector::zero();
            if let [f] = h.as_slice() {
                if cogenerators[*f].0 == x {
                    img.add(b.d().column(cogenerators[*f].1));
                }
            }
            let mut inner = Some(Vector::zero());
            for (w, s) in phi[x].iter() {
                match (flat(&z, &cogenerators, &letters, b, &h, w), inner.as_mut()) {
                    (Some(v), Some(acc)) => acc.add_scaled(&v, s),
                    _ => inner = None,
                }
            }
            let Some(inner) = inner else {
                q = None;
                break;
            };
            img.add_scaled(&inner, &field.sign(hdeg + 1));
            let acc = q.as_mut().unwrap();
            for (y, s) in img.iter() {
                match index.get(&(x, *y)) {
                    Some(k) => acc.add_term(*k, s.clone()),
                    None => {
                        return Err(Error::MissingStructure(format!(
                            "d of {} has a component along {} ⊸ 1; the differential does not preserve augmentations",
                            wb.space.name(i),
                            letters.name(x)
                        )))
                    }
                }
            }
        }
        cores.insert(h, q);
    }
    let (coalgebra, words) = word_coalgebra(wb, Splitting::Deconcatenation, |wb, w| {
        let mut exact = true;
        let f = |u: &[usize]| match cores.get(u) {
            Some(Some(v)) => v.clone(),
            _ => {
                LinComb::zero()
            }
        };
        for i in 0..w.len() {
            for j in i + 1..=w.len() {
                if !matches!(cores.get(&w[i..j]), Some(Some(_))) {
                    exact = false;
                }
            }
        }
        (coextend_coderivation_on_word(&wb.letters, &f, -1, w), exact)
    })?;
    Ok(SweedlerHom { coalgebra, words, cogenerators, source, source_words, target: b.clone(), conilpotent })
}
