//! Tensor words over a graded alphabet: enumeration inside a window and the
//! combinatorics of free (co)algebras.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Space, Truncation};
use crate::lincomb::{LinComb, Poly, Vector};
use crate::scalar::{Field, Scalar};

pub type Word = Vec<usize>;

/// All words of weight ≤ cap over an alphabet whose degree lies in the window.
#[derive(Clone, Debug)]
pub struct WordBasis {
    pub letters: Space,
    pub weights: Vec<usize>,
    pub cap: usize,
    pub space: Space,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    incomplete: BTreeSet<i64>,
}

impl WordBasis {
    /// Word length as weight.
    pub fn new(letters: Space, window: Truncation, sep: &str) -> Result<Self> {
        let w = vec![1; letters.dim()];
        Self::weighted(letters, w, window, sep)
    }

    pub fn weighted(letters: Space, weights: Vec<usize>, window: Truncation, sep: &str) -> Result<Self> {
        if weights.contains(&0) {
            return Err(Error::OutOfRange("letters of weight 0 give infinitely many words".into()));
        }
        let cap = window.weight_cap;
        let degs: Vec<i64> = (0..letters.dim()).map(|i| letters.degree(i)).collect();
        let lo_step = degs.iter().copied().min().unwrap_or(0).min(0);
        let hi_step = degs.iter().copied().max().unwrap_or(0).max(0);
        let wmin = weights.iter().copied().min().unwrap_or(1);
        let mut found: Vec<(usize, Word, i64)> = Vec::new();
        let mut stack: Vec<(Word, usize, i64)> = vec![(Vec::new(), 0, 0)];
        while let Some((w, wt, deg)) = stack.pop() {
            if window.contains(deg) {
                found.push((wt, w.clone(), deg));
            }
            for l in 0..letters.dim() {
                let nwt = wt + weights[l];
                if nwt > cap {
                    continue;
                }
                let ndeg = deg + degs[l];
                let steps = ((cap - nwt) / wmin) as i64;
                if ndeg + steps * hi_step < window.degree_min || ndeg + steps * lo_step > window.degree_max {
                    continue;
                }
                let mut nw = w.clone();
                nw.push(l);
                stack.push((nw, nwt, ndeg));
            }
        }
        // GradedSpace orders by degree, stably; pre-sorting makes indices line up.
        found.sort_by(|a, b| (a.2, a.0, &a.1).cmp(&(b.2, b.0, &b.1)));
        let space = GradedSpace::new(
            letters.field(),
            window,
            found.iter().map(|(_, w, d)| (word_name(&letters, w, sep), *d)),
        )?;
        let words: Vec<Word> = found.into_iter().map(|(_, w, _)| w).collect();
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let incomplete = incomplete_degrees(&letters, &weights, window);
        Ok(WordBasis { letters, weights, cap, space: Arc::new(space), words, index, incomplete })
    }

    pub fn field(&self) -> Field {
        self.letters.field()
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn index_of(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn weight_of(&self, w: &[usize]) -> usize {
        w.iter().map(|l| self.weights[*l]).sum()
    }

    pub fn weight(&self, i: usize) -> usize {
        self.weight_of(&self.words[i])
    }

    pub fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|l| self.letters.degree(*l)).sum()
    }

    pub fn empty(&self) -> Option<usize> {
        self.index_of(&[])
    }

    /// Degrees where some word of the untruncated object is missing.
    pub fn incomplete(&self) -> &BTreeSet<i64> {
        &self.incomplete
    }

    /// Coordinates of a polynomial; the flag is false if a nonzero term was dropped.
    pub fn embed(&self, p: &Poly) -> (Vector, bool) {
        let mut exact = true;
        let v = p.map_keys(|w| {
            let k = self.index_of(w);
            exact &= k.is_some();
            k
        });
        (v, exact)
    }

    pub fn poly(&self, v: &Vector) -> Poly {
        v.map_keys(|i| Some(self.words[*i].clone()))
    }

    pub fn letter_word(&self, l: usize) -> Option<usize> {
        self.index_of(&[l])
    }
}

pub fn word_name(letters: &GradedSpace, w: &[usize], sep: &str) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|l| letters.name(*l)).collect::<Vec<_>>().join(sep)
}

/// Degrees of the window in which words of weight > cap can occur.
fn incomplete_degrees(letters: &GradedSpace, weights: &[usize], window: Truncation) -> BTreeSet<i64> {
    let all: BTreeSet<i64> = (window.degree_min..=window.degree_max).collect();
    if letters.dim() == 0 {
        return BTreeSet::new();
    }
    let degs: Vec<(i64, i64)> = (0..letters.dim()).map(|i| (letters.degree(i), weights[i] as i64)).collect();
    let beyond = window.weight_cap as i64 + 1;
    if degs.iter().all(|(d, _)| *d > 0) {
        // degree/weight ratio is at least d/w for the minimizing letter
        let (d, w) = *degs.iter().min_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1))).unwrap();
        all.into_iter().filter(|n| n * w >= d * beyond).collect()
    } else if degs.iter().all(|(d, _)| *d < 0) {
        let (d, w) = *degs.iter().max_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1))).unwrap();
        all.into_iter().filter(|n| n * w <= d * beyond).collect()
    } else {
        all
    }
}

/// Concatenate a polynomial product.
pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (u, c) in a.iter() {
        for (v, e) in b.iter() {
            let mut w = u.clone();
            w.extend_from_slice(v);
            out.add_term(w, c * e);
        }
    }
    out
}

pub fn word_degree(letters: &GradedSpace, w: &[usize]) -> i64 {
    w.iter().map(|l| letters.degree(*l)).sum()
}

/// D(x1⋯xk) = Σ (−1)^{n(|x1|+⋯+|x_{i−1}|)} x1⋯φ(xi)⋯xk, the derivation extending φ.
pub fn extend_derivation_on_word(letters: &GradedSpace, phi: &[Poly], n: i64, w: &[usize]) -> Poly {
    let field = letters.field();
    let mut out = Poly::zero();
    let mut prefix_deg = 0;
    for i in 0..w.len() {
        let s = field.sign(n * prefix_deg);
        for (mid, c) in phi[w[i]].iter() {
            let mut nw = w[..i].to_vec();
            nw.extend_from_slice(mid);
            nw.extend_from_slice(&w[i + 1..]);
            out.add_term(nw, c * &s);
        }
        prefix_deg += letters.degree(w[i]);
    }
    out
}

/// D(x1⋯xk) = Σ_{i<j} (−1)^{n(|x1|+⋯+|xi|)} x1⋯xi φ(x_{i+1}⋯x_j) x_{j+1}⋯xk, the
/// coderivation of the tensor coalgebra with corestriction φ.
pub fn coextend_coderivation_on_word(
    letters: &GradedSpace,
    phi: &dyn Fn(&[usize]) -> LinComb<usize>,
    n: i64,
    w: &[usize],
) -> Poly {
    let field = letters.field();
    let mut out = Poly::zero();
    let mut prefix_deg = 0;
    for i in 0..w.len() {
        let s = field.sign(n * prefix_deg);
        for j in i + 1..=w.len() {
            for (l, c) in phi(&w[i..j]).iter() {
                let mut nw = w[..i].to_vec();
                nw.push(*l);
                nw.extend_from_slice(&w[j..]);
                out.add_term(nw, c * &s);
            }
        }
        prefix_deg += letters.degree(w[i]);
    }
    out
}

/// Deconcatenation Δ(w) = Σ w[..i] ⊗ w[i..].
pub fn deconcatenate(w: &[usize]) -> Vec<(Word, Word)> {
    (0..=w.len()).map(|i| (w[..i].to_vec(), w[i..].to_vec())).collect()
}

/// Unshuffle coproduct with primitive letters: Σ_S ±w_S ⊗ w_{S^c}, the Koszul sign of
/// moving the letters of S to the front.
pub fn coshuffle(letters: &GradedSpace, w: &[usize]) -> Vec<(Word, Word, Scalar)> {
    let field = letters.field();
    let n = w.len();
    assert!(n < 63, "word too long for subset enumeration");
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u64..(1u64 << n) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        let mut exp = 0i64;
        let mut right_deg = 0i64;
        for (i, l) in w.iter().enumerate() {
            let d = letters.degree(*l);
            if mask >> i & 1 == 1 {
                exp += d * right_deg;
                left.push(*l);
            } else {
                right_deg += d;
                right.push(*l);
            }
        }
        out.push((left, right, field.sign(exp)));
    }
    out
}

/// Product of the quasi-shuffle bialgebra on T^c, the unique coalgebra map with
/// pμ(x,y) = p(x)ε(y) + ε(x)p(y) + m(p(x),p(y)). With `m = None` this is the shuffle product.
pub fn quasi_shuffle(
    letters: &GradedSpace,
    m: Option<&dyn Fn(usize, usize) -> LinComb<usize>>,
    x: &[usize],
    y: &[usize],
) -> Poly {
    let mut memo: HashMap<(usize, usize), Poly> = HashMap::new();
    qsh(letters, m, x, y, 0, 0, &mut memo)
}

fn qsh(
    letters: &GradedSpace,
    m: Option<&dyn Fn(usize, usize) -> LinComb<usize>>,
    x: &[usize],
    y: &[usize],
    i: usize,
    j: usize,
    memo: &mut HashMap<(usize, usize), Poly>,
) -> Poly {
    if let Some(p) = memo.get(&(i, j)) {
        return p.clone();
    }
    let field = letters.field();
    let mut out = Poly::zero();
    if i == x.len() && j == y.len() {
        out.add_term(Vec::new(), field.one());
    }
    let deg = |w: &[usize]| word_degree(letters, w);
    let prepend = |out: &mut Poly, first: &LinComb<usize>, rest: &Poly, s: &Scalar| {
        for (l, c) in first.iter() {
            for (w, e) in rest.iter() {
                let mut nw = vec![*l];
                nw.extend_from_slice(w);
                out.add_term(nw, &(c * e) * s);
            }
        }
    };
    if i < x.len() {
        let rest = qsh(letters, m, x, y, i + 1, j, memo);
        prepend(&mut out, &LinComb::term(x[i], field.one()), &rest, &field.one());
    }
    if j < y.len() {
        let rest = qsh(letters, m, x, y, i, j + 1, memo);
        let s = field.sign(deg(&x[i..]) * letters.degree(y[j]));
        prepend(&mut out, &LinComb::term(y[j], field.one()), &rest, &s);
    }
    if let (Some(m), true, true) = (m, i < x.len(), j < y.len()) {
        let prod = m(x[i], y[j]);
        if !prod.is_zero() {
            let rest = qsh(letters, Some(m), x, y, i + 1, j + 1, memo);
            let s = field.sign(deg(&x[i + 1..]) * letters.degree(y[j]));
            prepend(&mut out, &prod, &rest, &s);
        }
    }
    memo.insert((i, j), out.clone());
    out
}

/// Evaluate a tensor of functionals on a tensor of vectors:
/// (f1⊗⋯⊗fn)(x1⊗⋯⊗xn) = Π f_i(x_i) · (−1)^{Σ_{i<j} |f_j||x_i|}.
pub fn koszul_evaluation_exponent(f_degrees: &[i64], x_degrees: &[i64]) -> i64 {
    let mut exp = 0;
    for j in 0..f_degrees.len() {
        for xd in &x_degrees[..j] {
            exp += f_degrees[j] * xd;
        }
    }
    exp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphabet(degs: &[i64]) -> Space {
        let t = Truncation::new(-20, 20, 8).unwrap();
        Arc::new(GradedSpace::new(Field::Rational, t, degs.iter().enumerate().map(|(i, d)| (format!("x{i}"), *d))).unwrap())
    }

    #[test]
    fn word_counts() {
        let l = alphabet(&[1, 1]);
        let wb = WordBasis::new(l, Truncation::new(0, 4, 4).unwrap(), "*").unwrap();
        let dims = wb.space.dims();
        assert_eq!(dims.values().copied().collect::<Vec<_>>(), vec![1, 2, 4, 8, 16]);
        assert!(wb.incomplete().is_empty());
    }

    #[test]
    fn negative_letters_incomplete_below_cap() {
        let l = alphabet(&[-1]);
        let wb = WordBasis::new(l, Truncation::new(-8, 2, 5).unwrap(), "*").unwrap();
        assert_eq!(wb.incomplete().iter().copied().collect::<Vec<_>>(), vec![-8, -7, -6]);
    }

    #[test]
    fn shuffle_of_two_letters() {
        let l = alphabet(&[1, 1]);
        let p = quasi_shuffle(&l, None, &[0], &[1]);
        let mut want = Poly::term(vec![0, 1], Field::Rational.one());
        want.add_term(vec![1, 0], Field::Rational.from_i64(-1));
        assert_eq!(p, want);
    }

    #[test]
    fn odd_letter_coshuffle_square() {
        let l = alphabet(&[-1]);
        let mut by_split: HashMap<(usize, usize), Scalar> = HashMap::new();
        for (a, b, s) in coshuffle(&l, &[0, 0]) {
            let e = by_split.entry((a.len(), b.len())).or_insert(Field::Rational.zero());
            *e += &s;
        }
        assert!(by_split[&(1, 1)].is_zero());
        assert!(by_split[&(2, 0)].is_one());
    }
}
