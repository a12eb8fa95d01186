//! Sparse formal linear combinations with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// `Σ c_k · k` with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

/// Coordinates in a basis indexed by `usize`.
pub type Vector = LinComb<usize>;
/// Elements of a two-fold tensor product, keyed by basis pairs.
pub type Tensor2 = LinComb<(usize, usize)>;
/// Noncommutative polynomials: words in generator indices.
pub type Poly = LinComb<Vec<usize>>;

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(key: K, coeff: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += &coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<K>, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn add(&mut self, other: &LinComb<K>) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub(&mut self, other: &LinComb<K>) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.neg());
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(k, c)| (k.clone(), c * factor)).collect() }
    }

    pub fn neg(&self) -> Self {
        LinComb { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect() }
    }

    pub fn coeff(&self, key: &K) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn first(&self) -> Option<(&K, &Scalar)> {
        self.terms.iter().next()
    }

    pub fn last(&self) -> Option<(&K, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn remove(&mut self, key: &K) -> Option<Scalar> {
        self.terms.remove(key)
    }

    /// Relabel keys; colliding keys are summed, `None` drops the term.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Option<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            if let Some(l) = f(k) {
                out.add_term(l, c.clone());
            }
        }
        out
    }

    /// Apply a linear map given on keys.
    pub fn apply<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Keep only the terms whose key satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        LinComb { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut out = LinComb::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{k:?}")?;
        }
        Ok(())
    }
}

/// Tensor product of two vectors as a combination of index pairs.
pub fn tensor2(x: &Vector, y: &Vector) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            out.add_term((*i, *j), a * b);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn cancellation_removes_terms() {
        let q = Field::Rational;
        let mut v = Vector::term(3, q.from_i64(2));
        v.add_term(3, q.from_i64(-2));
        assert!(v.is_zero());
        v.add_term(1, q.one());
        v.add_scaled(&Vector::term(1, q.one()), &q.from_i64(-1));
        assert!(v.is_zero());
    }

    #[test]
    fn relabel_merges() {
        let q = Field::Rational;
        let v: Vector = [(0, q.one()), (1, q.one())].into_iter().collect();
        let w = v.map_keys(|_| Some(7usize));
        assert_eq!(w.coeff(&7), Some(&q.from_i64(2)));
    }
}
