//! Exhaustive enumeration of vectors and homogeneous maps over a prime field.
//!
//! Candidates are numbered 0..count and decoded in base p, so callers can split the
//! range across threads and still merge results in a fixed order.

use crate::error::{Error, Result};
use crate::graded::GradedSpace;
use crate::lincomb::Vector;
use crate::scalar::Field;

/// Largest candidate count accepted by [`Slots::new`].
pub const MAX_CANDIDATES: u64 = 1 << 22;

/// Coefficient slots: slot k is the coefficient of `target[k]` in column `column[k]`.
#[derive(Clone, Debug)]
pub struct Slots {
    field: Field,
    p: u64,
    slots: Vec<(usize, usize)>,
    columns: usize,
    count: u64,
}

impl Slots {
    pub fn new(field: Field, columns: usize, slots: Vec<(usize, usize)>) -> Result<Self> {
        let p = field
            .size()
            .ok_or_else(|| Error::EnumerationTooLarge("enumeration needs a finite field".into()))?;
        let mut count: u64 = 1;
        for _ in &slots {
            count = count
                .checked_mul(p)
                .filter(|c| *c <= MAX_CANDIDATES)
                .ok_or_else(|| Error::EnumerationTooLarge(format!("{p}^{} candidates", slots.len())))?;
        }
        Ok(Slots { field, p, slots, columns, count })
    }

    /// Slots for all degree-`degree` maps from the listed source basis elements to `target`.
    pub fn maps(field: Field, source: &GradedSpace, domain: &[usize], target: &GradedSpace, degree: i64) -> Result<Self> {
        let slots = domain
            .iter()
            .flat_map(|&i| target.degree_range(source.degree(i) + degree).map(move |k| (i, k)))
            .collect();
        Self::new(field, source.dim(), slots)
    }

    /// Slots for vectors in the span of `basis`.
    pub fn vectors(field: Field, basis: &[usize]) -> Result<Self> {
        Self::new(field, 1, basis.iter().map(|k| (0, *k)).collect())
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// The n-th candidate as a list of columns.
    pub fn columns(&self, mut n: u64) -> Vec<Vector> {
        let mut cols = vec![Vector::zero(); self.columns];
        for (i, k) in &self.slots {
            let digit = n % self.p;
            n /= self.p;
            if digit != 0 {
                cols[*i].add_term(*k, self.field.from_i64(digit as i64));
            }
        }
        cols
    }

    pub fn vector(&self, n: u64) -> Vector {
        self.columns(n).pop().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_decoding() {
        let f = Field::prime(3).unwrap();
        let s = Slots::vectors(f, &[2, 5]).unwrap();
        assert_eq!(s.count(), 9);
        let all: Vec<Vector> = (0..9).map(|n| s.vector(n)).collect();
        for i in 0..9 {
            for j in 0..i {
                assert_ne!(all[i], all[j]);
            }
        }
        assert!(Slots::vectors(Field::Rational, &[0]).is_err());
        assert!(matches!(Slots::vectors(f, &(0..40).collect::<Vec<_>>()), Err(Error::EnumerationTooLarge(_))));
    }
}
