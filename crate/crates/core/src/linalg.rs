//! Exact sparse elimination.
//!
//! Pivots are always the smallest key of a row, so the pivot order is the
//! basis order and results are reproducible.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::lincomb::Vector;
use crate::scalar::{Field, Scalar};

/// Incremental row-echelon form over a field; rows are normalized to a unit pivot.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Vector>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, key: usize) -> bool {
        self.rows.contains_key(&key)
    }

    /// Remove every pivot key from `v`.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut v = v.clone();
        let mut cursor = 0usize;
        loop {
            let next = v.keys().copied().find(|k| *k >= cursor && self.rows.contains_key(k));
            let Some(k) = next else { break };
            let c = v.coeff(&k).unwrap().neg();
            v.add_scaled(&self.rows[&k], &c);
            cursor = k + 1;
        }
        v
    }

    /// Insert `v`; returns its pivot when it was independent of the existing rows.
    pub fn insert(&mut self, v: &Vector) -> Option<usize> {
        let r = self.reduce(v);
        let (p, c) = r.first()?;
        let p = *p;
        let inv = c.inv().expect("nonzero pivot");
        self.rows.insert(p, r.scaled(&inv));
        Some(p)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &Vector)> {
        self.rows.iter()
    }
}

/// Kernel of the linear map whose `j`-th column is `columns[j]`, as combinations of
/// source indices. All column keys must be `< target_dim`.
pub fn kernel(columns: &[Vector], target_dim: usize, field: Field) -> Vec<Vector> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        debug_assert!(col.keys().all(|k| *k < target_dim));
        let mut aug = col.clone();
        aug.add_term(target_dim + j, field.one());
        let r = ech.reduce(&aug);
        match r.first() {
            Some((p, _)) if *p < target_dim => {
                ech.insert(&r);
            }
            _ => {
                out.push(r.map_keys(|k| Some(*k - target_dim)));
            }
        }
    }
    out
}

/// Rank of a family of vectors. Over ℚ this uses fraction-free (Bareiss) elimination,
/// over 𝔽p plain elimination.
pub fn rank(vectors: &[Vector], field: Field) -> usize {
    match field {
        Field::Rational => bareiss_rank(vectors),
        Field::Prime(_) => {
            let mut e = Echelon::new();
            vectors.iter().filter(|v| e.insert(v).is_some()).count()
        }
    }
}

/// Clear denominators row by row and run fraction-free elimination on a dense integer matrix.
fn bareiss_rank(vectors: &[Vector]) -> usize {
    let mut cols: Vec<usize> = vectors.iter().flat_map(|v| v.keys().copied()).collect();
    cols.sort_unstable();
    cols.dedup();
    if cols.is_empty() {
        return 0;
    }
    let col_of: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut m: Vec<Vec<BigInt>> = vectors
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| {
            let lcm = v.iter().fold(BigInt::one(), |acc, (_, c)| match c {
                Scalar::Rational(r) => acc.lcm(r.denom()),
                Scalar::Residue { .. } => unreachable!("rational field"),
            });
            let mut row = vec![BigInt::zero(); cols.len()];
            for (k, c) in v.iter() {
                if let Scalar::Rational(r) = c {
                    row[col_of[k]] = r.numer() * (&lcm / r.denom());
                }
            }
            row
        })
        .collect();
    let (nr, nc) = (m.len(), cols.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..nr {
            for j in c + 1..nc {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}
