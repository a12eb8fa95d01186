//! Tor^A(𝔽,𝔽) from a minimal free resolution of the trivial module, using only the
//! multiplication table of A and a local Gaussian elimination.

use sweedler::algebra::DgAlgebra;
use sweedler::{Field, Scalar};

type Row = Vec<Scalar>;

/// Row-reduce in place; returns pivot columns.
fn rref(rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(p) = (top..rows.len()).find(|r| !rows[*r][col].is_zero()) else { continue };
        rows.swap(top, p);
        let inv = rows[top][col].inv().unwrap();
        rows[top] = rows[top].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != top && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot_row = rows[top].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    pivots
}

fn rank(vectors: &[Row]) -> usize {
    let mut rows = vectors.to_vec();
    rref(&mut rows).len()
}

/// Null space of the linear map whose columns are given (each of length `target`).
fn null_space(columns: &[Row], target: usize, field: Field) -> Vec<Row> {
    let n = columns.len();
    let mut rows: Vec<Row> = (0..target).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let pivots = rref(&mut rows);
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (r, p) in pivots.iter().enumerate() {
            v[*p] = -&rows[r][free];
        }
        out.push(v);
    }
    out
}

struct Table {
    field: Field,
    m: usize,
    // mul[t][i] = coordinates of e_t · e_i
    mul: Vec<Vec<Row>>,
}

impl Table {
    fn new(a: &DgAlgebra) -> Self {
        let field = a.field();
        let m = a.dim();
        let mul = (0..m)
            .map(|t| {
                (0..m)
                    .map(|i| {
                        let mut row = vec![field.zero(); m];
                        for (k, c) in a.mul_basis(t, i).iter() {
                            row[*k] = c.clone();
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        Table { field, m, mul }
    }

    /// a · v for v in A^r (coordinates copy-major).
    fn act(&self, a: &Row, v: &Row) -> Row {
        let mut out = vec![self.field.zero(); v.len()];
        for (t, at) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (idx, c) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let (copy, i) = (idx / self.m, idx % self.m);
                for (k, e) in self.mul[t][i].iter().enumerate() {
                    out[copy * self.m + k] += &(&(at * c) * e);
                }
            }
        }
        out
    }
}

/// dim Tor_n^A(𝔽,𝔽) for n < count, A finite-dimensional and augmented.
pub fn tor_dims(a: &DgAlgebra, count: usize) -> Vec<usize> {
    let field = a.field();
    let t = Table::new(a);
    let m = t.m;
    let unit = a.unit_index().expect("unit basis element");
    let aug = a.augmentation.clone().expect("augmentation");
    // basis of the augmentation ideal
    let ideal: Vec<Row> = (0..m)
        .filter(|i| *i != unit)
        .map(|i| {
            let mut v = vec![field.zero(); m];
            v[i] = field.one();
            v[unit] = -&aug[i];
            v
        })
        .collect();
    let mut out = vec![1];
    // kernel of F_0 = A → 𝔽
    let mut kernel = ideal.clone();
    while out.len() < count {
        // generators of K modulo A₊K
        let mut span: Vec<Row> = kernel.iter().flat_map(|k| ideal.iter().map(|a| t.act(a, k))).collect();
        let base = rank(&span);
        let mut gens = Vec::new();
        for k in &kernel {
            span.push(k.clone());
            if rank(&span) > base + gens.len() {
                gens.push(k.clone());
            } else {
                span.pop();
            }
        }
        out.push(gens.len());
        if gens.is_empty() {
            while out.len() < count {
                out.push(0);
            }
            break;
        }
        // F_{n+1} = A^{gens} → F_n, e_i in copy j ↦ e_i · g_j
        let target = kernel[0].len();
        let columns: Vec<Row> = gens
            .iter()
            .flat_map(|g| {
                (0..m).map(|i| {
                    let mut e = vec![field.zero(); m];
                    e[i] = field.one();
                    t.act(&e, g)
                })
            })
            .collect();
        kernel = null_space(&columns, target, field);
        if kernel.is_empty() {
            while out.len() < count {
                out.push(0);
            }
            break;
        }
    }
    out
}
