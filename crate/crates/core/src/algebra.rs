//! Differential graded algebras stored by structure constants.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::complex::DgSpace;
use crate::error::{Error, Result};
use crate::graded::{tensor_space, GradedMap, GradedSpace, Space, TensorSpace, Truncation, WindowMode};
use crate::linalg;
use crate::lincomb::{Poly, Tensor2, Vector};
use crate::scalar::{Field, Scalar};
use crate::words::{extend_derivation_on_word, WordBasis};

/// A dg-algebra on a finite carrier. When `truncation` is set the carrier is a window of
/// an infinite weight-graded algebra: products of total weight above the cap, or landing
/// outside the degree window, are recorded as zero and reported as inexact.
#[derive(Clone, Debug)]
pub struct DgAlgebra {
    pub complex: DgSpace,
    mult: HashMap<(usize, usize), Vector>,
    pub unit: Option<Vector>,
    pub augmentation: Option<Vec<Scalar>>,
    pub weights: Option<Vec<usize>>,
    pub truncation: Option<Truncation>,
}

impl DgAlgebra {
    /// Build from a product table (missing pairs multiply to zero).
    pub fn from_table(
        d: DgSpace,
        table: impl IntoIterator<Item = ((usize, usize), Vector)>,
        unit: Option<Vector>,
        augmentation: Option<Vec<Scalar>>,
    ) -> Result<Self> {
        let sp = d.space.clone();
        let mut mult = HashMap::new();
        for ((i, j), v) in table {
            if i >= sp.dim() || j >= sp.dim() {
                return Err(Error::OutOfRange(format!("product index ({i},{j})")));
            }
            let want = sp.degree(i) + sp.degree(j);
            if let Some(k) = v.keys().find(|k| sp.degree(**k) != want) {
                return Err(Error::DegreeMismatch(format!(
                    "{}·{} has a term {} of degree {}",
                    sp.name(i),
                    sp.name(j),
                    sp.name(*k),
                    sp.degree(*k)
                )));
            }
            if !v.is_zero() {
                mult.insert((i, j), v);
            }
        }
        if let Some(u) = &unit {
            if u.keys().any(|k| sp.degree(*k) != 0) {
                return Err(Error::DegreeMismatch("unit must have degree 0".into()));
            }
        }
        if let Some(a) = &augmentation {
            if a.len() != sp.dim() {
                return Err(Error::OutOfRange("augmentation length".into()));
            }
            if let Some(i) = (0..sp.dim()).find(|i| sp.degree(*i) != 0 && !a[*i].is_zero()) {
                return Err(Error::DegreeMismatch(format!("augmentation nonzero on {} of degree ≠ 0", sp.name(i))));
            }
        }
        Ok(DgAlgebra { complex: d, mult, unit, augmentation, weights: None, truncation: None })
    }

    pub fn with_weights(mut self, weights: Vec<usize>, truncation: Option<Truncation>) -> Self {
        assert_eq!(weights.len(), self.dim());
        self.weights = Some(weights);
        self.truncation = truncation;
        self
    }

    pub fn space(&self) -> &Space {
        &self.complex.space
    }

    pub fn field(&self) -> Field {
        self.complex.space.field()
    }

    pub fn dim(&self) -> usize {
        self.complex.space.dim()
    }

    pub fn d(&self) -> &GradedMap {
        &self.complex.d
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vector {
        self.mult.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn table(&self) -> impl Iterator<Item = (&(usize, usize), &Vector)> {
        self.mult.iter()
    }

    /// Whether the stored product of basis elements equals the true one.
    pub fn product_exact(&self, i: usize, j: usize) -> bool {
        match (self.truncation, &self.weights) {
            (None, _) => true,
            (Some(t), w) => {
                let sp = self.space();
                t.contains(sp.degree(i) + sp.degree(j)) && w.as_ref().is_none_or(|w| w[i] + w[j] <= t.weight_cap)
            }
        }
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, c) in a.iter() {
            for (j, e) in b.iter() {
                if let Some(p) = self.mult.get(&(*i, *j)) {
                    out.add_scaled(p, &(c * e));
                }
            }
        }
        out
    }

    /// Product, or `None` if some term of it is affected by truncation.
    pub fn mul_exact(&self, a: &Vector, b: &Vector) -> Option<Vector> {
        for i in a.keys() {
            for j in b.keys() {
                if !self.product_exact(*i, *j) {
                    return None;
                }
            }
        }
        Some(self.mul(a, b))
    }

    pub fn d_of(&self, v: &Vector) -> Vector {
        self.complex.d.apply(v)
    }

    pub fn d_exact_of(&self, v: &Vector) -> Option<Vector> {
        v.keys().all(|k| self.complex.d_exact[*k]).then(|| self.d_of(v))
    }

    pub fn unit_vector(&self) -> Result<Vector> {
        self.unit.clone().ok_or_else(|| Error::MissingStructure("algebra has no unit".into()))
    }

    /// Index of the unit when it is a single basis element with coefficient 1.
    pub fn unit_index(&self) -> Option<usize> {
        let u = self.unit.as_ref()?;
        match (u.len(), u.first()) {
            (1, Some((k, c))) if c.is_one() => Some(*k),
            _ => None,
        }
    }

    pub fn augment(&self, v: &Vector) -> Result<Scalar> {
        let a = self.augmentation.as_ref().ok_or_else(|| Error::MissingStructure("algebra is not augmented".into()))?;
        let mut s = self.field().zero();
        for (k, c) in v.iter() {
            s += &(c * &a[*k]);
        }
        Ok(s)
    }

    /// Basis indices sorted by weight, so loops can stop at the cap.
    fn triples_by_weight(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.dim()).collect();
        if let Some(w) = &self.weights {
            order.sort_by_key(|i| w[*i]);
        }
        order
    }

    fn weight_of(&self, i: usize) -> usize {
        self.weights.as_ref().map_or(0, |w| w[i])
    }

    fn cap(&self) -> usize {
        match (self.truncation, &self.weights) {
            (Some(t), Some(_)) => t.weight_cap,
            _ => usize::MAX,
        }
    }

    /// Check associativity, unit laws, Leibniz, d² = 0 and the augmentation wherever the
    /// stored structure is exact.
    pub fn verify(&self) -> AlgebraReport {
        let n = self.dim();
        let order = self.triples_by_weight();
        let cap = self.cap();
        let sp = self.space().clone();
        let mut report = AlgebraReport::default();

        let assoc: Vec<(usize, Vec<String>)> = order
            .par_iter()
            .map(|&i| {
                let mut checked = 0;
                let mut bad = Vec::new();
                let wi = self.weight_of(i);
                for &j in &order {
                    let wj = self.weight_of(j);
                    if wi.saturating_add(wj) > cap {
                        break;
                    }
                    for &k in &order {
                        if wi.saturating_add(wj).saturating_add(self.weight_of(k)) > cap {
                            break;
                        }
                        let (ei, ej, ek) = (sp.basis_vector(i), sp.basis_vector(j), sp.basis_vector(k));
                        let left = self.mul_exact(&ei, &ej).and_then(|ab| self.mul_exact(&ab, &ek));
                        let right = self.mul_exact(&ej, &ek).and_then(|bc| self.mul_exact(&ei, &bc));
                        if let (Some(l), Some(r)) = (left, right) {
                            checked += 1;
                            if l != r {
                                bad.push(format!("({}·{})·{} ≠ {}·({}·{})", sp.name(i), sp.name(j), sp.name(k), sp.name(i), sp.name(j), sp.name(k)));
                            }
                        }
                    }
                }
                (checked, bad)
            })
            .collect();
        for (c, b) in assoc {
            report.checked += c;
            report.failures.extend(b);
        }

        if let Some(u) = &self.unit {
            for i in 0..n {
                let e = sp.basis_vector(i);
                for (l, r, side) in [(u.clone(), e.clone(), "left"), (e.clone(), u.clone(), "right")] {
                    if let Some(p) = self.mul_exact(&l, &r) {
                        report.checked += 1;
                        if p != e {
                            report.failures.push(format!("{side} unit law fails on {}", sp.name(i)));
                        }
                    }
                }
            }
            if let Some(du) = self.d_exact_of(u) {
                if !du.is_zero() {
                    report.failures.push("d(1) ≠ 0".into());
                }
            }
        }

        let leib: Vec<(usize, Vec<String>)> = order
            .par_iter()
            .map(|&i| {
                let mut checked = 0;
                let mut bad = Vec::new();
                for &j in &order {
                    if self.weight_of(i).saturating_add(self.weight_of(j)) > cap {
                        break;
                    }
                    if let Some(w) = self.leibniz_defect(i, j) {
                        checked += 1;
                        if !w.is_zero() {
                            bad.push(format!("Leibniz fails on {}·{}: defect {}", sp.name(i), sp.name(j), sp.show(&w)));
                        }
                    }
                }
                (checked, bad)
            })
            .collect();
        for (c, b) in leib {
            report.checked += c;
            report.failures.extend(b);
        }

        let sq = crate::complex::check_square_zero(&self.complex);
        report.checked += sq.checked;
        for (i, v) in sq.failures {
            report.failures.push(format!("d² {} = {}", sp.name(i), sp.show(&v)));
        }

        if let Some(a) = &self.augmentation {
            if let Some(u) = &self.unit {
                if !self.augment(u).map(|s| s.is_one()).unwrap_or(false) {
                    report.failures.push("ε(1) ≠ 1".into());
                }
            }
            for i in 0..n {
                for j in 0..n {
                    if a[i].is_zero() && a[j].is_zero() {
                        continue;
                    }
                    if let Some(p) = self.mul_exact(&sp.basis_vector(i), &sp.basis_vector(j)) {
                        report.checked += 1;
                        if self.augment(&p).unwrap() != &a[i] * &a[j] {
                            report.failures.push(format!("ε is not multiplicative on {}·{}", sp.name(i), sp.name(j)));
                        }
                    }
                }
                if let Some(dv) = self.d_exact_of(&sp.basis_vector(i)) {
                    if !self.augment(&dv).unwrap().is_zero() {
                        report.failures.push(format!("ε(d {}) ≠ 0", sp.name(i)));
                    }
                }
            }
        }
        report
    }

    /// d(ab) − (da)b − (−1)^{|a|} a(db), or `None` when truncation hides some term.
    pub fn leibniz_defect(&self, i: usize, j: usize) -> Option<Vector> {
        let sp = self.space();
        let (a, b) = (sp.basis_vector(i), sp.basis_vector(j));
        let ab = self.mul_exact(&a, &b)?;
        let mut lhs = self.d_exact_of(&ab)?;
        let da = self.d_exact_of(&a)?;
        let db = self.d_exact_of(&b)?;
        lhs.sub(&self.mul_exact(&da, &b)?);
        lhs.add_scaled(&self.mul_exact(&a, &db)?, &self.field().sign(sp.degree(i) + 1));
        Some(lhs)
    }

    /// Whether D(ab) = D(a)b + (−1)^{n|a|} a D(b) on every exactly computable pair.
    pub fn derivation_failures(&self, dmap: &GradedMap) -> Vec<(usize, usize)> {
        let sp = self.space();
        let n = dmap.degree;
        let mut bad = Vec::new();
        let exact = |v: &Vector| self.truncation.is_none() || self.is_interior(v, n);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let (a, b) = (sp.basis_vector(i), sp.basis_vector(j));
                let Some(ab) = self.mul_exact(&a, &b) else { continue };
                let (da, db) = (dmap.apply(&a), dmap.apply(&b));
                let (Some(x), Some(y)) = (self.mul_exact(&da, &b), self.mul_exact(&a, &db)) else { continue };
                if !exact(&ab) || !exact(&a) || !exact(&b) {
                    continue;
                }
                let mut defect = dmap.apply(&ab);
                defect.sub(&x);
                defect.add_scaled(&y, &self.field().sign(n * sp.degree(i) + 1));
                if !defect.is_zero() {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// Elements whose image under a weight-raising map of degree `n` stays inside the carrier.
    fn is_interior(&self, v: &Vector, n: i64) -> bool {
        let (Some(t), Some(w)) = (self.truncation, &self.weights) else { return true };
        v.keys().all(|k| w[*k] < t.weight_cap && t.contains(self.space().degree(*k) + n))
    }

    pub fn weight(&self, i: usize) -> Option<usize> {
        self.weights.as_ref().map(|w| w[i])
    }
}

#[derive(Clone, Debug, Default)]
pub struct AlgebraReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The free algebra T(letters) with the derivation extending `d_letters`, truncated to
/// word length ≤ cap inside the degree window. `d_letters[l]` is a polynomial in the letters.
pub fn free_algebra(letters: Space, d_letters: &[Poly], window: Truncation) -> Result<(DgAlgebra, WordBasis)> {
    let wb = WordBasis::new(letters.clone(), window, "*")?;
    let field = letters.field();
    let sp = wb.space.clone();
    let mut d_exact = vec![true; wb.dim()];
    let cols: Vec<Vector> = (0..wb.dim())
        .map(|i| {
            let p = extend_derivation_on_word(&letters, d_letters, -1, wb.word(i));
            let (v, ok) = wb.embed(&p);
            d_exact[i] = ok;
            v
        })
        .collect();
    let d = GradedMap::new(sp.clone(), sp.clone(), -1, cols)?;
    let complex = DgSpace::new(d)?.with_flags(d_exact, wb.incomplete().clone());
    let table: Vec<((usize, usize), Vector)> = (0..wb.dim())
        .into_par_iter()
        .flat_map_iter(|i| {
            let wb = &wb;
            (0..wb.dim()).filter_map(move |j| {
                let mut w = wb.word(i).clone();
                w.extend_from_slice(wb.word(j));
                wb.index_of(&w).map(|k| ((i, j), Vector::term(k, field.one())))
            })
        })
        .collect();
    let unit = wb.empty().map(|k| Vector::term(k, field.one()));
    let aug = (0..wb.dim()).map(|i| if wb.word(i).is_empty() { field.one() } else { field.zero() }).collect();
    let weights = (0..wb.dim()).map(|i| wb.weight(i)).collect();
    let alg = DgAlgebra::from_table(complex, table, unit, Some(aug))?.with_weights(weights, Some(window));
    Ok((alg, wb))
}

/// T(X) with the differential induced by d_X.
pub fn tensor_algebra(x: &DgSpace, window: Truncation) -> Result<(DgAlgebra, WordBasis)> {
    let d_letters: Vec<Poly> = (0..x.space.dim()).map(|i| x.d.column(i).map_keys(|k| Some(vec![*k]))).collect();
    free_algebra(x.space.clone(), &d_letters, window)
}

/// The unique derivation of degree `n` on T(letters) restricting to φ on letters, as a map on
/// the word carrier. Columns whose image leaves the carrier are reported in the second value.
pub fn extend_derivation(wb: &WordBasis, phi: &[Poly], n: i64) -> (GradedMap, Vec<bool>) {
    let mut exact = vec![true; wb.dim()];
    let cols: Vec<Vector> = (0..wb.dim())
        .map(|i| {
            let p = extend_derivation_on_word(&wb.letters, phi, n, wb.word(i));
            let (v, ok) = wb.embed(&p);
            exact[i] = ok;
            v
        })
        .collect();
    (GradedMap::from_fn(wb.space.clone(), wb.space.clone(), n, |i| cols[i].clone()), exact)
}

/// Multiplication in A⊗B: (a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb'.
pub fn tensor_product_mul(a: &DgAlgebra, b: &DgAlgebra, x: &Tensor2, y: &Tensor2) -> Tensor2 {
    let field = a.field();
    let mut out = Tensor2::zero();
    for ((i, j), c) in x.iter() {
        for ((k, l), e) in y.iter() {
            let s = field.sign(b.space().degree(*j) * a.space().degree(*k));
            let aa = a.mul_basis(*i, *k);
            let bb = b.mul_basis(*j, *l);
            let coef = &(c * e) * &s;
            for (p, u) in aa.iter() {
                for (q, v) in bb.iter() {
                    out.add_term((*p, *q), &(u * v) * &coef);
                }
            }
        }
    }
    out
}

/// A⊗B with product (a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb', unit 1⊗1 and d⊗1 + 1⊗d.
pub fn algebra_tensor(a: &DgAlgebra, b: &DgAlgebra, window: Truncation) -> Result<(DgAlgebra, TensorSpace)> {
    let (dg, ts) = crate::complex::dg_tensor(&a.complex, &b.complex, window, WindowMode::Truncate)?;
    let n = ts.space.dim();
    let mut table = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let (x, y) = (ts.pair(p), ts.pair(q));
            let prod = tensor_product_mul(a, b, &Tensor2::term(x, a.field().one()), &Tensor2::term(y, a.field().one()));
            let (v, _) = ts.embed(&prod);
            if !v.is_zero() {
                table.push(((p, q), v));
            }
        }
    }
    let unit = match (&a.unit, &b.unit) {
        (Some(u), Some(v)) => Some(ts.embed(&crate::lincomb::tensor2(u, v)).0),
        _ => None,
    };
    let aug = match (&a.augmentation, &b.augmentation) {
        (Some(x), Some(y)) => Some((0..n).map(|p| &x[ts.pair(p).0] * &y[ts.pair(p).1]).collect()),
        _ => None,
    };
    let mut alg = DgAlgebra::from_table(dg, table, unit, aug)?;
    if a.truncation.is_some() || b.truncation.is_some() {
        alg.truncation = Some(window);
    }
    Ok((alg, ts))
}

/// Aᵒ with aᵒbᵒ = (−1)^{|a||b|}(ba)ᵒ, on the same basis.
pub fn opposite(a: &DgAlgebra) -> DgAlgebra {
    let sp = a.space();
    let table = a.mult.iter().map(|((i, j), v)| ((*j, *i), v.scaled(&a.field().sign(sp.degree(*i) * sp.degree(*j)))));
    let mut op = DgAlgebra::from_table(a.complex.clone(), table.collect::<Vec<_>>(), a.unit.clone(), a.augmentation.clone())
        .expect("opposite keeps degrees");
    op.weights = a.weights.clone();
    op.truncation = a.truncation;
    op
}

/// Ω_A realized as ker(m: A⊗A → A), with the universal derivation d(x) = 1⊗x − x⊗1.
#[derive(Clone, Debug)]
pub struct Omega {
    pub tensor: TensorSpace,
    /// Basis of the kernel, in coordinates of `tensor`.
    pub basis: Vec<Vector>,
    pub space: Space,
    /// d: A → Ω_A, as coordinates in `basis`.
    pub d: GradedMap,
    /// Weight of each basis element (0 when the algebra carries no weights).
    pub weights: Vec<usize>,
    ech: linalg::Echelon,
}

pub fn omega_bimodule(a: &DgAlgebra) -> Result<Omega> {
    let unit = a.unit_vector()?;
    let window = a.space().window();
    let wide = Truncation::new(2 * window.degree_min, 2 * window.degree_max, window.weight_cap)?;
    let ts = tensor_space(a.space(), a.space(), wide, WindowMode::Truncate)?;
    // keep only pairs whose product is exactly known
    let usable: Vec<usize> = (0..ts.space.dim()).filter(|p| {
        let (i, j) = ts.pair(*p);
        a.product_exact(i, j)
    }).collect();
    let field = a.field();
    let mut basis = Vec::new();
    // group by (degree, weight) so kernel vectors are weight-homogeneous
    let mut by_degree: std::collections::BTreeMap<(i64, usize), Vec<usize>> = Default::default();
    for p in &usable {
        let (i, j) = ts.pair(*p);
        let w = a.weight(i).unwrap_or(0) + a.weight(j).unwrap_or(0);
        by_degree.entry((ts.space.degree(*p), w)).or_default().push(*p);
    }
    for ps in by_degree.values() {
        let cols: Vec<Vector> = ps.iter().map(|p| {
            let (i, j) = ts.pair(*p);
            a.mul_basis(i, j)
        }).collect();
        for k in linalg::kernel(&cols, a.dim(), field) {
            basis.push(k.map_keys(|c| Some(ps[*c])));
        }
    }
    basis.sort_by_key(|v| ts.space.degree(*v.first().unwrap().0));
    let space = Arc::new(GradedSpace::new(
        field,
        ts.space.window(),
        basis.iter().enumerate().map(|(k, v)| (format!("w{k}"), ts.space.degree(*v.first().unwrap().0))),
    )?);
    // coordinates: echelon over the kernel basis with tags
    let mut ech = linalg::Echelon::new();
    let tag = ts.space.dim();
    for (k, v) in basis.iter().enumerate() {
        let mut aug = v.clone();
        aug.add_term(tag + k, field.one());
        ech.insert(&aug);
    }
    let weights = basis
        .iter()
        .map(|v| {
            let (i, j) = ts.pair(*v.first().unwrap().0);
            a.weight(i).unwrap_or(0) + a.weight(j).unwrap_or(0)
        })
        .collect();
    let mut om = Omega { tensor: ts, basis, space: space.clone(), d: GradedMap::zero(a.space().clone(), space, 0), weights, ech };
    let dcols: Vec<Vector> = (0..a.dim())
        .map(|x| {
            let e = a.space().basis_vector(x);
            let mut t = crate::lincomb::tensor2(&unit, &e);
            t.sub(&crate::lincomb::tensor2(&e, &unit));
            let (v, _) = om.tensor.embed(&t);
            om.coordinates(&v).unwrap_or_default()
        })
        .collect();
    om.d = GradedMap::new(a.space().clone(), om.space.clone(), 0, dcols)?;
    Ok(om)
}

impl Omega {
    /// Express an element of ker(m) in the kernel basis.
    pub fn coordinates(&self, v: &Vector) -> Option<Vector> {
        let tag = self.tensor.space.dim();
        let r = self.ech.reduce(v);
        if r.keys().any(|k| *k < tag) {
            return None;
        }
        Some(r.map_keys(|k| Some(*k - tag)).neg())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// x·ω_k in Ω coordinates, or `None` if it leaves the computed range.
    pub fn left(&self, a: &DgAlgebra, x: usize, k: usize) -> Option<Vector> {
        let mut t = Tensor2::zero();
        for (p, c) in self.basis[k].iter() {
            let (i, j) = self.tensor.pair(*p);
            if !a.product_exact(x, i) {
                return None;
            }
            for (m, e) in a.mul_basis(x, i).iter() {
                t.add_term((*m, j), c * e);
            }
        }
        let (v, ok) = self.tensor.embed(&t);
        if !ok {
            return None;
        }
        self.coordinates(&v)
    }

    /// ω_k·y in Ω coordinates.
    pub fn right(&self, a: &DgAlgebra, k: usize, y: usize) -> Option<Vector> {
        let mut t = Tensor2::zero();
        for (p, c) in self.basis[k].iter() {
            let (i, j) = self.tensor.pair(*p);
            if !a.product_exact(j, y) {
                return None;
            }
            for (m, e) in a.mul_basis(j, y).iter() {
                t.add_term((i, *m), c * e);
            }
        }
        let (v, ok) = self.tensor.embed(&t);
        if !ok {
            return None;
        }
        self.coordinates(&v)
    }

    /// Bimodule map Ω_A → A, x⊗y ↦ (−1)^{n|x|} x D(y), factoring a derivation D of degree n.
    pub fn factor(&self, a: &DgAlgebra, dmap: &GradedMap) -> GradedMap {
        let field = a.field();
        let n = dmap.degree;
        let cols: Vec<Vector> = self
            .basis
            .iter()
            .map(|v| {
                let mut out = Vector::zero();
                for (p, c) in v.iter() {
                    let (x, y) = self.tensor.pair(*p);
                    let s = field.sign(n * a.space().degree(x));
                    out.add_scaled(&a.mul(&a.space().basis_vector(x), dmap.column(y)), &(c * &s));
                }
                out
            })
            .collect();
        GradedMap::from_fn(self.space.clone(), a.space().clone(), n, |k| cols[k].clone())
    }
}
