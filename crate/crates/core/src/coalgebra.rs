//! Differential graded coalgebras: tables, tensor and coshuffle coalgebras, radicals,
//! primitives, coderivations, cofree maps and finite duals.

use std::cell::Cell;
use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::DgAlgebra;
use crate::complex::{check_square_zero, DgSpace};
use crate::error::{Error, Result};
use crate::graded::{dual_name, graded_dual, GradedMap, GradedSpace, Space, TensorSpace, Truncation, WindowMode};
use crate::linalg::{self, Echelon};
use crate::lincomb::{LinComb, Poly, Tensor2, Vector};
use crate::scalar::{Field, Scalar};
use crate::words::{coextend_coderivation_on_word, coshuffle, deconcatenate, quasi_shuffle, WordBasis};

/// Elements of C^{⊗n}, keyed by index words.
pub type MultiTensor = LinComb<Vec<usize>>;

#[derive(Clone, Debug)]
pub struct DgCoalgebra {
    pub complex: DgSpace,
    comult: Vec<Tensor2>,
    comult_exact: Vec<bool>,
    pub counit: Option<Vec<Scalar>>,
    pub atom: Option<usize>,
    pub weights: Option<Vec<usize>>,
}

impl DgCoalgebra {
    pub fn from_table(d: DgSpace, comult: Vec<Tensor2>, counit: Option<Vec<Scalar>>, atom: Option<usize>) -> Result<Self> {
        let sp = d.space.clone();
        if comult.len() != sp.dim() {
            return Err(Error::OutOfRange("coproduct table length".into()));
        }
        for (i, t) in comult.iter().enumerate() {
            for (a, b) in t.keys() {
                if *a >= sp.dim() || *b >= sp.dim() {
                    return Err(Error::OutOfRange(format!("Δ({}) mentions index out of range", sp.name(i))));
                }
                if sp.degree(*a) + sp.degree(*b) != sp.degree(i) {
                    return Err(Error::DegreeMismatch(format!(
                        "Δ({}) has a term {}|{} of the wrong degree",
                        sp.name(i),
                        sp.name(*a),
                        sp.name(*b)
                    )));
                }
            }
        }
        if let Some(e) = &counit {
            if e.len() != sp.dim() {
                return Err(Error::OutOfRange("counit length".into()));
            }
            if let Some(i) = (0..sp.dim()).find(|i| sp.degree(*i) != 0 && !e[*i].is_zero()) {
                return Err(Error::DegreeMismatch(format!("counit nonzero on {} of degree ≠ 0", sp.name(i))));
            }
        }
        if let Some(a) = atom {
            if a >= sp.dim() {
                return Err(Error::NotAnAtom(format!("index {a} out of range")));
            }
        }
        let n = sp.dim();
        Ok(DgCoalgebra { complex: d, comult, comult_exact: vec![true; n], counit, atom, weights: None })
    }

    pub fn with_exactness(mut self, exact: Vec<bool>) -> Self {
        assert_eq!(exact.len(), self.dim());
        self.comult_exact = exact;
        self
    }

    pub fn with_weights(mut self, weights: Vec<usize>) -> Self {
        assert_eq!(weights.len(), self.dim());
        self.weights = Some(weights);
        self
    }

    pub fn space(&self) -> &Space {
        &self.complex.space
    }

    pub fn field(&self) -> Field {
        self.space().field()
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }

    pub fn d(&self) -> &GradedMap {
        &self.complex.d
    }

    pub fn delta(&self, i: usize) -> &Tensor2 {
        &self.comult[i]
    }

    pub fn delta_exact(&self, i: usize) -> bool {
        self.comult_exact[i]
    }

    pub fn delta_of(&self, v: &Vector) -> Tensor2 {
        let mut out = Tensor2::zero();
        for (i, c) in v.iter() {
            out.add_scaled(&self.comult[*i], c);
        }
        out
    }

    pub fn counit_vec(&self) -> Result<&Vec<Scalar>> {
        self.counit.as_ref().ok_or_else(|| Error::MissingStructure("coalgebra has no counit".into()))
    }

    pub fn counit_of(&self, v: &Vector) -> Result<Scalar> {
        let e = self.counit_vec()?;
        let mut s = self.field().zero();
        for (i, c) in v.iter() {
            s += &(c * &e[*i]);
        }
        Ok(s)
    }

    /// The atom, after checking Δe = e⊗e, ε(e) = 1 and de = 0.
    pub fn checked_atom(&self) -> Result<usize> {
        let e = self.atom.ok_or_else(|| Error::NotAnAtom("no atom given".into()))?;
        let one = self.field().one();
        if self.comult[e] != Tensor2::term((e, e), one.clone()) {
            return Err(Error::NotAnAtom(format!("Δ({}) ≠ {0}|{0}", self.space().name(e))));
        }
        if !self.counit_vec()?[e].is_one() {
            return Err(Error::NotAnAtom(format!("ε({}) ≠ 1", self.space().name(e))));
        }
        if !self.d().column(e).is_zero() {
            return Err(Error::NotAnAtom(format!("d({}) ≠ 0", self.space().name(e))));
        }
        Ok(e)
    }

    /// x̄ = x − ε(x)e.
    pub fn bar(&self, v: &Vector) -> Result<Vector> {
        let e = self.atom.ok_or_else(|| Error::NotAnAtom("no atom given".into()))?;
        let mut out = v.clone();
        out.add_term(e, self.counit_of(v)?.neg());
        Ok(out)
    }

    /// Δ̄(x̄) = Δx̄ − e⊗x̄ − x̄⊗e.
    pub fn reduced_delta(&self, v: &Vector) -> Result<Tensor2> {
        let e = self.atom.ok_or_else(|| Error::NotAnAtom("no atom given".into()))?;
        let xb = self.bar(v)?;
        let mut out = self.delta_of(&xb);
        let ev = Vector::term(e, self.field().one());
        out.sub(&crate::lincomb::tensor2(&ev, &xb));
        out.sub(&crate::lincomb::tensor2(&xb, &ev));
        Ok(out)
    }

    /// Δ̄ applied to the element of C_- with basis coordinates `v` (assumed in C_-).
    fn reduced_delta_raw(&self, v: &Vector, e: usize) -> Tensor2 {
        let mut out = self.delta_of(v);
        let ev = Vector::term(e, self.field().one());
        out.sub(&crate::lincomb::tensor2(&ev, v));
        out.sub(&crate::lincomb::tensor2(v, &ev));
        out
    }

    /// Δ̄^{(n)}(x̄) ∈ C_-^{⊗n+1}, iterating on the last factor.
    pub fn iterated_reduced(&self, v: &Vector, n: usize) -> Result<MultiTensor> {
        let e = self.atom.ok_or_else(|| Error::NotAnAtom("no atom given".into()))?;
        let xb = self.bar(v)?;
        let mut cur: MultiTensor = xb.map_keys(|k| Some(vec![*k]));
        for _ in 0..n {
            let mut next = MultiTensor::zero();
            for (w, c) in cur.iter() {
                let last = *w.last().unwrap();
                let split = self.reduced_delta_raw(&Vector::term(last, self.field().one()), e);
                for ((a, b), s) in split.iter() {
                    let mut nw = w[..w.len() - 1].to_vec();
                    nw.push(*a);
                    nw.push(*b);
                    next.add_term(nw, c * s);
                }
            }
            cur = next;
            if cur.is_zero() {
                break;
            }
        }
        Ok(cur)
    }

    /// Coassociativity, counit laws, co-Leibniz, atom conditions and d² = 0 where exact.
    pub fn verify(&self) -> CoalgebraReport {
        let sp = self.space().clone();
        let field = self.field();
        let n = self.dim();
        let rows: Vec<(usize, Vec<String>)> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut checked = 0;
                let mut bad = Vec::new();
                let d1 = &self.comult[i];
                let inner_ok = self.comult_exact[i]
                    && d1.keys().all(|(a, b)| self.comult_exact[*a] && self.comult_exact[*b]);
                if inner_ok {
                    checked += 1;
                    let mut left = LinComb::<(usize, usize, usize)>::zero();
                    let mut right = LinComb::<(usize, usize, usize)>::zero();
                    for ((a, b), c) in d1.iter() {
                        for ((x, y), e) in self.comult[*a].iter() {
                            left.add_term((*x, *y, *b), c * e);
                        }
                        for ((x, y), e) in self.comult[*b].iter() {
                            right.add_term((*a, *x, *y), c * e);
                        }
                    }
                    if left != right {
                        bad.push(format!("coassociativity fails on {}", sp.name(i)));
                    }
                }
                if let (Some(eps), true) = (&self.counit, self.comult_exact[i]) {
                    checked += 1;
                    let mut l = Vector::zero();
                    let mut r = Vector::zero();
                    for ((a, b), c) in d1.iter() {
                        l.add_term(*b, c * &eps[*a]);
                        r.add_term(*a, c * &eps[*b]);
                    }
                    let want = sp.basis_vector(i);
                    if l != want || r != want {
                        bad.push(format!("counit law fails on {}", sp.name(i)));
                    }
                }
                let dx = self.d().column(i);
                let leib_ok = self.comult_exact[i]
                    && self.complex.d_exact[i]
                    && dx.keys().all(|k| self.comult_exact[*k])
                    && d1.keys().all(|(a, b)| self.complex.d_exact[*a] && self.complex.d_exact[*b]);
                if leib_ok {
                    checked += 1;
                    let lhs = self.delta_of(dx);
                    let mut rhs = Tensor2::zero();
                    for ((a, b), c) in d1.iter() {
                        for (x, e) in self.d().column(*a).iter() {
                            rhs.add_term((*x, *b), c * e);
                        }
                        let s = field.sign(sp.degree(*a));
                        for (y, e) in self.d().column(*b).iter() {
                            rhs.add_term((*a, *y), &(c * e) * &s);
                        }
                    }
                    if lhs != rhs {
                        bad.push(format!("co-Leibniz fails on {}", sp.name(i)));
                    }
                }
                (checked, bad)
            })
            .collect();
        let mut report = CoalgebraReport::default();
        for (c, b) in rows {
            report.checked += c;
            report.failures.extend(b);
        }
        if self.atom.is_some() {
            if let Err(e) = self.checked_atom() {
                report.failures.push(e.to_string());
            }
        }
        let sq = check_square_zero(&self.complex);
        report.checked += sq.checked;
        for (i, v) in sq.failures {
            report.failures.push(format!("d² {} = {}", sp.name(i), sp.show(&v)));
        }
        if self.counit.is_some() {
            for i in 0..n {
                if self.complex.d_exact[i] && !self.counit_of(self.d().column(i)).map(|s| s.is_zero()).unwrap_or(true) {
                    report.failures.push(format!("ε(d {}) ≠ 0", sp.name(i)));
                }
            }
        }
        report
    }

    /// Basis elements whose reduced coproduct witnesses non-cocommutativity.
    pub fn cocommutativity_witness(&self) -> Option<usize> {
        let sp = self.space();
        (0..self.dim()).find(|i| {
            let t = &self.comult[*i];
            let mut swapped = Tensor2::zero();
            for ((a, b), c) in t.iter() {
                swapped.add_term((*b, *a), c * &self.field().sign(sp.degree(*a) * sp.degree(*b)));
            }
            swapped != *t
        })
    }

    /// ΔD(x) − (D⊗1 + 1⊗D)Δ(x) on every exact basis element; returns the failing indices.
    pub fn coderivation_failures(&self, dmap: &GradedMap) -> Vec<usize> {
        let sp = self.space();
        let n = dmap.degree;
        (0..self.dim())
            .filter(|i| {
                let d1 = &self.comult[*i];
                let img = dmap.column(*i);
                if !self.comult_exact[*i] || !img.keys().all(|k| self.comult_exact[*k]) {
                    return false;
                }
                let lhs = self.delta_of(img);
                let mut rhs = Tensor2::zero();
                for ((a, b), c) in d1.iter() {
                    for (x, e) in dmap.column(*a).iter() {
                        rhs.add_term((*x, *b), c * e);
                    }
                    let s = self.field().sign(n * sp.degree(*a));
                    for (y, e) in dmap.column(*b).iter() {
                        rhs.add_term((*a, *y), &(c * e) * &s);
                    }
                }
                lhs != rhs
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct CoalgebraReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CoalgebraReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The odd binomial coefficient: Pascal's rule, forced to 0 when n is even and k odd.
pub fn odd_binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 || k < 0 || k > n {
        return Err(Error::OutOfRange(format!("odd binomial ⟨{n} choose {k}⟩")));
    }
    let n = n as usize;
    let mut row = vec![BigInt::from(1)];
    for m in 1..=n {
        let mut next = vec![BigInt::from(0); m + 1];
        for j in 0..=m {
            if m % 2 == 0 && j % 2 == 1 {
                continue;
            }
            let mut v = BigInt::from(0);
            if j >= 1 {
                v += &row[j - 1];
            }
            if j < m {
                v += &row[j];
            }
            next[j] = v;
        }
        row = next;
    }
    Ok(row[k as usize].clone())
}

/// T^c(letters) with deconcatenation and the coderivation coextending φ (given on words).
pub fn cofree_with_coderivation(
    letters: Space,
    window: Truncation,
    phi: &(dyn Fn(&[usize]) -> Option<LinComb<usize>> + Sync),
) -> Result<(DgCoalgebra, WordBasis)> {
    let wb = WordBasis::new(letters.clone(), window, "|")?;
    word_coalgebra(wb, Splitting::Deconcatenation, |wb, w| {
        let exact = Cell::new(true);
        let f = |u: &[usize]| match phi(u) {
            Some(v) => v,
            None => {
                exact.set(false);
                LinComb::zero()
            }
        };
        let p = coextend_coderivation_on_word(&wb.letters, &f, -1, w);
        (p, exact.get())
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splitting {
    Deconcatenation,
    Coshuffle,
}

/// Word coalgebra with the chosen coproduct and a differential given on words.
pub fn word_coalgebra(
    wb: WordBasis,
    split: Splitting,
    d: impl Fn(&WordBasis, &[usize]) -> (Poly, bool) + Sync,
) -> Result<(DgCoalgebra, WordBasis)> {
    let field = wb.field();
    let sp = wb.space.clone();
    let n = wb.dim();
    let comult: Vec<(Tensor2, bool)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let w = wb.word(i);
            let mut t = Tensor2::zero();
            let mut exact = true;
            let terms: Vec<(Vec<usize>, Vec<usize>, Scalar)> = match split {
                Splitting::Deconcatenation => deconcatenate(w).into_iter().map(|(a, b)| (a, b, field.one())).collect(),
                Splitting::Coshuffle => coshuffle(&wb.letters, w),
            };
            for (a, b, s) in terms {
                match (wb.index_of(&a), wb.index_of(&b)) {
                    (Some(x), Some(y)) => t.add_term((x, y), s),
                    _ => exact = false,
                }
            }
            (t, exact)
        })
        .collect();
    let dcols: Vec<(Vector, bool)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let (p, ok) = d(&wb, wb.word(i));
            let (v, ok2) = wb.embed(&p);
            (v, ok && ok2)
        })
        .collect();
    let dmap = GradedMap::new(sp.clone(), sp.clone(), -1, dcols.iter().map(|x| x.0.clone()).collect())?;
    let complex = DgSpace::new(dmap)?.with_flags(dcols.iter().map(|x| x.1).collect(), wb.incomplete().clone());
    let counit = (0..n).map(|i| if wb.word(i).is_empty() { field.one() } else { field.zero() }).collect();
    let atom = wb.empty();
    let weights = (0..n).map(|i| wb.weight(i)).collect();
    let (comult, exact): (Vec<Tensor2>, Vec<bool>) = comult.into_iter().unzip();
    let c = DgCoalgebra::from_table(complex, comult, Some(counit), atom)?.with_exactness(exact).with_weights(weights);
    Ok((c, wb))
}

fn linear_on_letters(x: &DgSpace) -> impl Fn(&WordBasis, &[usize]) -> (Poly, bool) + Sync + '_ {
    move |wb: &WordBasis, w: &[usize]| {
        let phi: Vec<Poly> = (0..x.space.dim()).map(|i| x.d.column(i).map_keys(|k| Some(vec![*k]))).collect();
        (crate::words::extend_derivation_on_word(&wb.letters, &phi, -1, w), true)
    }
}

/// T^c(X): deconcatenation, counit onto length 0, atom the empty word.
pub fn tensor_coalgebra(x: &DgSpace, window: Truncation) -> Result<(DgCoalgebra, WordBasis)> {
    let wb = WordBasis::new(x.space.clone(), window, "|")?;
    word_coalgebra(wb, Splitting::Deconcatenation, linear_on_letters(x))
}

/// T(X) with the coshuffle coproduct (letters primitive).
pub fn coshuffle_coalgebra(x: &DgSpace, window: Truncation) -> Result<(DgCoalgebra, WordBasis)> {
    let wb = WordBasis::new(x.space.clone(), window, "*")?;
    word_coalgebra(wb, Splitting::Coshuffle, linear_on_letters(x))
}

/// Report on window conilpotency.
#[derive(Clone, Debug)]
pub struct Radical {
    /// Basis of the radical (contains the atom).
    pub basis: Vec<Vector>,
    /// Δ̄ iteration depth used.
    pub depth: usize,
    /// True when the carrier is word graded, so vanishing at depth cap+1 is a proof.
    pub proven: bool,
    pub coalgebra: DgCoalgebra,
}

impl Radical {
    pub fn is_everything(&self, c: &DgCoalgebra) -> bool {
        self.basis.len() == c.dim()
    }
}

/// Elements x with Δ̄^{(N)}(x̄) = 0, N = weight cap + 1 on word carriers and window width + 1 otherwise.
pub fn radical(c: &DgCoalgebra) -> Result<Radical> {
    let e = c.checked_atom()?;
    let w = c.space().window();
    let (depth, proven) = match &c.weights {
        Some(_) => (w.weight_cap + 1, true),
        None => ((w.degree_max - w.degree_min + 2) as usize, false),
    };
    let field = c.field();
    let sp = c.space();
    // index C_- by basis elements other than e; coordinates of Δ̄^{(N)} in multi-tensors
    let others: Vec<usize> = (0..c.dim()).filter(|i| *i != e).collect();
    let images: Vec<MultiTensor> = others
        .par_iter()
        .map(|i| c.iterated_reduced(&sp.basis_vector(*i), depth))
        .collect::<Result<_>>()?;
    let mut keys: Vec<Vec<usize>> = images.iter().flat_map(|m| m.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let key_index: std::collections::HashMap<Vec<usize>, usize> = keys.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
    let cols: Vec<Vector> = images.iter().map(|m| m.map_keys(|w| Some(key_index[w]))).collect();
    let ker = linalg::kernel(&cols, keys.len(), field);
    let mut basis = vec![sp.basis_vector(e)];
    for k in ker {
        let v: Vector = k.map_keys(|j| Some(others[*j]));
        basis.push(c.bar(&v)?);
    }
    let coalgebra = subcoalgebra(c, &basis)?;
    Ok(Radical { basis, depth, proven, coalgebra })
}

/// ker Δ̄ inside C_- for the atom of C.
pub fn primitives(c: &DgCoalgebra) -> Result<Vec<Vector>> {
    let e = c.checked_atom()?;
    let sp = c.space();
    let others: Vec<usize> = (0..c.dim()).filter(|i| *i != e).collect();
    let bars: Vec<Vector> = others.iter().map(|i| c.bar(&sp.basis_vector(*i))).collect::<Result<_>>()?;
    let n = c.dim();
    let cols: Vec<Vector> = bars.iter().map(|b| c.reduced_delta_raw(b, e).map_keys(|(a, b)| Some(a * n + b))).collect();
    let ker = linalg::kernel(&cols, n * n, c.field());
    Ok(ker
        .into_iter()
        .map(|k| {
            let mut v = Vector::zero();
            for (j, s) in k.iter() {
                v.add_scaled(&bars[*j], s);
            }
            v
        })
        .collect())
}

/// The subcoalgebra spanned by `basis` (which must be closed under Δ and d).
pub fn subcoalgebra(c: &DgCoalgebra, basis: &[Vector]) -> Result<DgCoalgebra> {
    let field = c.field();
    let sp = c.space();
    let tag = c.dim();
    let mut ech = Echelon::new();
    for (k, v) in basis.iter().enumerate() {
        let mut aug = v.clone();
        aug.add_term(tag + k, field.one());
        ech.insert(&aug);
    }
    let coords = |v: &Vector| -> Result<Vector> {
        let r = ech.reduce(v);
        if r.keys().any(|k| *k < tag) {
            return Err(Error::OutOfRange(format!("{} is not in the span", sp.show(v))));
        }
        Ok(r.map_keys(|k| Some(*k - tag)).neg())
    };
    let names: Vec<(String, i64)> = basis
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let deg = sp.degree_of(v).unwrap_or(0);
            match (v.len(), v.first()) {
                (1, Some((i, s))) if s.is_one() => (sp.name(*i).to_string(), deg),
                _ => (format!("r{k}"), deg),
            }
        })
        .collect();
    // GradedSpace reorders by degree
    let sub = Arc::new(GradedSpace::new(field, sp.window(), names.clone())?);
    let pos: Vec<usize> = names.iter().map(|(n, _)| sub.index_of(n).unwrap()).collect();
    let m = basis.len();
    let mut dcols = vec![Vector::zero(); m];
    let mut comult = vec![Tensor2::zero(); m];
    let mut exact = vec![true; m];
    let mut d_exact = vec![true; m];
    for (k, v) in basis.iter().enumerate() {
        let dv = coords(&c.d().apply(v))?;
        dcols[pos[k]] = dv.map_keys(|j| Some(pos[*j]));
        let t = c.delta_of(v);
        // expand Δv in the subbasis: first on the left factor, then on the right
        let mut by_right: std::collections::BTreeMap<usize, Vector> = Default::default();
        for ((a, b), s) in t.iter() {
            by_right.entry(*b).or_default().add_term(*a, s.clone());
        }
        let mut half = LinComb::<(usize, usize)>::zero();
        for (b, left) in by_right {
            for (i, s) in coords(&left)?.iter() {
                half.add_term((i.to_owned(), b), s.clone());
            }
        }
        let mut by_left: std::collections::BTreeMap<usize, Vector> = Default::default();
        for ((i, b), s) in half.iter() {
            by_left.entry(*i).or_default().add_term(*b, s.clone());
        }
        let mut full = Tensor2::zero();
        for (i, right) in by_left {
            for (j, s) in coords(&right)?.iter() {
                full.add_term((pos[i], pos[*j]), s.clone());
            }
        }
        comult[pos[k]] = full;
        exact[pos[k]] = v.keys().all(|i| c.delta_exact(*i));
        d_exact[pos[k]] = v.keys().all(|i| c.complex.d_exact[*i]);
    }
    let counit = match &c.counit {
        Some(_) => {
            let mut e = vec![field.zero(); m];
            for (k, v) in basis.iter().enumerate() {
                e[pos[k]] = c.counit_of(v)?;
            }
            Some(e)
        }
        None => None,
    };
    let atom = c.atom.and_then(|a| basis.iter().position(|v| *v == sp.basis_vector(a))).map(|k| pos[k]);
    let dmap = GradedMap::new(sub.clone(), sub, -1, dcols)?;
    let complex = DgSpace::new(dmap)?.with_flags(d_exact, c.complex.incomplete.clone());
    Ok(DgCoalgebra::from_table(complex, comult, counit, atom)?.with_exactness(exact))
}

/// The coderivation of degree n on T^c(X) with corestriction φ (on words, into letters).
pub fn coextend_coderivation(wb: &WordBasis, phi: &dyn Fn(&[usize]) -> LinComb<usize>, n: i64) -> (GradedMap, Vec<bool>) {
    let mut exact = vec![true; wb.dim()];
    let cols: Vec<Vector> = (0..wb.dim())
        .map(|i| {
            let p = coextend_coderivation_on_word(&wb.letters, phi, n, wb.word(i));
            let (v, ok) = wb.embed(&p);
            exact[i] = ok;
            v
        })
        .collect();
    (GradedMap::from_fn(wb.space.clone(), wb.space.clone(), n, |i| cols[i].clone()), exact)
}

/// T^c(X) is the cofree conilpotent coalgebra only when X is strictly positive or
/// strictly negative; elsewhere no formula is available.
pub fn check_cofree_regime(x: &GradedSpace) -> Result<()> {
    let degs: BTreeSet<i64> = (0..x.dim()).map(|i| x.degree(i)).collect();
    if degs.contains(&0) {
        return Err(Error::RegimeViolation("cogenerators of degree 0".into()));
    }
    if degs.iter().any(|d| *d > 0) && degs.iter().any(|d| *d < 0) {
        return Err(Error::RegimeViolation("cogenerators of both signs".into()));
    }
    Ok(())
}

/// The coalgebra map g: C → T^c(X) with p∘g = f, g(x) = ε(x)·1 + Σ_{n≥1} f^{⊗n} Δ̄^{(n−1)}(x̄).
/// `f` sends basis elements of C to combinations of letters, has degree 0 and kills the atom.
pub fn coextend_map(c: &DgCoalgebra, f: &dyn Fn(usize) -> Vector, target: &WordBasis) -> Result<(GradedMap, bool)> {
    check_cofree_regime(&target.letters)?;
    coextend_map_conilpotent(c, f, target)
}

/// The same formula without the degree condition: T^c(X) is cofree among conilpotent
/// coalgebras for any X, which is all the bar construction needs.
pub fn coextend_map_conilpotent(c: &DgCoalgebra, f: &dyn Fn(usize) -> Vector, target: &WordBasis) -> Result<(GradedMap, bool)> {
    let rad = radical(c)?;
    if !rad.is_everything(c) {
        return Err(Error::NotConilpotent(format!(
            "radical has dimension {} < {}",
            rad.basis.len(),
            c.dim()
        )));
    }
    let e = c.checked_atom()?;
    if !f(e).is_zero() {
        return Err(Error::MissingStructure("f must vanish on the atom".into()));
    }
    let sp = c.space();
    let mut exact = true;
    let mut cols = Vec::with_capacity(c.dim());
    for i in 0..c.dim() {
        let x = sp.basis_vector(i);
        let mut p = Poly::zero();
        let eps = c.counit_of(&x)?;
        p.add_term(Vec::new(), eps);
        for n in 1..=target.cap {
            let it = c.iterated_reduced(&x, n - 1)?;
            if it.is_zero() {
                break;
            }
            for (w, s) in it.iter() {
                let mut acc: Poly = Poly::term(Vec::new(), s.clone());
                for y in w {
                    let fy = f(*y);
                    let mut next = Poly::zero();
                    for (pre, a) in acc.iter() {
                        for (l, b) in fy.iter() {
                            let mut nw = pre.clone();
                            nw.push(*l);
                            next.add_term(nw, a * b);
                        }
                    }
                    acc = next;
                }
                p.add(&acc);
            }
        }
        let (v, ok) = target.embed(&p);
        exact &= ok || p.keys().all(|w| target.weight_of(w) > target.cap || target.index_of(w).is_some());
        cols.push(v);
    }
    Ok((GradedMap::new(sp.clone(), target.space.clone(), 0, cols)?, exact))
}

/// Whether (g⊗g)Δ = Δg on basis elements of C whose images stay inside the truncation
/// (compares only terms of total weight ≤ cap).
pub fn coalgebra_map_failures(c: &DgCoalgebra, d: &DgCoalgebra, g: &GradedMap) -> Vec<usize> {
    let cap = d.weights.as_ref().map(|_| d.space().window().weight_cap);
    let weight = |k: &(usize, usize)| d.weights.as_ref().map_or(0, |w| w[k.0] + w[k.1]);
    (0..c.dim())
        .filter(|i| {
            let mut lhs = Tensor2::zero();
            for ((a, b), s) in c.delta(*i).iter() {
                lhs.add_scaled(&crate::lincomb::tensor2(g.column(*a), g.column(*b)), s);
            }
            let rhs = d.delta_of(g.column(*i));
            let keep = |k: &(usize, usize)| cap.is_none_or(|cap| weight(k) <= cap);
            c.delta_exact(*i) && lhs.filter(keep) != rhs.filter(keep)
        })
        .collect()
}

/// The (quasi-)shuffle algebra on a word carrier; `m` is the letter product, `None` for shuffles.
pub fn shuffle_algebra(wb: &WordBasis, m: Option<&(dyn Fn(usize, usize) -> LinComb<usize> + Sync)>) -> Result<DgAlgebra> {
    let field = wb.field();
    let n = wb.dim();
    let table: Vec<((usize, usize), Vector)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..n).filter_map(move |j| {
                if wb.weight(i) + wb.weight(j) > wb.cap {
                    return None;
                }
                let mm = m.map(|f| f as &dyn Fn(usize, usize) -> LinComb<usize>);
                let p = quasi_shuffle(&wb.letters, mm, wb.word(i), wb.word(j));
                let (v, _) = wb.embed(&p);
                (!v.is_zero()).then_some(((i, j), v))
            })
        })
        .collect();
    let unit = wb.empty().map(|k| Vector::term(k, field.one()));
    let aug = (0..n).map(|i| if wb.word(i).is_empty() { field.one() } else { field.zero() }).collect();
    let weights = (0..n).map(|i| wb.weight(i)).collect();
    Ok(DgAlgebra::from_table(DgSpace::zero(wb.space.clone()), table, unit, Some(aug))?
        .with_weights(weights, Some(wb.space.window())))
}

/// C⊗D with Δ(c⊗d) = Σ (−1)^{|d1||c2|} (c1⊗d1)⊗(c2⊗d2).
pub fn coalgebra_tensor(c: &DgCoalgebra, d: &DgCoalgebra, window: Truncation) -> Result<(DgCoalgebra, TensorSpace)> {
    let (dg, ts) = crate::complex::dg_tensor(&c.complex, &d.complex, window, WindowMode::Truncate)?;
    let field = c.field();
    let n = ts.space.dim();
    let mut comult = Vec::with_capacity(n);
    let mut exact = Vec::with_capacity(n);
    for k in 0..n {
        let (i, j) = ts.pair(k);
        let mut t = Tensor2::zero();
        let mut ok = c.delta_exact(i) && d.delta_exact(j);
        for ((c1, c2), s) in c.delta(i).iter() {
            for ((d1, d2), u) in d.delta(j).iter() {
                let sg = field.sign(d.space().degree(*d1) * c.space().degree(*c2));
                match (ts.index_of(*c1, *d1), ts.index_of(*c2, *d2)) {
                    (Some(x), Some(y)) => t.add_term((x, y), &(s * u) * &sg),
                    _ => ok = false,
                }
            }
        }
        comult.push(t);
        exact.push(ok);
    }
    let counit = match (&c.counit, &d.counit) {
        (Some(a), Some(b)) => Some((0..n).map(|k| &a[ts.pair(k).0] * &b[ts.pair(k).1]).collect()),
        _ => None,
    };
    let atom = match (c.atom, d.atom) {
        (Some(a), Some(b)) => ts.index_of(a, b),
        _ => None,
    };
    Ok((DgCoalgebra::from_table(dg, comult, counit, atom)?.with_exactness(exact), ts))
}

/// Dual index map: position of x⋆ in the dual space for each basis element x.
fn dual_positions(sp: &GradedSpace, dual: &GradedSpace) -> Vec<usize> {
    (0..sp.dim()).map(|i| dual.index_of(&dual_name(sp.name(i))).expect("dual basis name")).collect()
}

/// d(c⋆) = −(−1)^{|c⋆|} c⋆∘d on dual bases; `pos[i]` is the index of i⋆.
fn dual_differential(x: &DgSpace, dual: &Space, pos: &[usize]) -> Result<(GradedMap, Vec<bool>)> {
    let field = x.space.field();
    let n = x.space.dim();
    let mut cols = vec![Vector::zero(); n];
    for i in 0..n {
        for (c, s) in x.d.column(i).iter() {
            // c⋆∘d has the coefficient of c in dx on x⋆
            let sign = field.sign(x.space.degree(*c) + 1);
            cols[pos[*c]].add_term(pos[i], s * &sign);
        }
    }
    let mut d_exact = vec![true; n];
    // d(c⋆) needs every x with c in dx: exact when all x of degree |c|+1 have exact d
    for c in 0..n {
        let deg = x.space.degree(c) + 1;
        d_exact[pos[c]] = x.space.degree_range(deg).all(|i| x.d_exact[i]) && !x.incomplete.contains(&deg);
    }
    Ok((GradedMap::new(dual.clone(), dual.clone(), -1, cols)?, d_exact))
}

/// A⋆ as a dg-coalgebra: Δ(c⋆) = Σ m^c_{xy} (−1)^{|x||y|} x⋆⊗y⋆, ε(c⋆) = coefficient of c in 1.
/// The atom is 1⋆ when the unit is a basis element and the augmentation is its dual.
pub fn finite_dual(a: &DgAlgebra) -> Result<DgCoalgebra> {
    let sp = a.space();
    let w = sp.window();
    if (w.degree_min..=w.degree_max).all(|n| a.complex.incomplete.contains(&n)) && !a.complex.incomplete.is_empty() {
        return Err(Error::NotGradedFinite("every degree of the window is truncated".into()));
    }
    let field = a.field();
    let dual: Space = Arc::new(graded_dual(sp));
    let pos = dual_positions(sp, &dual);
    let n = sp.dim();
    let mut comult = vec![Tensor2::zero(); n];
    let mut exact = vec![true; n];
    for i in 0..n {
        for j in 0..n {
            let s = field.sign(sp.degree(i) * sp.degree(j));
            if !a.product_exact(i, j) {
                let deg = sp.degree(i) + sp.degree(j);
                if w.contains(deg) {
                    for k in sp.degree_range(deg) {
                        exact[pos[k]] = false;
                    }
                }
                continue;
            }
            for (k, c) in a.mul_basis(i, j).iter() {
                comult[pos[*k]].add_term((pos[i], pos[j]), c * &s);
            }
        }
    }
    // for a window of an infinite algebra, factors of c may live outside the carrier unless
    // all degrees are one-signed and every degree between 0 and |c| is complete
    if a.truncation.is_some() {
        let one_signed = (0..n).all(|i| sp.degree(i) >= 0) || (0..n).all(|i| sp.degree(i) <= 0);
        for k in 0..n {
            let deg = sp.degree(k);
            let between = deg.min(0)..=deg.max(0);
            let complete = between.clone().all(|m| w.contains(m) && !a.complex.incomplete.contains(&m));
            if !(one_signed && complete) {
                exact[pos[k]] = false;
            }
        }
    }
    let counit = a.unit.as_ref().map(|u| {
        let mut e = vec![field.zero(); n];
        for (k, c) in u.iter() {
            e[pos[*k]] = c.clone();
        }
        e
    });
    let atom = match (a.unit_index(), &a.augmentation) {
        (Some(u), Some(aug)) if (0..n).all(|i| aug[i] == if i == u { field.one() } else { field.zero() }) => Some(pos[u]),
        _ => None,
    };
    let (dmap, d_exact) = dual_differential(&a.complex, &dual, &pos)?;
    let incomplete = a.complex.incomplete.iter().map(|d| -d).collect();
    let complex = DgSpace::new(dmap)?.with_flags(d_exact, incomplete);
    let mut c = DgCoalgebra::from_table(complex, comult, counit, atom)?.with_exactness(exact);
    if let Some(wts) = &a.weights {
        let mut dw = vec![0; n];
        for i in 0..n {
            dw[pos[i]] = wts[i];
        }
        c = c.with_weights(dw);
    }
    Ok(c)
}

/// C⋆ as a dg-algebra: x⋆y⋆ = Σ_c Δ_c^{xy} (−1)^{|x||y|} c⋆, unit ε, augmentation at the atom.
pub fn dual_algebra(c: &DgCoalgebra) -> Result<DgAlgebra> {
    let sp = c.space();
    let field = c.field();
    let dual: Space = Arc::new(graded_dual(sp));
    let pos = dual_positions(sp, &dual);
    let n = sp.dim();
    let mut table: std::collections::HashMap<(usize, usize), Vector> = Default::default();
    for k in 0..n {
        for ((x, y), s) in c.delta(k).iter() {
            let sg = field.sign(sp.degree(*x) * sp.degree(*y));
            table.entry((pos[*x], pos[*y])).or_default().add_term(pos[k], s * &sg);
        }
    }
    let unit = c.counit.as_ref().map(|e| {
        let mut u = Vector::zero();
        for i in 0..n {
            u.add_term(pos[i], e[i].clone());
        }
        u
    });
    let augmentation = c.atom.map(|e| {
        let mut a = vec![field.zero(); n];
        a[pos[e]] = field.one();
        a
    });
    let (dmap, d_exact) = dual_differential(&c.complex, &dual, &pos)?;
    let incomplete = c.complex.incomplete.iter().map(|d| -d).collect();
    let complex = DgSpace::new(dmap)?.with_flags(d_exact, incomplete);
    let mut alg = DgAlgebra::from_table(complex, table.into_iter().collect::<Vec<_>>(), unit, augmentation)?;
    if let Some(wts) = &c.weights {
        let mut dw = vec![0; n];
        for i in 0..n {
            dw[pos[i]] = wts[i];
        }
        alg = alg.with_weights(dw, Some(dual.window()));
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn letters(degs: &[(&str, i64)], w: Truncation) -> Space {
        Arc::new(GradedSpace::new(q(), w, degs.iter().map(|(n, d)| (n.to_string(), *d))).unwrap())
    }

    #[test]
    fn odd_binomial_rows() {
        let row = |n: i64| (0..=n).map(|k| odd_binomial(n, k).unwrap()).collect::<Vec<_>>();
        let as_big = |v: &[i64]| v.iter().map(|x| BigInt::from(*x)).collect::<Vec<_>>();
        assert_eq!(row(5), as_big(&[1, 1, 2, 2, 1, 1]));
        assert_eq!(row(8), as_big(&[1, 0, 4, 0, 6, 0, 4, 0, 1]));
        assert!(odd_binomial(3, 4).is_err());
    }

    #[test]
    fn deconcatenation_of_two_letters() {
        let w = Truncation::new(0, 4, 4).unwrap();
        let x = DgSpace::zero(letters(&[("a", 1), ("b", 1)], w));
        let (c, wb) = tensor_coalgebra(&x, w).unwrap();
        assert!(c.verify().passed());
        let ab = wb.index_of(&[0, 1]).unwrap();
        let (e, a, b) = (wb.empty().unwrap(), wb.index_of(&[0]).unwrap(), wb.index_of(&[1]).unwrap());
        let mut want = Tensor2::term((e, ab), q().one());
        want.add_term((a, b), q().one());
        want.add_term((ab, e), q().one());
        assert_eq!(c.delta(ab), &want);
        assert_eq!(primitives(&c).unwrap().len(), 2);
        assert!(radical(&c).unwrap().is_everything(&c));
        assert!(c.cocommutativity_witness().is_some());
    }

    #[test]
    fn coshuffle_of_even_square() {
        let w = Truncation::new(0, 0, 4).unwrap();
        let x = DgSpace::zero(letters(&[("x", 0)], w));
        let (c, wb) = coshuffle_coalgebra(&x, w).unwrap();
        let (x1, x2) = (wb.index_of(&[0]).unwrap(), wb.index_of(&[0, 0]).unwrap());
        assert_eq!(c.delta(x2).coeff(&(x1, x1)), Some(&q().from_i64(2)));
        assert!(c.cocommutativity_witness().is_none());
        assert!(c.verify().passed());
    }

    #[test]
    fn dual_numbers_dual() {
        let w = Truncation::new(-1, 1, 2).unwrap();
        let sp = letters(&[("1", 0), ("e", 0)], w);
        let one = q().one();
        let table = vec![
            ((0, 0), Vector::term(0, one.clone())),
            ((0, 1), Vector::term(1, one.clone())),
            ((1, 0), Vector::term(1, one.clone())),
        ];
        let a = DgAlgebra::from_table(DgSpace::zero(sp), table, Some(Vector::term(0, one.clone())), Some(vec![one.clone(), q().zero()]))
            .unwrap();
        let c = finite_dual(&a).unwrap();
        assert!(c.verify().passed());
        let e1 = c.space().index_of("1*").unwrap();
        let ee = c.space().index_of("e*").unwrap();
        let mut want = Tensor2::term((ee, e1), one.clone());
        want.add_term((e1, ee), one.clone());
        assert_eq!(c.delta(ee), &want);
        assert_eq!(c.atom, Some(e1));
        let back = dual_algebra(&c).unwrap();
        assert!(back.verify().passed());
        assert_eq!(back.dim(), 2);
    }

    #[test]
    fn diagonal_radical_is_the_atom() {
        let w = Truncation::new(0, 0, 2).unwrap();
        let sp = letters(&[("i", 0), ("j", 0)], w);
        let one = q().one();
        let comult = vec![Tensor2::term((0, 0), one.clone()), Tensor2::term((1, 1), one.clone())];
        let c = DgCoalgebra::from_table(DgSpace::zero(sp), comult, Some(vec![one.clone(), one.clone()]), Some(0)).unwrap();
        assert!(c.verify().passed());
        let r = radical(&c).unwrap();
        assert_eq!(r.basis.len(), 1);
        assert!(primitives(&c).unwrap().is_empty());
    }
}
