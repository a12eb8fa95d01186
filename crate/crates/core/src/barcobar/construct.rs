//! B A = (T^c(sA_-), d^int ∓ d^ext) and ΩC = (T(s^{-1}C_-), d^int ± d^ext).

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{extend_derivation, free_algebra, DgAlgebra};
use crate::coalgebra::{coextend_coderivation, word_coalgebra, DgCoalgebra, Splitting};
use crate::error::{Error, Result};
use crate::graded::{suspended_name, GradedMap, GradedSpace, Space, Truncation};
use crate::lincomb::{LinComb, Poly, Tensor2, Vector};
use crate::words::{coextend_coderivation_on_word, WordBasis};

use super::Convention;

/// Letters of the reduced part: basis elements other than a distinguished one (the unit
/// or the atom), standing for x̄ = x − ε(x)·(distinguished).
#[derive(Clone, Debug)]
struct Reduced {
    letters: Space,
    /// letter → basis index of the input
    source: Vec<usize>,
    /// basis index of the input → letter
    letter_of: HashMap<usize, usize>,
}

impl Reduced {
    fn new(input: &GradedSpace, skip: usize, shift: i64, window: Truncation) -> Result<Self> {
        let elems: Vec<(String, i64, usize)> = (0..input.dim())
            .filter(|i| *i != skip)
            .map(|i| (suspended_name(input.name(i), shift), input.degree(i) + shift, i))
            .collect();
        let lo = elems.iter().map(|e| e.1).min().unwrap_or(0).min(0);
        let hi = elems.iter().map(|e| e.1).max().unwrap_or(0).max(0);
        let letters = GradedSpace::new(
            input.field(),
            Truncation::new(lo, hi, window.weight_cap)?,
            elems.iter().map(|e| (e.0.clone(), e.1)),
        )?;
        let by_name: HashMap<&str, usize> = elems.iter().map(|e| (e.0.as_str(), e.2)).collect();
        let source: Vec<usize> = (0..letters.dim()).map(|l| by_name[letters.name(l)]).collect();
        let letter_of = source.iter().enumerate().map(|(l, i)| (*i, l)).collect();
        Ok(Reduced { letters: Arc::new(letters), source, letter_of })
    }

    /// Coordinates of an element of the reduced part (the distinguished component is dropped).
    fn coords(&self, v: &Vector) -> Vector {
        v.map_keys(|k| self.letter_of.get(k).copied())
    }

    fn coords2(&self, t: &Tensor2) -> Poly {
        t.map_keys(|(a, b)| Some(vec![*self.letter_of.get(a)?, *self.letter_of.get(b)?]))
    }
}

/// The pieces of a bar or cobar differential, checked separately.
#[derive(Clone, Debug, Default)]
pub struct PieceReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PieceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_pieces(words: &WordBasis, d_int: &GradedMap, d_ext: &GradedMap, total: &GradedMap, exact: &[bool], ext_step: i64) -> PieceReport {
    let sp = &words.space;
    let mut r = PieceReport::default();
    let two_steps = |i: usize| exact[i] && [d_int, d_ext].iter().all(|d| d.column(i).keys().all(|k| exact[*k]));
    for i in 0..words.dim() {
        let len = words.word(i).len() as i64;
        if exact[i] {
            r.checked += 1;
            if d_int.column(i).keys().any(|k| words.word(*k).len() as i64 != len) {
                r.failures.push(format!("d^int changes the length of {}", sp.name(i)));
            }
            if d_ext.column(i).keys().any(|k| words.word(*k).len() as i64 != len + ext_step) {
                r.failures.push(format!("d^ext of {} is not of length {}", sp.name(i), len + ext_step));
            }
        }
        if !two_steps(i) {
            continue;
        }
        let e = sp.basis_vector(i);
        let ii = d_int.apply(&d_int.apply(&e));
        let ee = d_ext.apply(&d_ext.apply(&e));
        let mut ie = d_int.apply(&d_ext.apply(&e));
        ie.add(&d_ext.apply(&d_int.apply(&e)));
        let tt = total.apply(&total.apply(&e));
        r.checked += 4;
        for (v, what) in [(ii, "d^int d^int"), (ee, "d^ext d^ext"), (ie, "d^int d^ext + d^ext d^int"), (tt, "d d")] {
            if !v.is_zero() {
                r.failures.push(format!("{what} ({}) = {}", sp.name(i), sp.show(&v)));
            }
        }
    }
    r
}

#[derive(Clone, Debug)]
pub struct BarConstruction {
    pub input: DgAlgebra,
    pub coalgebra: DgCoalgebra,
    pub words: WordBasis,
    pub d_int: GradedMap,
    pub d_ext: GradedMap,
    pub convention: Convention,
    unit: usize,
    reduced: Reduced,
}

impl BarConstruction {
    pub fn letters(&self) -> &Space {
        &self.reduced.letters
    }

    /// Input basis index behind a letter sā.
    pub fn letter_source(&self, l: usize) -> usize {
        self.reduced.source[l]
    }

    pub fn letter_for(&self, a: usize) -> Option<usize> {
        self.reduced.letter_of.get(&a).copied()
    }

    /// s(x) in letter coordinates, for x in A_-.
    pub fn suspend(&self, x: &Vector) -> Vector {
        self.reduced.coords(x)
    }

    /// The element ā = a − ε(a)1 of A behind a letter.
    pub fn desuspend_letter(&self, l: usize) -> Vector {
        let a = self.reduced.source[l];
        let mut v = self.input.space().basis_vector(a);
        let e = self.input.augment(&v).expect("augmented input");
        v.add_term(self.unit, e.neg());
        v
    }

    pub fn d_exact(&self) -> &[bool] {
        &self.coalgebra.complex.d_exact
    }

    /// d^int, d^ext and d separately: squares, anticommutation and the length filtration.
    pub fn check_pieces(&self) -> PieceReport {
        check_pieces(&self.words, &self.d_int, &self.d_ext, self.coalgebra.d(), self.d_exact(), -1)
    }

    /// π (length-n words times (−1)^n) against the same construction in the other convention.
    pub fn compare_conventions(&self, other: &BarConstruction) -> PiReport {
        let pi = sign_convention_iso(&self.words);
        let mut r = pi_intertwines(&self.words, &pi, self.coalgebra.d(), other.coalgebra.d(), self.d_exact());
        for i in 0..self.words.dim() {
            if !self.coalgebra.delta_exact(i) {
                continue;
            }
            let mut lhs = Tensor2::zero();
            for ((a, b), s) in self.coalgebra.delta(i).iter() {
                lhs.add_scaled(&crate::lincomb::tensor2(pi.column(*a), pi.column(*b)), s);
            }
            let rhs = other.coalgebra.delta_of(pi.column(i));
            r.checked += 1;
            if lhs != rhs {
                r.failures.push(format!("π is not comultiplicative on {}", self.words.space.name(i)));
            }
        }
        r
    }
}

/// The bar construction of an augmented algebra whose unit is a basis element.
pub fn bar(a: &DgAlgebra, convention: Convention, trunc: Truncation) -> Result<BarConstruction> {
    let unit = a.unit_index().ok_or_else(|| Error::MissingStructure("the unit must be a basis element".into()))?;
    if !a.augment(&a.space().basis_vector(unit))?.is_one() {
        return Err(Error::MissingStructure("ε(1) ≠ 1".into()));
    }
    let field = a.field();
    let reduced = Reduced::new(a.space(), unit, 1, trunc)?;
    let letters = reduced.letters.clone();
    let bar_elem = |l: usize| {
        let x = reduced.source[l];
        let mut v = a.space().basis_vector(x);
        v.add_term(unit, a.augment(&a.space().basis_vector(x)).unwrap().neg());
        v
    };
    let abar: Vec<Vector> = (0..letters.dim()).map(bar_elem).collect();
    // corestrictions: b^int(sa) = −s(da), b^ext(sa|sb) = (−1)^{|a|} s(ab)
    let phi_int = |w: &[usize]| -> LinComb<usize> {
        match w {
            [l] => reduced.coords(&a.d_of(&abar[*l])).neg(),
            _ => LinComb::zero(),
        }
    };
    let phi_ext = |w: &[usize]| -> LinComb<usize> {
        match w {
            [l, m] => {
                let s = field.sign(letters.degree(*l) - 1);
                reduced.coords(&a.mul(&abar[*l], &abar[*m])).scaled(&s)
            }
            _ => LinComb::zero(),
        }
    };
    let letter_exact: Vec<bool> = (0..letters.dim()).map(|l| a.complex.d_exact[reduced.source[l]]).collect();
    let pair_exact = |l: usize, m: usize| a.product_exact(reduced.source[l], reduced.source[m]);
    let sign = convention.sign(field);
    let wb = WordBasis::new(letters.clone(), trunc, "|")?;
    let (d_int, int_ok) = coextend_coderivation(&wb, &phi_int, -1);
    let (d_ext, ext_ok) = coextend_coderivation(&wb, &phi_ext, -1);
    let (coalgebra, words) = word_coalgebra(wb, Splitting::Deconcatenation, |wb, w| {
        let phi = |u: &[usize]| {
            let mut v = phi_int(u);
            v.add_scaled(&phi_ext(u), &sign);
            v
        };
        let ok = w.iter().all(|l| letter_exact[*l]) && w.windows(2).all(|p| pair_exact(p[0], p[1]));
        (coextend_coderivation_on_word(&wb.letters, &phi, -1, w), ok)
    })?;
    let mut coalgebra = coalgebra;
    for i in 0..words.dim() {
        coalgebra.complex.d_exact[i] &= int_ok[i] && ext_ok[i];
    }
    Ok(BarConstruction { input: a.clone(), coalgebra, words, d_int, d_ext, convention, unit, reduced })
}

#[derive(Clone, Debug)]
pub struct CobarConstruction {
    pub input: DgCoalgebra,
    pub algebra: DgAlgebra,
    pub words: WordBasis,
    pub d_int: GradedMap,
    pub d_ext: GradedMap,
    pub convention: Convention,
    reduced: Reduced,
}

impl CobarConstruction {
    pub fn letters(&self) -> &Space {
        &self.reduced.letters
    }

    /// Input basis index behind the letter s^{-1}c̄.
    pub fn letter_source(&self, l: usize) -> usize {
        self.reduced.source[l]
    }

    pub fn letter_for(&self, c: usize) -> Option<usize> {
        self.reduced.letter_of.get(&c).copied()
    }

    /// s^{-1}x̄ in letter coordinates.
    pub fn desuspend(&self, x: &Vector) -> Vector {
        self.reduced.coords(x)
    }

    pub fn d_exact(&self) -> &[bool] {
        &self.algebra.complex.d_exact
    }

    pub fn check_pieces(&self) -> PieceReport {
        check_pieces(&self.words, &self.d_int, &self.d_ext, self.algebra.d(), self.d_exact(), 1)
    }

    pub fn compare_conventions(&self, other: &CobarConstruction) -> PiReport {
        let pi = sign_convention_iso(&self.words);
        let mut r = pi_intertwines(&self.words, &pi, self.algebra.d(), other.algebra.d(), self.d_exact());
        let n = self.words.dim();
        for i in 0..n {
            for j in 0..n {
                if self.words.weight(i) + self.words.weight(j) > self.words.cap {
                    continue;
                }
                let lhs = pi.apply(&self.algebra.mul_basis(i, j));
                let rhs = other.algebra.mul(pi.column(i), pi.column(j));
                r.checked += 1;
                if lhs != rhs {
                    r.failures.push(format!(
                        "π is not multiplicative on {}·{}",
                        self.words.space.name(i),
                        self.words.space.name(j)
                    ));
                }
            }
        }
        r
    }
}

/// The cobar construction of a coaugmented coalgebra (atom e with ε(e) = 1).
pub fn cobar(c: &DgCoalgebra, convention: Convention, trunc: Truncation) -> Result<CobarConstruction> {
    let e = c.checked_atom()?;
    let field = c.field();
    let cs = c.space();
    let reduced = Reduced::new(cs, e, -1, trunc)?;
    let letters = reduced.letters.clone();
    let n = letters.dim();
    let cbar: Vec<Vector> = (0..n).map(|l| c.bar(&cs.basis_vector(reduced.source[l]))).collect::<Result<_>>()?;
    // b^int(s^{-1}c) = −s^{-1}dc, b^ext(s^{-1}c) = −Σ s^{-1}c̄1 s^{-1}c̄2 (−1)^{|c̄1|}
    let phi_int: Vec<Poly> = cbar.iter().map(|v| reduced.coords(&c.d().apply(v)).neg().map_keys(|l| Some(vec![*l]))).collect();
    let phi_ext: Vec<Poly> = cbar
        .iter()
        .map(|v| {
            let t = c.reduced_delta(v)?;
            let signed: Tensor2 = t.iter().map(|((x, y), s)| ((*x, *y), s * &field.sign(cs.degree(*x) + 1))).collect();
            Ok(reduced.coords2(&signed))
        })
        .collect::<Result<_>>()?;
    let letter_exact: Vec<bool> =
        (0..n).map(|l| c.complex.d_exact[reduced.source[l]] && c.delta_exact(reduced.source[l])).collect();
    let sign = convention.sign(field);
    let phi: Vec<Poly> = (0..n)
        .map(|l| {
            let mut p = phi_int[l].clone();
            p.add_scaled(&phi_ext[l], &sign);
            p
        })
        .collect();
    let (mut algebra, words) = free_algebra(letters, &phi, trunc)?;
    let (d_int, _) = extend_derivation(&words, &phi_int, -1);
    let (d_ext, _) = extend_derivation(&words, &phi_ext, -1);
    for i in 0..words.dim() {
        algebra.complex.d_exact[i] &= words.word(i).iter().all(|l| letter_exact[*l]);
    }
    Ok(CobarConstruction { input: c.clone(), algebra, words, d_int, d_ext, convention, reduced })
}

/// π: words of length n times (−1)^n.
pub fn sign_convention_iso(words: &WordBasis) -> GradedMap {
    let field = words.field();
    GradedMap::from_fn(words.space.clone(), words.space.clone(), 0, |i| {
        Vector::term(i, field.sign(words.word(i).len() as i64))
    })
}

#[derive(Clone, Debug, Default)]
pub struct PiReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// π∘d_from = d_to∘π on the exact basis elements.
fn pi_intertwines(words: &WordBasis, pi: &GradedMap, d_from: &GradedMap, d_to: &GradedMap, exact: &[bool]) -> PiReport {
    let mut r = PiReport::default();
    for i in 0..words.dim() {
        if !exact[i] {
            continue;
        }
        r.checked += 1;
        let lhs = pi.apply(d_from.column(i));
        let rhs = d_to.apply(pi.column(i));
        if lhs != rhs {
            r.failures.push(format!("π does not intertwine the differentials on {}", words.space.name(i)));
        }
    }
    r
}
