use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{free_algebra, DgAlgebra};
use crate::coalgebra::{word_coalgebra, DgCoalgebra, Splitting};
use crate::enumerate::Slots;
use crate::error::{Error, Result};
use crate::graded::{GradedMap, GradedSpace, Truncation};
use crate::lincomb::{Poly, Tensor2, Vector};
use crate::scalar::Field;
use crate::words::{extend_derivation_on_word, WordBasis};

/// T(u), |u| = −1, du = −u², with the coshuffle coproduct, ε(u) = 0 and S(u) = −u.
#[derive(Clone, Debug)]
pub struct McAlgebra {
    pub algebra: DgAlgebra,
    /// The same carrier with Δ(u) = u⊗1 + 1⊗u extended multiplicatively.
    pub coalgebra: DgCoalgebra,
    pub words: WordBasis,
    pub antipode: GradedMap,
}

#[derive(Clone, Debug, Default)]
pub struct McReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl McReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, msg: String) {
        self.checked += 1;
        if !ok {
            self.failures.push(msg);
        }
    }
}

pub fn mc_algebra(field: Field, cap: usize) -> Result<McAlgebra> {
    if cap < 2 {
        return Err(Error::OutOfRange("the mc algebra needs a weight cap of at least 2".into()));
    }
    let letters = Arc::new(GradedSpace::new(field, Truncation::new(-1, 0, cap)?, [("u", -1)])?);
    let phi = vec![Poly::term(vec![0, 0], field.from_i64(-1))];
    // degree 1 is empty but kept in the window so that H_0 can be trusted
    let window = Truncation::new(-(cap as i64), 1, cap)?;
    let (algebra, words) = free_algebra(letters, &phi, window)?;
    let (coalgebra, _) = word_coalgebra(words.clone(), Splitting::Coshuffle, |wb, w| {
        (extend_derivation_on_word(&wb.letters, &phi, -1, w), w.len() < cap)
    })?;
    // S(ab) = (−1)^{|a||b|} S(b)S(a) with S(u) = −u: S(uⁿ) = −(−1)^{n−1} S(u^{n−1}) u
    let antipode = GradedMap::from_fn(words.space.clone(), words.space.clone(), 0, |i| {
        let n = words.word(i).len() as i64;
        let sign = (1..=n).fold(field.one(), |s, k| &s * &field.sign(k));
        Vector::term(i, sign)
    });
    Ok(McAlgebra { algebra, coalgebra, words, antipode })
}

impl McAlgebra {
    pub fn cap(&self) -> usize {
        self.words.cap
    }

    /// Index of uⁿ.
    pub fn power(&self, n: usize) -> Option<usize> {
        self.words.index_of(&vec![0; n])
    }

    fn field(&self) -> Field {
        self.algebra.field()
    }

    /// The differential, the Hopf axioms and S⋆id = id⋆S = eε up to weight cap − 1.
    pub fn verify(&self) -> McReport {
        let field = self.field();
        let cap = self.cap();
        let a = &self.algebra;
        let sp = a.space().clone();
        let mut r = McReport::default();
        let u = self.power(1).unwrap();
        let mut mc = a.d_of(&sp.basis_vector(u));
        mc.add(&a.mul(&sp.basis_vector(u), &sp.basis_vector(u)));
        r.check(mc.is_zero(), "du + u² ≠ 0".into());
        for n in 0..cap {
            let dn = a.d_of(&sp.basis_vector(self.power(n).unwrap()));
            let want = if n % 2 == 0 {
                Vector::zero()
            } else {
                Vector::term(self.power(n + 1).unwrap(), field.from_i64(-1))
            };
            r.check(dn == want, format!("d(u^{n}) = {}", sp.show(&dn)));
        }
        let ar = a.verify();
        r.checked += ar.checked;
        r.failures.extend(ar.failures);
        let cr = self.coalgebra.verify();
        r.checked += cr.checked;
        r.failures.extend(cr.failures);

        let c = &self.coalgebra;
        let deg = |i: usize| sp.degree(i);
        let tmul = |x: &Tensor2, y: &Tensor2| -> Tensor2 {
            let mut out = Tensor2::zero();
            for ((a1, b1), s) in x.iter() {
                for ((a2, b2), t) in y.iter() {
                    let sign = field.sign(deg(*b1) * deg(*a2));
                    for (p, e) in a.mul_basis(*a1, *a2).iter() {
                        for (q, f) in a.mul_basis(*b1, *b2).iter() {
                            out.add_term((*p, *q), &(&(s * t) * &sign) * &(e * f));
                        }
                    }
                }
            }
            out
        };
        let eps = c.counit_vec().unwrap().clone();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let (wi, wj) = (self.words.weight(i), self.words.weight(j));
                if wi + wj > cap {
                    continue;
                }
                let prod = a.mul_basis(i, j);
                let lhs = c.delta_of(&prod);
                let rhs = tmul(c.delta(i), c.delta(j));
                r.check(lhs == rhs, format!("Δ is not multiplicative on {}·{}", sp.name(i), sp.name(j)));
                let e = c.counit_of(&prod).unwrap();
                r.check(e == &eps[i] * &eps[j], format!("ε is not multiplicative on {}·{}", sp.name(i), sp.name(j)));
            }
        }
        let one = a.unit_vector().unwrap();
        r.check(c.delta_of(&one) == crate::lincomb::tensor2(&one, &one), "Δ(1) ≠ 1⊗1".into());
        // antipode
        for i in 0..a.dim() {
            let x = sp.basis_vector(i);
            if self.words.weight(i) < cap {
                let ds = self.antipode.apply(&a.d_of(&x));
                let sd = a.d_of(&self.antipode.apply(&x));
                r.check(ds == sd, format!("S does not commute with d on {}", sp.name(i)));
            }
            if self.words.weight(i) + 1 > cap {
                continue;
            }
            let mut left = Vector::zero();
            let mut right = Vector::zero();
            for ((x1, x2), s) in c.delta(i).iter() {
                left.add_scaled(&a.mul(self.antipode.column(*x1), &sp.basis_vector(*x2)), s);
                right.add_scaled(&a.mul(&sp.basis_vector(*x1), self.antipode.column(*x2)), s);
            }
            let want = one.scaled(&eps[i]);
            r.check(left == want, format!("(S⋆id)({}) = {}", sp.name(i), sp.show(&left)));
            r.check(right == want, format!("(id⋆S)({}) = {}", sp.name(i), sp.show(&right)));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if self.words.weight(i) + self.words.weight(j) > cap {
                    continue;
                }
                let lhs = self.antipode.apply(&a.mul_basis(i, j));
                let rhs = a
                    .mul(self.antipode.column(j), self.antipode.column(i))
                    .scaled(&field.sign(deg(i) * deg(j)));
                r.check(lhs == rhs, format!("S is not an antihomomorphism on {}·{}", sp.name(i), sp.name(j)));
            }
        }
        r
    }
}

#[derive(Clone, Debug)]
pub enum McMode {
    Verify(Vector),
    Enumerate,
}

/// Solutions of da + a·a = 0 in degree −1: the given element if it is one, or all of them.
pub fn mc_elements(a: &DgAlgebra, mode: McMode) -> Result<Vec<Vector>> {
    let sp = a.space();
    let test = |x: &Vector| -> Result<bool> {
        let dx = a.d_exact_of(x).ok_or_else(|| Error::WindowOverflow("d leaves the window".into()))?;
        let xx = a.mul_exact(x, x).ok_or_else(|| Error::WindowOverflow("a·a leaves the window".into()))?;
        let mut s = dx;
        s.add(&xx);
        Ok(s.is_zero())
    };
    match mode {
        McMode::Verify(x) => {
            if !x.is_zero() && sp.degree_of(&x) != Some(-1) {
                return Err(Error::DegreeMismatch("Maurer–Cartan elements have degree −1".into()));
            }
            Ok(if test(&x)? { vec![x] } else { Vec::new() })
        }
        McMode::Enumerate => {
            let basis: Vec<usize> = sp.degree_range(-1).collect();
            if basis.len() > 4 {
                return Err(Error::EnumerationTooLarge(format!("dim A₋₁ = {} > 4", basis.len())));
            }
            let slots = Slots::vectors(a.field(), &basis)?;
            let found: Vec<Result<Option<Vector>>> = (0..slots.count())
                .into_par_iter()
                .map(|n| {
                    let x = slots.vector(n);
                    Ok(test(&x)?.then_some(x))
                })
                .collect();
            found.into_iter().filter_map(|r| r.transpose()).collect()
        }
    }
}
