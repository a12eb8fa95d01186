//! Coshuffle coproduct on ΩC for cocommutative C, shuffle product on BA for commutative A.

use crate::algebra::{tensor_product_mul, DgAlgebra};
use crate::coalgebra::{word_coalgebra, DgCoalgebra, Splitting};
use crate::error::{Error, Result};
use crate::lincomb::tensor2;
use crate::words::WordBasis;

use super::construct::{BarConstruction, CobarConstruction};

/// A word carrier with both structures, and the outcome of the compatibility checks.
#[derive(Clone, Debug)]
pub struct HopfReport {
    pub algebra: DgAlgebra,
    pub coalgebra: DgCoalgebra,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(msg());
        }
    }
}

/// Axioms of each structure, Δ and ε multiplicative on pairs of total weight ≤ cap, Δ(1) = 1⊗1.
fn bialgebra(algebra: DgAlgebra, coalgebra: DgCoalgebra, words: &WordBasis) -> HopfReport {
    let mut r = HopfReport { algebra, coalgebra, checked: 0, failures: Vec::new() };
    let ar = r.algebra.verify();
    let cr = r.coalgebra.verify();
    r.checked += ar.checked + cr.checked;
    r.failures.extend(ar.failures);
    r.failures.extend(cr.failures);
    let sp = words.space.clone();
    let (a, c) = (r.algebra.clone(), r.coalgebra.clone());
    for i in 0..words.dim() {
        for j in 0..words.dim() {
            if words.weight(i) + words.weight(j) > words.cap {
                continue;
            }
            let prod = a.mul_basis(i, j);
            let lhs = c.delta_of(&prod);
            let rhs = tensor_product_mul(&a, &a, c.delta(i), c.delta(j));
            r.check(lhs == rhs, || format!("Δ is not multiplicative on {}·{}", sp.name(i), sp.name(j)));
            let e = c.counit_of(&prod).ok();
            let ee = c.counit_of(&sp.basis_vector(i)).ok().zip(c.counit_of(&sp.basis_vector(j)).ok()).map(|(x, y)| &x * &y);
            r.check(e == ee, || format!("ε is not multiplicative on {}·{}", sp.name(i), sp.name(j)));
        }
    }
    if let Ok(one) = a.unit_vector() {
        r.check(c.delta_of(&one) == tensor2(&one, &one), || "Δ(1) ≠ 1⊗1".into());
    }
    r
}

/// ΩC with the coshuffle coproduct (letters primitive); C must be cocommutative.
pub fn hopf_on_cobar(cobar: &CobarConstruction) -> Result<HopfReport> {
    let c = &cobar.input;
    if let Some(x) = c.cocommutativity_witness() {
        return Err(Error::NotCocommutative(format!("Δ({}) is not symmetric", c.space().name(x))));
    }
    let alg = &cobar.algebra;
    let (coalgebra, words) = word_coalgebra(cobar.words.clone(), Splitting::Coshuffle, |wb, w| {
        let i = wb.index_of(w).expect("word of the carrier");
        (wb.poly(alg.d().column(i)), alg.complex.d_exact[i])
    })?;
    let mut r = bialgebra(alg.clone(), coalgebra, &words);
    for l in 0..words.letters.dim() {
        let Some(i) = words.letter_word(l) else { continue };
        let one = words.empty().expect("empty word");
        let mut want = crate::lincomb::Tensor2::zero();
        want.add_term((i, one), c.field().one());
        want.add_term((one, i), c.field().one());
        let got = r.coalgebra.delta(i).clone();
        r.check(got == want, || format!("{} is not primitive", words.space.name(i)));
    }
    Ok(r)
}

/// BA with the shuffle product; A must be graded-commutative.
pub fn hopf_on_bar(bar: &BarConstruction) -> Result<HopfReport> {
    let a = &bar.input;
    let sp = a.space();
    for i in 0..a.dim() {
        for j in 0..i {
            if !a.product_exact(i, j) || !a.product_exact(j, i) {
                continue;
            }
            let ij = a.mul_basis(i, j);
            let ji = a.mul_basis(j, i).scaled(&a.field().sign(sp.degree(i) * sp.degree(j)));
            if ij != ji {
                return Err(Error::NotCommutative(format!("{}·{} ≠ ±{}·{}", sp.name(i), sp.name(j), sp.name(j), sp.name(i))));
            }
        }
        if a.product_exact(i, i) && sp.degree(i) % 2 != 0 && !a.mul_basis(i, i).is_zero() && a.field().size() != Some(2) {
            return Err(Error::NotCommutative(format!("{0}·{0} ≠ 0 for odd {0}", sp.name(i))));
        }
    }
    let mut algebra = crate::coalgebra::shuffle_algebra(&bar.words, None)?;
    algebra.complex = bar.coalgebra.complex.clone();
    Ok(bialgebra(algebra, bar.coalgebra.clone(), &bar.words))
}
