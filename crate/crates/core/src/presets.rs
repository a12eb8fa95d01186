//! Small named (co)algebras used by examples, tests and the command line.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{free_algebra, DgAlgebra};
use crate::coalgebra::{finite_dual, DgCoalgebra};
use crate::complex::DgSpace;
use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Space, Truncation};
use crate::lincomb::{Poly, Tensor2, Vector};
use crate::scalar::Field;
use crate::words::WordBasis;

fn space(field: Field, window: Truncation, elems: &[(String, i64)]) -> Result<Space> {
    Ok(Arc::new(GradedSpace::new(field, window, elems.iter().cloned())?))
}

/// 𝔽[a]/(a²) with |a| = degree: basis 1, a; weights 0, 1.
pub fn square_zero(field: Field, name: &str, degree: i64, window: Truncation) -> Result<DgAlgebra> {
    let sp = space(field, window, &[("1".into(), 0), (name.into(), degree)])?;
    let (one, a) = (sp.lookup("1")?, sp.lookup(name)?);
    let table = vec![
        ((one, one), Vector::term(one, field.one())),
        ((one, a), Vector::term(a, field.one())),
        ((a, one), Vector::term(a, field.one())),
    ];
    let mut aug = vec![field.zero(); 2];
    aug[one] = field.one();
    let mut w = vec![1; 2];
    w[one] = 0;
    Ok(DgAlgebra::from_table(DgSpace::zero(sp), table, Some(Vector::term(one, field.one())), Some(aug))?.with_weights(w, None))
}

/// The dual numbers 𝔽[ε]/(ε²), |ε| = 0.
pub fn dual_numbers(field: Field, window: Truncation) -> Result<DgAlgebra> {
    square_zero(field, "e", 0, window)
}

/// Grouplike elements e, c1, …, c_{n−1} in degree 0, pointed at e.
pub fn diagonal_coalgebra(field: Field, n: usize, window: Truncation) -> Result<DgCoalgebra> {
    if n == 0 {
        return Err(Error::OutOfRange("diagonal coalgebra needs at least one element".into()));
    }
    let names: Vec<(String, i64)> =
        (0..n).map(|i| (if i == 0 { "e".to_string() } else { format!("c{i}") }, 0)).collect();
    let sp = space(field, window, &names)?;
    let comult = (0..n).map(|i| Tensor2::term((i, i), field.one())).collect();
    DgCoalgebra::from_table(DgSpace::zero(sp), comult, Some(vec![field.one(); n]), Some(0))
}

/// 𝔽δ₊: e and a primitive δ of the given degree.
pub fn primitive_coalgebra(field: Field, degree: i64, window: Truncation) -> Result<DgCoalgebra> {
    let sp = space(field, window, &[("e".into(), 0), ("d".into(), degree)])?;
    let (e, d) = (sp.lookup("e")?, sp.lookup("d")?);
    let mut dd = Tensor2::term((d, e), field.one());
    dd.add_term((e, d), field.one());
    let mut comult = vec![Tensor2::zero(); 2];
    comult[e] = Tensor2::term((e, e), field.one());
    comult[d] = dd;
    let mut eps = vec![field.zero(); 2];
    eps[e] = field.one();
    let mut w = vec![1; 2];
    w[e] = 0;
    Ok(DgCoalgebra::from_table(DgSpace::zero(sp), comult, Some(eps), Some(e))?.with_weights(w))
}

/// Mat(n, 𝔽) with basis e_ij (1-based names "e{i}{j}").
pub fn matrix_algebra(field: Field, n: usize, window: Truncation) -> Result<DgAlgebra> {
    if n == 0 || n > 9 {
        return Err(Error::OutOfRange(format!("matrix size {n} (1..=9)")));
    }
    let names: Vec<(String, i64)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (format!("e{}{}", i + 1, j + 1), 0))).collect();
    let sp = space(field, window, &names)?;
    let idx = |i: usize, j: usize| i * n + j;
    let mut table = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                table.push(((idx(i, j), idx(j, k)), Vector::term(idx(i, k), field.one())));
            }
        }
    }
    let unit: Vector = (0..n).map(|i| (idx(i, i), field.one())).collect();
    let aug = (n == 1).then(|| vec![field.one()]);
    DgAlgebra::from_table(DgSpace::zero(sp), table, Some(unit), aug)
}

/// Mat(n, 𝔽)⋆: Δ(e_ij⋆) = Σ_k e_ik⋆ ⊗ e_kj⋆, ε(e_ij⋆) = δ_ij.
pub fn matrix_coalgebra(field: Field, n: usize, window: Truncation) -> Result<DgCoalgebra> {
    finite_dual(&matrix_algebra(field, n, window)?)
}

/// The free algebra on named generators with zero differential.
pub fn free_algebra_on(field: Field, gens: &[(String, i64)], window: Truncation) -> Result<(DgAlgebra, WordBasis)> {
    let lo = gens.iter().map(|g| g.1).min().unwrap_or(0).min(0);
    let hi = gens.iter().map(|g| g.1).max().unwrap_or(0).max(0);
    let letters = space(field, Truncation::new(lo, hi, window.weight_cap)?, gens)?;
    let d = vec![Poly::zero(); gens.len()];
    free_algebra(letters, &d, window)
}

/// T^c_{≤n}(x) with |x| = 0: deconcatenation, or the binomial coproduct when `divided`.
pub fn jet_coalgebra(field: Field, n: usize, divided: bool, window: Truncation) -> Result<DgCoalgebra> {
    let name = |k: usize| match k {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{k}"),
    };
    let names: Vec<(String, i64)> = (0..=n).map(|k| (name(k), 0)).collect();
    let sp = space(field, window, &names)?;
    let comult = (0..=n)
        .map(|k| {
            let mut t = Tensor2::zero();
            let mut binom = BigInt::from(1);
            for i in 0..=k {
                let c = if divided { field.from_bigint(&binom) } else { field.one() };
                t.add_term((i, k - i), c);
                binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
            }
            t
        })
        .collect();
    let mut eps = vec![field.zero(); n + 1];
    eps[0] = field.one();
    Ok(DgCoalgebra::from_table(DgSpace::zero(sp), comult, Some(eps), Some(0))?.with_weights((0..=n).collect()))
}
