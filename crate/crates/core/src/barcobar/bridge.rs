//! ΩC against C▷•mc and BA against T^c([u, A_-]) = {mc, A}•, basis by basis.
//!
//! On the cobar side s^{-1}c ↦ (−1)^{|c|} c▷u, on the bar side sa ↦ (−1)^{|a|} [u>a]; both
//! extend to words and are compared with the Sweedler-side structures as computed by the
//! presentation engine and by the Sweedler hom formula.

use std::collections::BTreeMap;

use crate::algebra::DgAlgebra;
use crate::coalgebra::DgCoalgebra;
use crate::error::{Error, Result};
use crate::graded::{GradedMap, Truncation};
use crate::linalg::rank;
use crate::lincomb::{tensor2, Poly, Tensor2, Vector};
use crate::scalar::Scalar;
use crate::sweedler::{sweedler_hom_free, sweedler_product, SweedlerHom, SweedlerProduct};
use crate::words::WordBasis;

use super::construct::{bar, cobar, BarConstruction, CobarConstruction};
use super::mc::mc_algebra;
use super::Convention;

#[derive(Clone, Debug)]
pub struct BridgeReport {
    /// dims per (degree, weight) of the formulaic side and of the Sweedler side
    pub formula_dims: BTreeMap<(i64, usize), usize>,
    pub sweedler_dims: BTreeMap<(i64, usize), usize>,
    /// the comparison map, formula side → Sweedler side
    pub map: GradedMap,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl BridgeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.formula_dims == self.sweedler_dims
    }
}

fn word_dims(words: &WordBasis) -> BTreeMap<(i64, usize), usize> {
    let mut out = BTreeMap::new();
    for i in 0..words.dim() {
        *out.entry((words.space.degree(i), words.weight(i))).or_default() += 1;
    }
    out
}

/// The map is an isomorphism: per degree, the images have full rank equal to both dimensions.
fn check_bijective(map: &GradedMap, failures: &mut Vec<String>) -> usize {
    let field = map.field();
    let src = &map.source;
    let mut checked = 0;
    for n in src.occupied_degrees() {
        let cols: Vec<Vector> = src.degree_range(n).map(|i| map.column(i).clone()).collect();
        let r = rank(&cols, field);
        checked += 1;
        if r != cols.len() || r != map.target.dim_in(n) {
            failures.push(format!("degree {n}: rank {r}, dims {} and {}", cols.len(), map.target.dim_in(n)));
        }
    }
    checked
}

/// ΩC (plus convention) against the pointed Sweedler product C▷•mc.
pub fn cobar_vs_sweedler(c: &DgCoalgebra, trunc: Truncation) -> Result<(CobarConstruction, SweedlerProduct, BridgeReport)> {
    let field = c.field();
    let omega = cobar(c, Convention::COBAR_DEFAULT, trunc)?;
    let mc = mc_algebra(field, trunc.weight_cap.max(2))?;
    let prod = sweedler_product(c, &mc.algebra, trunc, true)?;
    let p = prod.algebra();
    let u = mc.power(1).expect("u");
    let cs = c.space();
    let mut failures = Vec::new();
    let images: Vec<Vector> = (0..omega.letters().dim())
        .map(|l| {
            let x = omega.letter_source(l);
            prod.phi(x, u)
                .map(|v| v.scaled(&field.sign(cs.degree(x))))
                .ok_or_else(|| Error::WindowOverflow(format!("{}▷u is outside the window", cs.name(x))))
        })
        .collect::<Result<_>>()?;
    let one = p.unit_vector()?;
    let cols: Vec<Vector> = (0..omega.words.dim())
        .map(|i| {
            omega.words.word(i).iter().fold(one.clone(), |acc, l| p.mul(&acc, &images[*l]))
        })
        .collect();
    let map = GradedMap::new(omega.words.space.clone(), p.space().clone(), 0, cols)?;
    let mut checked = check_bijective(&map, &mut failures);
    for i in 0..omega.words.dim() {
        if !omega.d_exact()[i] || omega.words.weight(i) >= trunc.weight_cap {
            continue;
        }
        let Some(dpsi) = p.d_exact_of(map.column(i)) else { continue };
        checked += 1;
        let psid = map.apply(omega.algebra.d().column(i));
        if dpsi != psid {
            failures.push(format!(
                "d ψ({}) = {} but ψ d = {}",
                omega.words.space.name(i),
                p.space().show(&dpsi),
                p.space().show(&psid)
            ));
        }
    }
    let report = BridgeReport {
        formula_dims: word_dims(&omega.words),
        sweedler_dims: crate::sweedler::examples::product_dims(&prod),
        map,
        checked,
        failures,
    };
    Ok((omega, prod, report))
}

/// BA (minus convention) against the conilpotent Sweedler hom T^c([u, A_-]) out of mc.
pub fn bar_vs_sweedler_hom(a: &DgAlgebra, trunc: Truncation) -> Result<(BarConstruction, SweedlerHom, BridgeReport)> {
    let field = a.field();
    let ba = bar(a, Convention::BAR_DEFAULT, trunc)?;
    let mc = mc_algebra(field, trunc.weight_cap.max(2))?;
    let phi = vec![Poly::term(vec![0, 0], field.from_i64(-1))];
    let hom = sweedler_hom_free(mc.words.letters.clone(), &phi, a, trunc, true)?;
    let as_ = a.space();
    let letter_image: Vec<(usize, Scalar)> = (0..ba.letters().dim())
        .map(|l| {
            let x = ba.letter_source(l);
            let k = hom.cogenerator(0, x).ok_or_else(|| Error::MissingStructure(format!("no cogenerator for {}", as_.name(x))))?;
            Ok((k, field.sign(as_.degree(x))))
        })
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let cols: Vec<Vector> = (0..ba.words.dim())
        .map(|i| {
            let mut w = Vec::new();
            let mut s = field.one();
            for l in ba.words.word(i) {
                w.push(letter_image[*l].0);
                s = &s * &letter_image[*l].1;
            }
            match hom.words.index_of(&w) {
                Some(k) => Vector::term(k, s),
                None => Vector::zero(),
            }
        })
        .collect();
    let map = GradedMap::new(ba.words.space.clone(), hom.words.space.clone(), 0, cols)?;
    let mut checked = check_bijective(&map, &mut failures);
    let hc = &hom.coalgebra;
    for i in 0..ba.words.dim() {
        if !ba.d_exact()[i] || !hc.complex.d_exact.iter().enumerate().all(|(k, ok)| *ok || map.column(i).coeff(&k).is_none()) {
            continue;
        }
        checked += 1;
        let lhs = hc.d().apply(map.column(i));
        let rhs = map.apply(ba.coalgebra.d().column(i));
        if lhs != rhs {
            failures.push(format!(
                "D ψ({}) = {} but ψ D = {}",
                ba.words.space.name(i),
                hom.words.space.show(&lhs),
                hom.words.space.show(&rhs)
            ));
        }
        if !ba.coalgebra.delta_exact(i) {
            continue;
        }
        checked += 1;
        let mut dl = Tensor2::zero();
        for ((x, y), s) in ba.coalgebra.delta(i).iter() {
            dl.add_scaled(&tensor2(map.column(*x), map.column(*y)), s);
        }
        if dl != hc.delta_of(map.column(i)) {
            failures.push(format!("ψ is not comultiplicative on {}", ba.words.space.name(i)));
        }
    }
    let report = BridgeReport {
        formula_dims: word_dims(&ba.words),
        sweedler_dims: word_dims(&hom.words),
        map,
        checked,
        failures,
    };
    Ok((ba, hom, report))
}
