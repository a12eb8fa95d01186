//! Twisting cochains C → A against algebra maps ΩC → A and coalgebra maps C → BA.
//!
//! With ω and β the universal cochains of the chosen conventions (±ω, ±β), α corresponds to
//! the algebra map g with g(s^{-1}c̄) = ±α(c) and to the coalgebra map f whose corestriction is
//! ±s∘α. The signs are those of the conventions, so both roundtrips are identities.

use rayon::prelude::*;

use crate::algebra::DgAlgebra;
use crate::coalgebra::{coalgebra_map_failures, coextend_map_conilpotent, DgCoalgebra};
use crate::enumerate::Slots;
use crate::error::{Error, Result};
use crate::graded::GradedMap;
use crate::lincomb::Vector;

use super::construct::{BarConstruction, CobarConstruction};
use super::twisting::verify_twisting_cochain;

#[derive(Clone, Debug, Default)]
pub struct MapReport {
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl MapReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Transforms {
    /// ΩC → A
    pub algebra_map: GradedMap,
    /// C → BA
    pub coalgebra_map: GradedMap,
    pub algebra_report: MapReport,
    pub coalgebra_report: MapReport,
}

impl Transforms {
    pub fn passed(&self) -> bool {
        self.algebra_report.passed() && self.coalgebra_report.passed()
    }
}

fn require_pointed(c: &DgCoalgebra, a: &DgAlgebra, alpha: &GradedMap) -> Result<usize> {
    let e = c.checked_atom()?;
    if !alpha.column(e).is_zero() {
        return Err(Error::MissingStructure("α must vanish on the atom".into()));
    }
    for x in 0..c.dim() {
        if !a.augment(alpha.column(x))?.is_zero() {
            return Err(Error::MissingStructure(format!("ε_A α({}) ≠ 0", c.space().name(x))));
        }
    }
    Ok(e)
}

/// The algebra map ΩC → A sending the letter l to `images[l]`.
pub fn algebra_map_on_letters(cobar: &CobarConstruction, a: &DgAlgebra, images: &[Vector]) -> Result<(GradedMap, Vec<bool>)> {
    let one = a.unit_vector()?;
    let mut exact = vec![true; cobar.words.dim()];
    let cols: Vec<Vector> = (0..cobar.words.dim())
        .map(|i| {
            let mut acc = one.clone();
            for l in cobar.words.word(i) {
                match a.mul_exact(&acc, &images[*l]) {
                    Some(v) => acc = v,
                    None => {
                        exact[i] = false;
                        return Vector::zero();
                    }
                }
            }
            acc
        })
        .collect();
    Ok((GradedMap::new(cobar.words.space.clone(), a.space().clone(), 0, cols)?, exact))
}

/// The coalgebra map C → BA whose corestriction sends x to `core(x)` (letter coordinates).
pub fn coalgebra_map_from_corestriction(c: &DgCoalgebra, bar: &BarConstruction, core: &dyn Fn(usize) -> Vector) -> Result<(GradedMap, bool)> {
    coextend_map_conilpotent(c, core, &bar.words)
}

/// g d = d g, g(1) = 1 and ε g = ε on the columns whose ingredients are exact.
pub fn check_dg_algebra_map(cobar: &CobarConstruction, a: &DgAlgebra, g: &GradedMap, exact: &[bool]) -> MapReport {
    let mut r = MapReport::default();
    let src = &cobar.algebra;
    let sp = src.space();
    for i in 0..src.dim() {
        let dcol = src.d().column(i);
        if !exact[i] || !src.complex.d_exact[i] || dcol.keys().any(|k| !exact[*k]) {
            r.skipped += 1;
            continue;
        }
        let Some(dg) = a.d_exact_of(g.column(i)) else {
            r.skipped += 1;
            continue;
        };
        r.checked += 1;
        let gd = g.apply(dcol);
        if dg != gd {
            r.failures.push(format!("d g({}) = {} but g d = {}", sp.name(i), a.space().show(&dg), a.space().show(&gd)));
        }
        match (a.augment(g.column(i)), src.augment(&sp.basis_vector(i))) {
            (Ok(x), Ok(y)) if x != y => r.failures.push(format!("ε g({}) ≠ ε", sp.name(i))),
            _ => {}
        }
    }
    if let (Some(e), Ok(one)) = (cobar.words.empty(), a.unit_vector()) {
        r.checked += 1;
        if *g.column(e) != one {
            r.failures.push("g(1) ≠ 1".into());
        }
    }
    r
}

/// Δ f = (f⊗f)Δ, ε f = ε and D f = f d, the last compared on words shorter than the cap
/// (D lowers length by at most one, so those components are exact).
pub fn check_dg_coalgebra_map(c: &DgCoalgebra, bar: &BarConstruction, f: &GradedMap, exact: bool) -> MapReport {
    let mut r = MapReport::default();
    let cs = c.space();
    let b = &bar.coalgebra;
    for x in coalgebra_map_failures(c, b, f) {
        r.failures.push(format!("f is not comultiplicative on {}", cs.name(x)));
    }
    r.checked += c.dim();
    let cap = bar.words.cap;
    for x in 0..c.dim() {
        if !exact || !c.complex.d_exact[x] || !b.complex.d_exact.iter().enumerate().all(|(k, ok)| *ok || f.column(x).coeff(&k).is_none()) {
            r.skipped += 1;
            continue;
        }
        r.checked += 2;
        let short = |v: &Vector| v.filter(|k| bar.words.word(*k).len() < cap);
        let df = short(&b.d().apply(f.column(x)));
        let fd = short(&f.apply(c.d().column(x)));
        if df != fd {
            r.failures.push(format!(
                "D f({}) = {} but f d = {}",
                cs.name(x),
                bar.words.space.show(&df),
                bar.words.space.show(&fd)
            ));
        }
        match (b.counit_of(f.column(x)), c.counit_of(&cs.basis_vector(x))) {
            (Ok(p), Ok(q)) if p != q => r.failures.push(format!("ε f({}) ≠ ε", cs.name(x))),
            _ => {}
        }
    }
    r
}

/// α ↦ (g, f), with both maps checked.
pub fn adjunction_transforms(
    c: &DgCoalgebra,
    a: &DgAlgebra,
    alpha: &GradedMap,
    cobar: &CobarConstruction,
    bar: &BarConstruction,
) -> Result<Transforms> {
    require_pointed(c, a, alpha)?;
    let field = a.field();
    let gs = cobar.convention.sign(field);
    let images: Vec<Vector> = (0..cobar.letters().dim())
        .map(|l| alpha.column(cobar.letter_source(l)).scaled(&gs))
        .collect();
    let (g, g_exact) = algebra_map_on_letters(cobar, a, &images)?;
    let fs = bar.convention.sign(field);
    let core = |x: usize| bar.suspend(alpha.column(x)).scaled(&fs);
    let (f, f_exact) = coalgebra_map_from_corestriction(c, bar, &core)?;
    Ok(Transforms {
        algebra_report: check_dg_algebra_map(cobar, a, &g, &g_exact),
        coalgebra_report: check_dg_coalgebra_map(c, bar, &f, f_exact),
        algebra_map: g,
        coalgebra_map: f,
    })
}

/// α(c) = ±g(s^{-1}c̄), α(e) = 0.
pub fn extract_from_algebra_map(c: &DgCoalgebra, a: &DgAlgebra, cobar: &CobarConstruction, g: &GradedMap) -> Result<GradedMap> {
    let sign = cobar.convention.sign(a.field());
    let cols = (0..c.dim())
        .map(|x| match cobar.letter_for(x) {
            None => Ok(Vector::zero()),
            Some(l) => {
                let w = cobar.words.letter_word(l).ok_or_else(|| {
                    Error::WindowOverflow(format!("the letter {} is outside the window", cobar.letters().name(l)))
                })?;
                Ok(g.column(w).scaled(&sign))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    GradedMap::new(c.space().clone(), a.space().clone(), -1, cols)
}

/// α = ±s^{-1}∘(length-one part of f).
pub fn extract_from_coalgebra_map(c: &DgCoalgebra, a: &DgAlgebra, bar: &BarConstruction, f: &GradedMap) -> Result<GradedMap> {
    let sign = bar.convention.sign(a.field());
    let cols = (0..c.dim())
        .map(|x| {
            let mut v = Vector::zero();
            for (k, s) in f.column(x).iter() {
                if let [l] = bar.words.word(*k).as_slice() {
                    v.add_scaled(&bar.desuspend_letter(*l), &(s * &sign));
                }
            }
            v
        })
        .collect();
    GradedMap::new(c.space().clone(), a.space().clone(), -1, cols)
}

/// Exhaustive counts over a finite field for the three sides of the adjunction, plus the
/// roundtrips through every twisting cochain found.
#[derive(Clone, Debug, Default)]
pub struct AdjunctionCensus {
    pub candidates: u64,
    pub twisting: usize,
    pub algebra_maps: usize,
    pub coalgebra_maps: usize,
    pub roundtrip_failures: Vec<String>,
}

impl AdjunctionCensus {
    pub fn passed(&self) -> bool {
        self.twisting == self.algebra_maps && self.twisting == self.coalgebra_maps && self.roundtrip_failures.is_empty()
    }
}

pub fn adjunction_census(c: &DgCoalgebra, a: &DgAlgebra, cobar: &CobarConstruction, bar: &BarConstruction) -> Result<AdjunctionCensus> {
    let field = a.field();
    let e = c.checked_atom()?;
    let unit = a.unit_index().ok_or_else(|| Error::MissingStructure("the unit must be a basis element".into()))?;
    let (cs, as_) = (c.space(), a.space());
    let abar = |k: usize| bar.desuspend_letter(bar.letter_for(k).unwrap());

    // α(x) = Σ λ ā for x ≠ e; the same slots serve Tw• and the letter images of g.
    let slots: Vec<(usize, usize)> = (0..c.dim())
        .filter(|x| *x != e)
        .flat_map(|x| as_.degree_range(cs.degree(x) - 1).filter(move |k| *k != unit).map(move |k| (x, k)))
        .collect();
    let tw = Slots::new(field, c.dim(), slots)?;
    let alpha_of = |n: u64| -> Result<GradedMap> {
        let cols = tw.columns(n).into_iter().map(|col| {
            let mut v = Vector::zero();
            for (k, s) in col.iter() {
                v.add_scaled(&abar(*k), s);
            }
            v
        });
        GradedMap::new(cs.clone(), as_.clone(), -1, cols.collect())
    };

    let twisting: Vec<u64> = (0..tw.count())
        .into_par_iter()
        .filter(|n| alpha_of(*n).map(|al| verify_twisting_cochain(c, a, &al, true).passed()).unwrap_or(false))
        .collect();

    let gsign = cobar.convention.sign(field);
    let algebra_maps = (0..tw.count())
        .into_par_iter()
        .map(|n| -> Result<bool> {
            let al = alpha_of(n)?;
            let images: Vec<Vector> =
                (0..cobar.letters().dim()).map(|l| al.column(cobar.letter_source(l)).scaled(&gsign)).collect();
            let (g, ex) = algebra_map_on_letters(cobar, a, &images)?;
            Ok(check_dg_algebra_map(cobar, a, &g, &ex).passed())
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|x| *x)
        .count();

    // corestrictions C̄ → sĀ of degree 0
    let bl = bar.letters().clone();
    let cslots: Vec<(usize, usize)> =
        (0..c.dim()).filter(|x| *x != e).flat_map(|x| bl.degree_range(cs.degree(x)).map(move |l| (x, l))).collect();
    let co = Slots::new(field, c.dim(), cslots)?;
    let coalgebra_maps = (0..co.count())
        .into_par_iter()
        .map(|n| -> Result<bool> {
            let cols = co.columns(n);
            let (f, ex) = coalgebra_map_from_corestriction(c, bar, &|x| cols[x].clone())?;
            Ok(check_dg_coalgebra_map(c, bar, &f, ex).passed())
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|x| *x)
        .count();

    let mut roundtrip_failures = Vec::new();
    for n in &twisting {
        let al = alpha_of(*n)?;
        let t = adjunction_transforms(c, a, &al, cobar, bar)?;
        if !t.passed() {
            roundtrip_failures.push(format!("transforms of cochain #{n} are not dg maps"));
        }
        if extract_from_algebra_map(c, a, cobar, &t.algebra_map)?.columns() != al.columns() {
            roundtrip_failures.push(format!("extract(g) ≠ α for cochain #{n}"));
        }
        if extract_from_coalgebra_map(c, a, bar, &t.coalgebra_map)?.columns() != al.columns() {
            roundtrip_failures.push(format!("extract(f) ≠ α for cochain #{n}"));
        }
    }
    Ok(AdjunctionCensus {
        candidates: tw.count(),
        twisting: twisting.len(),
        algebra_maps,
        coalgebra_maps,
        roundtrip_failures,
    })
}
