//! Presentation files to library objects and back.

use std::collections::HashMap;
use std::sync::Arc;

use sweedler::algebra::DgAlgebra;
use sweedler::coalgebra::DgCoalgebra;
use sweedler::complex::DgSpace;
use sweedler::graded::{GradedMap, GradedSpace, Space, Truncation};
use sweedler::lincomb::{Poly, Tensor2, Vector};
use sweedler::presented::{normal_forms, Generator, PresentedAlgebra};
use sweedler::Scalar;

use crate::error::CliError;
use crate::format::{Decl, Kind, PresentationFile, Terms};

fn expect_kind(f: &PresentationFile, kind: Kind) -> Result<(), CliError> {
    if f.kind == kind {
        Ok(())
    } else {
        Err(CliError::Usage(format!("expected a file of kind {kind:?}, found {:?}", f.kind).to_lowercase()))
    }
}

/// Smallest window holding every declared degree (and 0, for units and counits).
fn declared_window(decls: &[Decl], window: Option<Truncation>) -> Truncation {
    let lo = decls.iter().map(|d| d.degree).min().unwrap_or(0).min(0);
    let hi = decls.iter().map(|d| d.degree).max().unwrap_or(0).max(0);
    let cap = decls.iter().filter_map(|d| d.weight).max().unwrap_or(1).max(1);
    let w = Truncation { degree_min: lo, degree_max: hi, weight_cap: cap };
    window.map_or(w, |x| x.hull(w))
}

fn basis_space(f: &PresentationFile) -> Result<Space, CliError> {
    let w = declared_window(&f.basis, f.window);
    Ok(Arc::new(GradedSpace::new(f.field, w, f.basis.iter().map(|d| (d.name.clone(), d.degree)))?))
}

/// Weights in space order, when every basis element declares one.
fn weights(f: &PresentationFile, sp: &GradedSpace) -> Option<Vec<usize>> {
    let by_name: HashMap<&str, usize> = f.basis.iter().filter_map(|d| Some((d.name.as_str(), d.weight?))).collect();
    (by_name.len() == f.basis.len()).then(|| (0..sp.dim()).map(|i| by_name[sp.name(i)]).collect())
}

fn index(sp: &GradedSpace, name: &str) -> Result<usize, CliError> {
    sp.index_of(name).ok_or_else(|| CliError::UnknownName(name.to_string()))
}

fn vector(sp: &GradedSpace, terms: &Terms, what: &str) -> Result<Vector, CliError> {
    let mut v = Vector::zero();
    for (c, names) in terms {
        match names.as_slice() {
            [n] => v.add_term(index(sp, n)?, c.clone()),
            _ => return Err(CliError::Usage(format!("{what}: every term names exactly one basis element"))),
        }
    }
    Ok(v)
}

fn tensor(sp: &GradedSpace, terms: &Terms, what: &str) -> Result<Tensor2, CliError> {
    let mut t = Tensor2::zero();
    for (c, names) in terms {
        match names.as_slice() {
            [x, y] => t.add_term((index(sp, x)?, index(sp, y)?), c.clone()),
            _ => return Err(CliError::Usage(format!("{what}: every term names exactly two basis elements"))),
        }
    }
    Ok(t)
}

fn scalars(sp: &GradedSpace, rows: &[(String, Scalar)]) -> Result<Vec<Scalar>, CliError> {
    let mut out = vec![sp.field().zero(); sp.dim()];
    for (n, s) in rows {
        out[index(sp, n)?] = s.clone();
    }
    Ok(out)
}

fn differential(f: &PresentationFile, sp: &Space) -> Result<DgSpace, CliError> {
    let mut cols = vec![Vector::zero(); sp.dim()];
    for (x, t) in &f.differential {
        cols[index(sp, x)?] = vector(sp, t, &format!("d({x})"))?;
    }
    Ok(DgSpace::new(GradedMap::new(sp.clone(), sp.clone(), -1, cols)?)?)
}

fn poly(gens: &HashMap<&str, usize>, terms: &Terms) -> Result<Poly, CliError> {
    let mut p = Poly::zero();
    for (c, names) in terms {
        let w = names.iter().map(|n| gens.get(n.as_str()).copied().ok_or_else(|| CliError::UnknownName(n.clone())));
        p.add_term(w.collect::<Result<Vec<_>, _>>()?, c.clone());
    }
    Ok(p)
}

/// The presented algebra of a `[generators]` file; `window` applies when the file has none.
pub fn presented(f: &PresentationFile, window: Truncation) -> Result<PresentedAlgebra, CliError> {
    expect_kind(f, Kind::Algebra)?;
    let gens: Vec<Generator> = f
        .generators
        .iter()
        .map(|d| Generator { name: d.name.clone(), degree: d.degree, weight: d.weight.unwrap_or(1) })
        .collect();
    let index: HashMap<&str, usize> = f.generators.iter().enumerate().map(|(i, d)| (d.name.as_str(), i)).collect();
    let gen = |g: &str| index.get(g).copied().ok_or_else(|| CliError::UnknownName(g.to_string()));
    let mut p = PresentedAlgebra::new(f.field, gens, f.window.unwrap_or(window));
    for r in &f.relations {
        p.add_relation(poly(&index, r)?);
    }
    for (g, t) in &f.differential {
        p.d_on_generators[gen(g)?] = poly(&index, t)?;
    }
    let zero = f.field.zero();
    p.augmentation = if !f.augmentation.is_empty() {
        let mut eps = vec![zero; f.generators.len()];
        for (g, s) in &f.augmentation {
            eps[gen(g)?] = s.clone();
        }
        Some(eps)
    } else {
        // generators ↦ 0 is an augmentation exactly when no relation has a constant term
        let constant = f.relations.iter().flatten().any(|(c, w)| w.is_empty() && !c.is_zero());
        (!constant).then(|| vec![zero; f.generators.len()])
    };
    Ok(p)
}

pub fn algebra(f: &PresentationFile, window: Truncation) -> Result<DgAlgebra, CliError> {
    expect_kind(f, Kind::Algebra)?;
    if f.is_presented() {
        return Ok(normal_forms(&presented(f, window)?)?.algebra);
    }
    let sp = basis_space(f)?;
    let mut table = Vec::new();
    for (x, y, t) in &f.products {
        table.push(((index(&sp, x)?, index(&sp, y)?), vector(&sp, t, &format!("{x}·{y}"))?));
    }
    let unit = f.unit.as_ref().map(|t| vector(&sp, t, "unit")).transpose()?;
    let aug = (!f.augmentation.is_empty()).then(|| scalars(&sp, &f.augmentation)).transpose()?;
    let a = DgAlgebra::from_table(differential(f, &sp)?, table, unit, aug)?;
    Ok(match weights(f, &sp) {
        Some(w) => a.with_weights(w, None),
        None => a,
    })
}

pub fn coalgebra(f: &PresentationFile) -> Result<DgCoalgebra, CliError> {
    expect_kind(f, Kind::Coalgebra)?;
    if f.is_presented() {
        return Err(CliError::Usage("coalgebras are given by a [basis] and a [coproduct] table".into()));
    }
    let sp = basis_space(f)?;
    let mut comult = vec![Tensor2::zero(); sp.dim()];
    for (x, t) in &f.coproduct {
        comult[index(&sp, x)?] = tensor(&sp, t, &format!("Δ({x})"))?;
    }
    let counit = (!f.counit.is_empty()).then(|| scalars(&sp, &f.counit)).transpose()?;
    let atom = f.atom.as_ref().map(|a| index(&sp, a)).transpose()?;
    let c = DgCoalgebra::from_table(differential(f, &sp)?, comult, counit, atom)?;
    Ok(match weights(f, &sp) {
        Some(w) => c.with_weights(w),
        None => c,
    })
}

/// A map between known spaces; unlisted source elements go to zero.
pub fn map(f: &PresentationFile, source: &Space, target: &Space) -> Result<GradedMap, CliError> {
    expect_kind(f, Kind::Map)?;
    let degree = f.degree.ok_or_else(|| CliError::Usage("a map needs a `degree` header".into()))?;
    let mut cols = vec![Vector::zero(); source.dim()];
    for (x, t) in &f.values {
        cols[index(source, x)?] = vector(target, t, &format!("value on {x}"))?;
    }
    Ok(GradedMap::new(source.clone(), target.clone(), degree, cols)?)
}

fn terms_of(sp: &GradedSpace, v: &Vector) -> Terms {
    v.iter().map(|(k, c)| (c.clone(), vec![sp.name(*k).to_string()])).collect()
}

fn basis_of(sp: &GradedSpace, weights: Option<&Vec<usize>>) -> Vec<Decl> {
    (0..sp.dim())
        .map(|i| Decl { name: sp.name(i).to_string(), degree: sp.degree(i), weight: weights.map(|w| w[i]) })
        .collect()
}

fn differential_rows(d: &GradedMap) -> Vec<(String, Terms)> {
    let sp = &d.source;
    (0..sp.dim())
        .filter(|i| !d.column(*i).is_zero())
        .map(|i| (sp.name(i).to_string(), terms_of(&d.target, d.column(i))))
        .collect()
}

fn named(sp: &GradedSpace, s: &[Scalar]) -> Vec<(String, Scalar)> {
    s.iter().enumerate().map(|(i, c)| (sp.name(i).to_string(), c.clone())).collect()
}

/// Table form of an algebra, in basis order.
pub fn algebra_file(a: &DgAlgebra) -> PresentationFile {
    let sp = a.space();
    let mut f = PresentationFile::new(a.field(), Kind::Algebra);
    f.basis = basis_of(sp, a.weights.as_ref());
    f.unit = a.unit.as_ref().map(|u| terms_of(sp, u));
    let mut table: Vec<_> = a.table().filter(|(_, v)| !v.is_zero()).collect();
    table.sort_by_key(|(k, _)| **k);
    f.products = table.into_iter().map(|((i, j), v)| (sp.name(*i).to_string(), sp.name(*j).to_string(), terms_of(sp, v))).collect();
    f.differential = differential_rows(a.d());
    f.augmentation = a.augmentation.as_ref().map(|e| named(sp, e)).unwrap_or_default();
    f
}

pub fn coalgebra_file(c: &DgCoalgebra) -> PresentationFile {
    let sp = c.space();
    let mut f = PresentationFile::new(c.field(), Kind::Coalgebra);
    f.basis = basis_of(sp, c.weights.as_ref());
    f.coproduct = (0..c.dim())
        .filter(|i| !c.delta(*i).is_zero())
        .map(|i| {
            let t = c.delta(i).iter().map(|((x, y), s)| (s.clone(), vec![sp.name(*x).to_string(), sp.name(*y).to_string()]));
            (sp.name(i).to_string(), t.collect())
        })
        .collect();
    f.counit = c.counit.as_ref().map(|e| named(sp, e)).unwrap_or_default();
    f.differential = differential_rows(c.d());
    f.atom = c.atom.map(|e| sp.name(e).to_string());
    f
}

pub fn map_file(m: &GradedMap) -> PresentationFile {
    let mut f = PresentationFile::new(m.field(), Kind::Map);
    f.degree = Some(m.degree);
    f.values = differential_rows(m);
    f
}
