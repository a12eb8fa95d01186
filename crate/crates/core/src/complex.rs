//! Differentials, dg tensor/hom, d²=0 checks and exact homology.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graded::{hom_space, tensor_space, GradedMap, HomSpace, Space, TensorSpace, Truncation, WindowMode};
use crate::linalg;
use crate::lincomb::{tensor2, Vector};

/// A graded space with a degree −1 map, plus bookkeeping on where truncation bites.
///
/// `d_exact[i]` is false when the true image of basis element `i` had terms outside the
/// carrier. `incomplete` lists degrees where the carrier misses basis elements of the
/// untruncated object.
#[derive(Clone, Debug)]
pub struct DgSpace {
    pub space: Space,
    pub d: GradedMap,
    pub d_exact: Vec<bool>,
    pub incomplete: BTreeSet<i64>,
}

impl DgSpace {
    pub fn new(d: GradedMap) -> Result<Self> {
        if d.degree != -1 {
            return Err(Error::DegreeMismatch(format!("differential has degree {}", d.degree)));
        }
        if d.source != d.target {
            return Err(Error::DegreeMismatch("differential must be an endomorphism".into()));
        }
        let n = d.source.dim();
        Ok(DgSpace { space: d.source.clone(), d, d_exact: vec![true; n], incomplete: BTreeSet::new() })
    }

    pub fn zero(space: Space) -> Self {
        let d = GradedMap::zero(space.clone(), space.clone(), -1);
        DgSpace::new(d).expect("zero differential")
    }

    pub fn with_flags(mut self, d_exact: Vec<bool>, incomplete: BTreeSet<i64>) -> Self {
        assert_eq!(d_exact.len(), self.space.dim());
        self.d_exact = d_exact;
        self.incomplete = incomplete;
        self
    }

    pub fn window(&self) -> Truncation {
        self.space.window()
    }

    /// Whether the degree-n slice and its differential are those of the untruncated object.
    pub fn degree_exact(&self, n: i64) -> bool {
        !self.incomplete.contains(&n) && self.space.degree_range(n).all(|i| self.d_exact[i])
    }

    /// d restricted to degree n, as columns.
    pub fn d_columns(&self, n: i64) -> Vec<Vector> {
        self.space.degree_range(n).map(|i| self.d.column(i).clone()).collect()
    }

    pub fn rank_d(&self, n: i64) -> usize {
        linalg::rank(&self.d_columns(n), self.space.field())
    }

    /// Shift every degree by n (basis names and order are kept); used for dimension-level checks.
    pub fn shifted(&self, n: i64) -> Result<DgSpace> {
        let sp = Arc::new(crate::graded::GradedSpace::new(
            self.space.field(),
            self.window().shifted(n),
            (0..self.space.dim()).map(|i| (self.space.name(i).to_string(), self.space.degree(i) + n)),
        )?);
        let d = GradedMap::new(sp.clone(), sp, -1, self.d.columns().to_vec())?;
        let incomplete = self.incomplete.iter().map(|d| d + n).collect();
        Ok(DgSpace::new(d)?.with_flags(self.d_exact.clone(), incomplete))
    }
}

/// d(x⊗y) = dx⊗y + (−1)^{|x|} x⊗dy.
pub fn dg_tensor(x: &DgSpace, y: &DgSpace, window: Truncation, mode: WindowMode) -> Result<(DgSpace, TensorSpace)> {
    let t = tensor_space(&x.space, &y.space, window, mode)?;
    let field = x.space.field();
    let mut exact = vec![true; t.space.dim()];
    let cols: Vec<Vector> = (0..t.space.dim())
        .map(|k| {
            let (i, j) = t.pair(k);
            let mut v = tensor2(x.d.column(i), &y.space.basis_vector(j));
            v.add_scaled(&tensor2(&x.space.basis_vector(i), y.d.column(j)), &field.sign(x.space.degree(i)));
            let (e, ok) = t.embed(&v);
            exact[k] = ok && x.d_exact[i] && y.d_exact[j];
            e
        })
        .collect();
    let d = GradedMap::new(t.space.clone(), t.space.clone(), -1, cols)?;
    Ok((DgSpace::new(d)?.with_flags(exact, BTreeSet::new()), t))
}

/// d(f) = d_Y f − (−1)^{|f|} f d_X, on the elementary maps of [X,Y].
pub fn dg_hom(x: &DgSpace, y: &DgSpace, window: Truncation) -> Result<(DgSpace, HomSpace)> {
    let h = hom_space(&x.space, &y.space, window)?;
    let mut exact = vec![true; h.space.dim()];
    let cols: Vec<Vector> = (0..h.space.dim())
        .map(|k| {
            let f = h.to_map(&h.space.basis_vector(k)).expect("basis elements are homogeneous");
            let df = hom_differential(&f, &x.d, &y.d);
            let (v, ok) = h.from_map(&df);
            exact[k] = ok;
            v
        })
        .collect();
    let d = GradedMap::new(h.space.clone(), h.space.clone(), -1, cols)?;
    Ok((DgSpace::new(d)?.with_flags(exact, BTreeSet::new()), h))
}

/// d(f) = d_Y∘f − (−1)^{|f|} f∘d_X.
pub fn hom_differential(f: &GradedMap, dx: &GradedMap, dy: &GradedMap) -> GradedMap {
    let a = dy.compose(f);
    let b = f.compose(dx).scaled(&f.field().sign(f.degree + 1));
    a.plus(&b)
}

#[derive(Clone, Debug, Default)]
pub struct SquareZeroReport {
    pub checked: usize,
    /// Basis elements with d²x ≠ 0, together with d²x.
    pub failures: Vec<(usize, Vector)>,
}

impl SquareZeroReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check d² = 0 on every basis element of degree ≥ degree_min + 2 whose double image
/// is fully known.
pub fn check_square_zero(x: &DgSpace) -> SquareZeroReport {
    let lo = x.window().degree_min + 2;
    let results: Vec<Option<(usize, Vector)>> = (0..x.space.dim())
        .into_par_iter()
        .filter(|&i| x.space.degree(i) >= lo && x.d_exact[i] && x.d.column(i).keys().all(|k| x.d_exact[*k]))
        .map(|i| {
            let dd = x.d.apply(x.d.column(i));
            (!dd.is_zero()).then_some((i, dd))
        })
        .collect();
    SquareZeroReport { checked: results.len(), failures: results.into_iter().flatten().collect() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyRow {
    pub degree: i64,
    pub dim: usize,
    pub trusted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub rows: Vec<HomologyRow>,
}

impl Homology {
    pub fn dim(&self, n: i64) -> Option<usize> {
        self.rows.iter().find(|r| r.degree == n).map(|r| r.dim)
    }

    pub fn trusted(&self) -> BTreeMap<i64, usize> {
        self.rows.iter().filter(|r| r.trusted).map(|r| (r.degree, r.dim)).collect()
    }

    pub fn is_trusted(&self, n: i64) -> bool {
        self.rows.iter().any(|r| r.degree == n && r.trusted)
    }
}

/// dim H_n = dim ker d_n − rank d_{n+1} for every degree of the window. A degree is
/// trusted when n±1 lie in the window and degrees n, n+1 are exact.
pub fn homology(x: &DgSpace) -> Result<Homology> {
    let report = check_square_zero(x);
    if let Some((i, dd)) = report.failures.first() {
        return Err(Error::NotAComplex(format!("d² {} = {}", x.space.name(*i), x.space.show(dd))));
    }
    let w = x.window();
    let degrees: Vec<i64> = (w.degree_min..=w.degree_max).collect();
    let ranks: BTreeMap<i64, usize> = degrees.par_iter().map(|&n| (n, x.rank_d(n))).collect();
    let rows = degrees
        .iter()
        .map(|&n| {
            let dim = x.space.dim_in(n);
            let up = ranks.get(&(n + 1)).copied().unwrap_or(0);
            let trusted = w.contains(n - 1) && w.contains(n + 1) && x.degree_exact(n) && x.degree_exact(n + 1);
            HomologyRow { degree: n, dim: dim - ranks[&n] - up, trusted }
        })
        .collect();
    Ok(Homology { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedSpace;
    use crate::scalar::Field;

    fn win() -> Truncation {
        Truncation::new(-4, 4, 4).unwrap()
    }

    fn arrow() -> DgSpace {
        // a (deg 1) → b (deg 0)
        let q = Field::Rational;
        let sp = Arc::new(GradedSpace::new(q, win(), [("b", 0), ("a", 1)]).unwrap());
        let d = GradedMap::new(sp.clone(), sp.clone(), -1, vec![Vector::zero(), sp.basis_vector(0)]).unwrap();
        DgSpace::new(d).unwrap()
    }

    fn point(deg: i64) -> DgSpace {
        let sp = Arc::new(GradedSpace::new(Field::Rational, win(), [("u", deg)]).unwrap());
        DgSpace::zero(sp)
    }

    #[test]
    fn tensor_with_odd_point() {
        let (t, ts) = dg_tensor(&point(-1), &arrow(), win(), WindowMode::Truncate).unwrap();
        let ua = ts.index_of(0, 1).unwrap();
        let ub = ts.index_of(0, 0).unwrap();
        assert_eq!(t.d.column(ua), &Vector::term(ub, Field::Rational.from_i64(-1)));
        assert!(check_square_zero(&t).passed());
    }

    #[test]
    fn acyclic_arrow() {
        let h = homology(&arrow()).unwrap();
        assert_eq!(h.dim(0), Some(0));
        assert_eq!(h.dim(1), Some(0));
    }

    #[test]
    fn hom_of_odd_map() {
        let q = Field::Rational;
        let (h, hs) = dg_hom(&arrow(), &arrow(), win()).unwrap();
        assert!(check_square_zero(&h).passed());
        // f = [b>a] has degree +1, so d(f) = d f + f d = [b>b] + [a>a]
        let f = hs.index_of(0, 1).unwrap();
        let mut want = Vector::term(hs.index_of(0, 0).unwrap(), q.one());
        want.add_term(hs.index_of(1, 1).unwrap(), q.one());
        assert_eq!(h.d.column(f), &want);
        // the identity is a chain map
        let mut id = Vector::term(hs.index_of(0, 0).unwrap(), q.one());
        id.add_term(hs.index_of(1, 1).unwrap(), q.one());
        assert!(h.d.apply(&id).is_zero());
    }

    #[test]
    fn corrupted_differential_is_located() {
        let q = Field::Rational;
        let sp = Arc::new(GradedSpace::new(q, win(), [("c", 0), ("b", 1), ("a", 2)]).unwrap());
        let d = GradedMap::new(sp.clone(), sp.clone(), -1, vec![Vector::zero(), sp.basis_vector(0), sp.basis_vector(1)])
            .unwrap();
        let x = DgSpace::new(d).unwrap();
        let r = check_square_zero(&x);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].0, 2);
        assert!(matches!(homology(&x), Err(Error::NotAComplex(_))));
    }
}
