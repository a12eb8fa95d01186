//! Graded vector spaces with named bases, homogeneous maps and the Koszul sign rule.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lincomb::{Tensor2, Vector};
use crate::scalar::{Field, Scalar};

/// Degree window plus a cap on word length (or weight) for free constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    pub degree_min: i64,
    pub degree_max: i64,
    pub weight_cap: usize,
}

impl Truncation {
    pub fn new(degree_min: i64, degree_max: i64, weight_cap: usize) -> Result<Self> {
        if degree_min > degree_max {
            return Err(Error::OutOfRange(format!("empty degree window {degree_min}:{degree_max}")));
        }
        if weight_cap < 1 {
            return Err(Error::OutOfRange("weight cap must be at least 1".into()));
        }
        Ok(Truncation { degree_min, degree_max, weight_cap })
    }

    pub fn contains(&self, degree: i64) -> bool {
        self.degree_min <= degree && degree <= self.degree_max
    }

    pub fn with_cap(self, weight_cap: usize) -> Self {
        Truncation { weight_cap, ..self }
    }

    /// Negated degree window, as used by graded duals.
    pub fn negated(self) -> Self {
        Truncation { degree_min: -self.degree_max, degree_max: -self.degree_min, ..self }
    }

    pub fn shifted(self, n: i64) -> Self {
        Truncation { degree_min: self.degree_min + n, degree_max: self.degree_max + n, ..self }
    }

    /// Smallest window containing both.
    pub fn hull(self, other: Truncation) -> Self {
        Truncation {
            degree_min: self.degree_min.min(other.degree_min),
            degree_max: self.degree_max.max(other.degree_max),
            weight_cap: self.weight_cap.max(other.weight_cap),
        }
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.degree_min, self.degree_max, self.weight_cap)
    }
}

/// What to do with elements that land outside a degree window.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WindowMode {
    #[default]
    Truncate,
    Strict,
}

/// A graded space with a finite named basis, ordered by (degree, insertion).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    field: Field,
    window: Truncation,
    names: Vec<String>,
    degrees: Vec<i64>,
    index: HashMap<String, usize>,
}

pub type Space = Arc<GradedSpace>;

impl GradedSpace {
    pub fn new<S: Into<String>>(
        field: Field,
        window: Truncation,
        elements: impl IntoIterator<Item = (S, i64)>,
    ) -> Result<Self> {
        let mut elems: Vec<(String, i64)> = elements.into_iter().map(|(s, d)| (s.into(), d)).collect();
        if let Some((n, d)) = elems.iter().find(|(_, d)| !window.contains(*d)) {
            return Err(Error::WindowOverflow(format!("{n} has degree {d} outside window {window}")));
        }
        elems.sort_by_key(|(_, d)| *d);
        let mut index = HashMap::with_capacity(elems.len());
        for (i, (n, _)) in elems.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate basis name {n:?}")));
            }
        }
        let (names, degrees) = elems.into_iter().unzip();
        Ok(GradedSpace { field, window, names, degrees, index })
    }

    /// Same as [`GradedSpace::new`] but drops elements outside the window.
    pub fn truncated<S: Into<String>>(
        field: Field,
        window: Truncation,
        elements: impl IntoIterator<Item = (S, i64)>,
    ) -> Result<Self> {
        let kept: Vec<(String, i64)> =
            elements.into_iter().map(|(s, d)| (s.into(), d)).filter(|(_, d)| window.contains(*d)).collect();
        Self::new(field, window, kept)
    }

    /// Basis `prefix0, prefix1, …` with the given dimension per degree.
    pub fn from_dims(field: Field, window: Truncation, prefix: &str, dims: &[(i64, usize)]) -> Result<Self> {
        let mut elems = Vec::new();
        for &(d, n) in dims {
            for _ in 0..n {
                elems.push((format!("{prefix}{}", elems.len()), d));
            }
        }
        Self::new(field, window, elems)
    }

    /// The ground field as a graded space concentrated in degree 0.
    pub fn unit(field: Field, window: Truncation) -> Self {
        Self::new(field, window, [("1", 0)]).expect("degree 0 lies in every window")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn window(&self) -> Truncation {
        self.window
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Indices of the basis elements of degree `n`.
    pub fn degree_range(&self, n: i64) -> Range<usize> {
        let lo = self.degrees.partition_point(|d| *d < n);
        let hi = self.degrees.partition_point(|d| *d <= n);
        lo..hi
    }

    pub fn dim_in(&self, n: i64) -> usize {
        self.degree_range(n).len()
    }

    /// Nonzero dimensions per degree.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for d in &self.degrees {
            *out.entry(*d).or_insert(0) += 1;
        }
        out
    }

    pub fn occupied_degrees(&self) -> Vec<i64> {
        self.dims().into_keys().collect()
    }

    /// Degree of a homogeneous nonzero vector.
    pub fn degree_of(&self, v: &Vector) -> Option<i64> {
        let mut it = v.keys().map(|k| self.degrees[*k]);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::term(i, self.field.one())
    }

    pub fn sign(&self, exp: i64) -> Scalar {
        self.field.sign(exp)
    }

    pub fn with_window(&self, window: Truncation) -> Result<Self> {
        Self::new(self.field, window, self.names.iter().cloned().zip(self.degrees.iter().copied()))
    }

    /// Render a vector using basis names.
    pub fn show(&self, v: &Vector) -> String {
        show_with(v, |i| self.names[*i].clone())
    }
}

pub(crate) fn show_with<K: Ord + Clone>(v: &crate::lincomb::LinComb<K>, name: impl Fn(&K) -> String) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (k, c)) in v.iter().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { c.neg() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag} "));
        }
        out.push_str(&name(k));
    }
    out
}

/// A homogeneous linear map, stored as the image of each source basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: Space,
    pub target: Space,
    pub degree: i64,
    columns: Vec<Vector>,
}

impl GradedMap {
    pub fn new(source: Space, target: Space, degree: i64, columns: Vec<Vector>) -> Result<Self> {
        if columns.len() != source.dim() {
            return Err(Error::DegreeMismatch(format!(
                "{} columns for a source of dimension {}",
                columns.len(),
                source.dim()
            )));
        }
        for (i, col) in columns.iter().enumerate() {
            for k in col.keys() {
                if *k >= target.dim() || target.degree(*k) != source.degree(i) + degree {
                    return Err(Error::DegreeMismatch(format!(
                        "image of {} is not homogeneous of degree {}",
                        source.name(i),
                        source.degree(i) + degree
                    )));
                }
            }
        }
        Ok(GradedMap { source, target, degree, columns })
    }

    /// Build from a column function, silently dropping target terms of the wrong degree.
    pub fn from_fn(source: Space, target: Space, degree: i64, mut f: impl FnMut(usize) -> Vector) -> Self {
        let columns = (0..source.dim())
            .map(|i| {
                let want = source.degree(i) + degree;
                f(i).filter(|k| target.degree(*k) == want)
            })
            .collect();
        GradedMap { source, target, degree, columns }
    }

    pub fn zero(source: Space, target: Space, degree: i64) -> Self {
        let columns = vec![Vector::zero(); source.dim()];
        GradedMap { source, target, degree, columns }
    }

    pub fn identity(space: Space) -> Self {
        let columns = (0..space.dim()).map(|i| space.basis_vector(i)).collect();
        GradedMap { source: space.clone(), target: space, degree: 0, columns }
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn column(&self, i: usize) -> &Vector {
        &self.columns[i]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        v.apply(|i| self.columns[*i].clone())
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &GradedMap) -> GradedMap {
        let columns = f.columns.iter().map(|c| self.apply(c)).collect();
        GradedMap { source: f.source.clone(), target: self.target.clone(), degree: f.degree + self.degree, columns }
    }

    pub fn scaled(&self, c: &Scalar) -> GradedMap {
        let columns = self.columns.iter().map(|v| v.scaled(c)).collect();
        GradedMap { columns, ..self.clone() }
    }

    pub fn neg(&self) -> GradedMap {
        self.scaled(&self.field().from_i64(-1))
    }

    /// Sum of two maps with the same source, target and degree.
    pub fn plus(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.degree, other.degree, "adding maps of different degrees");
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut s = a.clone();
                s.add(b);
                s
            })
            .collect();
        GradedMap { columns, ..self.clone() }
    }

    pub fn minus(&self, other: &GradedMap) -> GradedMap {
        self.plus(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// Basis elements where the two maps differ.
    pub fn differences(&self, other: &GradedMap) -> Vec<usize> {
        (0..self.columns.len()).filter(|i| self.columns[*i] != other.columns[*i]).collect()
    }
}

/// A homogeneous element of a tensor power, e.g. `x1⊗x2⊗x3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorWord {
    pub factors: Vec<(String, i64)>,
}

impl TensorWord {
    pub fn new<S: Into<String>>(factors: impl IntoIterator<Item = (S, i64)>) -> Self {
        TensorWord { factors: factors.into_iter().map(|(s, d)| (s.into(), d)).collect() }
    }

    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|(_, d)| d).sum()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// σ(x⊗y) = (−1)^{|x||y|} y⊗x.
pub fn koszul_swap(field: Field, x: &TensorWord, y: &TensorWord) -> (Scalar, TensorWord, TensorWord) {
    (field.sign(x.degree() * y.degree()), y.clone(), x.clone())
}

/// Sign of the permutation of homogeneous factors with the given degrees, under the
/// Koszul rule: each transposition of adjacent factors contributes `(−1)^{|a||b|}`.
pub fn koszul_sign_of_permutation(degrees: &[i64], perm: &[usize]) -> i64 {
    // perm[i] = source position of the factor placed at position i
    let mut exp = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                exp += degrees[perm[i]] * degrees[perm[j]];
            }
        }
    }
    exp
}

/// `X⊗Y`, with basis pairs ordered by (degree, left index, right index).
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub space: Space,
    pub left: Space,
    pub right: Space,
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

pub fn tensor_space(x: &Space, y: &Space, window: Truncation, mode: WindowMode) -> Result<TensorSpace> {
    if x.field() != y.field() {
        return Err(Error::MixedFields(x.field(), y.field()));
    }
    let mut raw = Vec::new();
    for i in 0..x.dim() {
        for j in 0..y.dim() {
            let d = x.degree(i) + y.degree(j);
            if !window.contains(d) {
                if mode == WindowMode::Strict {
                    return Err(Error::WindowOverflow(format!(
                        "{}|{} has degree {d} outside {window}",
                        x.name(i),
                        y.name(j)
                    )));
                }
                continue;
            }
            raw.push((d, i, j));
        }
    }
    raw.sort();
    let pairs: Vec<(usize, usize)> = raw.iter().map(|(_, i, j)| (*i, *j)).collect();
    let space = GradedSpace::new(
        x.field(),
        window,
        raw.iter().map(|(d, i, j)| (format!("{}|{}", x.name(*i), y.name(*j)), *d)),
    )?;
    let index = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    Ok(TensorSpace { space: Arc::new(space), left: x.clone(), right: y.clone(), pairs, index })
}

impl TensorSpace {
    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }

    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.index.get(&(i, j)).copied()
    }

    /// Embed a pair combination; the flag is false when some term fell outside the window.
    pub fn embed(&self, t: &Tensor2) -> (Vector, bool) {
        let mut exact = true;
        let v = t.map_keys(|(i, j)| {
            let k = self.index_of(*i, *j);
            exact &= k.is_some();
            k
        });
        (v, exact)
    }

    pub fn split(&self, v: &Vector) -> Tensor2 {
        v.map_keys(|k| Some(self.pairs[*k]))
    }

    /// The swap map X⊗Y → Y⊗X.
    pub fn swap_map(&self, other: &TensorSpace) -> GradedMap {
        let f = self.space.field();
        GradedMap::from_fn(self.space.clone(), other.space.clone(), 0, |k| {
            let (i, j) = self.pairs[k];
            let s = f.sign(self.left.degree(i) * self.right.degree(j));
            other.index_of(j, i).map(|m| Vector::term(m, s)).unwrap_or_default()
        })
    }
}

/// `[X,Y]` with basis the elementary maps `x ↦ y`, of degree |y|−|x|.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub space: Space,
    pub source: Space,
    pub target: Space,
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

/// Window wide enough to hold every elementary map between `x` and `y`.
pub fn hom_window(x: &GradedSpace, y: &GradedSpace) -> Truncation {
    let (xw, yw) = (x.window(), y.window());
    Truncation {
        degree_min: yw.degree_min - xw.degree_max,
        degree_max: yw.degree_max - xw.degree_min,
        weight_cap: xw.weight_cap.max(yw.weight_cap),
    }
}

pub fn hom_space(x: &Space, y: &Space, window: Truncation) -> Result<HomSpace> {
    if x.field() != y.field() {
        return Err(Error::MixedFields(x.field(), y.field()));
    }
    let mut raw = Vec::new();
    for i in 0..x.dim() {
        for j in 0..y.dim() {
            let d = y.degree(j) - x.degree(i);
            if window.contains(d) {
                raw.push((d, i, j));
            }
        }
    }
    raw.sort();
    let pairs: Vec<(usize, usize)> = raw.iter().map(|(_, i, j)| (*i, *j)).collect();
    let space = GradedSpace::new(
        x.field(),
        window,
        raw.iter().map(|(d, i, j)| (format!("[{}>{}]", x.name(*i), y.name(*j)), *d)),
    )?;
    let index = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    Ok(HomSpace { space: Arc::new(space), source: x.clone(), target: y.clone(), pairs, index })
}

impl HomSpace {
    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }

    pub fn index_of(&self, x: usize, y: usize) -> Option<usize> {
        self.index.get(&(x, y)).copied()
    }

    /// The graded map represented by a homogeneous vector of `[X,Y]`.
    pub fn to_map(&self, v: &Vector) -> Result<GradedMap> {
        let degree = match self.space.degree_of(v) {
            Some(d) => d,
            None if v.is_zero() => 0,
            None => return Err(Error::DegreeMismatch("inhomogeneous element of a hom space".into())),
        };
        let mut columns = vec![Vector::zero(); self.source.dim()];
        for (k, c) in v.iter() {
            let (i, j) = self.pairs[*k];
            columns[i].add_term(j, c.clone());
        }
        GradedMap::new(self.source.clone(), self.target.clone(), degree, columns)
    }

    /// Coordinates of a map; the flag is false when the map's degree is outside the window.
    pub fn from_map(&self, f: &GradedMap) -> (Vector, bool) {
        let mut exact = true;
        let mut out = Vector::zero();
        for i in 0..f.source.dim() {
            for (j, c) in f.column(i).iter() {
                match self.index_of(i, *j) {
                    Some(k) => out.add_term(k, c.clone()),
                    None => exact = false,
                }
            }
        }
        (out, exact)
    }

    /// Evaluate a hom-space vector on a source vector (no sign: maps act on the left).
    pub fn evaluate(&self, h: &Vector, x: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (k, c) in h.iter() {
            let (i, j) = self.pairs[*k];
            if let Some(a) = x.coeff(&i) {
                out.add_term(j, c * a);
            }
        }
        out
    }
}

/// λ¹(f)(y)(x) = f(x⊗y)(−1)^{|x||y|}: from f on X⊗Y to a map Y → [X,Z].
pub fn lambda1(f: &GradedMap, xy: &TensorSpace, hom: &HomSpace) -> GradedMap {
    let field = f.field();
    let y = &xy.right;
    let x = &xy.left;
    GradedMap::from_fn(y.clone(), hom.space.clone(), f.degree, |j| {
        let mut out = Vector::zero();
        for i in 0..x.dim() {
            let Some(k) = xy.index_of(i, j) else { continue };
            let s = field.sign(x.degree(i) * y.degree(j));
            for (z, c) in f.column(k).iter() {
                if let Some(h) = hom.index_of(i, *z) {
                    out.add_term(h, c * &s);
                }
            }
        }
        out
    })
}

/// λ²(f)(x)(y) = f(x⊗y): from f on X⊗Y to a map X → [Y,Z].
pub fn lambda2(f: &GradedMap, xy: &TensorSpace, hom: &HomSpace) -> GradedMap {
    let y = &xy.right;
    GradedMap::from_fn(xy.left.clone(), hom.space.clone(), f.degree, |i| {
        let mut out = Vector::zero();
        for j in 0..y.dim() {
            let Some(k) = xy.index_of(i, j) else { continue };
            for (z, c) in f.column(k).iter() {
                if let Some(h) = hom.index_of(j, *z) {
                    out.add_term(h, c.clone());
                }
            }
        }
        out
    })
}

/// Inverse of [`lambda1`].
pub fn uncurry1(g: &GradedMap, xy: &TensorSpace, hom: &HomSpace, z: &Space) -> GradedMap {
    let field = g.field();
    GradedMap::from_fn(xy.space.clone(), z.clone(), g.degree, |k| {
        let (i, j) = xy.pair(k);
        let s = field.sign(xy.left.degree(i) * xy.right.degree(j));
        hom.evaluate(g.column(j), &xy.left.basis_vector(i)).scaled(&s)
    })
}

/// Inverse of [`lambda2`].
pub fn uncurry2(g: &GradedMap, xy: &TensorSpace, hom: &HomSpace, z: &Space) -> GradedMap {
    GradedMap::from_fn(xy.space.clone(), z.clone(), g.degree, |k| {
        let (i, j) = xy.pair(k);
        hom.evaluate(g.column(i), &xy.right.basis_vector(j))
    })
}

/// Evaluation `ev: [Y,Z]⊗Y → Z`.
pub fn evaluation(hom: &HomSpace, t: &TensorSpace) -> GradedMap {
    GradedMap::from_fn(t.space.clone(), hom.target.clone(), 0, |k| {
        let (h, y) = t.pair(k);
        hom.evaluate(&hom.space.basis_vector(h), &hom.source.basis_vector(y))
    })
}

/// (f⊗g)(x⊗y) = (−1)^{|g||x|} f(x)⊗g(y).
pub fn strength_tensor(f: &GradedMap, g: &GradedMap, src: &TensorSpace, tgt: &TensorSpace) -> GradedMap {
    let field = f.field();
    GradedMap::from_fn(src.space.clone(), tgt.space.clone(), f.degree + g.degree, |k| {
        let (i, j) = src.pair(k);
        let s = field.sign(g.degree * src.left.degree(i));
        let t = crate::lincomb::tensor2(f.column(i), g.column(j));
        tgt.embed(&t).0.scaled(&s)
    })
}

/// `S^n X`: basis `s^n x` in degree |x|+n.
pub fn suspend(x: &GradedSpace, n: i64, mode: WindowMode) -> Result<GradedSpace> {
    if n == 0 {
        return Ok(x.clone());
    }
    let window = x.window();
    let elems: Vec<(String, i64)> = (0..x.dim()).map(|i| (suspended_name(x.name(i), n), x.degree(i) + n)).collect();
    match mode {
        WindowMode::Strict => GradedSpace::new(x.field(), window, elems),
        WindowMode::Truncate => GradedSpace::truncated(x.field(), window, elems),
    }
}

pub fn suspended_name(name: &str, n: i64) -> String {
    match n {
        0 => name.to_string(),
        1 => format!("s{name}"),
        -1 => format!("u{name}"),
        _ => format!("s^{n}{name}"),
    }
}

/// `X⋆` with dual basis `x*` in degree −|x|.
pub fn graded_dual(x: &GradedSpace) -> GradedSpace {
    GradedSpace::new(
        x.field(),
        x.window().negated(),
        (0..x.dim()).map(|i| (dual_name(x.name(i)), -x.degree(i))),
    )
    .expect("negated window contains negated degrees")
}

pub fn dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(_) => format!("{name}*"),
        None if name.contains(['|', '*', ' ']) => format!("({name})*"),
        None => format!("{name}*"),
    }
}

/// ᵗf(φ) = (−1)^{|φ||f|} φ∘f, as a map Y⋆ → X⋆ on dual bases.
pub fn transpose(f: &GradedMap, x_dual: &Space, y_dual: &Space) -> GradedMap {
    let field = f.field();
    // dual bases are re-sorted by degree, so match them by name
    let xpos: Vec<usize> = (0..f.source.dim()).map(|i| x_dual.index_of(&dual_name(f.source.name(i))).expect("dual of source")).collect();
    let ypos: Vec<usize> = (0..f.target.dim()).map(|j| y_dual.index_of(&dual_name(f.target.name(j))).expect("dual of target")).collect();
    let mut columns = vec![Vector::zero(); f.target.dim()];
    for i in 0..f.source.dim() {
        for (j, c) in f.column(i).iter() {
            let s = field.sign(-f.target.degree(*j) * f.degree);
            columns[ypos[*j]].add_term(xpos[i], c * &s);
        }
    }
    GradedMap::new(y_dual.clone(), x_dual.clone(), f.degree, columns).expect("transpose is homogeneous")
}
