//! Algebras given by generators and relations, normalized inside a window.
//!
//! Generators that a relation expresses linearly in terms of the others are eliminated
//! first; the remaining ideal is handled by degreewise elimination over all words of
//! weight ≤ cap, preferring large words as pivots so normal forms are small words.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::DgAlgebra;
use crate::complex::DgSpace;
use crate::error::{Error, Result};
use crate::graded::{GradedMap, GradedSpace, Space, Truncation};
use crate::linalg::Echelon;
use crate::lincomb::{Poly, Vector};
use crate::scalar::{Field, Scalar};
use crate::words::{extend_derivation_on_word, poly_mul, WordBasis};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub weight: usize,
}

/// Generators, relations (noncommutative polynomials in generator indices), the
/// differential on generators and an optional augmentation on generators.
#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    pub field: Field,
    pub generators: Vec<Generator>,
    pub relations: Vec<Poly>,
    pub d_on_generators: Vec<Poly>,
    pub augmentation: Option<Vec<Scalar>>,
    pub trunc: Truncation,
}

impl PresentedAlgebra {
    pub fn new(field: Field, generators: Vec<Generator>, trunc: Truncation) -> Self {
        let n = generators.len();
        PresentedAlgebra {
            field,
            generators,
            relations: Vec::new(),
            d_on_generators: vec![Poly::zero(); n],
            augmentation: None,
            trunc,
        }
    }

    pub fn add_relation(&mut self, r: Poly) {
        if !r.is_zero() {
            self.relations.push(r);
        }
    }

    pub fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|g| self.generators[*g].degree).sum()
    }

    pub fn word_weight(&self, w: &[usize]) -> usize {
        w.iter().map(|g| self.generators[*g].weight).sum()
    }

    fn check_homogeneous(&self, p: &Poly, what: &str) -> Result<Option<i64>> {
        let mut deg = None;
        for w in p.keys() {
            let d = self.word_degree(w);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(Error::DegreeMismatch(format!("{what} mixes degrees {e} and {d}")));
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    fn weight_homogeneous(&self, p: &Poly) -> bool {
        let mut ws = p.keys().map(|w| self.word_weight(w));
        match ws.next() {
            None => true,
            Some(w0) => ws.all(|w| w == w0),
        }
    }
}

/// The quotient algebra in normal-form coordinates, with the data needed to map
/// polynomials in the original generators to it.
#[derive(Clone, Debug)]
pub struct NormalForms {
    pub algebra: DgAlgebra,
    /// Words in the surviving generators, in every degree reachable within the cap.
    pub words: WordBasis,
    /// Letter index → original generator.
    pub remaining: Vec<usize>,
    /// Original generator → polynomial in letters.
    pub substitution: Vec<Poly>,
    /// Relations or weights were not homogeneous, so the window may miss ideal elements.
    pub approximate: bool,
    pub carrier_words: Vec<usize>,
    word_to_carrier: HashMap<usize, usize>,
    ideal: Echelon,
}

impl NormalForms {
    fn key(&self, i: usize) -> usize {
        self.words.dim() - 1 - i
    }

    /// Normal form of a polynomial in letters; the flag is false if some term left the carrier.
    pub fn reduce_letters(&self, p: &Poly) -> (Vector, bool) {
        let (v, mut exact) = self.words.embed(p);
        let keyed = v.map_keys(|i| Some(self.key(*i)));
        let r = self.ideal.reduce(&keyed);
        let out = r.map_keys(|k| {
            let c = self.word_to_carrier.get(&(self.words.dim() - 1 - k)).copied();
            exact &= c.is_some();
            c
        });
        (out, exact)
    }

    /// Normal form of a polynomial in the original generators.
    pub fn reduce(&self, p: &Poly) -> (Vector, bool) {
        let (q, pruned) = substitute_all(p, &self.substitution, &self.words.weights, self.words.cap, true);
        let (v, ok) = self.reduce_letters(&q);
        (v, ok && !pruned)
    }

    /// Class of an original generator.
    pub fn class_of(&self, g: usize) -> (Vector, bool) {
        self.reduce_letters(&self.substitution[g])
    }

    pub fn carrier_word(&self, i: usize) -> &[usize] {
        self.words.word(self.carrier_words[i])
    }
}

/// Replace each original generator by its polynomial in letters, dropping words whose
/// letter weight exceeds `cap`. The flag reports whether anything was dropped.
fn substitute_all(p: &Poly, subst: &[Poly], weights: &[usize], cap: usize, prune: bool) -> (Poly, bool) {
    let mut out = Poly::zero();
    let mut pruned = false;
    for (w, c) in p.iter() {
        let mut acc: Vec<(Vec<usize>, usize, Scalar)> = vec![(Vec::new(), 0, c.clone())];
        for g in w {
            let mut next = Vec::new();
            for (pre, pw, pc) in &acc {
                for (mid, mc) in subst[*g].iter() {
                    let mw: usize = mid.iter().map(|l| weights[*l]).sum();
                    if prune && pw + mw > cap {
                        pruned = true;
                        continue;
                    }
                    let mut nw = pre.clone();
                    nw.extend_from_slice(mid);
                    next.push((nw, pw + mw, pc * mc));
                }
            }
            acc = next;
        }
        for (nw, _, nc) in acc {
            out.add_term(nw, nc);
        }
    }
    (out, pruned)
}

/// Substitute one generator inside a polynomial over original generators.
fn substitute_one(p: &Poly, g: usize, value: &Poly, weights: &[usize], cap: usize) -> Poly {
    let mut out = Poly::zero();
    for (w, c) in p.iter() {
        if !w.contains(&g) {
            out.add_term(w.clone(), c.clone());
            continue;
        }
        let mut acc: Vec<(Vec<usize>, usize, Scalar)> = vec![(Vec::new(), 0, c.clone())];
        for l in w {
            let mut next = Vec::new();
            for (pre, pw, pc) in &acc {
                if *l == g {
                    for (mid, mc) in value.iter() {
                        let mw: usize = mid.iter().map(|x| weights[*x]).sum();
                        if pw + mw > cap {
                            continue;
                        }
                        let mut nw = pre.clone();
                        nw.extend_from_slice(mid);
                        next.push((nw, pw + mw, pc * mc));
                    }
                } else if pw + weights[*l] <= cap {
                    let mut nw = pre.clone();
                    nw.push(*l);
                    next.push((nw, pw + weights[*l], pc.clone()));
                }
            }
            acc = next;
        }
        for (nw, _, nc) in acc {
            out.add_term(nw, nc);
        }
    }
    out
}

/// Eliminate generators occurring as a lone linear term of some relation. Weight-0
/// generators go first, then heavier ones.
fn tietze(p: &PresentedAlgebra, weights: &[usize], cap: usize) -> Result<(Vec<Option<Poly>>, Vec<Poly>)> {
    let n = p.generators.len();
    let mut rels: Vec<Poly> = p
        .relations
        .iter()
        .map(|r| r.filter(|w| w.iter().map(|g| weights[*g]).sum::<usize>() <= cap))
        .filter(|r| !r.is_zero())
        .collect();
    let mut subst: Vec<Option<Poly>> = vec![None; n];
    loop {
        let mut best: Option<((bool, usize, usize, std::cmp::Reverse<usize>), usize, usize, Scalar)> = None;
        for (ri, r) in rels.iter().enumerate() {
            let mut single: BTreeMap<usize, Scalar> = BTreeMap::new();
            let mut multi: HashSet<usize> = HashSet::new();
            for (w, c) in r.iter() {
                if w.len() == 1 {
                    single.insert(w[0], c.clone());
                } else {
                    multi.extend(w.iter().copied());
                }
            }
            for (g, c) in single {
                if multi.contains(&g) {
                    continue;
                }
                let key = (weights[g] == 0, weights[g], g, std::cmp::Reverse(ri));
                if best.as_ref().is_none_or(|b| key > b.0) {
                    best = Some((key, ri, g, c));
                }
            }
        }
        let Some((_, ri, g, c)) = best else { break };
        let r = rels.remove(ri);
        let mut value = r.clone();
        value.remove(&vec![g]);
        let value = value.scaled(&c.inv()?.neg());
        for q in rels.iter_mut() {
            *q = substitute_one(q, g, &value, weights, cap);
        }
        for s in subst.iter_mut().flatten() {
            *s = substitute_one(s, g, &value, weights, cap);
        }
        subst[g] = Some(value);
        rels.retain(|q| !q.is_zero());
        if let Some(q) = rels.iter().find(|q| q.len() == 1 && q.keys().all(|w| w.is_empty())) {
            return Err(Error::MissingStructure(format!("relations force 1 = 0 (constant {:?})", q.first().map(|x| x.1.to_token()))));
        }
    }
    Ok((subst, rels))
}

/// Normalize a presented algebra inside its window.
pub fn normal_forms(p: &PresentedAlgebra) -> Result<NormalForms> {
    let field = p.field;
    let cap = p.trunc.weight_cap;
    let mut approximate = false;
    for (i, r) in p.relations.iter().enumerate() {
        p.check_homogeneous(r, &format!("relation {i}"))?;
        approximate |= !p.weight_homogeneous(r);
    }
    for (g, dg) in p.d_on_generators.iter().enumerate() {
        if let Some(d) = p.check_homogeneous(dg, &format!("d({})", p.generators[g].name))? {
            if d != p.generators[g].degree - 1 {
                return Err(Error::DegreeMismatch(format!("d({}) has degree {d}", p.generators[g].name)));
            }
        }
    }
    let mut weights: Vec<usize> = p.generators.iter().map(|g| g.weight).collect();
    let (subst_opt, rels) = tietze(p, &weights, cap)?;
    let mut remaining: Vec<usize> = (0..p.generators.len()).filter(|g| subst_opt[*g].is_none()).collect();
    for g in &remaining {
        if weights[*g] == 0 {
            weights[*g] = 1;
            approximate = true;
        }
    }
    // letters: surviving generators, stably sorted by degree to match GradedSpace order
    remaining.sort_by_key(|g| p.generators[*g].degree);
    let letter_of: HashMap<usize, usize> = remaining.iter().enumerate().map(|(l, g)| (*g, l)).collect();
    let (lo, hi) = remaining.iter().fold((0i64, 0i64), |(lo, hi), g| {
        let d = p.generators[*g].degree;
        (lo.min(d), hi.max(d))
    });
    let letters: Space = Arc::new(GradedSpace::new(
        field,
        Truncation::new(lo, hi, cap)?,
        remaining.iter().map(|g| (p.generators[*g].name.clone(), p.generators[*g].degree)),
    )?);
    let letter_weights: Vec<usize> = remaining.iter().map(|g| weights[*g]).collect();
    let to_letters = |q: &Poly| q.map_keys(|w| Some(w.iter().map(|g| letter_of[g]).collect::<Vec<_>>()));
    let substitution: Vec<Poly> = (0..p.generators.len())
        .map(|g| match &subst_opt[g] {
            Some(v) => to_letters(v),
            None => Poly::term(vec![letter_of[&g]], field.one()),
        })
        .collect();
    let rels: Vec<Poly> = rels.iter().map(to_letters).collect();

    let wide = Truncation::new(lo.min(0) * cap as i64, hi.max(0) * cap as i64, cap)?;
    let words = WordBasis::weighted(letters.clone(), letter_weights.clone(), wide, "*")?;
    let nw = words.dim();
    let key = |i: usize| nw - 1 - i;

    // ideal slice: close the relations under multiplication by letters
    let mut ideal = Echelon::new();
    let mut queue: VecDeque<Poly> = rels.into_iter().collect();
    let min_weight = |q: &Poly| q.keys().map(|w| words.weight_of(w)).min().unwrap_or(0);
    while let Some(q) = queue.pop_front() {
        let (v, exact) = words.embed(&q);
        if !exact || v.is_zero() {
            if !exact {
                approximate |= !v.is_zero();
            }
            continue;
        }
        if ideal.insert(&v.map_keys(|i| Some(key(*i)))).is_some() {
            let mw = min_weight(&q);
            for l in 0..letters.dim() {
                if mw + letter_weights[l] <= cap {
                    let x = Poly::term(vec![l], field.one());
                    queue.push_back(poly_mul(&x, &q));
                    queue.push_back(poly_mul(&q, &x));
                }
            }
        }
    }

    let carrier_words: Vec<usize> = (0..nw)
        .filter(|i| !ideal.is_pivot(key(*i)) && p.trunc.contains(words.space.degree(*i)))
        .collect();
    let word_to_carrier: HashMap<usize, usize> = carrier_words.iter().enumerate().map(|(c, w)| (*w, c)).collect();
    let space: Space = Arc::new(GradedSpace::new(
        field,
        p.trunc,
        carrier_words.iter().map(|w| (words.space.name(*w).to_string(), words.space.degree(*w))),
    )?);
    let mut nf = NormalForms {
        algebra: DgAlgebra::from_table(DgSpace::zero(space.clone()), Vec::new(), None, None)?,
        words,
        remaining,
        substitution,
        approximate,
        carrier_words,
        word_to_carrier,
        ideal,
    };
    let empty = nf.words.empty().and_then(|e| nf.word_to_carrier.get(&e).copied());
    let Some(unit) = empty else {
        return Err(Error::MissingStructure("the unit reduces to zero".into()));
    };

    let n = nf.carrier_words.len();
    let cw_weight: Vec<usize> = nf.carrier_words.iter().map(|w| nf.words.weight(*w)).collect();
    let table: Vec<((usize, usize), Vector)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let nf = &nf;
            let cw_weight = &cw_weight;
            (0..n).filter_map(move |j| {
                if cw_weight[i] + cw_weight[j] > cap {
                    return None;
                }
                let mut w = nf.carrier_word(i).to_vec();
                w.extend_from_slice(nf.carrier_word(j));
                let (v, _) = nf.reduce_letters(&Poly::term(w, field.one()));
                (!v.is_zero()).then_some(((i, j), v))
            })
        })
        .collect();

    // differential on letters, then extended as a derivation and normalized
    let d_letters: Vec<Poly> = nf
        .remaining
        .iter()
        .map(|g| substitute_all(&p.d_on_generators[*g], &nf.substitution, &nf.words.weights, cap, false).0)
        .collect();
    let dcols: Vec<(Vector, bool)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let img = extend_derivation_on_word(&nf.words.letters, &d_letters, -1, nf.carrier_word(i));
            nf.reduce_letters(&img)
        })
        .collect();
    let d_exact: Vec<bool> = dcols.iter().map(|x| x.1).collect();
    let d = GradedMap::new(space.clone(), space.clone(), -1, dcols.into_iter().map(|x| x.0).collect())?;
    let incomplete = nf.words.incomplete().iter().copied().filter(|n| p.trunc.contains(*n)).collect();
    let incomplete = if nf.approximate { (p.trunc.degree_min..=p.trunc.degree_max).collect() } else { incomplete };
    let complex = DgSpace::new(d)?.with_flags(d_exact, incomplete);
    let aug = p.augmentation.as_ref().map(|eps| {
        (0..n)
            .map(|i| {
                nf.carrier_word(i).iter().fold(field.one(), |acc, l| &acc * &eps[nf.remaining[*l]])
            })
            .collect()
    });
    nf.algebra = DgAlgebra::from_table(complex, table, Some(Vector::term(unit, field.one())), aug)?
        .with_weights(cw_weight, Some(p.trunc));

    check_differential(p, &nf)?;
    Ok(nf)
}

/// d must send every relation into the ideal; checked wherever the image is computable.
fn check_differential(p: &PresentedAlgebra, nf: &NormalForms) -> Result<()> {
    let field = p.field;
    let cap = p.trunc.weight_cap;
    if p.d_on_generators.iter().all(|d| d.is_zero()) {
        return Ok(());
    }
    let gen_space = Arc::new(
        GradedSpace::new(
            field,
            Truncation::new(i64::MIN / 4, i64::MAX / 4, cap)?,
            p.generators.iter().enumerate().map(|(i, g)| (format!("g{i}"), g.degree)),
        )?,
    );
    // GradedSpace sorts by degree; translate generator indices to its order
    let pos: Vec<usize> = (0..p.generators.len()).map(|i| gen_space.index_of(&format!("g{i}")).unwrap()).collect();
    let back: Vec<usize> = {
        let mut b = vec![0; pos.len()];
        for (i, k) in pos.iter().enumerate() {
            b[*k] = i;
        }
        b
    };
    let phi: Vec<Poly> = back.iter().map(|g| p.d_on_generators[*g].map_keys(|w| Some(w.iter().map(|x| pos[*x]).collect()))).collect();
    for (ri, r) in p.relations.iter().enumerate() {
        let mut dr = Poly::zero();
        for (w, c) in r.iter() {
            let pw: Vec<usize> = w.iter().map(|x| pos[*x]).collect();
            dr.add_scaled(&extend_derivation_on_word(&gen_space, &phi, -1, &pw), c);
        }
        let dr = dr.map_keys(|w| Some(w.iter().map(|x| back[*x]).collect::<Vec<_>>()));
        let (v, exact) = nf.reduce(&dr);
        if exact && !nf.approximate && !v.is_zero() {
            return Err(Error::InconsistentDifferential(format!(
                "d(relation {ri}) reduces to {} instead of 0",
                nf.algebra.space().show(&v)
            )));
        }
    }
    Ok(())
}
