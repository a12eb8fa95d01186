#![allow(dead_code)]

pub mod tor;

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sweedler::algebra::{free_algebra, DgAlgebra};
use sweedler::coalgebra::{finite_dual, DgCoalgebra};
use sweedler::complex::{check_square_zero, DgSpace};
use sweedler::graded::{GradedMap, GradedSpace, Truncation};
use sweedler::lincomb::{Poly, Vector};
use sweedler::Field;

pub fn win(lo: i64, hi: i64, cap: usize) -> Truncation {
    Truncation::new(lo, hi, cap).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The same structure, forgetting the truncation: products and differentials dropped by the
/// window count as zero, which is right for quotients by an ideal of long words.
pub fn rebuild(a: &DgAlgebra) -> DgAlgebra {
    let d = DgSpace::new(a.d().clone()).unwrap();
    let table: Vec<((usize, usize), Vector)> = a.table().map(|(k, v)| (*k, v.clone())).collect();
    let out = DgAlgebra::from_table(d, table, a.unit.clone(), a.augmentation.clone()).unwrap();
    match &a.weights {
        Some(w) => out.with_weights(w.clone(), None),
        None => out,
    }
}

/// T(V)/T^{>k}(V) for 1–3 random generators, with a random differential raising word length
/// (so the quotient is a dg-algebra), rejected until d² = 0, every degree has dim ≤ 4 and the total is ≤ 8.
pub fn random_nilpotent_algebra(field: Field, seed: u64) -> DgAlgebra {
    let mut r = rng(seed);
    for _ in 0..10_000 {
        let n = r.gen_range(1..=3);
        let k = r.gen_range(2..=3usize);
        let gens: Vec<(String, i64)> = (0..n).map(|i| (format!("x{i}"), r.gen_range(-1..=2))).collect();
        let letters = Arc::new(GradedSpace::new(field, win(-1, 2, k), gens.iter().cloned()).unwrap());
        let lo = -(k as i64);
        let hi = (k as i64) * 2;
        let (free, words) = free_algebra(letters.clone(), &vec![Poly::zero(); letters.dim()], win(lo, hi, k)).unwrap();
        // differential on generators: random combination of words of length ≥ 1 in earlier letters
        let mut phi = Vec::new();
        for l in 0..letters.dim() {
            let mut p = Poly::zero();
            for w in words.words() {
                if w.is_empty() || words.word_degree(w) != letters.degree(l) - 1 || w.iter().any(|m| *m >= l) {
                    continue;
                }
                if r.gen_bool(0.5) {
                    p.add_term(w.clone(), field.from_i64(r.gen_range(-2..=2)));
                }
            }
            phi.push(p);
        }
        drop(free);
        let (a, _) = free_algebra(letters.clone(), &phi, win(lo, hi, k)).unwrap();
        let a = rebuild(&a);
        if !check_square_zero(&a.complex).passed() || a.dim() > 8 || a.space().dims().values().any(|d| *d > 4) {
            continue;
        }
        if !a.verify().passed() {
            continue;
        }
        return a;
    }
    panic!("no random algebra found")
}

/// The finite dual of a random nilpotent algebra: conilpotent, coaugmented.
pub fn random_conilpotent_coalgebra(field: Field, seed: u64) -> DgCoalgebra {
    finite_dual(&random_nilpotent_algebra(field, seed)).unwrap()
}

/// A dg-algebra {1, a, b} with |a| = deg, |b| = deg + 1, db = a and all products of a, b zero.
pub fn acyclic_pair(field: Field, deg: i64, window: Truncation) -> DgAlgebra {
    let sp = Arc::new(GradedSpace::new(field, window, [("1", 0), ("a", deg), ("b", deg + 1)]).unwrap());
    let (one, a, b) = (sp.lookup("1").unwrap(), sp.lookup("a").unwrap(), sp.lookup("b").unwrap());
    let d = GradedMap::from_fn(sp.clone(), sp.clone(), -1, |i| {
        if i == b {
            Vector::term(a, field.one())
        } else {
            Vector::zero()
        }
    });
    let table = [one, a, b].map(|x| ((one, x), Vector::term(x, field.one())));
    let table2 = [a, b].map(|x| ((x, one), Vector::term(x, field.one())));
    let mut aug = vec![field.zero(); 3];
    aug[one] = field.one();
    let mut w = vec![1; 3];
    w[one] = 0;
    DgAlgebra::from_table(DgSpace::new(d).unwrap(), table.into_iter().chain(table2), Some(Vector::term(one, field.one())), Some(aug))
        .unwrap()
        .with_weights(w, None)
}

/// The dual of `acyclic_pair`: primitives b* of degree deg and a* of degree deg + 1, d(a*) = ±b*.
pub fn acyclic_coalgebra(field: Field, deg: i64, window: Truncation) -> DgCoalgebra {
    finite_dual(&acyclic_pair(field, -deg - 1, window.negated())).unwrap()
}

/// Alternating words (copy, reduced basis element) with neighbours in different copies.
pub fn free_product_dims(a: &DgAlgebra, copies: usize, cap: usize) -> BTreeMap<(i64, usize), usize> {
    let w = a.weights.as_ref().unwrap();
    let u = a.unit_index().unwrap();
    let reduced: Vec<(i64, usize)> = (0..a.dim()).filter(|i| *i != u).map(|i| (a.space().degree(i), w[i])).collect();
    // state: (degree, weight, last copy) → count
    let mut out = BTreeMap::from([((0, 0), 1)]);
    let mut frontier: BTreeMap<(i64, usize, usize), usize> = BTreeMap::new();
    for k in 0..copies {
        for (d, wt) in &reduced {
            if *wt <= cap {
                *frontier.entry((*d, *wt, k)).or_default() += 1;
            }
        }
    }
    while !frontier.is_empty() {
        let mut next = BTreeMap::new();
        for ((d, wt, last), n) in &frontier {
            *out.entry((*d, *wt)).or_default() += n;
            for k in (0..copies).filter(|k| k != last) {
                for (d2, w2) in &reduced {
                    if wt + w2 <= cap {
                        *next.entry((d + d2, wt + w2, k)).or_default() += n;
                    }
                }
            }
        }
        frontier = next;
    }
    out
}
