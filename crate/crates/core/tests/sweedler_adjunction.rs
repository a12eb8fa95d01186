//! The adjunction triple at desk scale: algebra maps C▷A → B, measurings C⊗A → B and
//! algebra maps A → [C,B], enumerated exhaustively over small prime fields.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::win;
use sweedler::algebra::DgAlgebra;
use sweedler::coalgebra::DgCoalgebra;
use sweedler::enumerate::Slots;
use sweedler::graded::{lambda1, tensor_space, GradedMap, WindowMode};
use sweedler::lincomb::Vector;
use sweedler::presets;
use sweedler::sweedler::*;
use sweedler::Field;

/// Is the linear map A → B (columns) unital, multiplicative and a chain map?
fn is_algebra_map(a: &DgAlgebra, b: &DgAlgebra, cols: &[Vector]) -> bool {
    let apply = |v: &Vector| v.apply(|k| cols[*k].clone());
    if apply(&a.unit_vector().unwrap()) != b.unit_vector().unwrap() {
        return false;
    }
    for i in 0..a.dim() {
        if a.complex.d_exact[i] && apply(a.d().column(i)) != b.d_of(&cols[i]) {
            return false;
        }
        for j in 0..a.dim() {
            if a.product_exact(i, j) && apply(&a.mul_basis(i, j)) != b.mul(&cols[i], &cols[j]) {
                return false;
            }
        }
    }
    true
}

/// Values on the generators c▷a extend to an algebra map out of the normal-form C▷A.
fn extends_over_product(p: &SweedlerProduct, b: &DgAlgebra, images: &[Vector]) -> bool {
    let nf = &p.nf;
    let alg = p.algebra();
    let one = b.unit_vector().unwrap();
    let cols: Vec<Vector> = (0..alg.dim())
        .map(|i| nf.carrier_word(i).iter().fold(one.clone(), |acc, l| b.mul(&acc, &images[nf.remaining[*l]])))
        .collect();
    for (g, img) in images.iter().enumerate() {
        let (class, exact) = nf.class_of(g);
        if exact && class.apply(|k| cols[*k].clone()) != *img {
            return false;
        }
    }
    is_algebra_map(alg, b, &cols)
}

/// Vectors have no total order; their debug form is canonical (sorted terms).
fn key(cols: &[Vector]) -> String {
    format!("{cols:?}")
}

struct Census {
    product_maps: BTreeSet<String>,
    measurings: BTreeMap<String, Vec<Vector>>,
    convolution_maps: usize,
    transported: usize,
}

fn census(c: &DgCoalgebra, a: &DgAlgebra, b: &DgAlgebra) -> Census {
    let field = a.field();
    let (na, nc) = (a.dim(), c.dim());
    let p = sweedler_product(c, a, win(-2, 2, 3), false).unwrap();
    let ca = tensor_space(c.space(), a.space(), win(-4, 4, 2), WindowMode::Strict).unwrap();
    // degree-0 maps C⊗A → B, stored per generator c▷a
    let slots = Slots::maps(field, &ca.space, &(0..ca.space.dim()).collect::<Vec<_>>(), b.space(), 0).unwrap();
    let mut product_maps = BTreeSet::new();
    let mut measurings = BTreeMap::new();
    for n in 0..slots.count() {
        let cols = slots.columns(n);
        let mut images = vec![Vector::zero(); nc * na];
        for k in 0..ca.space.dim() {
            let (x, y) = ca.pair(k);
            images[p.generator(x, y)] = cols[k].clone();
        }
        if verify_measuring(c, a, b, &|x, y| Some(images[p.generator(x, y)].clone()), false).passed() {
            measurings.insert(key(&images), images.clone());
        }
        if extends_over_product(&p, b, &images) {
            product_maps.insert(key(&images));
        }
    }
    // algebra maps A → [C,B]
    let conv = convolution(c, b, win(-4, 4, 1)).unwrap();
    let h = &conv.algebra;
    let slots = Slots::maps(field, a.space(), &(0..na).collect::<Vec<_>>(), h.space(), 0).unwrap();
    let mut convolution_maps = 0;
    let mut transported = 0;
    let mut from_measurings = BTreeSet::new();
    let hom_ca = sweedler::graded::hom_space(c.space(), b.space(), win(-4, 4, 1)).unwrap();
    for m in measurings.values() {
        let f = GradedMap::from_fn(ca.space.clone(), b.space().clone(), 0, |k| {
            let (x, y) = ca.pair(k);
            m[p.generator(x, y)].clone()
        });
        // λ¹(f): A → [C,B], re-expressed in the convolution algebra's coordinates
        let l = lambda1(&f, &ca, &hom_ca);
        let cols: Vec<Vector> = (0..na).map(|i| conv.from_map(&hom_ca.to_map(l.column(i)).unwrap())).collect();
        from_measurings.insert(key(&cols));
    }
    for n in 0..slots.count() {
        let cols = slots.columns(n);
        if is_algebra_map(a, h, &cols) {
            convolution_maps += 1;
            if from_measurings.contains(&key(&cols)) {
                transported += 1;
            }
        }
    }
    Census { product_maps, measurings, convolution_maps, transported }
}

#[test]
fn triple_bijection_over_f2() {
    let f2 = Field::prime(2).unwrap();
    let c = presets::primitive_coalgebra(f2, 0, win(0, 0, 1)).unwrap();
    let a = presets::dual_numbers(f2, win(0, 0, 2)).unwrap();
    let b = presets::dual_numbers(f2, win(0, 0, 2)).unwrap();
    let r = census(&c, &a, &b);
    // algebra map ε ↦ λε together with an arbitrary derivation along it
    assert_eq!(r.measurings.len(), 8);
    assert_eq!(r.product_maps, r.measurings.keys().cloned().collect());
    assert_eq!(r.convolution_maps, 8);
    assert_eq!(r.transported, 8);
}

#[test]
fn triple_bijection_over_f3_with_grouplikes() {
    let f3 = Field::prime(3).unwrap();
    let c = presets::diagonal_coalgebra(f3, 2, win(0, 0, 1)).unwrap();
    let a = presets::dual_numbers(f3, win(0, 0, 2)).unwrap();
    let b = presets::dual_numbers(f3, win(0, 0, 2)).unwrap();
    let r = census(&c, &a, &b);
    // a pair of algebra maps A → B, each ε ↦ λε
    assert_eq!(r.measurings.len(), 9);
    assert_eq!(r.product_maps, r.measurings.keys().cloned().collect());
    assert_eq!(r.convolution_maps, 9);
    assert_eq!(r.transported, 9);
}

#[test]
fn convolution_with_tensor_coalgebra_is_cauchy_product() {
    let q = Field::Rational;
    let x = std::sync::Arc::new(sweedler::graded::GradedSpace::new(q, win(0, 0, 4), [("x", 0)]).unwrap());
    let (c, words) = sweedler::coalgebra::tensor_coalgebra(&sweedler::complex::DgSpace::zero(x), win(0, 0, 4)).unwrap();
    let a = presets::dual_numbers(q, win(0, 0, 1)).unwrap();
    let conv = convolution(&c, &a, win(0, 0, 1)).unwrap();
    assert!(conv.algebra.verify().passed());
    // φ ↦ Σ φ(xⁿ)tⁿ: coefficients of f⋆g are Cauchy products
    let e = a.space().lookup("e").unwrap();
    let one = a.unit_index().unwrap();
    let seq = |s: &[(i64, i64)]| {
        GradedMap::from_fn(c.space().clone(), a.space().clone(), 0, |i| {
            let n = words.word(i).len();
            let mut v = Vector::zero();
            v.add_term(one, q.from_i64(s[n].0));
            v.add_term(e, q.from_i64(s[n].1));
            v
        })
    };
    let f = seq(&[(1, 2), (0, 1), (3, 0), (1, 1), (2, -1)]);
    let g = seq(&[(2, 0), (1, -1), (0, 1), (1, 0), (0, 2)]);
    let h = convolve(&c, &a, &f, &g);
    for i in 0..c.dim() {
        let n = words.word(i).len();
        let mut want = Vector::zero();
        for k in 0..=n {
            let fk = f.column(words.index_of(&vec![0; k]).unwrap());
            let gk = g.column(words.index_of(&vec![0; n - k]).unwrap());
            want.add(&a.mul(fk, gk));
        }
        assert_eq!(*h.column(i), want, "t^{n}");
    }
}
