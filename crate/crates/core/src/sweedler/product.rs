use crate::algebra::DgAlgebra;
use crate::coalgebra::DgCoalgebra;
use crate::error::{Error, Result};
use crate::graded::Truncation;
use crate::lincomb::{Poly, Vector};
use crate::presented::{normal_forms, Generator, NormalForms, PresentedAlgebra};

use super::measuring::{verify_measuring, MeasuringReport};

/// C▷A (or the pointed C▷•A) in normal-form coordinates.
#[derive(Clone, Debug)]
pub struct SweedlerProduct {
    pub presentation: PresentedAlgebra,
    pub nf: NormalForms,
    pub pointed: bool,
    a_dim: usize,
}

impl SweedlerProduct {
    pub fn algebra(&self) -> &DgAlgebra {
        &self.nf.algebra
    }

    pub fn generator(&self, c: usize, a: usize) -> usize {
        c * self.a_dim + a
    }

    /// Φ(c⊗a), the class of c▷a; `None` when it leaves the window.
    pub fn phi(&self, c: usize, a: usize) -> Option<Vector> {
        let (v, exact) = self.nf.class_of(self.generator(c, a));
        exact.then_some(v)
    }

    pub fn verify_universal_measuring(&self, c: &DgCoalgebra, a: &DgAlgebra) -> MeasuringReport {
        verify_measuring(c, a, self.algebra(), &|x, y| self.phi(x, y), self.pointed)
    }
}

/// Weights for the generators c▷a: those of A, or 0 on the unit and 1 elsewhere.
fn algebra_weights(a: &DgAlgebra) -> Vec<usize> {
    match &a.weights {
        Some(w) => w.clone(),
        None => {
            let u = a.unit_index();
            (0..a.dim()).map(|i| if Some(i) == u { 0 } else { 1 }).collect()
        }
    }
}

/// The presentation of C▷A: generators c▷a with relations
/// (m) c▷(ab) = Σ (c1▷a)(c2▷b)(−1)^{|a||c2|}, (u) c▷1 = ε(c), and, if pointed,
/// (a) e▷a = ε(a); differential d(c▷a) = dc▷a + (−1)^{|c|} c▷da.
pub fn sweedler_presentation(c: &DgCoalgebra, a: &DgAlgebra, trunc: Truncation, pointed: bool) -> Result<PresentedAlgebra> {
    if c.field() != a.field() {
        return Err(Error::MixedFields(c.field(), a.field()));
    }
    let field = a.field();
    let (cs, as_) = (c.space(), a.space());
    let na = a.dim();
    let weights = algebra_weights(a);
    let g = |x: usize, y: usize| x * na + y;
    let mut generators = Vec::with_capacity(c.dim() * na);
    for x in 0..c.dim() {
        for y in 0..na {
            generators.push(Generator {
                name: format!("{}▷{}", cs.name(x), as_.name(y)),
                degree: cs.degree(x) + as_.degree(y),
                weight: weights[y],
            });
        }
    }
    let mut p = PresentedAlgebra::new(field, generators, trunc);
    for x in 0..c.dim() {
        if !c.delta_exact(x) {
            continue;
        }
        for i in 0..na {
            for j in 0..na {
                if !a.product_exact(i, j) {
                    continue;
                }
                let mut r: Poly = a.mul_basis(i, j).map_keys(|k| Some(vec![g(x, *k)]));
                for ((x1, x2), s) in c.delta(x).iter() {
                    let sign = field.sign(as_.degree(i) * cs.degree(*x2));
                    r.add_term(vec![g(*x1, i), g(*x2, j)], (s * &sign).neg());
                }
                p.add_relation(r);
            }
        }
    }
    let unit = a.unit_vector()?;
    let eps = c.counit_vec()?;
    for x in 0..c.dim() {
        let mut r: Poly = unit.map_keys(|k| Some(vec![g(x, *k)]));
        r.add_term(Vec::new(), eps[x].neg());
        p.add_relation(r);
    }
    if pointed {
        let e = c.checked_atom()?;
        for y in 0..na {
            let mut r = Poly::term(vec![g(e, y)], field.one());
            r.add_term(Vec::new(), a.augment(&as_.basis_vector(y))?.neg());
            p.add_relation(r);
        }
        let aug: Vec<_> = (0..c.dim())
            .flat_map(|x| (0..na).map(move |y| (x, y)))
            .map(|(x, y)| Ok(&eps[x] * &a.augment(&as_.basis_vector(y))?))
            .collect::<Result<_>>()?;
        p.augmentation = Some(aug);
    }
    for x in 0..c.dim() {
        for y in 0..na {
            let mut dg = Poly::zero();
            for (x2, s) in c.d().column(x).iter() {
                dg.add_term(vec![g(*x2, y)], s.clone());
            }
            let sign = field.sign(cs.degree(x));
            for (y2, s) in a.d().column(y).iter() {
                dg.add_term(vec![g(x, *y2)], s * &sign);
            }
            p.d_on_generators[g(x, y)] = dg;
        }
    }
    Ok(p)
}

pub fn sweedler_product(c: &DgCoalgebra, a: &DgAlgebra, trunc: Truncation, pointed: bool) -> Result<SweedlerProduct> {
    let presentation = sweedler_presentation(c, a, trunc, pointed)?;
    let nf = normal_forms(&presentation)?;
    Ok(SweedlerProduct { presentation, nf, pointed, a_dim: a.dim() })
}
