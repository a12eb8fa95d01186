use crate::algebra::DgAlgebra;
use crate::coalgebra::DgCoalgebra;
use crate::lincomb::Vector;

/// Outcome of checking the measuring conditions; `failure` carries the first witness.
#[derive(Clone, Debug, Default)]
pub struct MeasuringReport {
    pub checked: usize,
    pub skipped: usize,
    pub failure: Option<String>,
    pub pointed: bool,
}

impl MeasuringReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn fail(&mut self, msg: String) {
        if self.failure.is_none() {
            self.failure = Some(msg);
        }
    }
}

/// Check that f: C⊗A → B (given on basis pairs, degree 0) is a measuring:
/// f(c,ab) = Σ f(c1,a) f(c2,b) (−1)^{|a||c2|}, f(c,1) = ε(c)1, and
/// d f(c,a) = f(dc,a) + (−1)^{|c|} f(c,da). The pointed variant adds ε_B f = ε_C ε_A
/// and f(e,a) = ε(a)1. Conditions whose ingredients are truncated are skipped.
pub fn verify_measuring(
    c: &DgCoalgebra,
    a: &DgAlgebra,
    b: &DgAlgebra,
    f: &dyn Fn(usize, usize) -> Option<Vector>,
    pointed: bool,
) -> MeasuringReport {
    let field = a.field();
    let (cs, as_) = (c.space(), a.space());
    let mut r = MeasuringReport { pointed, ..Default::default() };
    let fv = |x: usize, v: &Vector| -> Option<Vector> {
        let mut out = Vector::zero();
        for (k, s) in v.iter() {
            out.add_scaled(&f(x, *k)?, s);
        }
        Some(out)
    };
    let cv = |v: &Vector, y: usize| -> Option<Vector> {
        let mut out = Vector::zero();
        for (k, s) in v.iter() {
            out.add_scaled(&f(*k, y)?, s);
        }
        Some(out)
    };
    for x in 0..c.dim() {
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if !c.delta_exact(x) || !a.product_exact(i, j) {
                    r.skipped += 1;
                    continue;
                }
                let lhs = fv(x, &a.mul_basis(i, j));
                let mut rhs = Some(Vector::zero());
                for ((x1, x2), s) in c.delta(x).iter() {
                    let term = match (f(*x1, i), f(*x2, j)) {
                        (Some(p), Some(q)) => b.mul_exact(&p, &q),
                        _ => None,
                    };
                    match (term, rhs.as_mut()) {
                        (Some(t), Some(acc)) => acc.add_scaled(&t, &(s * &field.sign(as_.degree(i) * cs.degree(*x2)))),
                        _ => rhs = None,
                    }
                }
                match (lhs, rhs) {
                    (Some(l), Some(rr)) => {
                        r.checked += 1;
                        if l != rr {
                            r.fail(format!(
                                "f({}, {}·{}) = {} but the convolution side gives {}",
                                cs.name(x),
                                as_.name(i),
                                as_.name(j),
                                b.space().show(&l),
                                b.space().show(&rr)
                            ));
                        }
                    }
                    _ => r.skipped += 1,
                }
            }
        }
    }
    if let (Some(u), Ok(eps), Ok(ub)) = (&a.unit, c.counit_vec(), b.unit_vector()) {
        for x in 0..c.dim() {
            if let Some(v) = fv(x, u) {
                r.checked += 1;
                if v != ub.scaled(&eps[x]) {
                    r.fail(format!("f({}, 1) = {} ≠ ε({0})·1", cs.name(x), b.space().show(&v)));
                }
            }
        }
    }
    for x in 0..c.dim() {
        for i in 0..a.dim() {
            let ok = c.complex.d_exact[x] && a.complex.d_exact[i];
            let (Some(v), true) = (f(x, i), ok) else {
                r.skipped += 1;
                continue;
            };
            let Some(lhs) = b.d_exact_of(&v) else {
                r.skipped += 1;
                continue;
            };
            let (Some(p), Some(q)) = (cv(c.d().column(x), i), fv(x, a.d().column(i))) else {
                r.skipped += 1;
                continue;
            };
            let mut rhs = p;
            rhs.add_scaled(&q, &field.sign(cs.degree(x)));
            r.checked += 1;
            if lhs != rhs {
                r.fail(format!(
                    "d f({}, {}) = {} but f(dc,a) ± f(c,da) = {}",
                    cs.name(x),
                    as_.name(i),
                    b.space().show(&lhs),
                    b.space().show(&rhs)
                ));
            }
        }
    }
    if pointed {
        let atom = c.atom;
        for x in 0..c.dim() {
            for i in 0..a.dim() {
                let Some(v) = f(x, i) else { continue };
                if let (Ok(eb), Ok(ec), Ok(ea)) = (b.augment(&v), c.counit_vec(), a.augment(&as_.basis_vector(i))) {
                    r.checked += 1;
                    if eb != &ec[x] * &ea {
                        r.fail(format!("ε_B f({}, {}) ≠ ε(c)ε(a)", cs.name(x), as_.name(i)));
                    }
                }
                if Some(x) == atom {
                    if let (Ok(ea), Ok(ub)) = (a.augment(&as_.basis_vector(i)), b.unit_vector()) {
                        r.checked += 1;
                        if v != ub.scaled(&ea) {
                            r.fail(format!("f(e, {}) ≠ ε({0})·1", as_.name(i)));
                        }
                    }
                }
            }
        }
    }
    r
}

/// rev(c⊗h) = (−1)^{|c||h|} h(c) on C⊗[C,A], with h given in hom-space coordinates.
pub fn reversed_evaluation<'a>(
    c: &'a DgCoalgebra,
    conv: &'a super::ConvolutionAlgebra,
) -> impl Fn(usize, usize) -> Option<Vector> + 'a {
    move |x: usize, k: usize| {
        let field = c.field();
        let hdeg = conv.hom.space.degree(k);
        let s = field.sign(c.space().degree(x) * hdeg);
        Some(conv.hom.evaluate(&conv.hom.space.basis_vector(k), &c.space().basis_vector(x)).scaled(&s))
    }
}
