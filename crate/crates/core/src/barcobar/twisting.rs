use crate::algebra::DgAlgebra;
use crate::coalgebra::DgCoalgebra;
use crate::graded::GradedMap;
use crate::lincomb::Vector;

/// Evaluation of d_Aα + αd_C + α⋆α on each basis element of C; the first nonzero value is
/// the witness. Elements whose coproduct, differential or products are cut by a window are
/// skipped.
#[derive(Clone, Debug, Default)]
pub struct TwistReport {
    pub checked: usize,
    pub skipped: usize,
    pub pointed: bool,
    pub failure: Option<String>,
    pub witness: Option<(usize, Vector)>,
}

impl TwistReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn fail(&mut self, msg: String) {
        if self.failure.is_none() {
            self.failure = Some(msg);
        }
    }
}

/// The Maurer–Cartan equation for α in [C,A], basis element by basis element.
pub fn mc_defect(c: &DgCoalgebra, a: &DgAlgebra, alpha: &GradedMap, x: usize) -> Option<Vector> {
    let field = a.field();
    let cs = c.space();
    if !c.delta_exact(x) || !c.complex.d_exact[x] {
        return None;
    }
    let mut out = a.d_exact_of(alpha.column(x))?;
    out.add(&alpha.apply(c.d().column(x)));
    for ((x1, x2), s) in c.delta(x).iter() {
        let p = a.mul_exact(alpha.column(*x1), alpha.column(*x2))?;
        out.add_scaled(&p, &(s * &field.sign(alpha.degree * cs.degree(*x1))));
    }
    Some(out)
}

/// Check that α: C → A of degree −1 is a twisting cochain (pointed: also α(e) = 0, ε_A α = 0).
pub fn verify_twisting_cochain(c: &DgCoalgebra, a: &DgAlgebra, alpha: &GradedMap, pointed: bool) -> TwistReport {
    let cs = c.space();
    let mut r = TwistReport { pointed, ..Default::default() };
    if alpha.degree != -1 {
        r.fail(format!("α has degree {}, not −1", alpha.degree));
        return r;
    }
    for x in 0..c.dim() {
        match mc_defect(c, a, alpha, x) {
            None => r.skipped += 1,
            Some(v) => {
                r.checked += 1;
                if !v.is_zero() && r.witness.is_none() {
                    r.fail(format!("(dα + αd + α⋆α)({}) = {}", cs.name(x), a.space().show(&v)));
                    r.witness = Some((x, v));
                }
            }
        }
    }
    if pointed {
        match c.atom {
            Some(e) => {
                r.checked += 1;
                if !alpha.column(e).is_zero() {
                    r.fail(format!("α({}) ≠ 0", cs.name(e)));
                }
            }
            None => r.fail("pointed check needs an atom".into()),
        }
        for x in 0..c.dim() {
            match a.augment(alpha.column(x)) {
                Ok(s) => {
                    r.checked += 1;
                    if !s.is_zero() {
                        r.fail(format!("ε_A α({}) ≠ 0", cs.name(x)));
                    }
                }
                Err(_) => {
                    r.fail("pointed check needs an augmentation".into());
                    break;
                }
            }
        }
    }
    r
}
