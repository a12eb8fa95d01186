use crate::algebra::DgAlgebra;
use crate::coalgebra::DgCoalgebra;
use crate::complex::dg_hom;
use crate::error::{Error, Result};
use crate::graded::{GradedMap, HomSpace, Truncation};
use crate::lincomb::Vector;

/// [C,A] with the convolution product and d(f) = d_A f − (−1)^{|f|} f d_C.
#[derive(Clone, Debug)]
pub struct ConvolutionAlgebra {
    pub algebra: DgAlgebra,
    pub hom: HomSpace,
}

/// (f⋆g)(c) = Σ f(c1) g(c2) (−1)^{|g||c1|}.
pub fn convolve(c: &DgCoalgebra, a: &DgAlgebra, f: &GradedMap, g: &GradedMap) -> GradedMap {
    let field = a.field();
    let csp = c.space();
    GradedMap::from_fn(csp.clone(), a.space().clone(), f.degree + g.degree, |i| {
        let mut out = Vector::zero();
        for ((x, y), s) in c.delta(i).iter() {
            let fx = f.column(*x);
            let gy = g.column(*y);
            if fx.is_zero() || gy.is_zero() {
                continue;
            }
            let sign = field.sign(g.degree * csp.degree(*x));
            out.add_scaled(&a.mul(fx, gy), &(s * &sign));
        }
        out
    })
}

/// e_A∘ε_C.
pub fn convolution_unit(c: &DgCoalgebra, a: &DgAlgebra) -> Result<GradedMap> {
    let eps = c.counit_vec()?.clone();
    let unit = a.unit_vector()?;
    Ok(GradedMap::from_fn(c.space().clone(), a.space().clone(), 0, |i| unit.scaled(&eps[i])))
}

pub fn convolution(c: &DgCoalgebra, a: &DgAlgebra, window: Truncation) -> Result<ConvolutionAlgebra> {
    if c.field() != a.field() {
        return Err(Error::MixedFields(c.field(), a.field()));
    }
    let (complex, hom) = dg_hom(&c.complex, &a.complex, window)?;
    let n = hom.space.dim();
    let maps: Vec<GradedMap> = (0..n).map(|k| hom.to_map(&hom.space.basis_vector(k))).collect::<Result<_>>()?;
    let mut table = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = convolve(c, a, &maps[i], &maps[j]);
            let (v, _) = hom.from_map(&p);
            if !v.is_zero() {
                table.push(((i, j), v));
            }
        }
    }
    let unit = match (&c.counit, &a.unit) {
        (Some(_), Some(_)) => Some(hom.from_map(&convolution_unit(c, a)?).0),
        _ => None,
    };
    let mut algebra = DgAlgebra::from_table(complex, table, unit, None)?;
    algebra.truncation = Some(window.with_cap(usize::MAX));
    Ok(ConvolutionAlgebra { algebra, hom })
}

impl ConvolutionAlgebra {
    pub fn to_map(&self, v: &Vector) -> Result<GradedMap> {
        self.hom.to_map(v)
    }

    pub fn from_map(&self, f: &GradedMap) -> Vector {
        self.hom.from_map(f).0
    }
}
