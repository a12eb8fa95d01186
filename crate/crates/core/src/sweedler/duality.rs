use crate::algebra::DgAlgebra;
use crate::coalgebra::{finite_dual, DgCoalgebra};
use crate::error::{Error, Result};

/// A^∨ = A⋆ for a graded-finite A. A window of an infinite algebra is accepted when
/// every degree in it is complete, e.g. T(x) with |x| ≠ 0.
pub fn sweedler_dual(a: &DgAlgebra) -> Result<DgCoalgebra> {
    if let Some(n) = a.complex.incomplete.iter().next() {
        return Err(Error::NotGradedFinite(format!("degree {n} is infinite-dimensional or cut by the window")));
    }
    finite_dual(a)
}
