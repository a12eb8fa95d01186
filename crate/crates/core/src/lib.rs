//! Exact computations with differential graded algebras and coalgebras: Sweedler
//! operations, bar and cobar constructions, twisting cochains.

pub mod algebra;
pub mod barcobar;
pub mod coalgebra;
pub mod complex;
pub mod enumerate;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod lincomb;
pub mod presented;
pub mod presets;
pub mod scalar;
pub mod sweedler;
pub mod words;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
