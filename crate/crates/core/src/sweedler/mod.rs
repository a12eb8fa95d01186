//! Sweedler operations: convolution, measurings, the Sweedler product and its
//! closed-form instances, the Sweedler hom out of free algebras, finite duality.

pub mod convolution;
pub mod duality;
pub mod examples;
pub mod hom_free;
pub mod measuring;
pub mod product;

pub use convolution::{convolution, convolve, ConvolutionAlgebra};
pub use duality::sweedler_dual;
pub use examples::{example_construction, Example};
pub use hom_free::{sweedler_hom_free, SweedlerHom};
pub use measuring::{verify_measuring, MeasuringReport};
pub use product::{sweedler_product, SweedlerProduct};
