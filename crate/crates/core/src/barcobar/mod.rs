//! The Maurer–Cartan algebra, twisting cochains, bar and cobar constructions with
//! either sign convention, universal cochains, the adjunction transforms and the Hopf
//! structures on (co)commutative inputs.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::scalar::{Field, Scalar};

pub mod adjunction;
pub mod bridge;
pub mod construct;
pub mod hopf;
pub mod mc;
pub mod twisting;
pub mod universal;

pub use adjunction::{
    adjunction_census, adjunction_transforms, extract_from_algebra_map, extract_from_coalgebra_map, AdjunctionCensus,
    MapReport, Transforms,
};
pub use bridge::{bar_vs_sweedler_hom, cobar_vs_sweedler, BridgeReport};
pub use construct::{bar, cobar, sign_convention_iso, BarConstruction, CobarConstruction, PieceReport, PiReport};
pub use hopf::{hopf_on_bar, hopf_on_cobar, HopfReport};
pub use mc::{mc_algebra, mc_elements, McAlgebra, McMode, McReport};
pub use twisting::{mc_defect, verify_twisting_cochain, TwistReport};
pub use universal::{scaled_bar_cochain, scaled_cobar_cochain, universal_bar_cochain, universal_cobar_cochain};

/// Sign in front of d^ext: the bar differential is d^int − d^ext by default, the cobar one
/// d^int + d^ext.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    Minus,
    Plus,
}

impl Convention {
    pub const BAR_DEFAULT: Convention = Convention::Minus;
    pub const COBAR_DEFAULT: Convention = Convention::Plus;

    pub fn sign(self, field: Field) -> Scalar {
        match self {
            Convention::Minus => field.from_i64(-1),
            Convention::Plus => field.one(),
        }
    }

    pub fn flipped(self) -> Convention {
        match self {
            Convention::Minus => Convention::Plus,
            Convention::Plus => Convention::Minus,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Minus => "minus",
            Convention::Plus => "plus",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "minus" => Ok(Convention::Minus),
            "plus" => Ok(Convention::Plus),
            _ => Err(Error::Parse(format!("convention must be minus or plus, got {s:?}"))),
        }
    }
}
