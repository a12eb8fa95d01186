use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sweedler::barcobar::Convention;
use sweedler::graded::Truncation;
use sweedler::Field;

#[derive(Parser, Debug)]
#[command(name = "sweedler", version, about = "Exact checks on dg-algebras, dg-coalgebras, Sweedler operations and bar/cobar")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Ground field for presets (Q or Fp:p); input files must agree with it
    #[arg(long, global = true)]
    pub field: Option<Field>,
    /// Construction window dmin:dmax:L (degree range and weight cap)
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_trunc)]
    pub trunc: Option<Truncation>,
    /// Sign in front of d^ext (minus or plus); defaults to minus for bar and plus for cobar
    #[arg(long, global = true)]
    pub convention: Option<Convention>,
    /// Fail when some degree of the window is cut by the weight cap
    #[arg(long, global = true)]
    pub strict_window: bool,
    /// Also write the report to this file
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add a homology table
    #[arg(long, global = true)]
    pub homology: bool,
}

pub fn parse_trunc(s: &str) -> Result<Truncation, String> {
    let bad = || format!("expected dmin:dmax:L, got {s:?}");
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, cap] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: i64 = lo.parse().map_err(|_| bad())?;
    let hi: i64 = hi.parse().map_err(|_| bad())?;
    let cap: usize = cap.parse().map_err(|_| bad())?;
    Truncation::new(lo, hi, cap).map_err(|e| e.to_string())
}

/// One object: a presentation file or a preset.
#[derive(Args, Debug, Clone, Default)]
pub struct Input {
    /// Presentation file
    #[arg(long, conflicts_with = "preset")]
    pub input: Option<PathBuf>,
    /// Built-in preset, e.g. dual-numbers or primitive-coalgebra(1)
    #[arg(long)]
    pub preset: Option<String>,
}

/// A coalgebra and an algebra, each a path or `preset:NAME`.
#[derive(Args, Debug, Clone)]
pub struct Pair {
    #[arg(long)]
    pub coalgebra: String,
    #[arg(long)]
    pub algebra: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the axioms of an algebra or coalgebra
    Verify(Input),
    /// Bar construction of an augmented algebra
    Bar(Input),
    /// Cobar construction of a coaugmented coalgebra
    Cobar(Input),
    /// The Maurer-Cartan algebra T(u), du = -u^2, against a presentation of it
    Mc(Input),
    /// The convolution algebra [C,A], and optionally f*g for two maps C -> A
    Convolve {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, requires = "right")]
        left: Option<PathBuf>,
        #[arg(long, requires = "left")]
        right: Option<PathBuf>,
    },
    /// The Sweedler product C|>A with its universal measuring
    SweedlerProduct {
        #[command(flatten)]
        pair: Pair,
        /// The pointed variant, for a pointed C and augmented A
        #[arg(long)]
        pointed: bool,
    },
    /// The Sweedler dual of a graded-finite algebra
    SweedlerDual {
        #[command(flatten)]
        input: Input,
        /// Write the dual coalgebra as a presentation file
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Twisting cochains C -> A
    Twist {
        #[command(subcommand)]
        action: TwistAction,
    },
    /// The algebra map from the cobar and the coalgebra map into the bar attached to a twisting cochain
    Adjoint {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        map: PathBuf,
    },
    /// Sign conventions
    Signs {
        #[command(subcommand)]
        action: SignsAction,
    },
    /// Homology of the underlying complex
    Homology(Input),
    /// Dimensions per degree
    Dims(Input),
}

#[derive(Subcommand, Debug)]
pub enum TwistAction {
    /// Check that a degree -1 map solves the Maurer-Cartan equation in [C,A]
    Verify {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        map: PathBuf,
        /// Drop the pointedness conditions
        #[arg(long)]
        unpointed: bool,
    },
    /// Count twisting cochains, algebra maps from the cobar and coalgebra maps into the bar (finite fields)
    Enumerate {
        #[command(flatten)]
        pair: Pair,
    },
}

#[derive(Subcommand, Debug)]
pub enum SignsAction {
    /// Build the bar (or cobar) in both conventions and check that the sign flip intertwines them
    Compare(Input),
}
