//! Built-in inputs. Each preset is emitted as presentation text and read back through the
//! parser, so a preset run exercises the same path as a file.

use sweedler::graded::Truncation;
use sweedler::{presets, Field};

use crate::build::{algebra_file, coalgebra_file};
use crate::error::CliError;
use crate::format::{parse, serialize, Decl, Kind, PresentationFile};

pub const NAMES: &[&str] = &[
    "mc",
    "dual-numbers",
    "square-zero(degree)",
    "matrix-algebra(n)",
    "free-algebra(x:1,y:0,...)",
    "diagonal-coalgebra(n)",
    "primitive-coalgebra(degree)",
    "matrix-coalgebra(n)",
];

/// `name`, `name(args)` or `name:args`.
fn split(spec: &str) -> (&str, Option<&str>) {
    if let Some((name, rest)) = spec.split_once('(') {
        return (name, Some(rest.strip_suffix(')').unwrap_or(rest)));
    }
    match spec.split_once(':') {
        Some((name, args)) => (name, Some(args)),
        None => (spec, None),
    }
}

fn unknown(spec: &str) -> CliError {
    CliError::Usage(format!("unknown preset {spec:?}; available: {}", NAMES.join(", ")))
}

fn int_arg<T: std::str::FromStr>(spec: &str, args: Option<&str>, default: Option<T>) -> Result<T, CliError> {
    match args {
        Some(a) => a.trim().parse().map_err(|_| CliError::Usage(format!("bad argument in preset {spec:?}"))),
        None => default.ok_or_else(|| CliError::Usage(format!("preset {spec:?} needs an argument"))),
    }
}

fn window(lo: i64, hi: i64) -> Truncation {
    Truncation { degree_min: lo.min(0), degree_max: hi.max(0), weight_cap: 2 }
}

/// T(u), |u| = −1, du = −u².
fn mc(field: Field) -> PresentationFile {
    let mut f = PresentationFile::new(field, Kind::Algebra);
    f.generators.push(Decl { name: "u".into(), degree: -1, weight: Some(1) });
    f.differential.push(("u".into(), vec![(field.from_i64(-1), vec!["u".into(), "u".into()])]));
    f
}

fn free_algebra(field: Field, spec: &str, args: Option<&str>) -> Result<PresentationFile, CliError> {
    let args = args.ok_or_else(|| CliError::Usage(format!("preset {spec:?} needs generators, e.g. free-algebra(x:1)")))?;
    let mut f = PresentationFile::new(field, Kind::Algebra);
    for g in args.split(',') {
        let (name, deg) = g.split_once(':').unwrap_or((g, "0"));
        let degree = deg.trim().parse().map_err(|_| CliError::Usage(format!("bad degree in preset {spec:?}")))?;
        f.generators.push(Decl { name: name.trim().to_string(), degree, weight: Some(1) });
    }
    Ok(f)
}

fn build(field: Field, spec: &str) -> Result<PresentationFile, CliError> {
    let (name, args) = split(spec.trim());
    Ok(match name {
        "mc" => mc(field),
        "dual-numbers" => algebra_file(&presets::dual_numbers(field, window(0, 0))?),
        "square-zero" => {
            let d = int_arg(spec, args, Some(0))?;
            algebra_file(&presets::square_zero(field, "a", d, window(d, d))?)
        }
        "matrix-algebra" => algebra_file(&presets::matrix_algebra(field, int_arg(spec, args, Some(2))?, window(0, 0))?),
        "free-algebra" => free_algebra(field, spec, args)?,
        "diagonal-coalgebra" => coalgebra_file(&presets::diagonal_coalgebra(field, int_arg(spec, args, Some(2))?, window(0, 0))?),
        "primitive-coalgebra" => {
            let d = int_arg(spec, args, Some(1))?;
            coalgebra_file(&presets::primitive_coalgebra(field, d, window(d, d))?)
        }
        "matrix-coalgebra" => coalgebra_file(&presets::matrix_coalgebra(field, int_arg(spec, args, Some(2))?, window(0, 0))?),
        _ => return Err(unknown(spec)),
    })
}

/// The preset as presentation text.
pub fn preset_text(field: Field, spec: &str) -> Result<String, CliError> {
    Ok(serialize(&build(field, spec)?))
}

pub fn preset(field: Field, spec: &str) -> Result<PresentationFile, CliError> {
    parse(&preset_text(field, spec)?)
}
