//! The presentation file: a versioned, line-oriented text format.
//!
//! ```text
//! sweedler-presentation 1
//! field Q
//! kind algebra
//! window -1 6 6
//! [generators]
//! u -1
//! [differential]
//! u = -1 u u
//! ```
//!
//! Header lines come first, then `[section]` blocks. A term is a signed coefficient
//! followed by the names it multiplies (`-1/2 x y`); a leading bare name means coefficient 1
//! and a lone `0` is the empty sum. Names are whitespace-free tokens not starting with
//! `+`, `-`, `[` or `#`.

use std::fmt::Write as _;

use sweedler::graded::Truncation;
use sweedler::{Field, Scalar};

use crate::error::CliError;

pub const SCHEMA: &str = "sweedler-presentation";
pub const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Coalgebra,
    Map,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Coalgebra => "coalgebra",
            Kind::Map => "map",
        }
    }
}

/// A declared generator or basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub name: String,
    pub degree: i64,
    pub weight: Option<usize>,
}

/// Σ coefficient · (product or tensor of the listed names); an empty list is the unit word.
pub type Terms = Vec<(Scalar, Vec<String>)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub version: u32,
    pub field: Field,
    pub kind: Kind,
    pub window: Option<Truncation>,
    /// Degree of a map.
    pub degree: Option<i64>,
    /// Presented algebras: generators and relations.
    pub generators: Vec<Decl>,
    pub relations: Vec<Terms>,
    /// Table form: basis and structure tables.
    pub basis: Vec<Decl>,
    pub unit: Option<Terms>,
    pub products: Vec<(String, String, Terms)>,
    pub coproduct: Vec<(String, Terms)>,
    pub counit: Vec<(String, Scalar)>,
    pub differential: Vec<(String, Terms)>,
    pub augmentation: Vec<(String, Scalar)>,
    pub atom: Option<String>,
    /// Values of a map on source basis elements.
    pub values: Vec<(String, Terms)>,
}

impl PresentationFile {
    pub fn new(field: Field, kind: Kind) -> Self {
        PresentationFile {
            version: VERSION,
            field,
            kind,
            window: None,
            degree: None,
            generators: Vec::new(),
            relations: Vec::new(),
            basis: Vec::new(),
            unit: None,
            products: Vec::new(),
            coproduct: Vec::new(),
            counit: Vec::new(),
            differential: Vec::new(),
            augmentation: Vec::new(),
            atom: None,
            values: Vec::new(),
        }
    }

    pub fn is_presented(&self) -> bool {
        !self.generators.is_empty()
    }

    /// Names usable in tables: generators for presented algebras, the basis otherwise.
    pub fn declared(&self) -> &[Decl] {
        if self.is_presented() {
            &self.generators
        } else {
            &self.basis
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Generators,
    Relations,
    Basis,
    Unit,
    Products,
    Coproduct,
    Counit,
    Differential,
    Augmentation,
    Atom,
    Values,
}

fn section(name: &str) -> Option<Section> {
    Some(match name {
        "generators" => Section::Generators,
        "relations" => Section::Relations,
        "basis" => Section::Basis,
        "unit" => Section::Unit,
        "products" => Section::Products,
        "coproduct" => Section::Coproduct,
        "counit" => Section::Counit,
        "differential" => Section::Differential,
        "augmentation" => Section::Augmentation,
        "atom" => Section::Atom,
        "values" => Section::Values,
        _ => return None,
    })
}

// coefficients always carry a sign, so basis names such as `1` stay unambiguous
fn is_coefficient(tok: &str) -> bool {
    tok.starts_with(['+', '-'])
}

fn valid_name(tok: &str) -> bool {
    !tok.is_empty() && !tok.starts_with(['+', '-', '[', '#']) && tok != "=" && tok != "0" && !tok.contains('=') && !tok.chars().any(char::is_whitespace)
}

/// Position-aware line reader.
struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn err(&self, col: usize, msg: impl Into<String>) -> CliError {
        CliError::Parse { line: self.no, col, msg: msg.into() }
    }

    /// (column, token) pairs; columns are 1-based character offsets.
    fn tokens(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, (b, c)) in self.text.char_indices().enumerate() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some((i + 1, b)),
                (true, Some((col, s))) => {
                    out.push((col, &self.text[s..b]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((col, s)) = start {
            out.push((col, &self.text[s..]));
        }
        out
    }
}

fn parse_scalar(field: Field, line: &Line, col: usize, tok: &str) -> Result<Scalar, CliError> {
    let t = tok.strip_prefix('+').unwrap_or(tok);
    field.parse(t).map_err(|e| match e {
        sweedler::Error::Parse(m) => line.err(col, m),
        other => line.err(col, other.to_string()),
    })
}

/// Terms from tokens: `[coeff] name name … [coeff] name …`; a lone `0` is the empty sum.
fn parse_terms(field: Field, line: &Line, toks: &[(usize, &str)]) -> Result<Terms, CliError> {
    if toks.len() == 1 && toks[0].1 == "0" {
        return Ok(Vec::new());
    }
    let mut out: Terms = Vec::new();
    for (col, tok) in toks {
        if is_coefficient(tok) {
            out.push((parse_scalar(field, line, *col, tok)?, Vec::new()));
        } else if valid_name(tok) {
            match out.last_mut() {
                Some(term) => term.1.push(tok.to_string()),
                None => out.push((field.one(), vec![tok.to_string()])),
            }
        } else {
            return Err(line.err(*col, format!("unexpected token {tok:?}")));
        }
    }
    Ok(out)
}

/// `lhs… = terms`, returning the tokens left of `=` and the parsed right side.
fn split_eq<'a>(line: &Line<'a>, toks: &'a [(usize, &'a str)]) -> Result<(&'a [(usize, &'a str)], &'a [(usize, &'a str)]), CliError> {
    let pos = toks.iter().position(|(_, t)| *t == "=").ok_or_else(|| line.err(1, "expected '='"))?;
    Ok((&toks[..pos], &toks[pos + 1..]))
}

fn one_name<'a>(line: &Line, toks: &[(usize, &'a str)]) -> Result<&'a str, CliError> {
    match toks {
        [(_, t)] if valid_name(t) => Ok(t),
        [(col, t), ..] => Err(line.err(*col, format!("expected one name, found {t:?}"))),
        [] => Err(line.err(1, "expected a name")),
    }
}

fn parse_decl(line: &Line, toks: &[(usize, &str)]) -> Result<Decl, CliError> {
    match toks {
        [(c1, name), (c2, deg), rest @ ..] if rest.len() <= 1 => {
            if !valid_name(name) {
                return Err(line.err(*c1, format!("invalid name {name:?}")));
            }
            let degree = deg.parse().map_err(|_| line.err(*c2, format!("degree {deg:?} is not an integer")))?;
            let weight = match rest {
                [(c3, w)] => Some(w.parse().map_err(|_| line.err(*c3, format!("weight {w:?} is not a natural number")))?),
                _ => None,
            };
            Ok(Decl { name: name.to_string(), degree, weight })
        }
        _ => Err(line.err(1, "expected `name degree [weight]`")),
    }
}

pub fn parse(text: &str) -> Result<PresentationFile, CliError> {
    let mut file: Option<PresentationFile> = None;
    let mut version = None;
    let mut field = None;
    let mut kind = None;
    let mut window = None;
    let mut degree = None;
    let mut current = Section::Header;
    // table lines are kept until the header is complete
    let mut pending: Vec<(Section, Line)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let line = Line { no: i + 1, text: content };
        let toks = line.tokens();
        if toks.is_empty() {
            continue;
        }
        let first = toks[0].1;
        if let Some(name) = first.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            current = section(name).ok_or_else(|| line.err(1, format!("unknown section [{name}]")))?;
            continue;
        }
        if current != Section::Header {
            pending.push((current, line));
            continue;
        }
        let arg = |n: usize| toks.get(n).map(|t| t.1).ok_or_else(|| line.err(1, format!("{first} needs an argument")));
        match first {
            SCHEMA => {
                let v = arg(1)?;
                let v: u32 = v.parse().map_err(|_| line.err(toks[1].0, "version is not a number"))?;
                if v != VERSION {
                    return Err(line.err(toks[1].0, format!("unsupported schema version {v} (this build reads {VERSION})")));
                }
                version = Some(v);
            }
            "field" => field = Some(arg(1)?.parse::<Field>().map_err(|e| line.err(toks[1].0, e.to_string()))?),
            "kind" => {
                kind = Some(match arg(1)? {
                    "algebra" => Kind::Algebra,
                    "coalgebra" => Kind::Coalgebra,
                    "map" => Kind::Map,
                    k => return Err(line.err(toks[1].0, format!("unknown kind {k:?}"))),
                })
            }
            "window" => {
                let nums: Vec<i64> = (1..=3)
                    .map(|n| arg(n).and_then(|t| t.parse().map_err(|_| line.err(toks[n].0, format!("{t:?} is not an integer")))))
                    .collect::<Result<_, _>>()?;
                let w = Truncation::new(nums[0], nums[1], usize::try_from(nums[2]).unwrap_or(0)).map_err(|e| line.err(1, e.to_string()))?;
                window = Some(w);
            }
            "degree" => degree = Some(arg(1)?.parse().map_err(|_| line.err(toks[1].0, "degree is not an integer"))?),
            other => return Err(line.err(1, format!("unknown header {other:?}"))),
        }
    }
    let (version, field, kind) = match (version, field, kind) {
        (Some(v), Some(f), Some(k)) => (v, f, k),
        (None, ..) => return Err(CliError::Parse { line: 1, col: 1, msg: format!("missing `{SCHEMA} {VERSION}` header") }),
        (_, None, _) => return Err(CliError::Parse { line: 1, col: 1, msg: "missing `field` header".into() }),
        (_, _, None) => return Err(CliError::Parse { line: 1, col: 1, msg: "missing `kind` header".into() }),
    };
    let f = file.get_or_insert_with(|| PresentationFile::new(field, kind));
    f.version = version;
    f.window = window;
    f.degree = degree;
    for (sec, line) in &pending {
        let toks = line.tokens();
        match sec {
            Section::Generators => f.generators.push(parse_decl(line, &toks)?),
            Section::Basis => f.basis.push(parse_decl(line, &toks)?),
            Section::Relations => f.relations.push(parse_terms(field, line, &toks)?),
            Section::Unit => {
                let t = parse_terms(field, line, &toks)?;
                f.unit.get_or_insert_with(Vec::new).extend(t);
            }
            Section::Products => {
                let (lhs, rhs) = split_eq(line, &toks)?;
                match lhs {
                    [(_, x), (_, y)] if valid_name(x) && valid_name(y) => {
                        f.products.push((x.to_string(), y.to_string(), parse_terms(field, line, rhs)?))
                    }
                    _ => return Err(line.err(1, "expected `x y = terms`")),
                }
            }
            Section::Coproduct | Section::Differential | Section::Values => {
                let (lhs, rhs) = split_eq(line, &toks)?;
                let name = one_name(line, lhs)?.to_string();
                let terms = parse_terms(field, line, rhs)?;
                match sec {
                    Section::Coproduct => f.coproduct.push((name, terms)),
                    Section::Differential => f.differential.push((name, terms)),
                    _ => f.values.push((name, terms)),
                }
            }
            Section::Counit | Section::Augmentation => {
                let (lhs, rhs) = split_eq(line, &toks)?;
                let name = one_name(line, lhs)?.to_string();
                let s = match rhs {
                    [(col, t)] => parse_scalar(field, line, *col, t)?,
                    _ => return Err(line.err(1, "expected `name = coefficient`")),
                };
                match sec {
                    Section::Counit => f.counit.push((name, s)),
                    _ => f.augmentation.push((name, s)),
                }
            }
            Section::Atom => f.atom = Some(one_name(line, &toks)?.to_string()),
            Section::Header => unreachable!("header lines are handled above"),
        }
    }
    let f = file.expect("constructed above");
    validate(&f)?;
    Ok(f)
}

/// Every name used in a table is declared (map values are checked when source and target are known).
fn validate(f: &PresentationFile) -> Result<(), CliError> {
    let declared: std::collections::HashSet<&str> = f.declared().iter().map(|d| d.name.as_str()).collect();
    if declared.len() != f.declared().len() {
        return Err(CliError::UnknownName("duplicate declaration".into()));
    }
    if f.is_presented() && !f.basis.is_empty() {
        return Err(CliError::Usage("a file has either [generators] or [basis], not both".into()));
    }
    if f.kind == Kind::Map {
        if f.degree.is_none() {
            return Err(CliError::Usage("a map needs a `degree` header".into()));
        }
        return Ok(());
    }
    let check = |n: &str| if declared.contains(n) { Ok(()) } else { Err(CliError::UnknownName(n.to_string())) };
    let check_terms = |t: &Terms| t.iter().flat_map(|(_, w)| w.iter()).try_for_each(|n| check(n));
    f.relations.iter().try_for_each(check_terms)?;
    if let Some(u) = &f.unit {
        check_terms(u)?;
    }
    for (x, y, t) in &f.products {
        check(x)?;
        check(y)?;
        check_terms(t)?;
    }
    for (x, t) in f.coproduct.iter().chain(&f.differential) {
        check(x)?;
        check_terms(t)?;
    }
    for (x, _) in f.counit.iter().chain(&f.augmentation) {
        check(x)?;
    }
    if let Some(a) = &f.atom {
        check(a)?;
    }
    Ok(())
}

fn coefficient(s: &Scalar) -> String {
    let t = s.to_string();
    if t.starts_with('-') {
        t
    } else {
        format!("+{t}")
    }
}

pub fn write_terms(t: &Terms) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (c, names)) in t.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        out.push_str(&coefficient(c));
        for n in names {
            out.push(' ');
            out.push_str(n);
        }
    }
    out
}

fn write_decls(out: &mut String, title: &str, decls: &[Decl]) {
    if decls.is_empty() {
        return;
    }
    let _ = writeln!(out, "[{title}]");
    for d in decls {
        match d.weight {
            Some(w) => {
                let _ = writeln!(out, "{} {} {w}", d.name, d.degree);
            }
            None => {
                let _ = writeln!(out, "{} {}", d.name, d.degree);
            }
        }
    }
}

/// Canonical text; `parse(&serialize(f)) == f` for every file that parses.
pub fn serialize(f: &PresentationFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{SCHEMA} {}", f.version);
    let _ = writeln!(out, "field {}", f.field);
    let _ = writeln!(out, "kind {}", f.kind.name());
    if let Some(w) = f.window {
        let _ = writeln!(out, "window {} {} {}", w.degree_min, w.degree_max, w.weight_cap);
    }
    if let Some(d) = f.degree {
        let _ = writeln!(out, "degree {d}");
    }
    write_decls(&mut out, "generators", &f.generators);
    if !f.relations.is_empty() {
        out.push_str("[relations]\n");
        for r in &f.relations {
            let _ = writeln!(out, "{}", write_terms(r));
        }
    }
    write_decls(&mut out, "basis", &f.basis);
    if let Some(u) = &f.unit {
        let _ = writeln!(out, "[unit]\n{}", write_terms(u));
    }
    if !f.products.is_empty() {
        out.push_str("[products]\n");
        for (x, y, t) in &f.products {
            let _ = writeln!(out, "{x} {y} = {}", write_terms(t));
        }
    }
    let keyed = |out: &mut String, title: &str, rows: &[(String, Terms)]| {
        if rows.is_empty() {
            return;
        }
        let _ = writeln!(out, "[{title}]");
        for (x, t) in rows {
            let _ = writeln!(out, "{x} = {}", write_terms(t));
        }
    };
    keyed(&mut out, "coproduct", &f.coproduct);
    let scalars = |out: &mut String, title: &str, rows: &[(String, Scalar)]| {
        if rows.is_empty() {
            return;
        }
        let _ = writeln!(out, "[{title}]");
        for (x, s) in rows {
            let _ = writeln!(out, "{x} = {}", coefficient(s));
        }
    };
    scalars(&mut out, "counit", &f.counit);
    keyed(&mut out, "differential", &f.differential);
    scalars(&mut out, "augmentation", &f.augmentation);
    if let Some(a) = &f.atom {
        let _ = writeln!(out, "[atom]\n{a}");
    }
    keyed(&mut out, "values", &f.values);
    out
}
