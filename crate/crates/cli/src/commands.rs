use std::collections::BTreeMap;
use std::path::Path;

use sweedler::algebra::DgAlgebra;
use sweedler::barcobar::*;
use sweedler::coalgebra::{dual_algebra, DgCoalgebra};
use sweedler::complex::{check_square_zero, homology, DgSpace};
use sweedler::graded::{hom_window, GradedMap, GradedSpace, Truncation};
use sweedler::sweedler::examples::product_dims;
use sweedler::sweedler::{convolution, convolve, sweedler_dual, sweedler_product};
use sweedler::Field;

use crate::build;
use crate::cli::{Cli, Command, Common, Input, Pair, SignsAction, TwistAction};
use crate::error::CliError;
use crate::format::{parse, serialize, Kind, PresentationFile};
use crate::presets::preset;
use crate::report::{Report, Table};

/// Library errors raised while computing (as opposed to while reading input) fail the
/// report instead of aborting.
struct Computation(sweedler::Error);

enum Failure {
    Input(CliError),
    Compute(Computation),
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure::Input(e)
    }
}

impl From<Computation> for Failure {
    fn from(e: Computation) -> Self {
        Failure::Compute(e)
    }
}

type Run = Result<(), Failure>;

fn compute<T>(r: sweedler::Result<T>) -> Result<T, Computation> {
    r.map_err(Computation)
}

enum Source<'a> {
    File(&'a Path),
    Preset(&'a str),
}

impl<'a> Source<'a> {
    fn of_input(input: &'a Input, default: Option<&'a str>) -> Result<Self, CliError> {
        match (&input.input, &input.preset) {
            (Some(p), _) => Ok(Source::File(p)),
            (None, Some(n)) => Ok(Source::Preset(n)),
            (None, None) => default.map(Source::Preset).ok_or_else(|| CliError::Usage("give --input PATH or --preset NAME".into())),
        }
    }

    fn of_ref(s: &'a str) -> Self {
        match s.strip_prefix("preset:") {
            Some(n) => Source::Preset(n),
            None => Source::File(Path::new(s)),
        }
    }

    fn load(&self, common: &Common) -> Result<PresentationFile, CliError> {
        match self {
            Source::Preset(name) => preset(common.field.unwrap_or(Field::Rational), name),
            Source::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                let f = parse(&text)?;
                match common.field {
                    Some(field) if field != f.field => {
                        Err(CliError::Usage(format!("--field {field} disagrees with the file's field {}", f.field)))
                    }
                    _ => Ok(f),
                }
            }
        }
    }
}

enum Object {
    Algebra(DgAlgebra),
    Coalgebra(DgCoalgebra),
}

impl Object {
    fn complex(&self) -> &DgSpace {
        match self {
            Object::Algebra(a) => &a.complex,
            Object::Coalgebra(c) => &c.complex,
        }
    }

    fn weights(&self) -> Option<&Vec<usize>> {
        match self {
            Object::Algebra(a) => a.weights.as_ref(),
            Object::Coalgebra(c) => c.weights.as_ref(),
        }
    }
}

fn object(f: &PresentationFile, window: Truncation) -> Result<Object, CliError> {
    match f.kind {
        Kind::Algebra => Ok(Object::Algebra(build::algebra(f, window)?)),
        Kind::Coalgebra => Ok(Object::Coalgebra(build::coalgebra(f)?)),
        Kind::Map => Err(CliError::Usage("this command needs an algebra or a coalgebra, not a map".into())),
    }
}

fn load_algebra(src: &Source, common: &Common, window: Truncation) -> Result<DgAlgebra, CliError> {
    build::algebra(&src.load(common)?, window)
}

fn load_coalgebra(src: &Source, common: &Common) -> Result<DgCoalgebra, CliError> {
    build::coalgebra(&src.load(common)?)
}

fn load_pair(pair: &Pair, common: &Common, window: Truncation) -> Result<(DgCoalgebra, DgAlgebra), CliError> {
    let c = load_coalgebra(&Source::of_ref(&pair.coalgebra), common)?;
    let a = load_algebra(&Source::of_ref(&pair.algebra), common, window)?;
    if c.field() != a.field() {
        return Err(CliError::Usage(format!("the coalgebra is over {} and the algebra over {}", c.field(), a.field())));
    }
    Ok((c, a))
}

fn load_map(path: &Path, common: &Common, source: &sweedler::graded::Space, target: &sweedler::graded::Space) -> Result<GradedMap, CliError> {
    build::map(&Source::File(path).load(common)?, source, target)
}

fn window(common: &Common, lo: i64, hi: i64, cap: usize) -> Truncation {
    common.trunc.unwrap_or(Truncation { degree_min: lo, degree_max: hi, weight_cap: cap })
}

fn first<T: std::fmt::Display>(failures: &[T]) -> String {
    match failures.first() {
        None => String::new(),
        Some(f) if failures.len() == 1 => format!("{f}"),
        Some(f) => format!("{f} (and {} more)", failures.len() - 1),
    }
}

fn counted<T: std::fmt::Display>(checked: usize, failures: &[T]) -> String {
    if failures.is_empty() {
        format!("{checked} checked")
    } else {
        format!("{} of {checked} failed: {}", failures.len(), first(failures))
    }
}

fn square_zero(r: &mut Report, what: &str, x: &DgSpace) {
    let s = check_square_zero(x);
    let witnesses: Vec<String> = s.failures.iter().map(|(i, v)| format!("d²{} = {}", x.space.name(*i), x.space.show(v))).collect();
    r.check(&format!("d² = 0 on {what}"), s.passed(), counted(s.checked, &witnesses));
}

fn incomplete(x: &DgSpace) -> Vec<i64> {
    let w = x.window();
    (w.degree_min..=w.degree_max).filter(|n| !x.degree_exact(*n)).collect()
}

/// Degrees cut by the window: a note, or a check under --strict-window.
fn window_status(r: &mut Report, common: &Common, x: &DgSpace) {
    let cut = incomplete(x);
    let list = if cut.is_empty() { "none".to_string() } else { cut.iter().map(i64::to_string).collect::<Vec<_>>().join(", ") };
    if common.strict_window {
        r.check("every degree of the window is complete", cut.is_empty(), format!("incomplete degrees: {list}"));
    } else {
        r.setting("incomplete degrees", list);
    }
}

fn dims_table(sp: &GradedSpace, weight: impl Fn(usize) -> Option<usize>) -> Table {
    let mut by: BTreeMap<(i64, Option<usize>), usize> = BTreeMap::new();
    for i in 0..sp.dim() {
        *by.entry((sp.degree(i), weight(i))).or_default() += 1;
    }
    if by.keys().all(|(_, w)| w.is_some()) && !by.is_empty() {
        let mut t = Table::new("dimensions", &["degree", "weight", "dim"]);
        for ((d, w), n) in by {
            t.row(vec![d.to_string(), w.unwrap_or(0).to_string(), n.to_string()]);
        }
        t
    } else {
        let mut t = Table::new("dimensions", &["degree", "dim"]);
        for (d, n) in sp.dims() {
            t.row(vec![d.to_string(), n.to_string()]);
        }
        t
    }
}

fn weighted_dims(dims: &BTreeMap<(i64, usize), usize>) -> Table {
    let mut t = Table::new("dimensions", &["degree", "weight", "dim"]);
    for ((d, w), n) in dims {
        t.row(vec![d.to_string(), w.to_string(), n.to_string()]);
    }
    t
}

/// Homology table; returns the trusted dimensions.
fn homology_table(r: &mut Report, x: &DgSpace) -> Result<BTreeMap<i64, usize>, Computation> {
    let h = compute(homology(x))?;
    let mut t = Table::new("homology", &["degree", "dim", "trusted"]);
    for row in &h.rows {
        t.row(vec![row.degree.to_string(), row.dim.to_string(), if row.trusted { "yes" } else { "no" }.into()]);
    }
    r.table(t);
    Ok(h.trusted())
}

fn describe(src: &Source) -> String {
    match src {
        Source::File(p) => p.display().to_string(),
        Source::Preset(n) => format!("preset {n}"),
    }
}

fn verify_object(r: &mut Report, o: &Object) {
    match o {
        Object::Algebra(a) => {
            let v = a.verify();
            r.check("algebra axioms", v.passed(), counted(v.checked, &v.failures));
        }
        Object::Coalgebra(c) => {
            let v = c.verify();
            r.check("coalgebra axioms", v.passed(), counted(v.checked, &v.failures));
        }
    }
}

fn cmd_single(r: &mut Report, common: &Common, input: &Input, which: &Command) -> Run {
    let src = Source::of_input(input, None)?;
    r.setting("input", describe(&src));
    let f = src.load(common)?;
    let w = window(common, -4, 4, 4);
    r.setting("field", f.field);
    if f.is_presented() {
        r.setting("truncation", f.window.unwrap_or(w));
    }
    let o = object(&f, w)?;
    let x = o.complex();
    match which {
        Command::Verify(_) => {
            verify_object(r, &o);
            square_zero(r, "the input", x);
        }
        Command::Homology(_) => square_zero(r, "the input", x),
        _ => {}
    }
    if f.is_presented() {
        window_status(r, common, x);
    }
    r.table(dims_table(&x.space, |i| o.weights().map(|w| w[i])));
    if common.homology || matches!(which, Command::Homology(_)) {
        homology_table(r, x)?;
    }
    Ok(())
}

fn bar_cochain_checks(r: &mut Report, a: &DgAlgebra, b: &BarConstruction) -> Run {
    let field = a.field();
    match universal_bar_cochain(b) {
        Ok(beta) => {
            let t = verify_twisting_cochain(&b.coalgebra, a, &beta, true);
            r.check("β is a twisting cochain", t.passed(), twist_detail(&t));
        }
        Err(e @ sweedler::Error::ConventionMismatch(_)) => {
            let beta = scaled_bar_cochain(b, &field.one());
            let plain = verify_twisting_cochain(&b.coalgebra, a, &beta, true);
            let minus = verify_twisting_cochain(&b.coalgebra, a, &scaled_bar_cochain(b, &field.from_i64(-1)), true);
            r.setting("note", e);
            r.setting("β is twisting", if plain.passed() { "yes" } else { "no" });
            r.check("−β is a twisting cochain", minus.passed(), twist_detail(&minus));
        }
        Err(e) => return Err(Computation(e).into()),
    }
    Ok(())
}

fn cobar_cochain_checks(r: &mut Report, c: &DgCoalgebra, o: &CobarConstruction) -> Run {
    let field = c.field();
    match universal_cobar_cochain(o) {
        Ok(omega) => {
            let t = verify_twisting_cochain(c, &o.algebra, &omega, true);
            r.check("ω is a twisting cochain", t.passed(), twist_detail(&t));
        }
        Err(e @ sweedler::Error::ConventionMismatch(_)) => {
            let minus = verify_twisting_cochain(c, &o.algebra, &scaled_cobar_cochain(o, &field.from_i64(-1)), true);
            r.setting("note", e);
            r.check("−ω is a twisting cochain", minus.passed(), twist_detail(&minus));
        }
        Err(e) => return Err(Computation(e).into()),
    }
    Ok(())
}

fn twist_detail(t: &TwistReport) -> String {
    let mut s = format!("{} checked, {} skipped", t.checked, t.skipped);
    if let Some(f) = &t.failure {
        s.push_str("; ");
        s.push_str(f);
    }
    s
}

fn cmd_bar(r: &mut Report, common: &Common, input: &Input) -> Run {
    let src = Source::of_input(input, None)?;
    let conv = common.convention.unwrap_or(Convention::BAR_DEFAULT);
    let w = window(common, -2, 6, 4);
    r.setting("input", describe(&src));
    let a = load_algebra(&src, common, w)?;
    r.setting("field", a.field());
    r.setting("convention", conv);
    r.setting("truncation", w);
    let b = compute(bar(&a, conv, w))?;
    let x = &b.coalgebra.complex;
    square_zero(r, "BA", x);
    let p = b.check_pieces();
    r.check("d^int and d^ext square to zero and anticommute", p.passed(), counted(p.checked, &p.failures));
    let v = b.coalgebra.verify();
    r.check("coalgebra axioms on BA", v.passed(), counted(v.checked, &v.failures));
    bar_cochain_checks(r, &a, &b)?;
    window_status(r, common, x);
    r.table(dims_table(&x.space, |i| Some(b.words.weight(i))));
    if common.homology {
        homology_table(r, x)?;
    }
    Ok(())
}

fn cmd_cobar(r: &mut Report, common: &Common, input: &Input) -> Run {
    let src = Source::of_input(input, None)?;
    let conv = common.convention.unwrap_or(Convention::COBAR_DEFAULT);
    let w = window(common, -6, 2, 4);
    r.setting("input", describe(&src));
    let c = load_coalgebra(&src, common)?;
    r.setting("field", c.field());
    r.setting("convention", conv);
    r.setting("truncation", w);
    let o = compute(cobar(&c, conv, w))?;
    let x = &o.algebra.complex;
    square_zero(r, "ΩC", x);
    let p = o.check_pieces();
    r.check("d^int and d^ext square to zero and anticommute", p.passed(), counted(p.checked, &p.failures));
    let v = o.algebra.verify();
    r.check("algebra axioms on ΩC", v.passed(), counted(v.checked, &v.failures));
    cobar_cochain_checks(r, &c, &o)?;
    window_status(r, common, x);
    r.table(dims_table(&x.space, |i| Some(o.words.weight(i))));
    if common.homology {
        homology_table(r, x)?;
    }
    Ok(())
}

fn cmd_mc(r: &mut Report, common: &Common, input: &Input) -> Run {
    let src = Source::of_input(input, Some("mc"))?;
    let w = window(common, -8, 1, 8);
    r.setting("input", describe(&src));
    let f = src.load(common)?;
    let field = f.field;
    r.setting("field", field);
    r.setting("truncation", f.window.unwrap_or(w));
    let a = build::algebra(&f, w)?;
    let reference = compute(mc_algebra(field, w.weight_cap))?;
    let v = reference.verify();
    r.check("du + u² = 0, Hopf axioms and antipode on T(u)", v.passed(), counted(v.checked, &v.failures));
    // the presentation against the word model, basis element by basis element
    let (sp, rs) = (a.space(), reference.algebra.space());
    let mut diffs = Vec::new();
    for n in (w.degree_min..=w.degree_max).filter(|n| rs.window().contains(*n)) {
        if sp.dim_in(n) != rs.dim_in(n) {
            diffs.push(format!("degree {n}: {} vs {}", sp.dim_in(n), rs.dim_in(n)));
        }
    }
    for i in 0..rs.dim() {
        let Some(j) = sp.index_of(rs.name(i)) else {
            diffs.push(format!("{} is missing", rs.name(i)));
            continue;
        };
        let (want, got) = (rs.show(reference.algebra.d().column(i)), sp.show(a.d().column(j)));
        if want != got {
            diffs.push(format!("d({}) = {got}, expected {want}", rs.name(i)));
        }
    }
    r.check("the presentation is T(u) with du = −u²", diffs.is_empty(), counted(rs.dim(), &diffs));
    square_zero(r, "mc", &a.complex);
    window_status(r, common, &a.complex);
    r.table(dims_table(sp, |i| a.weight(i)));
    if common.homology {
        let h = homology_table(r, &a.complex)?;
        let bad: Vec<String> = h.iter().filter(|(n, d)| **d != usize::from(**n == 0)).map(|(n, d)| format!("H_{n} = {d}")).collect();
        let ok = bad.is_empty() && h.get(&0) == Some(&1);
        let degrees: Vec<String> = h.keys().map(i64::to_string).collect();
        let detail = if ok { format!("trusted degrees {}", degrees.join(", ")) } else { first(&bad) };
        r.check("H(mc) is the ground field in degree 0", ok, detail);
    }
    Ok(())
}

fn cmd_convolve(r: &mut Report, common: &Common, pair: &Pair, left: Option<&Path>, right: Option<&Path>) -> Run {
    let (c, a) = load_pair(pair, common, window(common, -4, 4, 4))?;
    let w = common.trunc.unwrap_or_else(|| hom_window(c.space(), a.space()));
    r.setting("coalgebra", &pair.coalgebra);
    r.setting("algebra", &pair.algebra);
    r.setting("field", a.field());
    r.setting("truncation", w);
    let conv = compute(convolution(&c, &a, w))?;
    let v = conv.algebra.verify();
    r.check("algebra axioms on [C,A]", v.passed(), counted(v.checked, &v.failures));
    square_zero(r, "[C,A]", &conv.algebra.complex);
    if let (Some(lp), Some(rp)) = (left, right) {
        let f = load_map(lp, common, c.space(), a.space())?;
        let g = load_map(rp, common, c.space(), a.space())?;
        let h = convolve(&c, &a, &f, &g);
        let via_table = conv.algebra.mul(&conv.from_map(&f), &conv.from_map(&g));
        r.check("f⋆g matches the product of [C,A]", via_table == conv.from_map(&h), "");
        r.block("f⋆g", serialize(&build::map_file(&h)));
    }
    r.table(dims_table(conv.algebra.space(), |_| None));
    if common.homology {
        homology_table(r, &conv.algebra.complex)?;
    }
    Ok(())
}

fn cmd_product(r: &mut Report, common: &Common, pair: &Pair, pointed: bool) -> Run {
    let w = window(common, -4, 8, 4);
    let (c, a) = load_pair(pair, common, w)?;
    r.setting("coalgebra", &pair.coalgebra);
    r.setting("algebra", &pair.algebra);
    r.setting("field", a.field());
    r.setting("truncation", w);
    r.setting("variant", if pointed { "pointed" } else { "unpointed" });
    let p = compute(sweedler_product(&c, &a, w, pointed))?;
    let m = p.verify_universal_measuring(&c, &a);
    let detail = format!("{} checked, {} skipped{}", m.checked, m.skipped, m.failure.as_ref().map(|f| format!("; {f}")).unwrap_or_default());
    r.check("the universal map is a measuring", m.passed(), detail);
    let v = p.algebra().verify();
    r.check("algebra axioms on C▷A", v.passed(), counted(v.checked, &v.failures));
    square_zero(r, "C▷A", &p.algebra().complex);
    window_status(r, common, &p.algebra().complex);
    r.table(weighted_dims(&product_dims(&p)));
    if common.homology {
        homology_table(r, &p.algebra().complex)?;
    }
    Ok(())
}

fn cmd_dual(r: &mut Report, common: &Common, input: &Input, emit: Option<&Path>) -> Run {
    let src = Source::of_input(input, None)?;
    let w = window(common, -4, 4, 4);
    r.setting("input", describe(&src));
    let a = load_algebra(&src, common, w)?;
    r.setting("field", a.field());
    let d = compute(sweedler_dual(&a))?;
    let v = d.verify();
    r.check("coalgebra axioms on the dual", v.passed(), counted(v.checked, &v.failures));
    let back = compute(dual_algebra(&d))?;
    r.check("the double dual has the dimensions of A", back.space().dims() == a.space().dims(), "");
    let text = serialize(&build::coalgebra_file(&d));
    if let Some(path) = emit {
        std::fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    r.table(dims_table(d.space(), |i| d.weights.as_ref().map(|w| w[i])));
    r.block("dual coalgebra", text);
    Ok(())
}

fn cmd_twist_verify(r: &mut Report, common: &Common, pair: &Pair, map: &Path, unpointed: bool) -> Run {
    let (c, a) = load_pair(pair, common, window(common, -4, 4, 4))?;
    r.setting("coalgebra", &pair.coalgebra);
    r.setting("algebra", &pair.algebra);
    r.setting("field", a.field());
    let alpha = load_map(map, common, c.space(), a.space())?;
    if alpha.degree != -1 {
        return Err(CliError::DegreeMismatch(format!("a twisting cochain has degree -1, the map has degree {}", alpha.degree)).into());
    }
    let t = verify_twisting_cochain(&c, &a, &alpha, !unpointed);
    let name = if unpointed { "α is a twisting cochain" } else { "α is a pointed twisting cochain" };
    r.check(name, t.passed(), twist_detail(&t));
    Ok(())
}

fn constructions(common: &Common, c: &DgCoalgebra, a: &DgAlgebra, w: Truncation) -> Result<(CobarConstruction, BarConstruction), Computation> {
    let oc = common.convention.unwrap_or(Convention::COBAR_DEFAULT);
    let bc = common.convention.unwrap_or(Convention::BAR_DEFAULT);
    Ok((compute(cobar(c, oc, w))?, compute(bar(a, bc, w))?))
}

fn pair_settings(r: &mut Report, pair: &Pair, field: Field, w: Truncation, o: &CobarConstruction, b: &BarConstruction) {
    r.setting("coalgebra", &pair.coalgebra);
    r.setting("algebra", &pair.algebra);
    r.setting("field", field);
    r.setting("convention", format!("cobar {}, bar {}", o.convention, b.convention));
    r.setting("truncation", w);
}

fn cmd_twist_enumerate(r: &mut Report, common: &Common, pair: &Pair) -> Run {
    let w = window(common, -3, 3, 4);
    let (c, a) = load_pair(pair, common, w)?;
    let (o, b) = constructions(common, &c, &a, w)?;
    pair_settings(r, pair, a.field(), w, &o, &b);
    let census = compute(adjunction_census(&c, &a, &o, &b))?;
    let agree = census.twisting == census.algebra_maps && census.twisting == census.coalgebra_maps;
    r.check("twisting cochains, algebra maps ΩC → A and coalgebra maps C → BA are equinumerous", agree, "");
    r.check("both transform/extract roundtrips are identities", census.roundtrip_failures.is_empty(), first(&census.roundtrip_failures));
    let mut t = Table::new("counts", &["set", "size"]);
    t.row(vec!["candidate cochains".into(), census.candidates.to_string()]);
    t.row(vec!["twisting cochains".into(), census.twisting.to_string()]);
    t.row(vec!["dg-algebra maps ΩC → A".into(), census.algebra_maps.to_string()]);
    t.row(vec!["dg-coalgebra maps C → BA".into(), census.coalgebra_maps.to_string()]);
    r.table(t);
    Ok(())
}

fn cmd_adjoint(r: &mut Report, common: &Common, pair: &Pair, map: &Path) -> Run {
    let w = window(common, -3, 3, 4);
    let (c, a) = load_pair(pair, common, w)?;
    let (o, b) = constructions(common, &c, &a, w)?;
    pair_settings(r, pair, a.field(), w, &o, &b);
    let alpha = load_map(map, common, c.space(), a.space())?;
    let tw = verify_twisting_cochain(&c, &a, &alpha, true);
    r.check("α is a pointed twisting cochain", tw.passed(), twist_detail(&tw));
    let t = compute(adjunction_transforms(&c, &a, &alpha, &o, &b))?;
    let (ar, cr) = (&t.algebra_report, &t.coalgebra_report);
    r.check("g: ΩC → A is a dg-algebra map", ar.passed(), counted(ar.checked, &ar.failures));
    r.check("f: C → BA is a dg-coalgebra map", cr.passed(), counted(cr.checked, &cr.failures));
    let from_g = compute(extract_from_algebra_map(&c, &a, &o, &t.algebra_map))?;
    let from_f = compute(extract_from_coalgebra_map(&c, &a, &b, &t.coalgebra_map))?;
    r.check("α is recovered from g", from_g.differences(&alpha).is_empty(), "");
    r.check("α is recovered from f", from_f.differences(&alpha).is_empty(), "");
    let show = |m: &GradedMap, rows: &mut Vec<String>, i: usize, name: &str| {
        rows.push(format!("{name} ↦ {}", m.target.show(m.column(i))));
    };
    let mut g_rows = Vec::new();
    for l in 0..o.letters().dim() {
        if let Some(wi) = o.words.letter_word(l) {
            show(&t.algebra_map, &mut g_rows, wi, o.letters().name(l));
        }
    }
    let mut f_rows = Vec::new();
    for i in 0..c.dim() {
        show(&t.coalgebra_map, &mut f_rows, i, c.space().name(i));
    }
    r.block("g on the letters of ΩC", g_rows.join("\n"));
    r.block("f on C", f_rows.join("\n"));
    Ok(())
}

fn cmd_signs(r: &mut Report, common: &Common, input: &Input) -> Run {
    let src = Source::of_input(input, None)?;
    r.setting("input", describe(&src));
    let f = src.load(common)?;
    r.setting("field", f.field);
    match f.kind {
        Kind::Algebra => {
            let w = window(common, -2, 6, 4);
            r.setting("truncation", w);
            let a = build::algebra(&f, w)?;
            let minus = compute(bar(&a, Convention::Minus, w))?;
            let plus = compute(bar(&a, Convention::Plus, w))?;
            square_zero(r, "BA (minus)", &minus.coalgebra.complex);
            square_zero(r, "BA (plus)", &plus.coalgebra.complex);
            let pi = minus.compare_conventions(&plus);
            r.check("π = (−1)^length intertwines the two bar constructions", pi.passed(), counted(pi.checked, &pi.failures));
            bar_cochain_checks(r, &a, &minus)?;
            bar_cochain_checks(r, &a, &plus)?;
        }
        Kind::Coalgebra => {
            let w = window(common, -6, 2, 4);
            r.setting("truncation", w);
            let c = build::coalgebra(&f)?;
            let plus = compute(cobar(&c, Convention::Plus, w))?;
            let minus = compute(cobar(&c, Convention::Minus, w))?;
            square_zero(r, "ΩC (plus)", &plus.algebra.complex);
            square_zero(r, "ΩC (minus)", &minus.algebra.complex);
            let pi = plus.compare_conventions(&minus);
            r.check("π = (−1)^length intertwines the two cobar constructions", pi.passed(), counted(pi.checked, &pi.failures));
            cobar_cochain_checks(r, &c, &plus)?;
            cobar_cochain_checks(r, &c, &minus)?;
        }
        Kind::Map => return Err(CliError::Usage("signs compare needs an algebra or a coalgebra".into()).into()),
    }
    Ok(())
}

fn dispatch(r: &mut Report, cli: &Cli) -> Run {
    let common = &cli.common;
    match &cli.command {
        which @ (Command::Verify(input) | Command::Homology(input) | Command::Dims(input)) => cmd_single(r, common, input, which),
        Command::Bar(input) => cmd_bar(r, common, input),
        Command::Cobar(input) => cmd_cobar(r, common, input),
        Command::Mc(input) => cmd_mc(r, common, input),
        Command::Convolve { pair, left, right } => cmd_convolve(r, common, pair, left.as_deref(), right.as_deref()),
        Command::SweedlerProduct { pair, pointed } => cmd_product(r, common, pair, *pointed),
        Command::SweedlerDual { input, emit } => cmd_dual(r, common, input, emit.as_deref()),
        Command::Twist { action: TwistAction::Verify { pair, map, unpointed } } => cmd_twist_verify(r, common, pair, map, *unpointed),
        Command::Twist { action: TwistAction::Enumerate { pair } } => cmd_twist_enumerate(r, common, pair),
        Command::Adjoint { pair, map } => cmd_adjoint(r, common, pair, map),
        Command::Signs { action: SignsAction::Compare(input) } => cmd_signs(r, common, input),
    }
}

/// Run a parsed command line. `echo` is the command as typed, minus the program name.
/// Input errors come back as `Err`; failed checks and computation errors are in the report.
pub fn run(cli: &Cli, echo: String) -> Result<Report, CliError> {
    let mut r = Report::new(echo);
    match dispatch(&mut r, cli) {
        Ok(()) => {}
        Err(Failure::Input(e)) => return Err(e),
        Err(Failure::Compute(Computation(e))) => r.check("computation", false, e.to_string()),
    }
    Ok(r)
}
