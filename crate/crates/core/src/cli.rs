//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::abindex::{self, AbPolynomial};
use crate::error::{Error, Result};
use crate::incidence::{self, IncidenceFunction};
use crate::kls::{self, KernelContext};
use crate::matroid::{self, DeletionSuite, Matroid};
use crate::poly::{GammaExpansion, Polynomial};
use crate::poset::{self, Poset};
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "chowkit", version, about = "Dual Chow and Kazhdan–Lusztig–Stanley invariants of posets and matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute an invariant of a poset.
    Poset(PosetArgs),
    /// Compute an invariant of a matroid or verify its deletion identities.
    Matroid(MatroidArgs),
    /// Run identity suites on a poset.
    Verify(VerifyArgs),
    /// Print a table of dual Chow polynomials for a family.
    Table(TableArgs),
}

#[derive(Args, Debug)]
struct PosetSource {
    /// Poset JSON file.
    file: Option<String>,
    /// Named fixture: figure1, figure3, figure4, b1.., c1.., pi1.., u34, k4.
    #[arg(long, conflicts_with = "file")]
    fixture: Option<String>,
}

#[derive(Args, Debug)]
struct PosetArgs {
    #[command(flatten)]
    source: PosetSource,
    #[arg(long, value_enum)]
    invariant: PosetInvariant,
    #[arg(long, value_enum, default_value = "characteristic")]
    kernel: KernelKind,
    /// Print the value on every interval instead of the whole poset.
    #[arg(long)]
    all_intervals: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct MatroidArgs {
    /// Matroid JSON file.
    file: Option<String>,
    /// Uniform matroid as `r,n`.
    #[arg(long, conflicts_with_all = ["file", "boolean", "named"])]
    uniform: Option<String>,
    /// Boolean matroid of the given rank.
    #[arg(long, conflicts_with_all = ["file", "named"])]
    boolean: Option<usize>,
    /// Named matroid: k4, u34.
    #[arg(long, conflicts_with = "file")]
    named: Option<String>,
    #[arg(long, value_enum, required_unless_present = "verify", conflicts_with = "verify")]
    invariant: Option<MatroidInvariant>,
    #[arg(long, value_enum)]
    verify: Option<MatroidSuite>,
    /// How to compute dual-chow and dual-aug-chow.
    #[arg(long, value_enum, default_value = "lattice")]
    method: Method,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    source: PosetSource,
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    max: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum KernelKind {
    Characteristic,
    Eulerian,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PosetInvariant {
    DualChow,
    DualAugChow,
    DualLeftAugChow,
    Chow,
    RightAugChow,
    LeftAugChow,
    RightKls,
    LeftKls,
    DualRightKls,
    DualLeftKls,
    Z,
    DualZ,
    Kernel,
    Mobius,
    ChainFormula,
    AbIndex,
    ExtendedAbIndex,
    Gamma,
    RealRoots,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MatroidInvariant {
    DualChow,
    DualAugChow,
    Chow,
    BergmanH,
    CharPoly,
    Gamma,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MatroidSuite {
    Deletion,
    AbDeletion,
    ExtendedDeletion,
    BergmanDeletion,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Lattice,
    Deletion,
    ClosedForm,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    Identities,
    Truncation,
    Operations,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Partition,
    Uniform,
    Boolean,
}

/// Exit code and captured output of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn input_error(message: String) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: message }
    }
}

/// Runs the command line `argv`, whose first item is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome::ok(text) } else { Outcome::input_error(text) };
        }
    };
    let result = match &cli.command {
        Command::Poset(args) => run_poset(args),
        Command::Matroid(args) => run_matroid(args),
        Command::Verify(args) => run_verify(args),
        Command::Table(args) => run_table(args),
    };
    match result {
        Ok(outcome) => outcome,
        Err(e) => Outcome::input_error(format!("error: {e}\n")),
    }
}

/// Builds a named fixture poset.
pub fn fixture(name: &str) -> Result<Poset> {
    let numbered = |prefix: &str| name.strip_prefix(prefix).and_then(|k| k.parse::<usize>().ok());
    match name {
        "figure1" => return Ok(poset::figure1()),
        "figure3" => return Ok(poset::figure3()),
        "figure4" => return Ok(poset::figure4()),
        "u34" => return Ok(poset::u34()),
        "k4" => return Ok((*Matroid::graphic_k4().flats()?.poset).clone()),
        _ => {}
    }
    if let Some(r) = numbered("b").filter(|&r| r <= 10) {
        return Ok(poset::boolean(r));
    }
    if let Some(n) = numbered("c").filter(|&n| n >= 1) {
        return Ok(poset::chain(n));
    }
    if let Some(n) = numbered("pi").filter(|&n| (1..=7).contains(&n)) {
        return Ok(poset::partition_lattice(n));
    }
    Err(Error::Parse(format!("unknown fixture {name:?}")))
}

fn load_poset(source: &PosetSource) -> Result<Poset> {
    match (&source.file, &source.fixture) {
        (_, Some(name)) => fixture(name),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            Poset::from_json_str(&text).map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("{path}: {m}")),
                other => other,
            })
        }
        (None, None) => Err(Error::Parse("give a poset file or --fixture NAME".into())),
    }
}

fn parse_uniform(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("--uniform expects r,n, got {text:?}"));
    let (r, n) = text.split_once(',').ok_or_else(bad)?;
    Ok((r.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?))
}

fn poly_json(p: &Polynomial) -> Value {
    json!({ "coeffs": p })
}

fn gamma_json(g: &GammaExpansion) -> Value {
    json!({
        "center_degree": g.center_degree,
        "gammas": g.gammas.iter().map(BigInt::to_string).collect::<Vec<_>>(),
    })
}

fn gamma_text(g: &GammaExpansion) -> String {
    let parts: Vec<String> = g.gammas.iter().map(BigInt::to_string).collect();
    format!("({})", parts.join(", "))
}

fn emit(format: Format, value: Value, text: String) -> Outcome {
    match format {
        Format::Json => Outcome::ok(format!("{value}\n")),
        Format::Text => Outcome::ok(if text.ends_with('\n') { text } else { text + "\n" }),
    }
}

fn report_outcome(format: Format, reports: &[Report]) -> Outcome {
    let passed = reports.iter().all(Report::all_passed);
    let stdout = match format {
        Format::Json => format!("{}\n", json!({ "passed": passed, "reports": reports })),
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&r.to_string());
            }
            if let Some(check) = reports.iter().find_map(Report::first_failure) {
                let _ = write!(out, "first failure: {}", check.identity);
                if let Some(m) = &check.mismatch {
                    if let Some((s, t)) = &m.interval {
                        let _ = write!(out, " on [{s}, {t}]");
                    }
                    let _ = write!(out, "\n  lhs: {}\n  rhs: {}", m.lhs, m.rhs);
                }
                out.push('\n');
            }
            out
        }
    };
    Outcome { code: if passed { 0 } else { 1 }, stdout, stderr: String::new() }
}

fn incidence_output(format: Format, f: &IncidenceFunction, all_intervals: bool) -> Outcome {
    let p = f.poset();
    if !all_intervals {
        let v = f.top_value();
        return emit(format, poly_json(v), v.to_string());
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    for (&(s, t), v) in p.pairs().iter().zip(f.values()) {
        let _ = writeln!(text, "[{}, {}] {}", p.label(s), p.label(t), v);
        rows.push(json!({ "s": p.label(s), "t": p.label(t), "coeffs": v }));
    }
    emit(format, json!({ "intervals": rows }), text)
}

fn ab_output(format: Format, items: &[(&str, AbPolynomial)]) -> Outcome {
    let mut text = String::new();
    let mut value = serde_json::Map::new();
    for (name, ab) in items {
        let _ = writeln!(text, "{name}: {ab}");
        value.insert(name.to_string(), serde_json::to_value(ab.to_json()).expect("serializable"));
    }
    emit(format, Value::Object(value), text)
}

fn run_poset(args: &PosetArgs) -> Result<Outcome> {
    let poset = Arc::new(load_poset(&args.source)?);
    let ctx = match args.kernel {
        KernelKind::Characteristic => KernelContext::characteristic(poset.clone()),
        KernelKind::Eulerian => KernelContext::eulerian(poset.clone())?,
    };
    let fmt = args.format;
    let all = args.all_intervals;
    let func = |f: Result<&IncidenceFunction>| -> Result<Outcome> { Ok(incidence_output(fmt, f?, all)) };
    match args.invariant {
        PosetInvariant::DualChow => func(ctx.dual_chow()),
        PosetInvariant::DualAugChow => func(ctx.dual_augmented().map(|(f, _)| f)),
        PosetInvariant::DualLeftAugChow => func(ctx.dual_augmented().map(|(_, g)| g)),
        PosetInvariant::Chow => func(ctx.chow()),
        PosetInvariant::RightAugChow => func(ctx.right_augmented()),
        PosetInvariant::LeftAugChow => func(ctx.left_augmented()),
        PosetInvariant::RightKls => func(ctx.right_kls()),
        PosetInvariant::LeftKls => func(ctx.left_kls()),
        PosetInvariant::DualRightKls => func(ctx.dual_right_kls()),
        PosetInvariant::DualLeftKls => func(ctx.dual_left_kls()),
        PosetInvariant::Z => func(ctx.z_function()),
        PosetInvariant::DualZ => func(ctx.dual_z()),
        PosetInvariant::Kernel => func(Ok(ctx.kernel())),
        PosetInvariant::Mobius => func(Ok(&incidence::mobius(&poset))),
        PosetInvariant::ChainFormula => {
            let mu = poset.mobius_values();
            let p = poset.clone();
            let f = IncidenceFunction::from_fn(poset.clone(), move |s, t| kls::dual_chow_chain_formula_on(&p, &mu, s, t));
            func(Ok(&f))
        }
        PosetInvariant::AbIndex => {
            require_whole(all)?;
            Ok(ab_output(fmt, &[("ab_index", abindex::ab_index(&poset)?)]))
        }
        PosetInvariant::ExtendedAbIndex => {
            require_whole(all)?;
            let e = abindex::extended_indices(&poset)?;
            Ok(ab_output(fmt, &[("exa", e.exa), ("tilde", e.tilde), ("b", e.b)]))
        }
        PosetInvariant::Gamma => {
            require_whole(all)?;
            let (h, f) = abindex::gamma_via_flags(&poset)?;
            let text = format!("H*: {}\nF*: {}", gamma_text(&h), gamma_text(&f));
            Ok(emit(fmt, json!({ "dual_chow": gamma_json(&h), "dual_aug_chow": gamma_json(&f) }), text))
        }
        PosetInvariant::RealRoots => {
            require_whole(all)?;
            let h = ctx.dual_chow()?.top_value().clone();
            Ok(real_roots_output(fmt, &h)?)
        }
    }
}

fn require_whole(all_intervals: bool) -> Result<()> {
    if all_intervals {
        return Err(Error::Parse("--all-intervals applies only to incidence-function invariants".into()));
    }
    Ok(())
}

fn real_roots_output(fmt: Format, h: &Polynomial) -> Result<Outcome> {
    let count = h.count_real_roots()?;
    let rooted = h.is_real_rooted()?;
    let noun = if count == 1 { "root" } else { "roots" };
    let verdict = if rooted {
        format!("real-rooted, exactly {count} real {noun}")
    } else {
        format!("not real-rooted, exactly {count} real {noun}")
    };
    let value = json!({ "polynomial": h, "real_roots": count, "real_rooted": rooted });
    Ok(emit(fmt, value, format!("{h}\n{verdict}")))
}

fn load_matroid(args: &MatroidArgs) -> Result<Matroid> {
    if let Some(text) = &args.uniform {
        let (r, n) = parse_uniform(text)?;
        return Matroid::uniform(r, n);
    }
    if let Some(r) = args.boolean {
        return Matroid::boolean(r);
    }
    if let Some(name) = &args.named {
        return matroid::named_matroid(name);
    }
    match &args.file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            matroid::matroid_from_json_str(&text).map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("{path}: {m}")),
                other => other,
            })
        }
        None => Err(Error::Parse("give a matroid file, --uniform r,n, --boolean r or --named NAME".into())),
    }
}

fn run_matroid(args: &MatroidArgs) -> Result<Outcome> {
    let m = load_matroid(args)?;
    let fmt = args.format;
    if let Some(suite) = args.verify {
        let suite = match suite {
            MatroidSuite::Deletion => DeletionSuite::DualChow,
            MatroidSuite::AbDeletion => DeletionSuite::AbIndex,
            MatroidSuite::ExtendedDeletion => DeletionSuite::Extended,
            MatroidSuite::BergmanDeletion => DeletionSuite::Bergman,
            MatroidSuite::All => DeletionSuite::All,
        };
        return Ok(report_outcome(fmt, &[m.verify_deletions(suite)?]));
    }
    let invariant = args.invariant.expect("clap enforces --invariant or --verify");
    let closed_form = |dual_aug: bool| -> Result<Polynomial> {
        let (r, n) = (m.rank(), m.ground_size());
        if m != Matroid::uniform(r, n)? {
            return Err(Error::InvalidMatroid("closed forms apply to uniform matroids only".into()));
        }
        if dual_aug {
            matroid::uniform_dual_aug_chow(r, n)
        } else {
            matroid::uniform_dual_chow(r, n)
        }
    };
    let value = match (invariant, args.method) {
        (MatroidInvariant::DualChow, Method::Lattice) => m.dual_chow()?,
        (MatroidInvariant::DualChow, Method::Deletion) => m.dual_chow_by_deletion()?,
        (MatroidInvariant::DualChow, Method::ClosedForm) => closed_form(false)?,
        (MatroidInvariant::DualAugChow, Method::ClosedForm) => closed_form(true)?,
        (MatroidInvariant::DualAugChow, _) => m.dual_aug_chow()?,
        (MatroidInvariant::Chow, _) => m.chow()?,
        (MatroidInvariant::BergmanH, _) => m.bergman_h()?,
        (MatroidInvariant::CharPoly, _) => m.characteristic_polynomial()?,
        (MatroidInvariant::Gamma, _) => {
            let g = m.dual_chow_gamma()?;
            return Ok(emit(fmt, gamma_json(&g), gamma_text(&g)));
        }
    };
    Ok(emit(fmt, poly_json(&value), value.to_string()))
}

fn run_verify(args: &VerifyArgs) -> Result<Outcome> {
    let poset = Arc::new(load_poset(&args.source)?);
    let mut reports = Vec::new();
    let wants = |s: Suite| args.suite == s || args.suite == Suite::All;
    if wants(Suite::Identities) {
        let ctx = KernelContext::characteristic(poset.clone());
        reports.push(ctx.verify_identities()?);
        reports.push(ctx.verify_dual_identities()?);
        reports.push(kls::hstar_fstar_bridge(&poset)?);
        reports.push(kls::sign_twist_unimodality(&ctx)?);
        if let Some(r) = kls::mobius_sign_unimodality(&poset)? {
            reports.push(r);
        }
        if poset.is_graded() {
            reports.push(abindex::abindex_identities(&poset)?);
        }
    }
    if wants(Suite::Truncation) && poset.is_graded() && poset.rank() >= 2 {
        reports.push(kls::truncation_identities(&poset)?);
        reports.push(abindex::truncation_ab_identities(&poset)?);
    }
    if wants(Suite::Operations) {
        reports.push(kls::operation_identities(&poset, &poset::boolean(2))?);
    }
    if reports.is_empty() {
        return Err(Error::InvalidPoset("no suite applies to this poset".into()));
    }
    Ok(report_outcome(args.format, &reports))
}

fn run_table(args: &TableArgs) -> Result<Outcome> {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut push = |name: String, h: Polynomial| {
        let _ = writeln!(text, "{name}: {h}");
        rows.push(json!({ "name": name, "coeffs": h }));
    };
    match args.family {
        Family::Partition => {
            if args.max > 7 {
                return Err(Error::ScaleGuard(format!("partition table stops at 7, got {}", args.max)));
            }
            for n in 1..=args.max {
                push(format!("Pi_{n}"), kls::dual_chow_polynomial(&poset::partition_lattice(n))?);
            }
        }
        Family::Boolean => {
            for r in 1..=args.max {
                push(format!("B_{r}"), kls::dual_chow_polynomial(&poset::boolean(r))?);
            }
        }
        Family::Uniform => {
            for n in 1..=args.max {
                for r in 1..=n {
                    push(format!("U_{r},{n}"), Matroid::uniform(r, n)?.dual_chow()?);
                }
            }
        }
    }
    Ok(emit(args.format, json!({ "rows": rows }), text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_report_exits_1_with_interval() {
        let mut report = Report::new("demo");
        report.check("holds", true, None);
        report.check_on("breaks", ("a", "b"), &Polynomial::from_i64s(&[1, 1]), &Polynomial::from_i64s(&[1, 2]));
        let out = report_outcome(Format::Text, &[report]);
        assert_eq!(out.code, 1);
        assert!(out.stdout.contains("first failure: breaks on [a, b]"));
        assert!(out.stdout.contains("lhs: 1 + x"));
        assert!(out.stdout.contains("rhs: 1 + 2x"));
    }

    #[test]
    fn fixtures_resolve() {
        for name in ["figure1", "figure3", "figure4", "b2", "b5", "c2", "c4", "u34", "k4", "pi3"] {
            assert!(fixture(name).is_ok(), "{name}");
        }
        assert_eq!(fixture("c3").unwrap().len(), 3);
        assert!(fixture("pi9").is_err());
    }
}
