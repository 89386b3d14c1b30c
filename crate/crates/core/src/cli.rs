//! The `lca` command-line driver.
//!
//! Exit codes: 0 when the command ran and (for checking verbs) the check
//! passed, 1 when a check failed, 2 on usage or I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    check_axioms, load_algebra, make_catalog, Algebra, BValue, CatalogKind, Element,
};
use crate::bimap::{load_map, make_family, verify_map, Family, Identity, MapFile, VerifyReport};
use crate::poly::{self, Rational};
use crate::solver::{match_map, match_templates, solve_bider, MatchReport, SolutionSpace};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "lca",
    version,
    about = "Exact λ-bracket and conformal biderivation workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check skew-symmetry and the Jacobi identity on every generator tuple
    CheckAxioms {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Verify a closed-form biderivation family
    VerifyFamily {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Index shift s (reduced mod m)
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        /// Scale of the inner family
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t: String,
        /// L-coefficient of the shift families
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a: String,
        /// G-coefficient of the clw family (b = -1 only)
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        g: String,
        #[arg(long = "eq", value_enum, default_value = "all")]
        eq: EqArg,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate biderivation residuals of a map file
    Residual {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        map: PathBuf,
        #[arg(long = "eq", value_enum, default_value = "all")]
        eq: EqArg,
        #[command(flatten)]
        output: Output,
    },
    /// Solve for all biderivations of bounded degree
    SolveBider {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        degree: u32,
        /// Identity paired with def1a (def1a is always included)
        #[arg(long = "eq", value_enum, default_value = "def1b")]
        eq: EqArg,
        #[command(flatten)]
        output: Output,
    },
    /// Match a map file, or a solved basis, against the family templates
    Match {
        #[command(flatten)]
        source: Source,
        #[arg(long, conflicts_with = "degree")]
        map: Option<PathBuf>,
        #[arg(long, required_unless_present = "map")]
        degree: Option<u32>,
        #[arg(long = "eq", value_enum, default_value = "def1b")]
        eq: EqArg,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
struct Source {
    #[arg(long, value_enum)]
    catalog: Option<CatalogArg>,
    /// Algebra definition file (JSON)
    #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
    algebra: Option<PathBuf>,
    /// Grading modulus
    #[arg(long)]
    m: Option<u32>,
    /// Parameter b: a rational or `symbolic` (clw only)
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CatalogArg {
    Vir,
    Cw,
    Clw,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Inner,
    Cw,
    Clw,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EqArg {
    Def1a,
    Def1b,
    Lem1,
    Lem2,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A usage or I/O failure naming the flag responsible.
#[derive(Debug)]
struct UsageError {
    flag: &'static str,
    message: String,
}

fn usage(flag: &'static str, message: impl ToString) -> UsageError {
    UsageError {
        flag,
        message: message.to_string(),
    }
}

impl EqArg {
    fn tags(self) -> Vec<Identity> {
        match self {
            EqArg::Def1a => vec![Identity::Def1a],
            EqArg::Def1b => vec![Identity::Def1b],
            EqArg::Lem1 => vec![Identity::Lem1],
            EqArg::Lem2 => vec![Identity::Lem2],
            EqArg::All => Identity::ALL.to_vec(),
        }
    }

    /// Solver tags: def1a plus the selected identity.
    fn solver_tags(self) -> Result<Vec<Identity>, UsageError> {
        let mut tags = match self {
            EqArg::All => vec![Identity::Def1a, Identity::Def1b, Identity::Lem1],
            EqArg::Lem2 => {
                return Err(usage(
                    "--eq",
                    "the solver accepts def1a, def1b, lem1 or all",
                ))
            }
            other => other.tags(),
        };
        if !tags.contains(&Identity::Def1a) {
            tags.insert(0, Identity::Def1a);
        }
        Ok(tags)
    }
}

fn parse_rational(flag: &'static str, text: &str) -> Result<Rational, UsageError> {
    poly::parse(text)
        .ok()
        .filter(|p| p.vars().is_empty())
        .and_then(|p| p.as_constant())
        .ok_or_else(|| usage(flag, format!("expected a rational, got `{text}`")))
}

impl Source {
    fn resolve(&self) -> Result<Arc<Algebra>, UsageError> {
        if let Some(path) = &self.algebra {
            if self.m.is_some() {
                return Err(usage("--m", "--m only applies to --catalog"));
            }
            if self.b.is_some() {
                return Err(usage("--b", "--b only applies to --catalog"));
            }
            return load_algebra(path)
                .map(Arc::new)
                .map_err(|e| usage("--algebra", format!("{}: {e}", path.display())));
        }
        let kind = match self.catalog.expect("clap enforces one source") {
            CatalogArg::Vir => CatalogKind::Vir,
            CatalogArg::Cw => CatalogKind::Cw,
            CatalogArg::Clw => CatalogKind::Clw,
        };
        let b = match &self.b {
            None => None,
            Some(_) if kind != CatalogKind::Clw => {
                return Err(usage("--b", "b is only accepted for --catalog clw"))
            }
            Some(text) => Some(text.parse::<BValue>().map_err(|e| usage("--b", e))?),
        };
        let m = self.m.unwrap_or(1);
        if kind == CatalogKind::Vir && m != 1 {
            return Err(usage("--m", "vir has m = 1; use --catalog cw for loops"));
        }
        make_catalog(kind, m, b)
            .map(Arc::new)
            .map_err(|e| usage("--m", e))
    }
}

fn family_name(f: &Family) -> String {
    f.to_string()
}

fn element_json(alg: &Algebra, e: &Element) -> Value {
    Value::Array(
        e.terms()
            .map(|(g, p)| json!({"gen": alg.gen_name(*g), "coeff": p.to_string()}))
            .collect(),
    )
}

fn verify_json(alg: &Algebra, report: &VerifyReport) -> Value {
    let checked: serde_json::Map<String, Value> = report
        .checked
        .iter()
        .map(|(t, n)| (t.name().to_string(), json!(n)))
        .collect();
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|r| {
            json!({
                "tag": r.tag.name(),
                "args": r.args.iter().map(|g| alg.gen_name(*g)).collect::<Vec<_>>(),
                "value": alg.display(&r.value).to_string(),
                "terms": element_json(alg, &r.value),
            })
        })
        .collect();
    json!({"checked": checked, "pass": report.pass(), "failures": failures})
}

fn verify_text(alg: &Algebra, report: &VerifyReport, out: &mut String) {
    for (tag, n) in &report.checked {
        let bad = report.failures.iter().filter(|r| r.tag == *tag).count();
        out.push_str(&format!("{tag}: {n} tuples, {bad} nonzero\n"));
    }
    for r in &report.failures {
        let args: Vec<String> = r.args.iter().map(|g| alg.gen_name(*g)).collect();
        out.push_str(&format!(
            "  {} ({}) = {}\n",
            r.tag,
            args.join(", "),
            alg.display(&r.value)
        ));
    }
    out.push_str(if report.pass() { "PASS\n" } else { "FAIL\n" });
}

fn match_json(report: &MatchReport) -> (Value, Value) {
    let matched = report
        .matched
        .iter()
        .map(|m| {
            json!({
                "basis_index": m.basis_index,
                "combination": m.combination.iter()
                    .map(|(f, c)| json!({"template": family_name(f), "coeff": c.to_string()}))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    let unmatched = report
        .unmatched
        .iter()
        .map(|u| {
            json!({
                "basis_index": u.basis_index,
                "map": MapFile::from(&u.map),
                "remainder": MapFile::from(&u.remainder),
            })
        })
        .collect();
    (Value::Array(matched), Value::Array(unmatched))
}

fn match_text(report: &MatchReport, out: &mut String) {
    for m in &report.matched {
        let parts: Vec<String> = m
            .combination
            .iter()
            .map(|(f, c)| format!("{c}·{}", family_name(f)))
            .collect();
        out.push_str(&format!(
            "  basis[{}] = {}\n",
            m.basis_index,
            parts.join(" + ")
        ));
    }
    for u in &report.unmatched {
        out.push_str(&format!(
            "  basis[{}] UNMATCHED, remainder:\n",
            u.basis_index
        ));
        for ((x, y), e) in u.remainder.entries() {
            let alg = u.map.algebra_arc();
            out.push_str(&format!(
                "    φ({}, {}) ∋ {}\n",
                alg.gen_name(*x),
                alg.gen_name(*y),
                alg.display(e)
            ));
        }
    }
}

fn basis_text(space: &SolutionSpace, out: &mut String) {
    let alg = &space.algebra;
    for (i, phi) in space.basis.iter().enumerate() {
        out.push_str(&format!("basis[{i}]:\n"));
        for ((x, y), e) in phi.entries() {
            out.push_str(&format!(
                "  φ({}, {}) = {}\n",
                alg.gen_name(*x),
                alg.gen_name(*y),
                alg.display(e)
            ));
        }
    }
}

#[derive(Serialize)]
struct SolveReport {
    algebra: String,
    degree: u32,
    tags: Vec<&'static str>,
    unknowns: usize,
    rows: usize,
    dimension: usize,
    basis: Vec<MapFile>,
    matched: Value,
    unmatched: Value,
}

struct Outcome {
    text: String,
    json: Value,
    pass: bool,
}

fn execute(cmd: &Command) -> Result<Outcome, UsageError> {
    match cmd {
        Command::CheckAxioms { source, .. } => {
            let alg = source.resolve()?;
            let report = check_axioms(&alg);
            let failures: Vec<Value> = report
                .failures()
                .map(|(kind, r)| {
                    json!({
                        "axiom": kind,
                        "args": r.args.iter().map(|g| alg.gen_name(*g)).collect::<Vec<_>>(),
                        "value": alg.display(&r.value).to_string(),
                        "terms": element_json(&alg, &r.value),
                    })
                })
                .collect();
            let mut text = format!(
                "{}: {} skew pairs, {} Jacobi triples\n",
                alg.name(),
                report.skew.len(),
                report.jacobi.len()
            );
            for (kind, r) in report.failures() {
                let args: Vec<String> = r.args.iter().map(|g| alg.gen_name(*g)).collect();
                text.push_str(&format!(
                    "  {kind} ({}) = {}\n",
                    args.join(", "),
                    alg.display(&r.value)
                ));
            }
            text.push_str(if report.pass() { "PASS\n" } else { "FAIL\n" });
            Ok(Outcome {
                json: json!({
                    "command": "check-axioms",
                    "algebra": alg.name(),
                    "skew_checked": report.skew.len(),
                    "jacobi_checked": report.jacobi.len(),
                    "pass": report.pass(),
                    "failures": failures,
                }),
                text,
                pass: report.pass(),
            })
        }
        Command::VerifyFamily {
            source,
            family,
            shift,
            t,
            a,
            g,
            eq,
            ..
        } => {
            let alg = source.resolve()?;
            let fam = match family {
                FamilyArg::Inner => Family::Inner {
                    t: parse_rational("--t", t)?,
                },
                FamilyArg::Cw => Family::CwShift {
                    shift: *shift,
                    a: parse_rational("--a", a)?,
                },
                FamilyArg::Clw => Family::ClwShift {
                    shift: *shift,
                    a: parse_rational("--a", a)?,
                    g: parse_rational("--g", g)?,
                },
            };
            let phi = make_family(&alg, &fam).map_err(|e| usage("--family", e))?;
            let report = verify_map(&phi, &eq.tags());
            let mut text = format!("{} on {}\n", family_name(&fam), alg.name());
            verify_text(&alg, &report, &mut text);
            let mut json = verify_json(&alg, &report);
            json["command"] = json!("verify-family");
            json["algebra"] = json!(alg.name());
            json["family"] = json!(family_name(&fam));
            Ok(Outcome {
                text,
                json,
                pass: report.pass(),
            })
        }
        Command::Residual {
            source, map, eq, ..
        } => {
            let alg = source.resolve()?;
            let phi = load_map(&alg, map)
                .map_err(|e| usage("--map", format!("{}: {e}", map.display())))?;
            let report = verify_map(&phi, &eq.tags());
            let mut text = format!("{} on {}\n", map.display(), alg.name());
            verify_text(&alg, &report, &mut text);
            let mut json = verify_json(&alg, &report);
            json["command"] = json!("residual");
            json["algebra"] = json!(alg.name());
            json["map"] = json!(map.display().to_string());
            Ok(Outcome {
                text,
                json,
                pass: report.pass(),
            })
        }
        Command::SolveBider {
            source, degree, eq, ..
        } => {
            let alg = source.resolve()?;
            let tags = eq.solver_tags()?;
            let space = solve_bider(&alg, *degree, &tags).map_err(|e| usage("--b", e))?;
            let matches = match_templates(&space);
            let (matched, unmatched) = match_json(&matches);
            let report = SolveReport {
                algebra: alg.name().to_string(),
                degree: *degree,
                tags: space.tags.iter().map(|t| t.name()).collect(),
                unknowns: space.unknowns,
                rows: space.rows,
                dimension: space.dimension(),
                basis: space.basis.iter().map(MapFile::from).collect(),
                matched,
                unmatched,
            };
            let mut text = format!(
                "{} degree {} [{}]: {} unknowns, {} rows, dimension {}\n",
                report.algebra,
                report.degree,
                report.tags.join(", "),
                report.unknowns,
                report.rows,
                report.dimension
            );
            basis_text(&space, &mut text);
            text.push_str("templates:\n");
            match_text(&matches, &mut text);
            Ok(Outcome {
                json: serde_json::to_value(&report).expect("serializable"),
                text,
                pass: true,
            })
        }
        Command::Match {
            source,
            map,
            degree,
            eq,
            ..
        } => {
            let alg = source.resolve()?;
            let report = match (map, degree) {
                (Some(path), _) => {
                    let phi = load_map(&alg, path)
                        .map_err(|e| usage("--map", format!("{}: {e}", path.display())))?;
                    match_map(&phi)
                }
                (None, Some(d)) => {
                    let space =
                        solve_bider(&alg, *d, &eq.solver_tags()?).map_err(|e| usage("--b", e))?;
                    match_templates(&space)
                }
                (None, None) => return Err(usage("--degree", "--degree or --map is required")),
            };
            let (matched, unmatched) = match_json(&report);
            let templates: Vec<String> = report.templates.iter().map(family_name).collect();
            let mut text = format!("{}: templates {}\n", alg.name(), templates.join(", "));
            match_text(&report, &mut text);
            text.push_str(if report.fully_matched() {
                "PASS\n"
            } else {
                "FAIL\n"
            });
            Ok(Outcome {
                json: json!({
                    "command": "match",
                    "algebra": alg.name(),
                    "templates": templates,
                    "matched": matched,
                    "unmatched": unmatched,
                    "pass": report.fully_matched(),
                }),
                text,
                pass: report.fully_matched(),
            })
        }
    }
}

fn output_of(cmd: &Command) -> &Output {
    match cmd {
        Command::CheckAxioms { output, .. }
        | Command::VerifyFamily { output, .. }
        | Command::Residual { output, .. }
        | Command::SolveBider { output, .. }
        | Command::Match { output, .. } => output,
    }
}

/// Runs the CLI on `args` (including the program name), writing the report
/// to `stdout` (or `--out`) and diagnostics to `stderr`. Returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_PASS;
            }
            let rendered = e.to_string();
            let line: Vec<&str> = rendered
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            let _ = writeln!(stderr, "{}", line.join(" "));
            return EXIT_USAGE;
        }
    };
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}: {}", e.flag, e.message);
            return EXIT_USAGE;
        }
    };
    let output = output_of(&cli.command);
    let body = match output.format {
        Format::Text => outcome.text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.json).expect("serializable");
            s.push('\n');
            s
        }
    };
    match &output.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                let _ = writeln!(stderr, "error: --out: {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = stdout.write_all(body.as_bytes());
        }
    }
    if outcome.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}
