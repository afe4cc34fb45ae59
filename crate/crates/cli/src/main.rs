//! `polyop`: command-line front end.
//!
//! Exit codes: 0 on success or PASS, 1 on FAIL, 2 on usage or input errors.
//! `POLYOP_SEED` is read and ignored; it is reserved for randomized
//! subcommands.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyop::ainfty::{ainfty_check, delta, magic_diagonal};
use polyop::chains::{enumerate_chains, is_short, join_labels, op_dim};
use polyop::inversion::{invert_endo, solve_inverse_oracle};
use polyop::laurent::{Mode, Window};
use polyop::ncseries::{hilbert_endomorphism, involution_check, SignTwist};
use polyop::polytope::{DirectedPolytope, FaceId};
use polyop::treealg::{Family, FamilyKind, OrderVariant, RelationList};
use serde_json::json;

#[derive(Parser)]
#[command(name = "polyop", version, about = "Colored operads of directed polytopes")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Config {
    /// Maximal word length N.
    #[arg(long = "max-len", short = 'N', global = true, default_value_t = 5)]
    max_len: usize,
    /// Window of t-exponents kept, as LO,HI.
    #[arg(long, global = true, default_value = "-4,8", allow_hyphen_values = true, value_parser = parse_window)]
    window: Window,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::F2)]
    mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = TwistArg::T)]
    twist: TwistArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    F2,
    Int,
}

#[derive(Copy, Clone, ValueEnum)]
enum TwistArg {
    T,
    Colors,
    Both,
    None,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum ListArg {
    Printed,
    Completed,
}

#[derive(Copy, Clone, ValueEnum)]
enum OrderArg {
    Descending,
    Ascending,
}

/// A polytope given as a file path or as `--builtin SPEC`.
#[derive(Args, Clone)]
struct Source {
    /// Polytope JSON file.
    file: Option<String>,
    /// Builtin: point, interval, simplex:N, cube:N, polygon:N,M or product:A,B.
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the directed-polytope axioms.
    Validate(Source),
    /// Print a builtin polytope as JSON.
    Builtin { spec: String },
    /// Print the product of two polytopes (files or builtin specs) as JSON.
    Product { left: String, right: String },
    /// List face chains with their excess.
    Chains {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        face: Option<String>,
        /// Chain length; defaults to the maximal word length.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Decide shortness.
    Short(Source),
    /// Dimension and degree of one operation space.
    Dims {
        #[command(flatten)]
        source: Source,
        /// Arity as `I1,I2,...->O`.
        #[arg(long)]
        arity: String,
    },
    /// Print the Hilbert endomorphism.
    Hilbert(Source),
    /// Invert the Hilbert endomorphism.
    Invert {
        #[command(flatten)]
        source: Source,
        /// Use the coefficient-solving algorithm.
        #[arg(long)]
        oracle: bool,
        /// Print where the two algorithms disagree.
        #[arg(long)]
        diff: bool,
    },
    /// Check that the twisted Hilbert endomorphism is an involution.
    Involution(Source),
    /// Print the diagonal terms of a given length and excess.
    Diagonal {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        face: Option<String>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        k: i32,
        /// Print the dimension-additive diagonal instead.
        #[arg(long)]
        magic: bool,
    },
    /// Check the A-infinity relations over F2.
    Ainfty(Source),
    /// Count normal forms against operation-space dimensions.
    NormalForms {
        #[command(subcommand)]
        family: FamilyArg,
    },
}

#[derive(Args, Clone)]
struct NfOptions {
    #[arg(long, default_value_t = 3)]
    max_inputs: usize,
    /// Only this arity, as `I1,I2,...->O`; also prints its normal form.
    #[arg(long)]
    arity: Option<String>,
    #[arg(long, value_enum, default_value_t = ListArg::Completed)]
    relations: ListArg,
    #[arg(long, value_enum, default_value_t = OrderArg::Descending)]
    order: OrderArg,
}

#[derive(Subcommand, Clone)]
enum FamilyArg {
    Simplex {
        n: usize,
        #[command(flatten)]
        options: NfOptions,
    },
    Polygon {
        n: usize,
        m: usize,
        #[command(flatten)]
        options: NfOptions,
    },
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (lo, hi) = s.split_once(',').ok_or("expected LO,HI")?;
    let lo: i32 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: i32 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err("LO exceeds HI".into());
    }
    Ok(Window::new(lo, hi))
}

/// Outcome of a subcommand: its report lines and whether it passed.
struct Report {
    lines: Vec<String>,
    passed: bool,
}

impl Report {
    fn ok(lines: Vec<String>) -> Self {
        Report { lines, passed: true }
    }

    fn json(value: serde_json::Value, passed: bool) -> Self {
        Report { lines: vec![serde_json::to_string_pretty(&value).expect("json values serialize")], passed }
    }
}

fn main() -> ExitCode {
    let _ = std::env::var_os("POLYOP_SEED");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(jobs) = cli.config.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            for line in &report.lines {
                if writeln!(out, "{line}").is_err() {
                    break;
                }
            }
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(source: &Source) -> Result<DirectedPolytope, String> {
    match (&source.file, &source.builtin) {
        (Some(path), None) => DirectedPolytope::load(path).map_err(|e| format!("{path}: {e}")),
        (None, Some(spec)) => DirectedPolytope::from_spec(spec).map_err(|e| e.to_string()),
        _ => Err("give a polytope file or --builtin SPEC".into()),
    }
}

/// A builtin spec if it parses as one, otherwise a file path.
fn load_either(arg: &str) -> Result<DirectedPolytope, String> {
    DirectedPolytope::from_spec(arg).or_else(|_| DirectedPolytope::load(arg).map_err(|e| format!("{arg}: {e}")))
}

fn face(p: &DirectedPolytope, label: &str) -> Result<FaceId, String> {
    p.face_or_err(label).map_err(|e| e.to_string())
}

fn parse_arity(arity: &str, color: impl Fn(&str) -> Result<FaceId, String>) -> Result<(Vec<FaceId>, FaceId), String> {
    let (ins, out) = arity.split_once("->").ok_or("arity must look like I1,I2,...->O")?;
    let inputs = split_labels(ins).into_iter().map(&color).collect::<Result<Vec<_>, _>>()?;
    if inputs.is_empty() {
        return Err("arity needs at least one input".into());
    }
    Ok((inputs, color(out.trim())?))
}

/// Splits a comma-joined list of labels, keeping `polygon` labels such as
/// `e(1)` intact.
fn split_labels(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() {
        out.push(s[start..].trim());
    }
    out
}

fn mode(c: &Config) -> Mode {
    match c.mode {
        ModeArg::F2 => Mode::F2,
        ModeArg::Int => Mode::Integers,
    }
}

fn twist(c: &Config) -> SignTwist {
    match c.twist {
        TwistArg::T => SignTwist::T,
        TwistArg::Colors => SignTwist::COLORS,
        TwistArg::Both => SignTwist::BOTH,
        TwistArg::None => SignTwist::NONE,
    }
}

fn run(cli: &Cli) -> Result<Report, String> {
    let c = &cli.config;
    let json = c.format == Format::Json;
    match &cli.command {
        Command::Validate(src) => {
            let p = load(src)?;
            let report = p.validate();
            let passed = report.is_valid();
            if json {
                return Ok(Report::json(json!({ "valid": passed, "violations": report.violations }), passed));
            }
            let mut lines = vec![if passed { "valid".to_string() } else { "invalid".to_string() }];
            lines.extend(report.violations.iter().map(|v| v.to_string()));
            Ok(Report { lines, passed })
        }
        Command::Builtin { spec } => {
            let p = DirectedPolytope::from_spec(spec).map_err(|e| e.to_string())?;
            Ok(Report::ok(vec![p.to_json()]))
        }
        Command::Product { left, right } => {
            let p = load_either(left)?.product(&load_either(right)?);
            Ok(Report::ok(vec![p.to_json()]))
        }
        Command::Chains { source, face: which, n } => {
            let p = load(source)?;
            let n = n.unwrap_or(c.max_len);
            let faces: Vec<FaceId> = match which {
                Some(label) => vec![face(&p, label)?],
                None => p.faces().collect(),
            };
            let chains: Vec<_> = faces.into_iter().flat_map(|f| enumerate_chains(&p, f, n)).collect();
            if json {
                let records: Vec<_> = chains
                    .iter()
                    .map(|ch| {
                        json!({
                            "ambient": p.label(ch.ambient),
                            "members": ch.members.iter().map(|&m| p.label(m)).collect::<Vec<_>>(),
                            "excess": ch.excess,
                        })
                    })
                    .collect();
                return Ok(Report::json(json!(records), true));
            }
            Ok(Report::ok(chains.iter().map(|ch| ch.render(&p)).collect()))
        }
        Command::Short(src) => {
            let p = load(src)?;
            let report = is_short(&p);
            let witness = report.witness.as_ref().map(|w| w.render(&p));
            if json {
                return Ok(Report::json(json!({ "short": report.short, "witness": witness }), report.short));
            }
            let mut lines = vec![format!("short: {}", report.short)];
            lines.extend(witness.map(|w| format!("witness: {w}")));
            Ok(Report { lines, passed: report.short })
        }
        Command::Dims { source, arity } => {
            let p = load(source)?;
            let (inputs, output) = parse_arity(arity, |l| face(&p, l))?;
            let d = op_dim(&p, &inputs, output);
            let arity = format!("{}->{}", join_labels(&p, &inputs, ","), p.label(output));
            if json {
                return Ok(Report::json(
                    json!({ "arity": arity, "dim": d.dim(), "excess": d.excess, "inner_degree": d.inner_degree }),
                    true,
                ));
            }
            Ok(Report::ok(vec![format!("{arity}\t{}\t{}\t{}", d.dim(), d.excess, d.inner_degree)]))
        }
        Command::Hilbert(src) => {
            let p = load(src)?;
            let f = hilbert_endomorphism(&p, c.max_len, c.window, mode(c));
            warn_truncation(f.truncation());
            Ok(if json { Report::json(f.to_json(), true) } else { Report::ok(f.render()) })
        }
        Command::Invert { source, oracle, diff } => {
            let p = load(source)?;
            let f = hilbert_endomorphism(&p, c.max_len, c.window, mode(c));
            warn_truncation(f.truncation());
            if *diff {
                let a = invert_endo(&f).map_err(|e| e.to_string())?;
                let b = solve_inverse_oracle(&f).map_err(|e| e.to_string())?;
                let residual = a.difference(&b);
                let passed = residual.is_empty();
                if json {
                    return Ok(Report::json(json!(residual), passed));
                }
                let lines = if passed { vec!["PASS".to_string()] } else { residual.iter().map(|r| r.render()).collect() };
                return Ok(Report { lines, passed });
            }
            let g = if *oracle { solve_inverse_oracle(&f) } else { invert_endo(&f) }.map_err(|e| e.to_string())?;
            Ok(if json { Report::json(g.to_json(), true) } else { Report::ok(g.render()) })
        }
        Command::Involution(src) => {
            let p = load(src)?;
            let report = involution_check(&p, c.max_len, c.window, mode(c), twist(c));
            warn_truncation(report.truncation.as_ref());
            let passed = report.passed();
            if json {
                return Ok(Report::json(json!(report), passed));
            }
            let lines = if passed { vec!["PASS".to_string()] } else { report.residual.iter().map(|r| r.render()).collect() };
            Ok(Report { lines, passed })
        }
        Command::Diagonal { source, face: which, n, k, magic } => {
            let p = load(source)?;
            let only = which.as_deref().map(|l| face(&p, l)).transpose()?;
            let map = if *magic { magic_diagonal(&p) } else { delta(&p, *n, *k) };
            let terms: Vec<_> = map.terms.iter().filter(|t| only.is_none_or(|f| t.source == f)).collect();
            if json {
                let records: Vec<_> = terms
                    .iter()
                    .map(|t| {
                        json!({
                            "source": p.label(t.source),
                            "targets": t.targets.iter().map(|&f| p.label(f)).collect::<Vec<_>>(),
                            "k": t.k,
                        })
                    })
                    .collect();
                return Ok(Report::json(json!(records), true));
            }
            Ok(Report::ok(terms.iter().map(|t| t.render(&p)).collect()))
        }
        Command::Ainfty(src) => {
            let p = load(src)?;
            let report = ainfty_check(&p, c.max_len);
            let passed = report.passed();
            if json {
                let defects: Vec<_> = report.defects.iter().map(|d| d.render(&p)).collect();
                return Ok(Report::json(json!({ "max_len": report.max_len, "defects": defects }), passed));
            }
            let lines = if passed { vec!["PASS".to_string()] } else { report.defects.iter().map(|d| d.render(&p)).collect() };
            Ok(Report { lines, passed })
        }
        Command::NormalForms { family } => normal_forms(family, json),
    }
}

fn warn_truncation(w: Option<&polyop::ncseries::TruncationWarning>) {
    if let Some(w) = w {
        eprintln!(
            "warning: chain excesses span [{}, {}], outside the window [{}, {}]; coefficients are truncated",
            w.min_excess, w.max_excess, w.window.lo, w.window.hi
        );
    }
}

fn normal_forms(family: &FamilyArg, json: bool) -> Result<Report, String> {
    let (kind, o) = match family {
        FamilyArg::Simplex { n, options } => (FamilyKind::Simplex(*n), options),
        FamilyArg::Polygon { n, m, options } => (FamilyKind::Polygon(*n, *m), options),
    };
    let list = match o.relations {
        ListArg::Printed => RelationList::Printed,
        ListArg::Completed => RelationList::Completed,
    };
    let variant = match o.order {
        OrderArg::Descending => OrderVariant::DescendingStems,
        OrderArg::Ascending => OrderVariant::AscendingStems,
    };
    let fam = Family::with_order(kind, list, variant).map_err(|e| e.to_string())?;
    let (rows, extra) = match &o.arity {
        Some(arity) => {
            let (inputs, output) = parse_arity(arity, |l| fam.color(l).map_err(|e| e.to_string()))?;
            let nf = fam.normal_form(&inputs, output).map(|t| fam.render(&t));
            (vec![fam.count_arity(&inputs, output)], nf)
        }
        None => (fam.count_normal_forms(o.max_inputs).rows, None),
    };
    let passed = rows.iter().all(|r| r.matches());
    if json {
        let records: Vec<_> = rows
            .iter()
            .map(|r| {
                json!({
                    "arity": fam.render_arity(&r.inputs, r.output),
                    "count": r.normal_forms,
                    "dim": r.dim,
                    "match": r.matches(),
                })
            })
            .collect();
        return Ok(Report::json(json!({ "rows": records, "normal_form": extra }), passed));
    }
    let mut lines: Vec<String> = rows
        .iter()
        .map(|r| format!("{}\t{}\t{}\t{}", fam.render_arity(&r.inputs, r.output), r.normal_forms, r.dim, r.matches()))
        .collect();
    lines.extend(extra.map(|nf| format!("normal form\t{nf}")));
    Ok(Report { lines, passed })
}
