//! The `tiltwall` command line.
//!
//! Exit codes: 0 on success, 1 when a validation or check fails, 2 on usage errors.

pub mod check;
pub mod gen;
pub mod render;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{all_scenarios, list_scenarios, load_scenario, Scenario, Shape};
use crate::exactnum::{fmt_rational, int, parse_rational, rat, rational_to_f64, QuadraticIrrational, Rational};
use crate::hntree::{
    assemble_chd0, assemble_chd1, classify_breakpoints, hn_factors_at, hn_factors_limit, trivial_chd, validate_tree_in,
    BreakpointReport, HNTree, HnFactor, PiecewiseQuadratic,
};
use crate::lattice::{ChernClass, SurfaceConfig};
use crate::walls::{default_a_max, enumerate_with, radius_f64, EnumerationOptions, WallCandidate};
use render::{approx, Table};

pub const THREADS_ENV: &str = "TILTWALL_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "tiltwall",
    version,
    about = "Exact walls and Chern degree functions for tilt stability on surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Candidate walls crossing a vertical segment of the (α, β)-plane.
    Walls(WallsArgs),
    /// Chern degree function assembled from a destabilization tree.
    Chd(ChdArgs),
    /// Check the invariants of a destabilization tree.
    Validate(ValidateArgs),
    /// Harder-Narasimhan factors at a point, or in the limit a -> 0.
    Hn(HnArgs),
    /// Built-in scenarios.
    Catalog(CatalogArgs),
    /// Run the catalog regressions and every property suite.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    /// Built-in surface: ppas or abelian-(1,2).
    #[arg(long, conflicts_with = "config")]
    pub preset: Option<String>,
    /// JSON surface configuration, e.g. {"L2":2,"v0_step":2,"v1_step":2,"v2_denominator":2,"minimal_discriminant":4}.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(
    after_long_help = "CSV columns: center,radius_sq,cross_a,witness,witnesses[,radius_approx,cross_a_approx]\n\
witness and witnesses are classes written v0 v1 v2; witnesses are separated by ';'."
)]
pub struct WallsArgs {
    /// Chern class v0,v1,v2, e.g. 2,0,-5 or 2,-4,7/2.
    #[arg(long, allow_hyphen_values = true)]
    pub class: String,
    /// β of the vertical segment.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
    /// Lower end of the segment in a = α²/2.
    #[arg(long)]
    pub amin: String,
    /// Upper end of the segment; defaults to a bound above every wall.
    #[arg(long)]
    pub amax: Option<String>,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Add columns with 6 significant digits.
    #[arg(long)]
    pub approx: bool,
    /// Require Δ(w) + Δ(v - w) < Δ(v).
    #[arg(long)]
    pub strict: bool,
    /// Worker threads, capped by TILTWALL_THREADS.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TreeSource {
    /// Built-in scenario id.
    #[arg(long, conflicts_with = "tree")]
    pub scenario: Option<String>,
    /// Tree JSON file.
    #[arg(long)]
    pub tree: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Chd0,
    Chd1,
}

#[derive(Debug, Args)]
#[command(
    after_long_help = "CSV columns: x,value[,x_approx,value_approx] sampled from --from to --to in steps of --step."
)]
pub struct ChdArgs {
    #[command(flatten)]
    pub source: TreeSource,
    /// Trivial function of a class that is never destabilized.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["scenario", "tree"])]
    pub class: Option<String>,
    #[arg(long, value_enum, default_value_t = Kind::Chd0)]
    pub kind: Kind,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Include the breakpoint report.
    #[arg(long)]
    pub breakpoints: bool,
    #[arg(long)]
    pub approx: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<String>,
    #[arg(long)]
    pub step: Option<String>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub source: TreeSource,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct HnArgs {
    #[command(flatten)]
    pub source: TreeSource,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "limit")]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
    /// Factors in the limit a -> 0.
    #[arg(long, conflicts_with = "a")]
    pub limit: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long)]
    pub id: Option<String>,
    /// Print scenarios as JSON.
    #[arg(long)]
    pub export: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, default_value_t = check::DEFAULT_SEED)]
    pub seed: u64,
    /// Random cases per property suite.
    #[arg(long, default_value_t = check::DEFAULT_CASES)]
    pub cases: usize,
    /// Run only the named suites.
    #[arg(long)]
    pub only: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Bad input; exit code 2.
    Usage(String),
    /// The input was understood and failed a check; exit code 1.
    Invalid(String),
}

type CmdResult = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "{msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

pub fn execute(command: &Command, out: &mut dyn Write) -> CmdResult {
    let text = match command {
        Command::Walls(a) => cmd_walls(a)?,
        Command::Chd(a) => cmd_chd(a)?,
        Command::Validate(a) => return cmd_validate(a, out),
        Command::Hn(a) => cmd_hn(a)?,
        Command::Catalog(a) => cmd_catalog(a)?,
        Command::Check(a) => return cmd_check(a, out),
    };
    out.write_all(text.as_bytes()).map_err(usage)
}

fn rational_arg(name: &str, s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|e| Failure::Usage(format!("--{name}: {e}")))
}

fn class_arg(s: &str) -> Result<ChernClass, Failure> {
    s.parse().map_err(|e| Failure::Usage(format!("--class: {e}")))
}

pub fn surface(args: &SurfaceArgs) -> Result<SurfaceConfig, Failure> {
    let cfg = match (&args.preset, &args.config) {
        (_, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        (Some(name), None) => SurfaceConfig::preset(name).map_err(usage)?,
        (None, None) => SurfaceConfig::ppas(),
    };
    cfg.validate().map_err(usage)?;
    Ok(cfg)
}

/// `--threads` (or the available parallelism) capped by `TILTWALL_THREADS`.
pub fn thread_count(requested: Option<usize>) -> usize {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    let cap = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok());
    let n = requested.unwrap_or(available);
    cap.map_or(n, |c| n.min(c)).max(1)
}

fn to_json<T: Serialize>(x: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(x).map(|s| s + "\n").map_err(usage)
}

fn class_words(c: &ChernClass) -> String {
    format!("{} {} {}", c.v0, c.v1, fmt_rational(&c.v2))
}

fn cmd_walls(args: &WallsArgs) -> Result<String, Failure> {
    let cfg = surface(&args.surface)?;
    let v = class_arg(&args.class)?;
    let beta = rational_arg("beta", &args.beta)?;
    let a_min = rational_arg("amin", &args.amin)?;
    let a_max = args.amax.as_deref().map(|s| rational_arg("amax", s)).transpose()?;
    let opts = EnumerationOptions {
        a_max: a_max.clone(),
        strict: args.strict,
        threads: thread_count(args.threads),
    };
    let found = enumerate_with(&v, &beta, &a_min, &opts, &cfg).map_err(usage)?;
    let a_max = a_max.unwrap_or_else(|| default_a_max(&v, &a_min, &cfg));
    Ok(match args.format {
        Format::Json => to_json(&found)?,
        Format::Svg => svg::walls_svg(&v, &beta, &a_min, &a_max, &found),
        Format::Csv => walls_csv(&found, args.approx),
        Format::Table => {
            let head = format!(
                "class {v}, β = {}, {} <= a <= {}\n",
                fmt_rational(&beta),
                fmt_rational(&a_min),
                fmt_rational(&a_max)
            );
            head + &walls_table(&found, args.approx).render()
        }
    })
}

fn wall_cells(c: &WallCandidate) -> (String, String) {
    match c.wall.circle() {
        Some((s, r)) => (fmt_rational(s), fmt_rational(r)),
        None => (c.wall.to_string(), String::new()),
    }
}

fn approx_cells(c: &WallCandidate) -> Vec<String> {
    vec![
        radius_f64(&c.wall).map(approx).unwrap_or_default(),
        approx(rational_to_f64(&c.cross_a)),
    ]
}

pub fn walls_table(found: &[WallCandidate], with_approx: bool) -> Table {
    let mut headers = vec!["center", "radius_sq", "cross_a", "witness", "witnesses"];
    if with_approx {
        headers.extend(["radius≈", "cross_a≈"]);
    }
    let mut t = Table::new(headers);
    for c in found {
        let (s, r) = wall_cells(c);
        let mut row = vec![
            s,
            r,
            fmt_rational(&c.cross_a),
            c.witness.to_string(),
            c.witnesses.len().to_string(),
        ];
        if with_approx {
            row.extend(approx_cells(c));
        }
        t.push(row);
    }
    t
}

fn walls_csv(found: &[WallCandidate], with_approx: bool) -> String {
    let mut out = String::from("center,radius_sq,cross_a,witness,witnesses");
    if with_approx {
        out.push_str(",radius_approx,cross_a_approx");
    }
    out.push('\n');
    for c in found {
        let (s, r) = wall_cells(c);
        let ws: Vec<String> = c.witnesses.iter().map(class_words).collect();
        let mut row = vec![s, r, fmt_rational(&c.cross_a), class_words(&c.witness), ws.join(";")];
        if with_approx {
            row.extend(approx_cells(c));
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// The tree named by `--scenario` or read from `--tree`, with the scenario's surface.
fn load_tree(src: &TreeSource) -> Result<(HNTree, Option<Scenario>), Failure> {
    match (&src.scenario, &src.tree) {
        (Some(id), _) => {
            let s = load_scenario(id).map_err(usage)?;
            let t = s
                .tree()
                .ok_or_else(|| usage(format!("scenario {id} records walls only, not a tree")))?;
            Ok((t, Some(s)))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let t = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Ok((t, None))
        }
        (None, None) => Err(usage("one of --scenario or --tree is required")),
    }
}

fn function_table(f: &PiecewiseQuadratic) -> String {
    let mut t = Table::new(["from", "to", "piece"]);
    for (i, p) in f.pieces.iter().enumerate() {
        let (lo, hi) = f.interval(i);
        let show = |b: Option<QuadraticIrrational>, inf: &str| b.map_or(inf.to_string(), |x| x.to_string());
        t.push(vec![show(lo, "-inf"), show(hi, "+inf"), p.to_string()]);
    }
    t.render()
}

fn breakpoint_table(reports: &[BreakpointReport], with_approx: bool) -> String {
    let mut headers = vec!["x", "jump", "overlap", "leaves", "conditions"];
    if with_approx {
        headers.insert(1, "x≈");
    }
    let mut t = Table::new(headers);
    for r in reports {
        let leaves: Vec<String> = r
            .contributing_leaves
            .iter()
            .map(|l| l.label.clone().unwrap_or_else(|| l.class.to_string()))
            .collect();
        let tags: Vec<String> = r
            .condition_tags
            .iter()
            .map(|c| {
                let status = match c.status {
                    crate::hntree::TagStatus::NumericallyWitnessed => "witnessed",
                    crate::hntree::TagStatus::RequiresGeometricInput => "needs geometry",
                };
                format!("({}) {status}", format!("{:?}", c.condition).to_lowercase())
            })
            .collect();
        let mut row = vec![
            r.x.to_string(),
            r.derivative_jump.to_string(),
            r.overlap.to_string(),
            leaves.join(" + "),
            tags.join(", "),
        ];
        if with_approx {
            row.insert(1, approx(r.x.to_f64()));
        }
        t.push(row);
    }
    t.render()
}

/// Sampling window around the breakpoints, widened by 2 on each side.
fn window(f: &PiecewiseQuadratic) -> (Rational, Rational) {
    let lo = f.breakpoints.first().map_or(0, |b| b.to_f64().floor() as i64) - 2;
    let hi = f.breakpoints.last().map_or(0, |b| b.to_f64().ceil() as i64) + 2;
    let lo = match f.domain_lower.as_ref().and_then(|d| d.to_rational()) {
        Some(d) => d.max(int(lo)),
        None => int(lo),
    };
    (lo, int(hi))
}

fn cmd_chd(args: &ChdArgs) -> Result<String, Failure> {
    let (name, f, reports) = match &args.class {
        Some(c) => {
            let v = class_arg(c)?;
            let f0 = trivial_chd(&v).map_err(usage)?;
            let f = match args.kind {
                Kind::Chd0 => f0,
                Kind::Chd1 => assemble_chd1(&HNTree::trivial(v.clone())).map_err(usage)?,
            };
            let reports = classify_breakpoints(&HNTree::trivial(v.clone())).map_err(usage)?;
            (format!("{v}"), f, reports)
        }
        None => {
            let (t, s) = load_tree(&args.source)?;
            let f = match args.kind {
                Kind::Chd0 => assemble_chd0(&t),
                Kind::Chd1 => assemble_chd1(&t),
            }
            .map_err(usage)?;
            let reports = classify_breakpoints(&t).map_err(usage)?;
            let name = s.map_or_else(|| t.root_class().to_string(), |s| format!("{} {}", s.id, s.class));
            (name, f, reports)
        }
    };
    let kind = match args.kind {
        Kind::Chd0 => "chd0",
        Kind::Chd1 => "chd1",
    };
    let (w_lo, w_hi) = window(&f);
    let from = args
        .from
        .as_deref()
        .map(|s| rational_arg("from", s))
        .transpose()?
        .unwrap_or(w_lo);
    let to = args
        .to
        .as_deref()
        .map(|s| rational_arg("to", s))
        .transpose()?
        .unwrap_or(w_hi);
    if from >= to {
        return Err(usage("--from must be below --to"));
    }
    Ok(match args.format {
        Format::Json if args.breakpoints => {
            #[derive(Serialize)]
            struct Report<'a> {
                function: &'a PiecewiseQuadratic,
                breakpoints: &'a [BreakpointReport],
            }
            to_json(&Report {
                function: &f,
                breakpoints: &reports,
            })?
        }
        Format::Json => to_json(&f)?,
        Format::Svg => svg::function_svg(&format!("{kind} of {name}"), &f, &from, &to),
        Format::Csv => {
            let step = args
                .step
                .as_deref()
                .map(|s| rational_arg("step", s))
                .transpose()?
                .unwrap_or(rat(1, 4));
            if step <= int(0) {
                return Err(usage("--step must be positive"));
            }
            sample_csv(&f, &from, &to, &step, args.approx)
        }
        Format::Table => {
            let mut out = format!("{kind} of {name}\n{}", function_table(&f));
            if args.breakpoints {
                out.push('\n');
                out.push_str(&breakpoint_table(&reports, args.approx));
            }
            out
        }
    })
}

fn sample_csv(f: &PiecewiseQuadratic, from: &Rational, to: &Rational, step: &Rational, with_approx: bool) -> String {
    let mut out = String::from(if with_approx {
        "x,value,x_approx,value_approx\n"
    } else {
        "x,value\n"
    });
    let lower = f.domain_lower.clone();
    let mut x = from.clone();
    while &x <= to {
        let below = lower
            .as_ref()
            .is_some_and(|l| QuadraticIrrational::from(x.clone()) < *l);
        if !below {
            let y = f.eval_rational(&x);
            out.push_str(&format!("{},{}", fmt_rational(&x), fmt_rational(&y)));
            if with_approx {
                out.push_str(&format!(
                    ",{},{}",
                    approx(rational_to_f64(&x)),
                    approx(rational_to_f64(&y))
                ));
            }
            out.push('\n');
        }
        x += step;
    }
    out
}

fn cmd_validate(args: &ValidateArgs, out: &mut dyn Write) -> CmdResult {
    let (t, s) = load_tree(&args.source)?;
    let cfg = match (&s, args.surface.preset.is_some() || args.surface.config.is_some()) {
        (Some(s), false) => s.config.clone(),
        _ => surface(&args.surface)?,
    };
    let report = validate_tree_in(&t, &cfg);
    let text = match args.format {
        Format::Json => to_json(&report.violations)?,
        _ if report.is_pass() => format!("valid: {}\n", t.root_class()),
        _ => format!("invalid: {}\n{report}\n", t.root_class()),
    };
    out.write_all(text.as_bytes()).map_err(usage)?;
    if report.is_pass() {
        Ok(())
    } else {
        let kinds: Vec<&str> = report.violations.iter().map(|v| v.kind.name()).collect();
        Err(Failure::Invalid(format!("validation failed: {}", kinds.join(", "))))
    }
}

fn factor_table(factors: &[HnFactor]) -> String {
    let mut t = Table::new(["#", "class", "slope", "nodes"]);
    for (i, f) in factors.iter().enumerate() {
        t.push(vec![
            (i + 1).to_string(),
            f.class.to_string(),
            f.slope.to_string(),
            f.nodes.join(" + "),
        ]);
    }
    t.render()
}

fn cmd_hn(args: &HnArgs) -> Result<String, Failure> {
    let (t, _) = load_tree(&args.source)?;
    let beta = rational_arg("beta", &args.beta)?;
    let factors = if args.limit {
        hn_factors_limit(&t, &beta)
    } else {
        let a = rational_arg("a", args.a.as_deref().unwrap_or_default())?;
        hn_factors_at(&t, &a, &beta)
    }
    .map_err(usage)?;
    Ok(match args.format {
        Format::Json => to_json(&factors)?,
        _ => factor_table(&factors),
    })
}

fn shape_name(s: &Shape) -> &'static str {
    match s {
        Shape::Tree { .. } => "tree",
        Shape::Trivial => "trivial",
        Shape::WallsOnly { .. } => "walls-only",
    }
}

fn cmd_catalog(args: &CatalogArgs) -> Result<String, Failure> {
    let scenarios = match &args.id {
        Some(id) => vec![load_scenario(id).map_err(usage)?],
        None => all_scenarios(),
    };
    if args.export {
        return match (&args.id, scenarios.first().and_then(Scenario::tree)) {
            (Some(_), Some(t)) => to_json(&t),
            (Some(id), None) => Err(usage(format!("scenario {id} records walls only, not a tree"))),
            (None, _) => to_json(&scenarios),
        };
    }
    if args.id.is_none() {
        let mut t = Table::new(["id", "class", "shape", "walls"]);
        for s in &scenarios {
            t.push(vec![
                s.id.to_string(),
                s.class.to_string(),
                shape_name(&s.shape).into(),
                s.walls().len().to_string(),
            ]);
        }
        debug_assert_eq!(t.len(), list_scenarios().len());
        return Ok(t.render());
    }
    let s = &scenarios[0];
    let mut out = format!(
        "{}\nclass {}\nsurface L^2 = {}\n{}\n",
        s.id, s.class, s.config.l2, s.notes
    );
    let walls = s.walls();
    if !walls.is_empty() {
        let mut t = Table::new(["class", "wall"]);
        for (c, w) in &walls {
            t.push(vec![c.to_string(), w.to_string()]);
        }
        out.push('\n');
        out.push_str(&t.render());
    }
    if let Some(f) = &s.expected_chd0 {
        out.push_str("\nchd0\n");
        out.push_str(&function_table(f));
    }
    Ok(out)
}

fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> CmdResult {
    let opts = check::CheckOptions {
        seed: args.seed,
        cases: args.cases,
        threads: thread_count(None),
    };
    let results: Vec<check::SuiteResult> = if args.only.is_empty() {
        check::run_all(&opts)
    } else {
        args.only
            .iter()
            .map(|n| check::run_suite(n, &opts).ok_or_else(|| usage(format!("unknown suite {n}"))))
            .collect::<Result<_, _>>()?
    };
    let failed = results.iter().filter(|r| !r.passed()).count();
    let text = match args.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                suite: &'a str,
                passed: bool,
                cases: Option<usize>,
                failure: Option<&'a str>,
                millis: u128,
            }
            let rows: Vec<Row> = results
                .iter()
                .map(|r| Row {
                    suite: r.name,
                    passed: r.passed(),
                    cases: r.outcome.as_ref().ok().copied(),
                    failure: r.outcome.as_ref().err().map(String::as_str),
                    millis: r.elapsed.as_millis(),
                })
                .collect();
            to_json(&rows)?
        }
        _ => {
            let mut t = Table::new(["suite", "result", "cases", "ms", "detail"]);
            for r in &results {
                let (result, cases, detail) = match &r.outcome {
                    Ok(n) => ("pass", n.to_string(), String::new()),
                    Err(e) => ("FAIL", String::new(), e.clone()),
                };
                t.push(vec![
                    r.name.into(),
                    result.into(),
                    cases,
                    r.elapsed.as_millis().to_string(),
                    detail,
                ]);
            }
            format!(
                "{}{} of {} suites passed (seed {})\n",
                t.render(),
                results.len() - failed,
                results.len(),
                args.seed
            )
        }
    };
    out.write_all(text.as_bytes()).map_err(usage)?;
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Invalid(format!("{failed} suites failed")))
    }
}
