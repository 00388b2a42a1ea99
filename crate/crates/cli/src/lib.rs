//! The `minorlab` command line: construct graphs, compute spectral radii, test
//! minors, and run extremal searches, bound checks and structural harnesses.
//!
//! [`run`] takes the argument vector and the three standard streams, so the
//! binary and the tests share one entry point.

pub mod pattern;

use std::io::{BufRead, Write};
use std::ops::RangeInclusive;
use std::sync::mpsc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::ThreadPool;
use serde::{Deserialize, Serialize};

use minorlab_core::constructions::{split_graph, split_matching_graph};
use minorlab_core::extremal::{
    isomorphism_classes, run_harness, search_extremal_weighted, verify_edge_bounds_with, BoundCheck, BoundKind,
    BoundOptions, HarnessConfig, HarnessName, HarnessSummary, SearchConfig, ENUMERATE_MAX_VERTICES,
};
use minorlab_core::graph6::read_graph6_lines;
use minorlab_core::minor::{check_model, find_minor, MinorModel};
use minorlab_core::spectral::{
    exact_spectral_radius, lambda_f_even, lambda_f_odd, lambda_f_odd_printed, lambda_s_closed, spectral_radius,
    FormulaMode, DEFAULT_TOL,
};
use minorlab_core::{to_graph6, Graph};

use pattern::{build_family, parse_pattern};

/// Version stamped into every JSON object as `"schema": "minorlab.<kind>/<version>"`.
pub const SCHEMA_VERSION: u32 = 1;

/// Largest allowed gap between a closed form and power iteration in `formulas`.
pub const FORMULA_TOLERANCE: f64 = 1e-8;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "minorlab", version, about = "Split graphs, spectral radii and minor-free extremal searches")]
pub struct Cli {
    /// Output format for machine-readable results.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print one graph as graph6.
    Construct(ConstructArgs),
    /// Spectral radius of each graph6 line on stdin.
    Lambda(LambdaArgs),
    /// Minor containment for each graph6 line on stdin.
    Minor(MinorArgs),
    /// Maximize the spectral radius over a pattern-minor-free family.
    Search(SearchArgs),
    /// Check an edge bound for minor-free graphs.
    Bounds(BoundsArgs),
    /// Randomized structural checks.
    Harness(HarnessArgs),
    /// Closed-form spectral radii against power iteration.
    Formulas(FormulasArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// S, F, S(n,t), F(n,t), Kr-, Kr=, Kr, F1..F19, or `pattern` with --paths/--edges.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Clique size of a split family; defaults to r - 3.
    #[arg(long)]
    pub t: Option<usize>,
    /// Deleted path orders, e.g. 2,2,3.
    #[arg(long)]
    pub paths: Option<String>,
    /// Deleted edges, e.g. "(0,1),(1,2)".
    #[arg(long)]
    pub edges: Option<String>,
}

#[derive(Debug, Args)]
pub struct LambdaArgs {
    /// Also compute the spectral radius from the characteristic polynomial.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct MinorArgs {
    /// Kr-, Kr=, Kr, K5-, paths:k1,k2,..., edges:(i,j),... or F1..F19.
    #[arg(long)]
    pub pattern: String,
    #[arg(long)]
    pub r: Option<usize>,
    /// Print the branch sets of each model found.
    #[arg(long)]
    pub witness: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub pattern: String,
    #[arg(long)]
    pub r: Option<usize>,
    /// Scan every labeled graph on this many vertices.
    #[arg(long, conflicts_with = "stdin", required_unless_present = "stdin")]
    pub n: Option<usize>,
    /// Read the corpus as graph6 lines on stdin.
    #[arg(long)]
    pub stdin: bool,
    /// Keep only connected graphs.
    #[arg(long)]
    pub connected: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// mader, kr-minus or kr-star; 1.1 and 1.2 name the first two.
    #[arg(long)]
    pub theorem: BoundKind,
    #[arg(long)]
    pub r: usize,
    /// Scan every labeled graph on this many vertices instead of reading stdin.
    #[arg(long)]
    pub n: Option<usize>,
    /// Test minors of every graph, not only those above the bound.
    #[arg(long)]
    pub full_scan: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct HarnessArgs {
    /// lemma31, clique or rewire.
    #[arg(long)]
    pub name: HarnessName,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// |B| is drawn from ceil((1 - delta) n) up to n - r + 3.
    #[arg(long, default_value_t = 0.3)]
    pub delta: f64,
}

#[derive(Debug, Args)]
pub struct FormulasArgs {
    #[arg(long)]
    pub r: usize,
    /// Inclusive range such as 9..12.
    #[arg(long, value_parser = parse_range)]
    pub n_range: RangeInclusive<usize>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

/// A JSON object tagged with its schema name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: String,
    #[serde(flatten)]
    pub body: T,
}

impl<T> Envelope<T> {
    pub fn new(kind: &str, body: T) -> Self {
        Self {
            schema: schema_name(kind),
            body,
        }
    }
}

pub fn schema_name(kind: &str) -> String {
    format!("minorlab.{kind}/{SCHEMA_VERSION}")
}

/// One line of `lambda` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaRecord {
    pub graph6: String,
    pub n: usize,
    pub lambda: f64,
    pub residual: f64,
    pub iterations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_lambda: Option<f64>,
}

/// One line of `minor` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinorRecord {
    pub graph6: String,
    pub pattern: String,
    pub has_minor: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<MinorModel>,
}

/// One row of `formulas` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormulaRow {
    pub n: usize,
    pub t: usize,
    pub lambda_s_closed: f64,
    pub lambda_s_power: f64,
    pub s_deviation: f64,
    /// `even` or `odd`, the parity of `n - t`.
    pub f_case: String,
    /// Closed form for `F(n, t)` derived from its quotient matrix.
    pub lambda_f_closed: f64,
    /// The alternative printed expression, when it has a real value.
    pub lambda_f_printed: Option<f64>,
    pub lambda_f_power: f64,
    pub f_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormulaTable {
    pub r: usize,
    pub tolerance: f64,
    pub rows: Vec<FormulaRow>,
    pub max_deviation: f64,
    pub passed: bool,
}

#[derive(Debug)]
enum Failure {
    /// Bad arguments or input.
    Usage(String),
    /// A checked property failed, or a computation could not finish.
    Invariant(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Invariant(_) => EXIT_INVARIANT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invariant(m) => m,
        }
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn invariant(e: impl ToString) -> Failure {
    Failure::Invariant(e.to_string())
}

fn io_err(e: std::io::Error) -> Failure {
    Failure::Invariant(format!("I/O error: {e}"))
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, S, R, W, E>(args: I, stdin: R, stdout: &mut W, stderr: &mut E) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
    R: BufRead,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return e.exit_code();
        }
    };
    let jobs = match &cli.command {
        Command::Search(a) => a.jobs,
        Command::Bounds(a) => a.jobs,
        _ => 1,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INVARIANT;
        }
    };
    let result = dispatch(&cli, &pool, stdin, stdout);
    let _ = stdout.flush();
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

fn dispatch<R: BufRead, W: Write>(cli: &Cli, pool: &ThreadPool, stdin: R, out: &mut W) -> Result<i32, Failure> {
    match &cli.command {
        Command::Construct(a) => construct(a, out),
        Command::Lambda(a) => lambda(a, cli.format, stdin, out),
        Command::Minor(a) => minor(a, cli.format, stdin, out),
        Command::Search(a) => search(a, pool, cli.format, stdin, out),
        Command::Bounds(a) => bounds(a, pool, cli.format, stdin, out),
        Command::Harness(a) => harness(a, pool, cli.format, out),
        Command::Formulas(a) => formulas(a, cli.format, out),
    }
}

fn construct<W: Write>(a: &ConstructArgs, out: &mut W) -> Result<i32, Failure> {
    let g = build_family(&a.family, a.n, a.r, a.t, a.paths.as_deref(), a.edges.as_deref()).map_err(usage)?;
    writeln!(out, "{}", to_graph6(&g)).map_err(io_err)?;
    Ok(EXIT_OK)
}

/// graph6 lines as graphs, stopping at the first bad line.
struct GraphStream<I> {
    lines: I,
    line: usize,
    error: Option<Failure>,
}

impl<I> GraphStream<I> {
    fn new(lines: I) -> Self {
        Self {
            lines,
            line: 0,
            error: None,
        }
    }

    fn finish(self) -> Result<(), Failure> {
        self.error.map_or(Ok(()), Err)
    }
}

impl<I> Iterator for GraphStream<I>
where
    I: Iterator<Item = std::io::Result<(String, minorlab_core::graph::Result<Graph>)>>,
{
    type Item = (String, Graph);

    fn next(&mut self) -> Option<(String, Graph)> {
        if self.error.is_some() {
            return None;
        }
        self.line += 1;
        match self.lines.next()? {
            Err(e) => {
                self.error = Some(io_err(e));
                None
            }
            Ok((text, Err(e))) => {
                self.error = Some(usage(format!("stdin record {}: {text:?}: {e}", self.line)));
                None
            }
            Ok((text, Ok(g))) => Some((text, g)),
        }
    }
}

/// Runs `f` on `pool` over the graphs parsed from `stdin`, which is read on
/// the calling thread and handed over through a bounded channel.
fn feed<R, T, F>(pool: &ThreadPool, stdin: R, f: F) -> Result<T, Failure>
where
    R: BufRead,
    T: Send,
    F: FnOnce(&mut dyn Iterator<Item = Graph>) -> T + Send,
{
    let (tx, rx) = mpsc::sync_channel::<Graph>(FEED_CAPACITY);
    let mut stream = GraphStream::new(read_graph6_lines(stdin));
    let result = std::thread::scope(|s| {
        let worker = s.spawn(move || pool.install(move || f(&mut rx.into_iter())));
        for (_, g) in stream.by_ref() {
            if tx.send(g).is_err() {
                break;
            }
        }
        drop(tx);
        worker.join()
    });
    stream.finish()?;
    result.map_err(|_| invariant("worker thread panicked"))
}

const FEED_CAPACITY: usize = 1 << 12;

fn write_json<W: Write, T: Serialize>(out: &mut W, kind: &str, body: &T) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, &Envelope::new(kind, body)).map_err(invariant)?;
    writeln!(out).map_err(io_err)
}

fn csv_writer<W: Write>(out: &mut W) -> csv::Writer<&mut W> {
    csv::WriterBuilder::new().from_writer(out)
}

fn opt_f64(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn lambda<R: BufRead, W: Write>(a: &LambdaArgs, format: Format, stdin: R, out: &mut W) -> Result<i32, Failure> {
    let mut stream = GraphStream::new(read_graph6_lines(stdin));
    let mut records = Vec::new();
    let mut emit = |out: &mut W, rec: LambdaRecord| -> Result<(), Failure> {
        match format {
            Format::Json => write_json(out, "lambda", &rec),
            Format::Csv => {
                records.push(rec);
                Ok(())
            }
        }
    };
    for (text, g) in stream.by_ref() {
        let res = spectral_radius(&g, a.tol).map_err(|e| invariant(format!("{text}: {e}")))?;
        let exact_lambda = if a.exact {
            Some(exact_spectral_radius(&g, a.tol).map_err(|e| usage(format!("{text}: {e}")))?)
        } else {
            None
        };
        emit(
            out,
            LambdaRecord {
                graph6: text,
                n: g.n(),
                lambda: res.lambda,
                residual: res.residual,
                iterations: res.iterations,
                exact_lambda,
            },
        )?;
    }
    stream.finish()?;
    if format == Format::Csv {
        let mut w = csv_writer(out);
        w.write_record(["graph6", "n", "lambda", "residual", "iterations", "exact_lambda"])
            .map_err(invariant)?;
        for r in records {
            w.write_record([
                r.graph6,
                r.n.to_string(),
                r.lambda.to_string(),
                r.residual.to_string(),
                r.iterations.to_string(),
                opt_f64(r.exact_lambda),
            ])
            .map_err(invariant)?;
        }
        w.flush().map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn minor<R: BufRead, W: Write>(a: &MinorArgs, format: Format, stdin: R, out: &mut W) -> Result<i32, Failure> {
    let spec = parse_pattern(&a.pattern, a.r).map_err(usage)?;
    let h = minorlab_core::constructions::pattern_graph(&spec).map_err(usage)?;
    let label = spec.label();
    let mut stream = GraphStream::new(read_graph6_lines(stdin));
    let mut csv_rows = Vec::new();
    for (text, g) in stream.by_ref() {
        let model = find_minor(&g, &h).map_err(|e| invariant(format!("{text}: {e}")))?;
        if let Some(m) = &model {
            check_model(&g, &h, m).map_err(|e| invariant(format!("{text}: search returned a bad model: {e}")))?;
        }
        let rec = MinorRecord {
            graph6: text,
            pattern: label.clone(),
            has_minor: model.is_some(),
            witness: if a.witness { model } else { None },
        };
        match format {
            Format::Json => write_json(out, "minor", &rec)?,
            Format::Csv => csv_rows.push(rec),
        }
    }
    stream.finish()?;
    if format == Format::Csv {
        let mut w = csv_writer(out);
        w.write_record(["graph6", "pattern", "has_minor", "witness"]).map_err(invariant)?;
        for r in csv_rows {
            let witness = match &r.witness {
                Some(m) => serde_json::to_string(m).map_err(invariant)?,
                None => String::new(),
            };
            w.write_record([r.graph6, r.pattern, r.has_minor.to_string(), witness])
                .map_err(invariant)?;
        }
        w.flush().map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn enumeration_order(n: usize) -> Result<usize, Failure> {
    if n == 0 || n > ENUMERATE_MAX_VERTICES {
        return Err(usage(format!(
            "built-in enumeration covers 1..={ENUMERATE_MAX_VERTICES} vertices, got {n}; pipe larger corpora on stdin"
        )));
    }
    Ok(n)
}

fn search<R: BufRead, W: Write>(
    a: &SearchArgs,
    pool: &ThreadPool,
    format: Format,
    stdin: R,
    out: &mut W,
) -> Result<i32, Failure> {
    let spec = parse_pattern(&a.pattern, a.r).map_err(usage)?;
    if let Some(n) = a.n {
        enumeration_order(n)?;
    }
    let config = SearchConfig {
        connected_only: a.connected,
        ..SearchConfig::default()
    };
    let report = match a.n {
        Some(n) => {
            // weighted classes give the same report as the labeled scan
            let classes = isomorphism_classes(n, false).map_err(usage)?;
            pool.install(|| search_extremal_weighted(classes, &spec, &config))
                .map_err(invariant)?
        }
        None => {
            let report = feed(pool, stdin, |corpus| {
                search_extremal_weighted(corpus.map(|g| (g, 1)), &spec, &config)
            })?;
            report.map_err(|e| match e {
                minorlab_core::extremal::ExtremalError::MixedOrder { .. } => usage(e),
                other => invariant(other),
            })?
        }
    };
    match format {
        Format::Json => write_json(out, "search-report", &report)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "pattern",
                "n",
                "connected_only",
                "corpus_size",
                "considered",
                "family_size",
                "max_lambda",
                "argmax",
                "predicted",
                "matches_theorem",
            ])
            .map_err(invariant)?;
            w.write_record([
                report.pattern_label.clone(),
                report.n.map(|n| n.to_string()).unwrap_or_default(),
                report.connected_only.to_string(),
                report.corpus_size.to_string(),
                report.considered.to_string(),
                report.family_size.to_string(),
                opt_f64(report.max_lambda),
                report.argmax.join(" "),
                report.predicted.map(|p| json_tag(&p)).unwrap_or_default(),
                json_tag(&report.matches_theorem),
            ])
            .map_err(invariant)?;
            w.flush().map_err(io_err)?;
        }
    }
    Ok(EXIT_OK)
}

/// A unit enum's serialized name.
fn json_tag<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn bounds<R: BufRead, W: Write>(
    a: &BoundsArgs,
    pool: &ThreadPool,
    format: Format,
    stdin: R,
    out: &mut W,
) -> Result<i32, Failure> {
    let opts = BoundOptions {
        full_scan: a.full_scan,
        ..BoundOptions::default()
    };
    let map = |e: minorlab_core::extremal::ExtremalError| match e {
        minorlab_core::extremal::ExtremalError::Range(_) | minorlab_core::extremal::ExtremalError::MixedOrder { .. } => {
            usage(e)
        }
        other => invariant(other),
    };
    let check = match a.n {
        Some(n) => {
            enumeration_order(n)?;
            let corpus = minorlab_core::extremal::enumerate_labeled(n).map_err(usage)?;
            pool.install(|| verify_edge_bounds_with(corpus, a.theorem, a.r, &opts))
                .map_err(map)?
        }
        None => feed(pool, stdin, |corpus| verify_edge_bounds_with(corpus, a.theorem, a.r, &opts))?.map_err(map)?,
    };
    write_bound_check(&check, format, out)?;
    Ok(if check.passed { EXIT_OK } else { EXIT_INVARIANT })
}

fn write_bound_check<W: Write>(c: &BoundCheck, format: Format, out: &mut W) -> Result<(), Failure> {
    match format {
        Format::Json => write_json(out, "bound-check", c),
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "bound_name",
                "r",
                "n",
                "max_edges",
                "corpus_size",
                "tested",
                "minor_free",
                "violations",
                "flagged_for_review",
                "passed",
            ])
            .map_err(invariant)?;
            w.write_record([
                c.bound_name.clone(),
                c.r.to_string(),
                c.n.map(|n| n.to_string()).unwrap_or_default(),
                c.max_edges.map(|m| m.to_string()).unwrap_or_default(),
                c.corpus_size.to_string(),
                c.tested.to_string(),
                c.minor_free.to_string(),
                c.violations.join(" "),
                c.flagged_for_review.join(" "),
                c.passed.to_string(),
            ])
            .map_err(invariant)?;
            w.flush().map_err(io_err)
        }
    }
}

fn harness<W: Write>(a: &HarnessArgs, pool: &ThreadPool, format: Format, out: &mut W) -> Result<i32, Failure> {
    let config = HarnessConfig {
        trials: a.trials,
        r: a.r,
        n: a.n,
        delta: a.delta,
        seed: a.seed,
    };
    let summary = pool.install(|| run_harness(a.name, &config)).map_err(|e| match e {
        minorlab_core::extremal::ExtremalError::Range(_) => usage(e),
        other => invariant(other),
    })?;
    write_harness(&summary, format, out)?;
    Ok(if summary.passed { EXIT_OK } else { EXIT_INVARIANT })
}

fn write_harness<W: Write>(s: &HarnessSummary, format: Format, out: &mut W) -> Result<(), Failure> {
    match format {
        Format::Json => write_json(out, "harness-summary", s),
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["harness", "check", "evaluated", "premise_held", "failed"])
                .map_err(invariant)?;
            for (check, t) in &s.checks {
                w.write_record([
                    s.name.to_string(),
                    check.clone(),
                    t.evaluated.to_string(),
                    t.premise_held.to_string(),
                    t.failed.to_string(),
                ])
                .map_err(invariant)?;
            }
            w.flush().map_err(io_err)
        }
    }
}

/// Closed forms and power iteration for `S(n, r-3)` and `F(n, r-3)` over `ns`.
pub fn formula_table(r: usize, ns: RangeInclusive<usize>) -> Result<FormulaTable, String> {
    if r < 4 {
        return Err(format!("--r must be at least 4, got {r}"));
    }
    let t = r - 3;
    if *ns.start() <= t {
        return Err(format!("every n must exceed r - 3 = {t}, got {}", ns.start()));
    }
    let mut rows = Vec::new();
    for n in ns {
        let s_closed = lambda_s_closed(n, r).map_err(|e| e.to_string())?;
        let s_power = power(&split_graph(n, t).map_err(|e| e.to_string())?)?;
        let even = (n - t).is_multiple_of(2);
        let (f_closed, f_printed) = if even {
            (
                lambda_f_even(n, r, FormulaMode::Derived).map_err(|e| e.to_string())?,
                lambda_f_even(n, r, FormulaMode::Printed).ok(),
            )
        } else {
            (
                lambda_f_odd(n, r, 1e-13).map_err(|e| e.to_string())?,
                lambda_f_odd_printed(n, r).map_err(|e| e.to_string())?,
            )
        };
        let f_power = power(&split_matching_graph(n, t).map_err(|e| e.to_string())?)?;
        rows.push(FormulaRow {
            n,
            t,
            lambda_s_closed: s_closed,
            lambda_s_power: s_power,
            s_deviation: (s_closed - s_power).abs(),
            f_case: if even { "even" } else { "odd" }.to_string(),
            lambda_f_closed: f_closed,
            lambda_f_printed: f_printed,
            lambda_f_power: f_power,
            f_deviation: (f_closed - f_power).abs(),
        });
    }
    let max_deviation = rows
        .iter()
        .map(|row| row.s_deviation.max(row.f_deviation))
        .fold(0.0, f64::max);
    Ok(FormulaTable {
        r,
        tolerance: FORMULA_TOLERANCE,
        passed: max_deviation <= FORMULA_TOLERANCE,
        rows,
        max_deviation,
    })
}

fn power(g: &Graph) -> Result<f64, String> {
    spectral_radius(g, 1e-12).map(|s| s.lambda).map_err(|e| e.to_string())
}

fn formulas<W: Write>(a: &FormulasArgs, format: Format, out: &mut W) -> Result<i32, Failure> {
    let table = formula_table(a.r, a.n_range.clone()).map_err(usage)?;
    match format {
        Format::Json => write_json(out, "formula-table", &table)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "n",
                "t",
                "lambda_s_closed",
                "lambda_s_power",
                "s_deviation",
                "f_case",
                "lambda_f_closed",
                "lambda_f_printed",
                "lambda_f_power",
                "f_deviation",
            ])
            .map_err(invariant)?;
            for row in &table.rows {
                w.write_record([
                    row.n.to_string(),
                    row.t.to_string(),
                    row.lambda_s_closed.to_string(),
                    row.lambda_s_power.to_string(),
                    row.s_deviation.to_string(),
                    row.f_case.clone(),
                    row.lambda_f_closed.to_string(),
                    opt_f64(row.lambda_f_printed),
                    row.lambda_f_power.to_string(),
                    row.f_deviation.to_string(),
                ])
                .map_err(invariant)?;
            }
            w.flush().map_err(io_err)?;
        }
    }
    Ok(if table.passed { EXIT_OK } else { EXIT_INVARIANT })
}
