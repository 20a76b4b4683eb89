//! The `bruhat` command-line front end.

pub mod cache;
pub mod config;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::genfun::{
    partition_counts, q_binomial, q_factorial, q_multinomial, rho, rho_closed_form, rho_decompose,
    rho_downset_genfun, rho_upset_genfun, star_bounds, star_genfun, IntPolynomial,
};
use crate::levels::{
    enumerate_level, multiplicity_witnesses, symmetric_group, upset_level, upset_size_full,
};
use crate::perm::{pair_count, GeneratorSet, Permutation, MAX_N};
use crate::search::verify::{mahonian_row, verify, Suite, VerifyParams};
use crate::search::{
    max_intersecting_full, max_intersecting_level, max_intersecting_no_common_element,
    max_separated_intersecting, Budget, SearchConfig, SearchOutcome, Witness,
};
use crate::systems::pi_minimal;

use cache::{Cache, RunRecord};
use config::Config;

/// Listings beyond this many permutations are refused with the budget code.
pub const LISTING_LIMIT: u64 = 2_000_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Exact combinatorics of the weak order on permutations.
#[derive(Debug, Parser)]
#[command(name = "bruhat", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Shorthand for --format json.
    #[arg(long, global = true, conflicts_with_all = ["format", "csv"])]
    json: bool,
    /// Shorthand for --format csv.
    #[arg(long, global = true, conflicts_with = "format")]
    csv: bool,
    /// Directory for cached run records.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads for parallel library calls.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Branch-and-bound node cap per search.
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Wall-clock cap per search, in seconds.
    #[arg(long, global = true)]
    budget_secs: Option<f64>,
    /// Config file (default: $BRUHAT_CONFIG, then ./bruhat.conf).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// List the permutations of one rank.
    Level {
        #[arg(short)]
        n: usize,
        #[arg(short = 'l', long = "ell")]
        ell: usize,
    },
    /// Meet and join of two permutations.
    Meet { p: String, q: String },
    /// Minimal permutation whose inverse descents contain a generator set.
    Pi {
        #[arg(short)]
        n: usize,
        /// Generator indices, e.g. "1,4".
        #[arg(long)]
        set: String,
    },
    /// Rank-ell permutations with a given inverse-descent set.
    Mult {
        #[arg(short)]
        n: usize,
        #[arg(short = 'l', long = "ell")]
        ell: usize,
        #[arg(long)]
        set: String,
    },
    /// Generating-function coefficients.
    Genfun {
        #[command(subcommand)]
        kind: GenfunKind,
    },
    /// The rank-t permutations rho(t) and their upset generating functions.
    Rho {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        t: Option<usize>,
    },
    /// Exact maximum intersecting families.
    Search {
        #[command(subcommand)]
        problem: SearchProblem,
    },
    /// Run a verification suite.
    Verify {
        /// Suite tag, e.g. thm-4.1.
        suite: String,
        #[arg(short)]
        n: Option<usize>,
        #[arg(short)]
        r: Option<usize>,
        #[arg(short)]
        t: Option<usize>,
        #[arg(short)]
        m: Option<usize>,
        #[arg(short)]
        k: Option<usize>,
    },
    /// Tabular data for plotting.
    Table {
        #[command(subcommand)]
        kind: TableKind,
    },
    /// Compare the two whole-lattice candidates for t-intersecting families.
    ExploreQ63 {
        #[arg(short)]
        n: usize,
        #[arg(short, default_value_t = 1)]
        t: usize,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum GenfunKind {
    /// [n]!
    Factorial {
        #[arg(short)]
        n: usize,
    },
    /// Gaussian binomial [m choose k].
    Binomial {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        k: usize,
    },
    /// q-multinomial over comma-separated block sizes.
    Multinomial {
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
    },
    /// [n]!/(1+x).
    Star {
        #[arg(short)]
        n: usize,
    },
    /// Upset of rho(t), shifted to start at rank t.
    RhoUp {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        t: usize,
    },
    /// Downset of rho(t).
    RhoDown {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        t: usize,
    },
    /// Partition numbers p(0..=l).
    Partitions {
        #[arg(short = 'l', long = "ell")]
        ell: usize,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SearchProblem {
    /// Largest t-intersecting family inside one rank.
    Level {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        r: usize,
        #[arg(short, default_value_t = 1)]
        t: usize,
    },
    /// Largest t-intersecting family in the whole lattice.
    Full {
        #[arg(short)]
        n: usize,
        #[arg(short, default_value_t = 1)]
        t: usize,
    },
    /// Largest intersecting family of separated r-sets of 1..m.
    Separated {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        r: usize,
    },
    /// Largest intersecting k-uniform family on 1..m with no common element.
    NoCommon {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        k: usize,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum TableKind {
    /// Permutations of Sym(n) by number of inversions.
    Mahonian {
        #[arg(short)]
        n: usize,
    },
    /// Level-r slices of the rank-one upsets.
    StarSizes {
        #[arg(short)]
        n: usize,
        #[arg(short, default_value_t = 3)]
        r: usize,
    },
    /// Largest intersecting family per level against the best star.
    F1r {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        r: Option<usize>,
    },
    /// rho(t) for every t.
    Rho {
        #[arg(short)]
        n: usize,
    },
}

impl Command {
    fn name(&self) -> String {
        let sub = match self {
            Command::Genfun { kind } => Some(variant_name(kind)),
            Command::Search { problem } => Some(variant_name(problem)),
            Command::Table { kind } => Some(variant_name(kind)),
            _ => None,
        };
        let top = variant_name(self);
        match sub {
            Some(s) => format!("{top} {s}"),
            None => top,
        }
    }
}

fn variant_name<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v).expect("command serializes") {
        Value::Object(m) => m.keys().next().cloned().unwrap_or_default(),
        Value::String(s) => s,
        _ => String::new(),
    }
}

/// A command result in every output shape.
struct Output {
    kind: &'static str,
    json: Value,
    text: String,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
    code: i32,
}

impl Output {
    fn new(kind: &'static str, json: Value, text: String) -> Self {
        Self {
            kind,
            json,
            text,
            columns: Vec::new(),
            rows: Vec::new(),
            code: EXIT_OK,
        }
    }

    fn table(mut self, columns: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.columns = columns.iter().map(|c| c.to_string()).collect();
        self.rows = rows;
        self
    }

    fn code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut v = self.json.clone();
                if let Value::Object(m) = &mut v {
                    m.insert("kind".into(), Value::String(self.kind.into()));
                }
                let mut s = serde_json::to_string_pretty(&v).expect("json renders");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::CRLF)
                    .from_writer(Vec::new());
                w.write_record(&self.columns).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
            }
        }
    }
}

fn aligned(columns: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(columns.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

/// Output in table shape for every format.
fn tabular(
    kind: &'static str,
    name: &str,
    params: Value,
    columns: &[&str],
    rows: Vec<Vec<String>>,
) -> Output {
    let json = json!({ "table": name, "params": params, "columns": columns, "rows": rows });
    Output::new(kind, json, aligned(columns, &rows)).table(columns, rows)
}

struct Settings {
    search: SearchConfig,
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

/// Parse `args`, run the command and write its output. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let config = match Config::load(cli.global.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: config: {e}");
            return EXIT_USAGE;
        }
    };
    let g = &cli.global;
    let format = if g.json {
        Format::Json
    } else if g.csv {
        Format::Csv
    } else {
        g.format.or(config.format).unwrap_or(Format::Text)
    };
    let budget_nodes = g.budget_nodes.or(config.budget_nodes);
    let budget_secs = g.budget_secs.or(config.budget_secs);
    if let Some(s) = budget_secs {
        if !(s.is_finite() && s > 0.0) {
            let _ = writeln!(err, "error: --budget-secs must be positive");
            return EXIT_USAGE;
        }
    }
    let cache_dir = g.cache_dir.clone().or(config.cache_dir.clone());
    let threads = g.threads.or(config.threads);
    let settings = Settings {
        search: SearchConfig {
            budget: Budget {
                max_nodes: budget_nodes,
                max_time: budget_secs.map(Duration::from_secs_f64),
            },
            parallel: true,
        },
    };

    let command = cli.command.name();
    let mut params = BTreeMap::new();
    params.insert(
        "args".to_string(),
        serde_json::to_string(&cli.command).expect("command serializes"),
    );
    params.insert("format".to_string(), format!("{format:?}").to_lowercase());
    params.insert("budget_nodes".to_string(), format!("{budget_nodes:?}"));
    params.insert("budget_secs".to_string(), format!("{budget_secs:?}"));

    let cache = match cache_dir.as_deref().map(Cache::open).transpose() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: cache directory: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(rec) = cache.as_ref().and_then(|c| c.get(&command, &params)) {
        let _ = out.write_all(rec.output.as_bytes());
        return rec.exit_code;
    }

    let result = match threads {
        Some(0) => Err(invalid("--threads must be at least 1")),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&cli.command, &settings)),
            Err(e) => Err(invalid(format!("thread pool: {e}"))),
        },
        None => execute(&cli.command, &settings),
    };
    match result {
        Ok(o) => {
            let text = o.render(format);
            if let Some(c) = &cache {
                if o.code == EXIT_OK || o.code == EXIT_CHECK_FAILED {
                    let rec = RunRecord::new(&command, params, text.clone(), o.code);
                    if let Err(e) = c.put(&rec) {
                        let _ = writeln!(err, "warning: cache write failed: {e}");
                    }
                }
            }
            let _ = out.write_all(text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}

fn execute(cmd: &Command, s: &Settings) -> Result<Output> {
    match cmd {
        Command::Level { n, ell } => cmd_level(*n, *ell),
        Command::Meet { p, q } => cmd_meet(p, q),
        Command::Pi { n, set } => cmd_pi(*n, set),
        Command::Mult { n, ell, set } => cmd_mult(*n, *ell, set),
        Command::Genfun { kind } => cmd_genfun(kind),
        Command::Rho { n, t } => cmd_rho(*n, *t),
        Command::Search { problem } => cmd_search(problem, &s.search),
        Command::Verify {
            suite,
            n,
            r,
            t,
            m,
            k,
        } => {
            let params = VerifyParams {
                n: *n,
                r: *r,
                t: *t,
                m: *m,
                k: *k,
            };
            cmd_verify(suite, &params, &s.search)
        }
        Command::Table { kind } => cmd_table(kind, &s.search),
        Command::ExploreQ63 { n, t } => cmd_explore(*n, *t),
    }
}

fn check_listing(n: usize, ell: usize) -> Result<()> {
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::SizeOutOfRange { n, max: MAX_N });
    }
    if ell > pair_count(n) {
        return Err(Error::RankOutOfRange {
            rank: ell,
            max: pair_count(n),
        });
    }
    let size = q_factorial(n).coeff(ell);
    if size > LISTING_LIMIT.into() {
        return Err(Error::TooLarge {
            what: "level listing",
            n,
            max: MAX_N,
        });
    }
    Ok(())
}

fn cmd_level(n: usize, ell: usize) -> Result<Output> {
    check_listing(n, ell)?;
    let lev = enumerate_level(n, ell)?;
    let rows = lev
        .items
        .iter()
        .map(|p| vec![p.to_string(), p.inverse_descents().to_string()])
        .collect();
    let mut json = lev.to_json();
    if let Value::Object(m) = &mut json {
        m.remove("kind");
    }
    Ok(Output::new("level", json, lev.to_text()).table(&["permutation", "inverse_descents"], rows))
}

fn cmd_meet(p: &str, q: &str) -> Result<Output> {
    let p: Permutation = p.parse()?;
    let q: Permutation = q.parse()?;
    let meet = p.meet(&q)?;
    let join = p.join(&q)?;
    let (p_leq_q, q_leq_p) = (p.leq(&q)?, q.leq(&p)?);
    let json = json!({
        "p": p, "q": q, "meet": meet, "join": join,
        "rank_p": p.rank(), "rank_q": q.rank(),
        "rank_meet": meet.rank(), "rank_join": join.rank(),
        "p_leq_q": p_leq_q, "q_leq_p": q_leq_p,
    });
    let cols = [
        "p",
        "q",
        "meet",
        "join",
        "rank_p",
        "rank_q",
        "rank_meet",
        "rank_join",
        "p_leq_q",
        "q_leq_p",
    ];
    let row: Vec<String> = cols
        .iter()
        .map(|c| match &json[*c] {
            Value::String(s) => s.clone(),
            v => v.to_string(),
        })
        .collect();
    let text = format!(
        "meet  {meet} (rank {})\njoin  {join} (rank {})\nleq   p<=q {p_leq_q}, q<=p {q_leq_p}\n",
        meet.rank(),
        join.rank()
    );
    Ok(Output::new("meet", json, text).table(&cols, vec![row]))
}

fn parse_set(n: usize, set: &str) -> Result<GeneratorSet> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::SizeOutOfRange { n, max: MAX_N });
    }
    GeneratorSet::parse(n - 1, set)
}

fn cmd_pi(n: usize, set: &str) -> Result<Output> {
    let a = parse_set(n, set)?;
    let p = pi_minimal(&a)?;
    let json = json!({ "n": n, "set": a, "pi": p, "rank": p.rank() });
    let text = format!("{p}  rank {}\n", p.rank());
    Ok(Output::new("pi", json, text).table(
        &["set", "pi", "rank"],
        vec![vec![a.to_string(), p.to_string(), p.rank().to_string()]],
    ))
}

fn cmd_mult(n: usize, ell: usize, set: &str) -> Result<Output> {
    let a = parse_set(n, set)?;
    check_listing(n, ell)?;
    let w = multiplicity_witnesses(&a, n, ell)?;
    let json = json!({ "n": n, "ell": ell, "set": a, "count": w.len(), "witnesses": w });
    let mut text = format!("# n={n} ell={ell} set={a} count={}\n", w.len());
    for p in &w {
        text.push_str(&format!("{p}\n"));
    }
    let rows = w.iter().map(|p| vec![p.to_string()]).collect();
    Ok(Output::new("multiplicity", json, text).table(&["witness"], rows))
}

fn polynomial(name: &str, params: Value, poly: &IntPolynomial) -> Output {
    let json = json!({
        "name": name,
        "params": params,
        "coeffs": poly,
        "degree": poly.degree(),
        "sum": poly.sum_of_coeffs().to_string(),
    });
    let text = format!(
        "{}\n{}\n",
        poly,
        poly.coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let rows = poly
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| vec![k.to_string(), c.to_string()])
        .collect();
    Output::new("polynomial", json, text).table(&["degree", "coefficient"], rows)
}

fn cmd_genfun(kind: &GenfunKind) -> Result<Output> {
    let limit = |n: usize| {
        if (1..=MAX_N).contains(&n) {
            Ok(())
        } else {
            Err(Error::SizeOutOfRange { n, max: MAX_N })
        }
    };
    Ok(match kind {
        GenfunKind::Factorial { n } => {
            limit(*n)?;
            polynomial("factorial", json!({ "n": n }), &q_factorial(*n))
        }
        GenfunKind::Binomial { m, k } => {
            limit(*m)?;
            if k > m {
                return Err(invalid(format!("k = {k} exceeds m = {m}")));
            }
            polynomial("binomial", json!({ "m": m, "k": k }), &q_binomial(*m, *k))
        }
        GenfunKind::Multinomial { parts } => {
            limit(parts.iter().sum())?;
            polynomial(
                "multinomial",
                json!({ "parts": parts }),
                &q_multinomial(parts)?,
            )
        }
        GenfunKind::Star { n } => {
            limit(*n)?;
            polynomial("star", json!({ "n": n }), &star_genfun(*n)?)
        }
        GenfunKind::RhoUp { n, t } => polynomial(
            "rho-up",
            json!({ "n": n, "t": t }),
            &rho_upset_genfun(*n, *t)?,
        ),
        GenfunKind::RhoDown { n, t } => polynomial(
            "rho-down",
            json!({ "n": n, "t": t }),
            &rho_downset_genfun(*n, *t)?,
        ),
        GenfunKind::Partitions { ell } => {
            if *ell > 10_000 {
                return Err(invalid("partition table is limited to l <= 10000"));
            }
            let p = IntPolynomial::from_coeffs(
                partition_counts(*ell)
                    .into_iter()
                    .map(num_bigint::BigInt::from)
                    .collect::<Vec<_>>(),
            );
            polynomial("partitions", json!({ "ell": ell }), &p)
        }
    })
}

fn rho_rows(n: usize, ts: impl Iterator<Item = usize>) -> Result<Vec<Vec<String>>> {
    ts.map(|t| {
        let d = rho_decompose(n, t)?;
        let r = rho(n, t)?;
        let up = rho_upset_genfun(n, t)?;
        Ok(vec![
            t.to_string(),
            r.to_string(),
            d.i.to_string(),
            d.j.to_string(),
            (rho_closed_form(&d)? == r).to_string(),
            up.sum_of_coeffs().to_string(),
            up.coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        ])
    })
    .collect()
}

const RHO_COLUMNS: [&str; 7] = [
    "t",
    "rho",
    "i",
    "j",
    "closed_form",
    "upset_size",
    "upset_genfun",
];

fn cmd_rho(n: usize, t: Option<usize>) -> Result<Output> {
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::SizeOutOfRange { n, max: MAX_N });
    }
    let rows = match t {
        Some(t) => rho_rows(n, std::iter::once(t))?,
        None => rho_rows(n, 0..=pair_count(n))?,
    };
    Ok(tabular(
        "rho",
        "rho",
        json!({ "n": n, "t": t }),
        &RHO_COLUMNS,
        rows,
    ))
}

fn search_output(o: SearchOutcome) -> Output {
    let code = if o.optimal { EXIT_OK } else { EXIT_BUDGET };
    let witness = match &o.witness {
        Witness::Permutations(v) => v
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" "),
        Witness::Sets(s) => s.to_string(),
    };
    let params = o
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    let row = vec![
        o.problem.clone(),
        params,
        o.optimum.to_string(),
        o.optimal.to_string(),
        o.is_star.to_string(),
        o.nodes.to_string(),
        o.elapsed_ms.to_string(),
        witness,
    ];
    Output::new("search", o.to_json(), o.to_text())
        .table(
            &[
                "problem",
                "params",
                "optimum",
                "optimal",
                "is_star",
                "nodes",
                "elapsed_ms",
                "witness",
            ],
            vec![row],
        )
        .code(code)
}

fn cmd_search(p: &SearchProblem, cfg: &SearchConfig) -> Result<Output> {
    let o = match p {
        SearchProblem::Level { n, r, t } => max_intersecting_level(*n, *r, *t, cfg)?,
        SearchProblem::Full { n, t } => max_intersecting_full(*n, *t, cfg)?,
        SearchProblem::Separated { m, r } => max_separated_intersecting(*m, *r, cfg)?,
        SearchProblem::NoCommon { m, k } => max_intersecting_no_common_element(*m, *k, cfg)?,
    };
    Ok(search_output(o))
}

fn cmd_verify(tag: &str, params: &VerifyParams, cfg: &SearchConfig) -> Result<Output> {
    let suite: Suite = tag.parse()?;
    let report = verify(suite, params, cfg)?;
    let rows = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.label.clone(),
                c.claimed.to_string(),
                c.computed.to_string(),
                c.ok.to_string(),
            ]
        })
        .collect();
    Ok(Output::new("verify", report.to_json(), report.to_text())
        .table(&["label", "claimed", "computed", "ok"], rows)
        .code(report.exit_code()))
}

fn cmd_table(kind: &TableKind, cfg: &SearchConfig) -> Result<Output> {
    match kind {
        TableKind::Mahonian { n } => {
            if !(1..=MAX_N).contains(n) {
                return Err(Error::SizeOutOfRange { n: *n, max: MAX_N });
            }
            let rows = mahonian_row(*n)
                .into_iter()
                .enumerate()
                .map(|(k, c)| vec![k.to_string(), c])
                .collect();
            Ok(tabular(
                "table",
                "mahonian",
                json!({ "n": n }),
                &["inversions", "count"],
                rows,
            ))
        }
        TableKind::StarSizes { n, r } => {
            let (n, r) = (*n, *r);
            if !(3..=crate::levels::EXHAUSTIVE_MAX_N).contains(&n) {
                return Err(invalid(format!("star sizes need 3 <= n <= 8, got {n}")));
            }
            let bounds = star_bounds(n, r)?;
            let rows = (1..n)
                .map(|i| {
                    let g = Permutation::generator(n, i)?;
                    Ok(vec![
                        i.to_string(),
                        g.to_string(),
                        upset_level(&g, r)?.count().to_string(),
                        bounds.star_size.to_string(),
                    ])
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(tabular(
                "table",
                "star-sizes",
                json!({ "n": n, "r": r }),
                &["generator", "permutation", "enumerated", "genfun"],
                rows,
            ))
        }
        TableKind::F1r { n, r } => {
            let n = *n;
            let top = pair_count(n);
            let rs: Vec<usize> = match r {
                Some(r) => vec![*r],
                None => (1..=top).collect(),
            };
            let star = star_genfun(n)?;
            let mut rows = Vec::new();
            let mut code = EXIT_OK;
            for r in rs {
                let o = max_intersecting_level(n, r, 1, cfg)?;
                if !o.optimal {
                    code = EXIT_BUDGET;
                }
                rows.push(vec![
                    r.to_string(),
                    q_factorial(n).coeff(r).to_string(),
                    star.coeff(r.saturating_sub(1)).to_string(),
                    o.optimum.to_string(),
                    o.optimal.to_string(),
                    o.is_star.to_string(),
                ]);
            }
            Ok(tabular(
                "table",
                "f1r",
                json!({ "n": n, "r": r }),
                &["r", "level_size", "star_size", "f1r", "optimal", "is_star"],
                rows,
            )
            .code(code))
        }
        TableKind::Rho { n } => {
            if !(1..=MAX_N).contains(n) {
                return Err(Error::SizeOutOfRange { n: *n, max: MAX_N });
            }
            let rows = rho_rows(*n, 0..=pair_count(*n))?;
            Ok(tabular(
                "table",
                "rho",
                json!({ "n": n }),
                &RHO_COLUMNS,
                rows,
            ))
        }
    }
}

fn cmd_explore(n: usize, t: usize) -> Result<Output> {
    if t == 0 || t > pair_count(n) {
        return Err(Error::RankOutOfRange {
            rank: t,
            max: pair_count(n),
        });
    }
    let all = symmetric_group(n)?;
    let need = (n + t).div_ceil(2);
    let many = all
        .iter()
        .filter(|q| q.inverse_descents().len() >= need)
        .count() as u64;
    let r = rho(n, t)?;
    let up = upset_size_full(&r)?;
    let larger = match many.cmp(&up) {
        std::cmp::Ordering::Greater => "many-descents",
        std::cmp::Ordering::Less => "rho-upset",
        std::cmp::Ordering::Equal => "tie",
    };
    let json = json!({
        "n": n, "t": t, "descent_threshold": need,
        "many_descents": many, "rho": r, "rho_upset": up, "larger": larger,
    });
    let text = format!(
        "n={n} t={t}\n  |ID| >= {need}       {many}\n  up(rho(t)) = up({r})  {up}\n  larger          {larger}\n"
    );
    Ok(Output::new("explore", json, text).table(
        &[
            "n",
            "t",
            "descent_threshold",
            "many_descents",
            "rho",
            "rho_upset",
            "larger",
        ],
        vec![vec![
            n.to_string(),
            t.to_string(),
            need.to_string(),
            many.to_string(),
            r.to_string(),
            up.to_string(),
            larger.to_string(),
        ]],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["bruhat"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn level_listing() {
        let (code, out, _) = call(&["level", "-n", "4", "-l", "3"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("# n=4 ell=3 count=6\n"));
        assert_eq!(out.lines().count(), 7);
        let (code, out, _) = call(&["level", "-n", "4", "-l", "0"]);
        assert_eq!(code, 0);
        assert!(out.contains("\n1234\n"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["level", "-n", "4", "-l", "7"]).0, 2);
        assert_eq!(call(&["level", "-n", "4"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["verify", "thm-9.9"]).0, 2);
        assert_eq!(call(&["meet", "1234", "213"]).0, 2);
    }

    #[test]
    fn help_exits_zero_on_stdout() {
        let (code, out, err) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("level"));
        assert!(err.is_empty());
    }

    #[test]
    fn oversized_listing_is_a_budget_exit() {
        assert_eq!(call(&["level", "-n", "12", "-l", "30"]).0, 3);
    }

    #[test]
    fn csv_has_header_and_crlf() {
        let (code, out, _) = call(&["table", "mahonian", "-n", "4", "--format", "csv"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("inversions,count\r\n0,1\r\n"));
    }

    #[test]
    fn json_carries_kind() {
        let (_, out, _) = call(&["meet", "2143", "1324", "--json"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["kind"], "meet");
        assert_eq!(v["meet"], "1234");
        assert_eq!(v["join"], "4321");
    }

    #[test]
    fn command_names() {
        let cli = Cli::try_parse_from(["bruhat", "search", "level", "-n", "4", "-r", "2"]).unwrap();
        assert_eq!(cli.command.name(), "search level");
        let cli = Cli::try_parse_from(["bruhat", "explore-q63", "-n", "4"]).unwrap();
        assert_eq!(cli.command.name(), "explore-q63");
    }
}
