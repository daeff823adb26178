//! Command-line harness: Hall-Littlewood expansions, structure-constant
//! tables, submodule enumeration, u-measures, and the verification suites.
//!
//! Reports are line-delimited JSON records followed by one summary object
//! (suppressible timestamp for byte-identical reruns); `--format csv`
//! flattens the same records. Exit codes: 0 all checks pass, 1 at least one
//! failed, 2 invalid input.

pub mod suites;

use crate::basering::RingKind;
use crate::exactalg::{LaurentRational, Rat};
use crate::hallconst::{symbolic_constants, Kind};
use crate::measures::{measure_table, sample, MKind, UMeasureSpec};
use crate::modlat::{classical_scan, paired_scan, PairKind, DEFAULT_SIZE_BOUND};
use crate::partitions::{parse_partition, partitions_of_weight};
use crate::symfunc::{b_factor, hl_p, rat_to_f64};
use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};
use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "hallpair",
    version,
    about = "Exact Hall-Littlewood calculus and module enumeration with pairings"
)]
struct Cli {
    /// Write the report to this path instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Report format: json (line-delimited) or csv
    #[arg(long, global = true)]
    format: Option<String>,
    /// Suppress the timestamp field in the summary record
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Worker threads (default: HALLPAIR_PARALLELISM, then all cores)
    #[arg(long, global = true)]
    parallelism: Option<usize>,
    /// Optional key=value config file mirroring the long flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Expand a Hall-Littlewood P or Q polynomial in the monomial basis
    Hl {
        /// Partition as comma-separated parts; empty string for ∅
        #[arg(long)]
        lambda: String,
        /// Number of variables
        #[arg(long)]
        n: usize,
        /// p or q
        #[arg(long, default_value = "p")]
        basis: String,
    },
    /// Structure constants of u_μ·u_ν for a kind, optionally brute-checked
    Hall {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        /// Comma-separated primes for a brute-force cross-check
        #[arg(long)]
        check_primes: Option<String>,
        /// Module size bound for the brute check
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Enumerate the submodule lattice and emit counting-predicate rows
    Enumerate {
        /// classical, alternating, or hermitian
        #[arg(long)]
        kind: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// A u-measure table ({lambda, prob, cumprob} rows) and optional samples
    Measure {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        u: u32,
        #[arg(long)]
        q: u64,
        /// Truncation: max part and max length
        #[arg(long, short = 'L', alias = "L")]
        trunc: Option<u32>,
        #[arg(long)]
        tol: Option<f64>,
        /// Draw this many samples after the table
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run a verification suite
    Verify {
        /// One of: classical-hall, thm1.1-alt, thm1.1-her, thm1.2, prop1.3,
        /// lemma5.2, lemma5.3, thm5.1, thm5.4-aut, appendixA, skew-cauchy,
        /// remark-series
        #[arg(long)]
        suite: String,
        /// Weight bound override
        #[arg(long)]
        tmax: Option<u32>,
        /// Comma-separated primes override
        #[arg(long)]
        primes: Option<String>,
        /// Module size bound override
        #[arg(long)]
        bound: Option<u64>,
        /// Truncation override (measure boxes, series weights)
        #[arg(long, short = 'L', alias = "L")]
        trunc: Option<u32>,
        /// Numeric tolerance override
        #[arg(long)]
        tol: Option<f64>,
        /// Random seed for anything sampled
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap help/version are successes
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let config = match load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    init_parallelism(cli.parallelism.or_else(|| config.get_parse("parallelism")));
    match execute(&cli, &config) {
        Ok((records, summary, all_pass)) => {
            let format = cli
                .format
                .clone()
                .or_else(|| config.get("format"))
                .unwrap_or_else(|| "json".into());
            if let Err(e) = emit(
                &records,
                summary,
                &format,
                cli.output.as_deref(),
                cli.no_timestamp,
            ) {
                eprintln!("error: {e}");
                return 2;
            }
            if all_pass {
                0
            } else {
                1
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

pub struct Config(HashMap<String, String>);

impl Config {
    pub fn get(&self, key: &str) -> Option<String> {
        self.0.get(key).cloned()
    }

    pub fn get_parse<T: std::str::FromStr>(&self, key: &str) -> Option<T> {
        self.0.get(key).and_then(|v| v.parse().ok())
    }
}

fn load_config(path: Option<&std::path::Path>) -> Result<Config, String> {
    let mut map = HashMap::new();
    if let Some(p) = path {
        let text = std::fs::read_to_string(p).map_err(|e| format!("config {p:?}: {e}"))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {} is not key=value", lineno + 1))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
    }
    Ok(Config(map))
}

fn init_parallelism(requested: Option<usize>) {
    let n = requested.or_else(|| {
        std::env::var("HALLPAIR_PARALLELISM")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn parse_primes(s: &str, hermitian: bool) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for tok in s.split(',') {
        let p: u64 = tok
            .trim()
            .parse()
            .map_err(|_| format!("invalid prime {tok:?}"))?;
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(format!("{p} is not prime"));
        }
        if hermitian && p == 2 {
            return Err("hermitian primes must be odd".into());
        }
        out.push(p);
    }
    Ok(out)
}

type CmdResult = Result<(Vec<Value>, Map<String, Value>, bool), String>;

fn execute(cli: &Cli, config: &Config) -> CmdResult {
    match &cli.cmd {
        Cmd::Hl { lambda, n, basis } => cmd_hl(lambda, *n, basis),
        Cmd::Hall {
            kind,
            mu,
            nu,
            check_primes,
            bound,
        } => cmd_hall(
            kind,
            mu,
            nu,
            check_primes.as_deref(),
            bound.or_else(|| config.get_parse("bound")),
        ),
        Cmd::Enumerate {
            kind,
            p,
            lambda,
            bound,
        } => cmd_enumerate(
            kind,
            *p,
            lambda,
            bound.or_else(|| config.get_parse("bound")),
        ),
        Cmd::Measure {
            kind,
            u,
            q,
            trunc,
            tol,
            sample: nsample,
            seed,
        } => cmd_measure(
            kind,
            *u,
            *q,
            trunc.or_else(|| config.get_parse("trunc")).unwrap_or(14),
            tol.or_else(|| config.get_parse("tol")).unwrap_or(1e-6),
            *nsample,
            seed.or_else(|| config.get_parse("seed")).unwrap_or(0),
        ),
        Cmd::Verify {
            suite,
            tmax,
            primes,
            bound,
            trunc,
            tol,
            seed,
        } => {
            let opts = suites::SuiteOptions {
                tmax: tmax.or_else(|| config.get_parse("tmax")),
                primes: match primes.clone().or_else(|| config.get("primes")) {
                    Some(s) => Some(parse_primes(&s, suite.contains("her"))?),
                    None => None,
                },
                size_bound: bound.or_else(|| config.get_parse("bound")),
                trunc: trunc.or_else(|| config.get_parse("trunc")),
                tol: tol.or_else(|| config.get_parse("tol")),
                seed: seed.or_else(|| config.get_parse("seed")).unwrap_or(0),
            };
            let outcome = suites::run_suite(suite, &opts)?;
            let mut summary = Map::new();
            summary.insert("suite".into(), json!(suite));
            summary.insert("total".into(), json!(outcome.records.len()));
            summary.insert("passed".into(), json!(outcome.passed));
            summary.insert("failed".into(), json!(outcome.failed));
            let all = outcome.failed == 0;
            Ok((outcome.records, summary, all))
        }
    }
}

fn cmd_hl(lambda: &str, n: usize, basis: &str) -> CmdResult {
    let lam = parse_partition(lambda)?;
    let t = LaurentRational::param();
    let poly = match basis {
        "p" => hl_p(&lam, n, &t),
        "q" => hl_p(&lam, n, &t).map(|p| p.scale(&b_factor(&lam, &t))),
        other => return Err(format!("unknown basis {other:?}, expected p or q")),
    }
    .map_err(|e| e.to_string())?;
    let record = json!({
        "lambda": lam,
        "n": n,
        "basis": basis,
        "poly": poly,
    });
    let mut summary = Map::new();
    summary.insert("terms".into(), json!(poly.terms().len()));
    Ok((vec![record], summary, true))
}

fn cmd_hall(
    kind: &str,
    mu: &str,
    nu: &str,
    check_primes: Option<&str>,
    bound: Option<u64>,
) -> CmdResult {
    let kind = Kind::parse(kind).ok_or_else(|| format!("unknown kind {kind:?}"))?;
    let mu = parse_partition(mu)?;
    let nu = parse_partition(nu)?;
    let table = symbolic_constants(kind, &mu, &nu, 16).map_err(|e| e.to_string())?;
    let mut records = vec![serde_json::to_value(table.to_json()).unwrap()];
    let mut all_pass = true;
    if let Some(ps) = check_primes {
        let primes = parse_primes(ps, kind == Kind::Hermitian)?;
        let bound = bound.unwrap_or(DEFAULT_SIZE_BOUND);
        let w = kind.target_weight(&mu, &nu);
        for lambda in partitions_of_weight(w, None, None) {
            for &p in &primes {
                let brute =
                    crate::hallconst::bruteforce_constant(kind, &mu, &nu, &lambda, p, bound)
                        .map_err(|e| e.to_string())?;
                let sym = table
                    .entry(&lambda)
                    .eval(&Rat::from_integer(p.into()))
                    .map_err(|e| e.to_string())?;
                let pass = sym == Rat::from_integer(brute.into());
                all_pass &= pass;
                records.push(json!({
                    "lambda": lambda,
                    "prime": p,
                    "symbolic_at_p": sym.to_string(),
                    "brute": brute,
                    "pass": pass,
                }));
            }
        }
    }
    let mut summary = Map::new();
    summary.insert("entries".into(), json!(table.entries.len()));
    Ok((records, summary, all_pass))
}

fn ring_json(kind: Kind, p: u64, k: u32) -> Value {
    if kind == Kind::Hermitian {
        let ring = crate::basering::Ring::galois(p).expect("odd prime checked earlier");
        let c = match ring.kind {
            RingKind::Galois { nonresidue } => nonresidue,
            RingKind::Cyclic => unreachable!(),
        };
        json!({"p": p, "k": k, "c": c})
    } else {
        json!({"p": p, "k": k})
    }
}

fn cmd_enumerate(kind: &str, p: u64, lambda: &str, bound: Option<u64>) -> CmdResult {
    let kind = Kind::parse(kind).ok_or_else(|| format!("unknown kind {kind:?}"))?;
    let lam = parse_partition(lambda)?;
    if kind == Kind::Hermitian && p == 2 {
        return Err("hermitian modules need an odd prime".into());
    }
    let bound = bound.unwrap_or(DEFAULT_SIZE_BOUND);
    let ring = ring_json(kind, p, lam.part(1));
    let mut records = Vec::new();
    let total;
    match kind {
        Kind::Classical => {
            let rows = classical_scan(crate::basering::Ring::cyclic(p), &lam, bound)
                .map_err(|e| e.to_string())?;
            total = rows.len();
            let mut counts: HashMap<(String, String), (Value, Value, u64)> = HashMap::new();
            for r in &rows {
                let key = (r.qtype.to_string(), r.htype.to_string());
                let e = counts
                    .entry(key)
                    .or_insert_with(|| (json!(r.qtype), json!(r.htype), 0));
                e.2 += 1;
            }
            let mut sorted: Vec<_> = counts.into_iter().collect();
            sorted.sort_by(|a, b| a.0.cmp(&b.0));
            for (_, (mu, nu, count)) in sorted {
                records.push(json!({
                    "kind": "classical", "ring": ring, "lambda": lam,
                    "mu": mu, "nu": nu, "count": count,
                }));
            }
        }
        Kind::Alternating | Kind::Hermitian => {
            let pk = if kind == Kind::Alternating {
                PairKind::Alternating
            } else {
                PairKind::Hermitian
            };
            let rows = paired_scan(pk, p, &lam, bound).map_err(|e| e.to_string())?;
            total = rows.len();
            let mut counts: HashMap<(String, String), (Value, Value, u64)> = HashMap::new();
            for r in &rows {
                if let Some(paired) = &r.paired {
                    let key = (r.qtype.to_string(), paired.to_string());
                    let e = counts
                        .entry(key)
                        .or_insert_with(|| (json!(r.qtype), json!(paired), 0));
                    e.2 += 1;
                }
            }
            let mut sorted: Vec<_> = counts.into_iter().collect();
            sorted.sort_by(|a, b| a.0.cmp(&b.0));
            let kind_str = if kind == Kind::Alternating {
                "alternating"
            } else {
                "hermitian"
            };
            for (_, (mu, nu, count)) in sorted {
                records.push(json!({
                    "kind": kind_str, "ring": ring, "lambda": lam,
                    "mu": mu, "nu": nu, "count": count,
                }));
            }
        }
    }
    let mut summary = Map::new();
    summary.insert("submodules".into(), json!(total));
    Ok((records, summary, true))
}

fn cmd_measure(
    kind: &str,
    u: u32,
    q: u64,
    trunc: u32,
    tol: f64,
    nsample: Option<usize>,
    seed: u64,
) -> CmdResult {
    let kind = MKind::parse(kind).ok_or_else(|| format!("unknown kind {kind:?}"))?;
    if q < 2 {
        return Err("q must be at least 2".into());
    }
    let spec = UMeasureSpec {
        kind,
        u,
        q: Rat::from_integer(q.into()),
        max_part: trunc,
        max_length: trunc,
        tol,
    };
    let table = measure_table(&spec);
    let mut records = Vec::new();
    let mut cum = 0.0f64;
    for (lambda, mass) in &table.rows {
        let prob = rat_to_f64(mass);
        cum += prob;
        records.push(json!({"lambda": lambda, "prob": prob, "cumprob": cum}));
    }
    let mut all_pass = true;
    if let Some(n) = nsample {
        match sample(&table, tol, seed, n) {
            Ok(draws) => {
                for (i, lambda) in draws.iter().enumerate() {
                    records.push(json!({"sample_index": i, "lambda": lambda}));
                }
            }
            Err(e) => {
                all_pass = false;
                records.push(json!({"sample_error": e.to_string()}));
            }
        }
    }
    let mut summary = Map::new();
    summary.insert("mass".into(), json!(rat_to_f64(&table.mass)));
    summary.insert("rows".into(), json!(table.rows.len()));
    summary.insert("reached_target".into(), json!(table.reached_target));
    summary.insert(
        "max_weight_scanned".into(),
        json!(table.max_weight_scanned),
    );
    Ok((records, summary, all_pass))
}

fn emit(
    records: &[Value],
    mut summary: Map<String, Value>,
    format: &str,
    output: Option<&std::path::Path>,
    no_timestamp: bool,
) -> Result<(), String> {
    if !no_timestamp {
        let ts = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        summary.insert("timestamp".into(), json!(ts));
    }
    let mut out: Box<dyn Write> = match output {
        Some(p) => Box::new(
            std::fs::File::create(p).map_err(|e| format!("cannot create {p:?}: {e}"))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    match format {
        "json" => {
            for r in records {
                writeln!(out, "{r}").map_err(|e| e.to_string())?;
            }
            writeln!(out, "{}", Value::Object(summary)).map_err(|e| e.to_string())?;
        }
        "csv" => {
            let mut keys: Vec<String> = records
                .iter()
                .filter_map(|r| r.as_object())
                .flat_map(|o| o.keys().cloned())
                .collect();
            keys.sort();
            keys.dedup();
            writeln!(out, "{}", keys.join(",")).map_err(|e| e.to_string())?;
            for r in records {
                let row: Vec<String> = keys
                    .iter()
                    .map(|k| {
                        r.get(k)
                            .map(|v| csv_cell(v))
                            .unwrap_or_default()
                    })
                    .collect();
                writeln!(out, "{}", row.join(",")).map_err(|e| e.to_string())?;
            }
            writeln!(out, "# {}", Value::Object(summary)).map_err(|e| e.to_string())?;
        }
        other => return Err(format!("unknown format {other:?}, expected json or csv")),
    }
    Ok(())
}

fn csv_cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}
