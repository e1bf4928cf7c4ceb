//! The `polyham` command line: dataset generation, polynomial sampling and error
//! measurement, the search commands, and a timing harness.
//!
//! Output is JSON lines (one record per answer, then a `meta` record) unless noted.
//! Exit codes: 0 success, 1 usage, 2 data or parse error, 3 budget, 4 verification failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::neighbors::{
    batch_nn, batch_nn_bruteforce, bichromatic_close_pair, closest_pair, closest_pair_bruteforce,
    ClosestPairConfig, GroupSize, NNEntry, Rounds, SearchMeta,
};
use crate::probpoly::{
    default_threshold_inputs, measure_error, parse_rational, sample_threshold, AgreementReport, CircuitKind,
    ThresholdSpec,
};
use crate::reductions::{
    extreme_inner_product, extreme_inner_product_bruteforce, find_orthogonal_pair, find_orthogonal_pair_bruteforce,
    furthest_pair, furthest_pair_bruteforce, l1_batch_nn, l1_batch_nn_bruteforce, max_jaccard_pair,
    max_jaccard_pair_bruteforce, parse_int_vectors, Extreme,
};
use crate::rng::{seeded, split};
use crate::vectors::{parse_dataset, parse_vectors, write_dataset, BitVector, Dataset, VectorFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "polyham", version, about = "Probabilistic polynomials and exact Hamming search")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "POLYHAM_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Pretty-print JSON records.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a red/blue dataset in the 0/1 text format.
    Gen(GenArgs),
    /// Sample one threshold polynomial and report its shape.
    SamplePoly(SamplePolyArgs),
    /// Measure per-input agreement of sampled threshold polynomials.
    VerifyError(VerifyErrorArgs),
    /// Time closest pair on random datasets (CSV).
    Bench(BenchArgs),
    /// Bichromatic closest pair, or a pair within distance `--k`.
    ClosestPair(InputArgs),
    /// Nearest database vector for every query.
    BatchNn(BatchArgs),
    /// Red/blue pair at the largest Hamming distance.
    FurthestPair(DatasetArgs),
    /// Red/blue pair with the smallest inner product.
    MinIp(DatasetArgs),
    /// Red/blue pair with the largest inner product.
    MaxIp(DatasetArgs),
    /// A red/blue pair with inner product zero.
    Orthogonal(DatasetArgs),
    /// Red/blue pair of sets with the largest Jaccard coefficient.
    Jaccard(DatasetArgs),
    /// Batch nearest neighbors under ℓ₁ on `{0..m}` vectors.
    L1BatchNn(BatchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Uniform,
    Planted,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    kind: GenKind,
    /// Vectors per color.
    #[arg(long)]
    n: usize,
    /// Dimension
    #[arg(long)]
    d: usize,
    /// Distance of the planted pair.
    #[arg(long, default_value_t = 0)]
    distance: usize,
}

#[derive(Debug, Args)]
struct SamplePolyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "1/2")]
    theta: String,
    #[arg(long, default_value = "1/10")]
    eps: String,
    /// Expand into monomials and include the polynomial in the report.
    #[arg(long)]
    expand: bool,
    /// Expansion limit in monomials.
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
}

#[derive(Debug, Args)]
struct VerifyErrorArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "1/2")]
    theta: String,
    #[arg(long, default_value = "1/10")]
    eps: String,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    /// Uniform random inputs besides the two boundary weights.
    #[arg(long, default_value_t = 50)]
    random: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BenchMode {
    Poly,
    Brute,
    Both,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "128,256")]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "16")]
    dims: Vec<usize>,
    #[arg(long, value_enum, default_value = "both")]
    mode: BenchMode,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Group size: an integer or `auto`.
    #[arg(long, default_value = "auto", value_parser = parse_group_size)]
    s: GroupSize,
    /// Polynomials per distance bound: an integer or `auto`.
    #[arg(long, default_value = "auto", value_parser = parse_rounds)]
    rounds: Rounds,
    /// Largest projected monomial count of one group polynomial.
    #[arg(long, default_value_t = 1 << 20)]
    budget: usize,
    /// Exponent parameter of the automatic group size.
    #[arg(long, default_value_t = 16.0)]
    u: f64,
    /// Compare all pairs instead of sampling polynomials.
    #[arg(long)]
    brute_force: bool,
    /// Use the polynomials even where comparing all pairs is cheaper.
    #[arg(long)]
    always_poly: bool,
    /// Use four-Russians tables in the pair evaluation.
    #[arg(long)]
    four_russians: bool,
    /// Also run the brute-force oracle and report agreement.
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Args)]
struct DatasetArgs {
    /// Red/blue dataset, 0/1 or hex
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Red/blue dataset, 0/1 or hex
    #[arg(long)]
    input: PathBuf,
    /// Only decide whether some pair is within this distance.
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Debug, Args)]
struct BatchArgs {
    #[arg(long)]
    db: PathBuf,
    #[arg(long)]
    queries: PathBuf,
    #[command(flatten)]
    search: SearchArgs,
}

fn parse_group_size(s: &str) -> std::result::Result<GroupSize, String> {
    match s {
        "auto" => Ok(GroupSize::Auto),
        _ => match s.parse::<usize>() {
            Ok(v) if v > 0 => Ok(GroupSize::Fixed(v)),
            _ => Err(format!("expected a positive integer or `auto`, got {s:?}")),
        },
    }
}

fn parse_rounds(s: &str) -> std::result::Result<Rounds, String> {
    match s {
        "auto" => Ok(Rounds::Auto),
        _ => match s.parse::<usize>() {
            Ok(v) if v > 0 => Ok(Rounds::Fixed(v)),
            _ => Err(format!("expected a positive integer or `auto`, got {s:?}")),
        },
    }
}

impl SearchArgs {
    fn config(&self, seed: u64) -> ClosestPairConfig {
        let mut cfg = ClosestPairConfig {
            group_size: self.s,
            u_param: self.u,
            rounds: self.rounds,
            monomial_budget: self.budget,
            seed,
            brute_force: self.brute_force,
            cost_model: !self.always_poly,
            ..ClosestPairConfig::default()
        };
        cfg.pair_eval.four_russians = self.four_russians;
        cfg.pair_eval.monomial_budget = self.budget.max(cfg.pair_eval.monomial_budget);
        cfg
    }
}

/// What a command produced: records to print and whether its self-check passed.
struct Outcome {
    records: Vec<Value>,
    text: Option<String>,
    verified: bool,
}

impl Outcome {
    fn records(records: Vec<Value>, verified: bool) -> Self {
        Self { records, text: None, verified }
    }

    fn text(text: String) -> Self {
        Self { records: Vec::new(), text: Some(text), verified: true }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameters(_) => EXIT_USAGE,
        Error::Budget { .. } => EXIT_BUDGET,
        Error::DimensionMismatch { .. } | Error::Parse { .. } | Error::EmptyInput(_) | Error::Io(_) => EXIT_DATA,
    }
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let outcome = match cli.threads {
        Some(0) => Err(Error::InvalidParameters("--threads must be at least 1".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidParameters(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(&cli))),
        None => dispatch(&cli),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let body = match &outcome.text {
        Some(t) => t.clone(),
        None => render(&outcome.records, cli.pretty),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, body),
        None => stdout.write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_DATA;
    }
    if outcome.verified {
        EXIT_OK
    } else {
        let _ = writeln!(stderr, "verification failed");
        EXIT_VERIFY
    }
}

fn render(records: &[Value], pretty: bool) -> String {
    let mut out = String::new();
    for r in records {
        let line = if pretty {
            serde_json::to_string_pretty(r)
        } else {
            serde_json::to_string(r)
        };
        out.push_str(&line.expect("JSON values serialize"));
        out.push('\n');
    }
    out
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let seed = cli.seed;
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, seed).map(|ds| Outcome::text(write_dataset(&ds, VectorFormat::Text01))),
        Command::SamplePoly(a) => cmd_sample_poly(a, seed),
        Command::VerifyError(a) => cmd_verify_error(a, seed),
        Command::Bench(a) => cmd_bench(a, seed).map(Outcome::text),
        Command::ClosestPair(a) => cmd_closest_pair(a, seed),
        Command::BatchNn(a) => cmd_batch_nn(a, seed),
        Command::FurthestPair(a) => {
            let ds = read_dataset(&a.input)?;
            let (hit, meta) = furthest_pair(&ds, &a.search.config(seed), &mut seeded(seed))?;
            let agrees = a.search.oracle.then(|| furthest_pair_bruteforce(&ds)).transpose()?.map(|o| o == hit);
            Ok(with_meta(vec![to_value(&hit)], "furthest-pair", meta, agrees))
        }
        Command::MinIp(a) => cmd_inner_product(a, seed, Extreme::Min),
        Command::MaxIp(a) => cmd_inner_product(a, seed, Extreme::Max),
        Command::Orthogonal(a) => {
            let ds = read_dataset(&a.input)?;
            let (pair, meta) = find_orthogonal_pair(&ds, &a.search.config(seed), &mut seeded(seed))?;
            let record = match pair {
                Some((red, blue)) => json!({"orthogonal": true, "red": red, "blue": blue}),
                None => json!({"orthogonal": false}),
            };
            let agrees = a
                .search
                .oracle
                .then(|| find_orthogonal_pair_bruteforce(&ds))
                .transpose()?
                .map(|o| o.is_some() == pair.is_some());
            Ok(with_meta(vec![record], "orthogonal", meta, agrees))
        }
        Command::Jaccard(a) => {
            let ds = read_dataset(&a.input)?;
            let (hit, meta) = max_jaccard_pair(&ds, &a.search.config(seed), &mut seeded(seed))?;
            let c = hit.coefficient;
            let record = json!({
                "red": hit.red,
                "blue": hit.blue,
                "coefficient": c.to_string(),
                "value": *c.numer() as f64 / *c.denom() as f64,
            });
            let agrees = a
                .search
                .oracle
                .then(|| max_jaccard_pair_bruteforce(&ds))
                .transpose()?
                .map(|o| o.coefficient == c);
            Ok(with_meta(vec![record], "jaccard", meta, agrees))
        }
        Command::L1BatchNn(a) => {
            let (db, queries) = (read_int_vectors(&a.db)?, read_int_vectors(&a.queries)?);
            let result = l1_batch_nn(&db, &queries, &a.search.config(seed), &mut seeded(seed))?;
            let agrees = a
                .search
                .oracle
                .then(|| l1_batch_nn_bruteforce(&db, &queries))
                .transpose()?
                .map(|o| same_distances(&o, &result.entries));
            let records = result.entries.iter().map(to_value).collect();
            Ok(with_meta(records, "l1-batch-nn", result.meta, agrees))
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("records serialize")
}

fn with_meta(mut records: Vec<Value>, command: &str, meta: SearchMeta, oracle: Option<bool>) -> Outcome {
    let mut m = json!({
        "command": command,
        "seed": meta.seed,
        "s": meta.s,
        "rounds": meta.rounds,
        "fallback_count": meta.fallback_count,
    });
    if let Some(agrees) = oracle {
        m["oracle_agrees"] = json!(agrees);
    }
    records.push(json!({ "meta": m }));
    Outcome::records(records, oracle.unwrap_or(true))
}

fn same_distances(a: &[NNEntry], b: &[NNEntry]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.query == y.query && x.dist == y.dist)
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(Error::from)
}

fn read_dataset(path: &Path) -> Result<Dataset> {
    let text = read_text(path)?;
    parse_dataset(&text, VectorFormat::detect(&text))
}

fn read_vectors(path: &Path) -> Result<Vec<BitVector>> {
    let text = read_text(path)?;
    Ok(parse_vectors(&text, VectorFormat::detect(&text))?.1)
}

fn read_int_vectors(path: &Path) -> Result<Vec<crate::reductions::IntVector>> {
    Ok(parse_int_vectors(&read_text(path)?)?.1)
}

/// Uniform red and blue vectors; the planted kind then overwrites one blue vector
/// with a copy of a red vector at exactly `distance` flipped positions.
fn cmd_gen(a: &GenArgs, seed: u64) -> Result<Dataset> {
    generate(a.kind == GenKind::Planted, a.n, a.d, a.distance, seed)
}

fn generate(planted: bool, n: usize, d: usize, distance: usize, seed: u64) -> Result<Dataset> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidParameters("n and d must be positive".into()));
    }
    if planted && distance >= d {
        return Err(Error::InvalidParameters(format!(
            "planted distance {distance} must be below d={d}"
        )));
    }
    let mut rng = seeded(seed);
    let red: Vec<BitVector> = (0..n).map(|_| BitVector::random(d, &mut rng)).collect();
    let mut blue: Vec<BitVector> = (0..n).map(|_| BitVector::random(d, &mut rng)).collect();
    if planted {
        let (r, b) = (rng.random_range(0..n), rng.random_range(0..n));
        let flips = index::sample(&mut rng, d, distance).into_vec();
        blue[b] = red[r].flipped(&flips);
    }
    Dataset::new(d, red, blue)
}

fn threshold_spec(n: usize, theta: &str, eps: &str) -> Result<ThresholdSpec> {
    ThresholdSpec::new(n, parse_rational(theta)?, parse_rational(eps)?)
}

fn cmd_sample_poly(a: &SamplePolyArgs, seed: u64) -> Result<Outcome> {
    let spec = threshold_spec(a.n, &a.theta, &a.eps)?;
    let circuit = sample_threshold(&spec, &mut seeded(seed));
    let mut report = json!({
        "n": spec.n(),
        "theta": spec.theta().to_string(),
        "eps": spec.eps().to_string(),
        "kind": match circuit.kind() {
            CircuitKind::ExactBase => "base",
            CircuitKind::Recursive => "recursive",
        },
        "depth": circuit.depth(),
        "degree": circuit.structural_degree(),
        "degree_bound": spec.degree_bound(),
        "projected_monomials": circuit.projected_monomials().to_string(),
        "seed": seed,
    });
    if a.expand {
        let p = circuit.expand(u128::from(a.budget))?;
        report["degree"] = json!(p.degree());
        report["monomials"] = json!(p.num_monomials().to_string());
        report["polynomial"] = json!(p.to_debug_string());
    }
    Ok(Outcome::records(vec![report], true))
}

fn cmd_verify_error(a: &VerifyErrorArgs, seed: u64) -> Result<Outcome> {
    let spec = threshold_spec(a.n, &a.theta, &a.eps)?;
    let inputs = default_threshold_inputs(&spec, a.random, &mut split(seed, u64::MAX));
    let reports = measure_error(
        |rng| Ok(sample_threshold(&spec, rng)),
        |x| spec.reference(x),
        &inputs,
        a.trials,
        seed,
    )?;
    let floor = AgreementReport::floor(spec.eps_f64(), a.trials);
    let min = reports.iter().map(|r| r.agreement).fold(1.0, f64::min);
    let passed = reports.iter().all(|r| r.agreement >= floor);
    let mut records: Vec<Value> = reports.iter().map(to_value).collect();
    records.push(json!({"summary": {
        "n": spec.n(),
        "eps": spec.eps().to_string(),
        "trials": a.trials,
        "inputs": reports.len(),
        "floor": floor,
        "min_agreement": min,
        "passed": passed,
        "seed": seed,
    }}));
    Ok(Outcome::records(records, passed))
}

/// CSV `n,d,mode,millis,answer`; both modes see the same dataset for each `(n, d)`.
fn cmd_bench(a: &BenchArgs, seed: u64) -> Result<String> {
    let modes: &[&str] = match a.mode {
        BenchMode::Poly => &["poly"],
        BenchMode::Brute => &["brute"],
        BenchMode::Both => &["poly", "brute"],
    };
    let mut out = String::from("n,d,mode,millis,answer\n");
    let mut cell = 0u64;
    for &n in &a.sizes {
        for &d in &a.dims {
            let ds = generate(false, n, d, 0, split(seed, cell).random())?;
            for &mode in modes {
                let start = Instant::now();
                let answer = match mode {
                    "poly" => closest_pair(&ds, &a.search.config(seed), &mut split(seed, cell))?.0,
                    _ => closest_pair_bruteforce(&ds)?,
                };
                let millis = start.elapsed().as_secs_f64() * 1e3;
                out.push_str(&format!("{n},{d},{mode},{millis:.3},{}\n", answer.distance));
            }
            cell += 1;
        }
    }
    Ok(out)
}

fn cmd_closest_pair(a: &InputArgs, seed: u64) -> Result<Outcome> {
    let ds = read_dataset(&a.input)?;
    let cfg = a.search.config(seed);
    let mut rng = seeded(seed);
    match a.k {
        Some(k) => {
            let pair = bichromatic_close_pair(&ds, k, &cfg, &mut rng)?;
            let record = match pair {
                Some((red, blue)) => json!({
                    "k": k,
                    "found": true,
                    "red": red,
                    "blue": blue,
                    "distance": ds.red()[red].hamming_distance(&ds.blue()[blue])?,
                }),
                None => json!({"k": k, "found": false}),
            };
            let agrees = a
                .search
                .oracle
                .then(|| closest_pair_bruteforce(&ds))
                .transpose()?
                .map(|o| (o.distance <= k) == pair.is_some());
            let meta = SearchMeta {
                seed,
                ..SearchMeta::default()
            };
            Ok(with_meta(vec![record], "closest-pair", meta, agrees))
        }
        None => {
            let (hit, meta) = closest_pair(&ds, &cfg, &mut rng)?;
            let agrees = a.search.oracle.then(|| closest_pair_bruteforce(&ds)).transpose()?.map(|o| o == hit);
            Ok(with_meta(vec![to_value(&hit)], "closest-pair", meta, agrees))
        }
    }
}

fn cmd_batch_nn(a: &BatchArgs, seed: u64) -> Result<Outcome> {
    let (db, queries) = (read_vectors(&a.db)?, read_vectors(&a.queries)?);
    let result = batch_nn(&db, &queries, &a.search.config(seed), &mut seeded(seed))?;
    let agrees = a
        .search
        .oracle
        .then(|| batch_nn_bruteforce(&db, &queries))
        .transpose()?
        .map(|o| same_distances(&o, &result.entries));
    let records = result.entries.iter().map(to_value).collect();
    Ok(with_meta(records, "batch-nn", result.meta, agrees))
}

fn cmd_inner_product(a: &DatasetArgs, seed: u64, mode: Extreme) -> Result<Outcome> {
    let ds = read_dataset(&a.input)?;
    let (hit, meta) = extreme_inner_product(&ds, mode, &a.search.config(seed), &mut seeded(seed))?;
    let record = json!({"red": hit.red, "blue": hit.blue, "inner_product": hit.value});
    let agrees = a
        .search
        .oracle
        .then(|| extreme_inner_product_bruteforce(&ds, mode))
        .transpose()?
        .map(|o| o.value == hit.value);
    let name = match mode {
        Extreme::Min => "min-ip",
        Extreme::Max => "max-ip",
    };
    Ok(with_meta(vec![record], name, meta, agrees))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("polyham").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gen_shapes_and_determinism() {
        let (code, out, _) = call(&["gen", "--n", "4", "--d", "3", "--seed", "9"]);
        assert_eq!(code, 0);
        let ds = parse_dataset(&out, VectorFormat::Text01).unwrap();
        assert_eq!((ds.red().len(), ds.blue().len(), ds.dim()), (4, 4, 3));
        assert_eq!(call(&["gen", "--n", "4", "--d", "3", "--seed", "9"]).1, out);
        let (_, planted, _) = call(&["gen", "--kind", "planted", "--n", "6", "--d", "20", "--distance", "0"]);
        let ds = parse_dataset(&planted, VectorFormat::Text01).unwrap();
        assert!(ds.red().iter().any(|r| ds.blue().contains(r)));
        assert_eq!(call(&["gen", "--kind", "planted", "--n", "2", "--d", "3", "--distance", "3"]).0, EXIT_USAGE);
    }

    #[test]
    fn planted_pair_has_requested_distance() {
        for seed in 0..20 {
            let ds = generate(true, 5, 64, 7, seed).unwrap();
            let min = closest_pair_bruteforce(&ds).unwrap().distance;
            assert!(min <= 7);
            let at = ds
                .red()
                .iter()
                .flat_map(|r| ds.blue().iter().map(move |b| r.hamming_distance(b).unwrap()))
                .filter(|&h| h == 7)
                .count();
            assert!(at >= 1);
        }
    }

    #[test]
    fn sample_poly_reports() {
        let (code, out, _) = call(&["sample-poly", "--n", "3", "--expand"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["kind"], "base");
        assert!(v["degree"].as_u64().unwrap() <= 3);
        let (_, out, _) = call(&["sample-poly", "--n", "2000", "--eps", "0.1", "--seed", "3"]);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert!(v["degree"].as_f64().unwrap() <= v["degree_bound"].as_f64().unwrap());
        assert_eq!(call(&["sample-poly", "--n", "2000", "--eps", "0.1", "--seed", "3"]).1, out);
        let (code, _, err) = call(&["sample-poly", "--n", "2000", "--expand", "--budget", "10"]);
        assert_eq!(code, EXIT_BUDGET, "{err}");
    }

    #[test]
    fn verify_error_exact_base() {
        let (code, out, _) = call(&["verify-error", "--n", "12", "--trials", "20", "--random", "5"]);
        assert_eq!(code, 0);
        let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 8);
        assert!(lines[..7].iter().all(|v| v["agreement"] == 1.0));
        assert_eq!(lines[7]["summary"]["passed"], true);
        assert_eq!(call(&["verify-error", "--n", "12", "--trials", "0"]).0, EXIT_USAGE);
    }

    #[test]
    fn bench_rows() {
        let (code, out, _) = call(&["bench", "--sizes", "8,16", "--dims", "6,9", "--mode", "both"]);
        assert_eq!(code, 0);
        let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
        assert_eq!(rows.len(), 8);
        for pair in rows.chunks(2) {
            assert_eq!((pair[0][2], pair[1][2]), ("poly", "brute"));
            assert_eq!(pair[0][4], pair[1][4]);
        }
    }

    #[test]
    fn usage_and_data_errors() {
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["closest-pair"]).0, EXIT_USAGE);
        assert_eq!(call(&["closest-pair", "--input", "x", "--s", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
        assert_eq!(call(&["closest-pair", "--input", "/nonexistent/file"]).0, EXIT_DATA);
        assert_eq!(call(&["gen", "--n", "2", "--d", "2", "--threads", "0"]).0, EXIT_USAGE);
    }

    #[test]
    fn oracle_disagreement_fails_verification() {
        let meta = SearchMeta::default();
        assert!(with_meta(Vec::new(), "x", meta, None).verified);
        assert!(with_meta(Vec::new(), "x", meta, Some(true)).verified);
        let failed = with_meta(Vec::new(), "x", meta, Some(false));
        assert!(!failed.verified);
        assert_eq!(failed.records[0]["meta"]["oracle_agrees"], false);
        assert_eq!(exit_code(&Error::Budget { projected: 2, budget: 1 }), EXIT_BUDGET);
        assert_eq!(exit_code(&Error::EmptyInput(String::new())), EXIT_DATA);
    }

    #[test]
    fn parses_auto_or_integer() {
        assert_eq!(parse_group_size("auto"), Ok(GroupSize::Auto));
        assert_eq!(parse_group_size("4"), Ok(GroupSize::Fixed(4)));
        assert!(parse_group_size("0").is_err());
        assert_eq!(parse_rounds("7"), Ok(Rounds::Fixed(7)));
        assert!(parse_rounds("x").is_err());
    }
}
