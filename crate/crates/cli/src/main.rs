use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use schurtree::bounds::{ratio_sandwich, BoundMode};
use schurtree::fiedler::{fed_census, fiedler_report, random_census_trees, rose_analysis, rose_sweep, write_census_csv};
use schurtree::numfmt::round_sig;
use schurtree::oracle::{enumerate_labeled_trees, run_suite, to_jsonl, Suite};
use schurtree::tree::{parse_edge_list, to_dot, to_edge_list};
use schurtree::{decompose_along_path, generate, FamilySpec, Tree};

#[derive(Parser)]
#[command(name = "schurtree", version, about = "Tree Laplacian eigenvector tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a tree from a family specification.
    Gen(GenArgs),
    /// Fiedler vector, extrema and FED verdict of a tree.
    Analyze(AnalyzeArgs),
    /// Ratio envelope along a path against the oracle Fiedler vector.
    Bounds(BoundsArgs),
    /// Analyse a rose, or sweep its `t` parameter.
    Rose(RoseArgs),
    /// FED census over all labeled trees or a random sample.
    Census(CensusArgs),
    /// Run the brute-force verification suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// e.g. path:5, star:6, caterpillar:0,2,1, rose:3,5,4, random:20
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Comma-separated vertex labels v1,...,vk.
    #[arg(long, value_delimiter = ',', required = true)]
    path: Vec<usize>,
    #[arg(long, default_value = "exact", value_parser = parse_mode)]
    mode: BoundMode,
}

#[derive(Args)]
struct RoseArgs {
    #[arg(long)]
    l: usize,
    #[arg(long, required_unless_present = "sweep_t")]
    t: Option<usize>,
    #[arg(long)]
    r: usize,
    /// Inclusive range A..B of `t` values.
    #[arg(long, value_parser = parse_range, conflicts_with = "t")]
    sweep_t: Option<RangeInclusive<usize>>,
}

#[derive(Args)]
struct CensusArgs {
    /// Every labeled tree with 2..=N vertices.
    #[arg(long, conflicts_with = "random")]
    max_n: Option<usize>,
    /// Number of random trees.
    #[arg(long, requires = "size")]
    random: Option<usize>,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the JSONL records here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_mode(s: &str) -> Result<BoundMode, String> {
    s.parse().map_err(|e: schurtree::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: schurtree::Error| e.to_string())
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: usize = a.parse().map_err(|_| format!("bad range start {a:?}"))?;
    let b: usize = b.trim_start_matches('=').parse().map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

/// Failure with its exit code: 2 for bad input, 1 for failed checks.
struct Failure {
    code: u8,
    message: String,
}

impl From<schurtree::Error> for Failure {
    fn from(e: schurtree::Error) -> Failure {
        Failure { code: 1, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type Outcome = Result<(), Failure>;

fn read_tree(path: &Path) -> Result<Tree, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Outcome {
    fs::write(path, contents).map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) })
}

/// Rounds every float in `v` to the shared output precision.
fn rounded(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round_sig(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(a) => Value::Array(a.into_iter().map(rounded).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, x)| (k, rounded(x))).collect()),
        other => other,
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let v = serde_json::to_value(v).expect("report types serialize");
    serde_json::to_string_pretty(&rounded(v)).expect("values serialize") + "\n"
}

/// Twelve significant digits, in exponent form outside `[1e−4, 1e12)`.
fn num(x: f64) -> String {
    let y = round_sig(x);
    if y != 0.0 && y.is_finite() && !(1e-4..1e12).contains(&y.abs()) {
        format!("{y:e}")
    } else {
        y.to_string()
    }
}

fn gen(args: &GenArgs) -> Outcome {
    let spec = FamilySpec::parse(&args.family, args.seed).map_err(|e| usage(e.to_string()))?;
    let t = generate(&spec).map_err(|e| usage(e.to_string()))?;
    write_file(&args.out, &to_edge_list(&t))?;
    if let Some(dot) = &args.dot {
        write_file(dot, &to_dot(&t))?;
    }
    println!("wrote tree with {} vertices to {}", t.n(), args.out.display());
    Ok(())
}

fn analyze(args: &AnalyzeArgs) -> Outcome {
    let t = read_tree(&args.input)?;
    let report = fiedler_report(&t).map_err(|e| usage(e.to_string()))?;
    let text = pretty(&report.to_json(&t));
    match &args.json {
        Some(path) => {
            write_file(path, &text)?;
            println!("a = {:.12}  fed = {}", report.a, report.fed.label());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn bounds(args: &BoundsArgs) -> Outcome {
    let t = read_tree(&args.input)?;
    let d = decompose_along_path(&t, &args.path).map_err(|e| usage(e.to_string()))?;
    let report = fiedler_report(&t)?;
    let env = ratio_sandwich(&d, report.a, args.mode)?;
    let x_path: Option<Vec<f64>> = report.vector.as_ref().map(|x| args.path.iter().map(|&v| x[v]).collect());
    println!(
        "lambda = {}  eps in [{}, {}]  horizon = {}",
        num(env.lambda),
        num(env.eps_min),
        num(env.eps_max),
        num(env.horizon)
    );
    println!("i,ratio_lower,oracle_ratio,ratio_upper,cumulative_lower,oracle_cumulative,cumulative_upper,inside");
    let mut outside = 0;
    for row in &env.rows {
        let (ratio, cumulative) = match &x_path {
            Some(x) if x[row.i - 1].abs() > 0.0 && x[0].abs() > 0.0 => {
                (Some(x[row.i] / x[row.i - 1]), Some(x[row.i] / x[0]))
            }
            _ => (None, None),
        };
        let tol = 1e-9;
        let inside = match (ratio, cumulative) {
            (Some(q), Some(c)) => {
                q >= row.ratio_lower - tol
                    && q <= row.ratio_upper + tol
                    && c >= row.cumulative_lower - tol
                    && c <= row.cumulative_upper + tol
            }
            _ => true,
        };
        if !inside {
            outside += 1;
        }
        let show = |v: Option<f64>| v.map_or_else(|| "-".to_string(), num);
        println!(
            "{},{},{},{},{},{},{},{}",
            row.i,
            num(row.ratio_lower),
            show(ratio),
            num(row.ratio_upper),
            num(row.cumulative_lower),
            show(cumulative),
            num(row.cumulative_upper),
            inside
        );
    }
    if x_path.is_none() {
        eprintln!("a(T) is not simple; oracle ratios omitted");
    }
    if outside > 0 {
        return Err(Failure { code: 1, message: format!("{outside} oracle ratios outside the envelope") });
    }
    Ok(())
}

fn rose(args: &RoseArgs) -> Outcome {
    match (&args.sweep_t, args.t) {
        (Some(range), _) => {
            let sweep = rose_sweep(args.l, args.r, range.clone()).map_err(|e| usage(e.to_string()))?;
            println!("t,a,glue_side_extremum,glue_side_is_star_leaf,max_abs_vertex,path_end_extremal,fed");
            let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
            for row in &sweep.rows {
                println!(
                    "{},{},{},{},{},{},{}",
                    row.t,
                    num(row.a),
                    opt(row.glue_side_extremum.map(|v| v.to_string())),
                    opt(row.glue_side_is_star_leaf.map(|v| v.to_string())),
                    opt(row.max_abs_vertex.map(|v| v.to_string())),
                    opt(row.path_end_extremal.map(|v| v.to_string())),
                    row.fed
                );
            }
            let show = |t: Option<usize>| t.map_or_else(|| "none".to_string(), |t| t.to_string());
            println!("first t with the glue-side extremum at a star leaf: {}", show(sweep.threshold));
            println!("first t with the global max |x| at a star leaf: {}", show(sweep.global_threshold));
        }
        (None, Some(t)) => {
            let ra = rose_analysis(args.l, t, args.r).map_err(|e| usage(e.to_string()))?;
            print!("{}", pretty(&ra));
        }
        (None, None) => return Err(usage("either --t or --sweep-t is required")),
    }
    Ok(())
}

fn census(args: &CensusArgs) -> Outcome {
    let trees: Vec<Tree> = match (args.random, args.size, args.max_n) {
        (Some(count), Some(size), _) => random_census_trees(count, size, args.seed).map_err(|e| usage(e.to_string()))?,
        (None, None, max_n) => {
            let max_n = max_n.unwrap_or(8);
            let mut all = Vec::new();
            for n in 2..=max_n {
                all.extend(enumerate_labeled_trees(n).map_err(|e| usage(e.to_string()))?);
            }
            all
        }
        _ => return Err(usage("--random and --size go together")),
    };
    let (rows, summary) = fed_census(&trees, args.jobs)?;
    let mut buf = Vec::new();
    write_census_csv(&rows, &mut buf)?;
    match &args.csv {
        Some(path) => fs::write(path, &buf).map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) })?,
        None => std::io::stdout().write_all(&buf).map_err(|e| Failure { code: 1, message: e.to_string() })?,
    }
    eprintln!(
        "census: {} trees, holds {}, fails {}, not_applicable {}",
        summary.total, summary.holds, summary.fails, summary.not_applicable
    );
    Ok(())
}

fn verify(args: &VerifyArgs) -> Outcome {
    let records = run_suite(args.suite, args.max_n, args.seed, args.jobs).map_err(|e| usage(e.to_string()))?;
    let text = to_jsonl(&records);
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    let failed: Vec<&str> = records.iter().filter(|r| !r.pass).map(|r| r.claim.as_str()).collect();
    eprintln!("verify: {} records, {} failing", records.len(), failed.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure { code: 1, message: format!("failing claims: {}", failed.join(", ")) })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut argv: Vec<String> = std::env::args().collect();
    let seed = match &cli.command {
        Command::Gen(a) => Some(a.seed),
        Command::Census(a) => Some(a.seed),
        Command::Verify(a) => Some(a.seed),
        _ => None,
    };
    if let Some(seed) = seed.filter(|_| !argv.iter().any(|a| a.starts_with("--seed"))) {
        argv.extend(["--seed".to_string(), seed.to_string()]);
    }
    eprintln!("# {}", argv.join(" "));
    let outcome = match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Analyze(a) => analyze(a),
        Command::Bounds(a) => bounds(a),
        Command::Rose(a) => rose(a),
        Command::Census(a) => census(a),
        Command::Verify(a) => verify(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..60").unwrap(), 3..=60);
        assert_eq!(parse_range("3..=5").unwrap(), 3..=5);
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("5").is_err());
    }

    #[test]
    fn number_text() {
        assert_eq!(num(0.5), "0.5");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(3.2405196328e-16), "3.2405196328e-16");
        assert_eq!(num(1.0 / 3.0), "0.333333333333");
    }

    #[test]
    fn floats_are_rounded_in_json() {
        let v = rounded(serde_json::json!({"a": [1.0 / 3.0, 2], "b": "x"}));
        assert_eq!(v.to_string(), r#"{"a":[0.333333333333,2],"b":"x"}"#);
    }
}
