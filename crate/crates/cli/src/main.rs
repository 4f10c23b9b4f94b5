use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use lcmrel::filtration::{full_filtration, k_fold_ideal, k_fold_raw, staircase, Filtration, Guard};
use lcmrel::io::{ideal_from_json, ideal_to_json};
use lcmrel::profile::{profile, Methods, ProfileRow};
use lcmrel::resolution::{
    ahh_kofr, degenerate, ideal_kpolynomial, minimal_betti, size_report, taylor,
    taylor_kpolynomial, KPolynomial, Resolution, SizeRow,
};
use lcmrel::stats::{
    failure_count_distribution, failure_probability, generator_degree_histogram, histogram_csv,
    joint_csv, k_fold_signature, mean_failures, moment, signature, tail_probabilities,
    truncation_bounds, Bernoulli, BoundsRow, DistributionReport, Oracle, ProbModel, Symbolic,
    ToJson,
};
use lcmrel::systems::{
    complete_graph_cut_ideal, complete_graph_filtration_fast, consecutive_ideal,
    detect_complete_graph, k_out_of_n_ideal, partition_ideal,
};
use lcmrel::{Error, MonomialIdeal};

#[derive(Parser)]
#[command(name = "lcmrel", version, about = "lcm-filtrations, resolutions and failure statistics of coherent systems")]
struct Cli {
    /// Worker threads for the library's internal parallelism.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the failure ideal of a built-in system family.
    System(SystemArgs),
    /// Minimal generators of the k-fold lcm-ideals.
    Filtration(FiltrationArgs),
    /// Build a resolution of I_k and print it as JSON.
    Resolve(ResolveArgs),
    /// K-polynomial of an ideal or of one level of its filtration.
    Kpoly(KpolyArgs),
    /// Failure probabilities, tails, the failure-count law, moments and bounds.
    Reliability(ReliabilityArgs),
    /// Signature tables, the joint law of (Y, Z) and the generator histogram.
    Signature(SignatureArgs),
    /// Per-level resolution sizes and task timings as CSV.
    Profile(ProfileArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Consecutive,
    Kofn,
    CutComplete,
    Partition,
}

#[derive(Args)]
struct SystemArgs {
    family: Family,
    /// Run length, threshold, or block count depending on the family.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GuardArgs {
    /// Disable the limit on enumerated subsets.
    #[arg(long)]
    allow_large: bool,
}

impl GuardArgs {
    fn guard(&self) -> Guard {
        if self.allow_large {
            Guard::unlimited()
        } else {
            Guard::default()
        }
    }
}

#[derive(Args)]
struct FiltrationArgs {
    file: PathBuf,
    #[arg(long, conflicts_with = "all")]
    level: Option<usize>,
    #[arg(long)]
    all: bool,
    /// Report maximal runs of equal consecutive levels.
    #[arg(long)]
    staircase: bool,
    /// Use the partition-ideal shortcut when the input is a complete-graph cut ideal.
    #[arg(long)]
    fast_complete: bool,
    #[command(flatten)]
    guard: GuardArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ResolveMethod {
    Taylor,
    TaylorRaw,
    Degenerate,
    Minimal,
    Ahh,
}

#[derive(Args)]
struct ResolveArgs {
    /// Ideal file; not used with `--method ahh`.
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "minimal")]
    method: ResolveMethod,
    #[arg(long, default_value_t = 1)]
    level: usize,
    /// Number of generators for `--method ahh`.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    differentials: bool,
    /// Print the size report CSV for every level instead.
    #[arg(long)]
    sizes: bool,
    #[command(flatten)]
    guard: GuardArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum KpolyMethod {
    Ideal,
    Taylor,
    Degenerate,
    Minimal,
}

#[derive(Args)]
struct KpolyArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 1)]
    level: usize,
    #[arg(long, value_enum, default_value = "ideal")]
    method: KpolyMethod,
    #[command(flatten)]
    guard: GuardArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundsMethod {
    Taylor,
    Minimal,
}

#[derive(Args)]
struct ReliabilityArgs {
    file: PathBuf,
    /// Component failure probability as `num/den`.
    #[arg(long, value_parser = parse_rational, conflicts_with = "symbolic")]
    p: Option<BigRational>,
    /// Report polynomials in `p`.
    #[arg(long)]
    symbolic: bool,
    #[arg(long)]
    tails: bool,
    #[arg(long)]
    distribution: bool,
    /// Moments of orders 1..=N.
    #[arg(long)]
    moments: Option<u32>,
    /// Truncation bounds at depths 0..=DEPTH (needs `--p`).
    #[arg(long)]
    bounds: Option<usize>,
    #[arg(long, value_enum, default_value = "minimal")]
    bounds_method: BoundsMethod,
    #[command(flatten)]
    guard: GuardArgs,
}

#[derive(Args)]
struct SignatureArgs {
    file: PathBuf,
    #[arg(long, value_parser = parse_rational)]
    p: BigRational,
    /// Condition on at least K failed minimal cuts.
    #[arg(long)]
    kfold: Option<usize>,
    /// Joint law of (Y, Z) by exhaustive enumeration.
    #[arg(long)]
    joint: bool,
    /// Minimal generators per level and degree.
    #[arg(long)]
    histogram: bool,
    /// Emit the joint or histogram table as `y,z,value` CSV.
    #[arg(long)]
    csv: bool,
    #[command(flatten)]
    guard: GuardArgs,
}

#[derive(Args)]
struct ProfileArgs {
    file: PathBuf,
    #[arg(long, default_value = "taylor,ahh,minimal")]
    methods: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    guard: GuardArgs,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<(), Failure>;

fn parse_rational(text: &str) -> Result<BigRational, String> {
    let bad = || format!("`{text}` is not a rational of the form num/den");
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let digits = |s: &str| {
        let body = s.strip_prefix('-').unwrap_or(s);
        !body.is_empty() && body.chars().all(|c| c.is_ascii_digit())
    };
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(format!("`{text}` has a zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn read_ideal(path: &Path) -> Result<MonomialIdeal, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(ideal_from_json(&text)?)
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_json(value: &Value) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).expect("serialisable");
    text.push('\n');
    emit(None, &text)
}

fn cmd_system(a: SystemArgs) -> Outcome {
    let need_k = || a.k.ok_or_else(|| Failure::Usage("this family needs --k".into()));
    let ideal = match a.family {
        Family::Consecutive => consecutive_ideal(need_k()?, a.n),
        Family::Kofn => k_out_of_n_ideal(need_k()?, a.n),
        Family::CutComplete => complete_graph_cut_ideal(a.n),
        Family::Partition => partition_ideal(a.n, need_k()?),
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    let mut text = ideal_to_json(&ideal);
    text.push('\n');
    emit(a.out.as_deref(), &text)
}

fn filtration_for(ideal: &MonomialIdeal, fast: bool, guard: Guard) -> Result<Filtration, Error> {
    if fast {
        if let Some(n) = detect_complete_graph(ideal) {
            return complete_graph_filtration_fast(n);
        }
    }
    full_filtration(ideal, guard)
}

fn level_json(k: usize, ideal: &MonomialIdeal) -> Value {
    json!({ "k": k, "generators": ideal.format_generators() })
}

fn cmd_filtration(a: FiltrationArgs) -> Outcome {
    let ideal = read_ideal(&a.file)?;
    let guard = a.guard.guard();
    let mut out = serde_json::Map::new();
    out.insert("variables".into(), json!(ideal.vars().names()));
    if let (Some(k), false) = (a.level, a.staircase) {
        let level = k_fold_ideal(&ideal, k, guard)?;
        out.insert("levels".into(), json!([level_json(k, &level)]));
        return print_json(&Value::Object(out));
    }
    let f = filtration_for(&ideal, a.fast_complete, guard)?;
    let levels: Vec<Value> = match a.level {
        Some(k) if k == 0 || k > f.len() => {
            return Err(Error::LevelOutOfRange { k, r: f.len() }.into())
        }
        Some(k) => vec![level_json(k, f.level(k))],
        None => (1..=f.len()).map(|k| level_json(k, f.level(k))).collect(),
    };
    out.insert("levels".into(), Value::Array(levels));
    if a.staircase {
        let runs: Vec<Value> = staircase(&f)
            .into_iter()
            .map(|r| json!({ "start": r.start, "end": r.end, "generators": r.ideal.format_generators() }))
            .collect();
        out.insert("staircase".into(), Value::Array(runs));
    }
    print_json(&Value::Object(out))
}

fn resolution_json(res: &Resolution, differentials: bool) -> Value {
    let mut v = res.to_json();
    if !differentials {
        if let Some(obj) = v.as_object_mut() {
            obj.remove("differentials");
        }
    }
    v
}

fn cmd_resolve(a: ResolveArgs) -> Outcome {
    let guard = a.guard.guard();
    if let ResolveMethod::Ahh = a.method {
        let r = a.r.ok_or_else(|| Failure::Usage("--method ahh needs --r".into()))?;
        let res = ahh_kofr(a.level, r)?;
        return print_json(&resolution_json(&res, a.differentials));
    }
    let path = a
        .file
        .as_deref()
        .ok_or_else(|| Failure::Usage("an ideal file is required".into()))?;
    let ideal = read_ideal(path)?;
    if a.sizes {
        let f = full_filtration(&ideal, guard)?;
        let mut text = String::from(SizeRow::CSV_HEADER);
        text.push('\n');
        for row in size_report(&f)? {
            text.push_str(&row.csv());
            text.push('\n');
        }
        return emit(None, &text);
    }
    let res = match a.method {
        ResolveMethod::Taylor => {
            let level = k_fold_ideal(&ideal, a.level, guard)?;
            taylor(level.vars(), level.gens(), guard)?
        }
        ResolveMethod::TaylorRaw => {
            let raw = k_fold_raw(&ideal, a.level, guard)?;
            taylor(ideal.vars(), &raw, guard)?
        }
        ResolveMethod::Degenerate => degenerate(&ideal, a.level, guard)?,
        ResolveMethod::Minimal => minimal_betti(&k_fold_ideal(&ideal, a.level, guard)?)?,
        ResolveMethod::Ahh => unreachable!("handled above"),
    };
    print_json(&resolution_json(&res, a.differentials))
}

fn kpoly_json(k: &KPolynomial) -> Value {
    let terms: Vec<Value> = k
        .terms()
        .iter()
        .map(|(m, c)| {
            json!({
                "monomial": m.display(k.vars()).to_string(),
                "coefficient": serde_json::from_str::<Value>(&c.to_string()).expect("integer"),
            })
        })
        .collect();
    json!({
        "terms": terms,
        "text": k.to_string(),
        "univariate": k.to_univariate().to_json(),
    })
}

fn cmd_kpoly(a: KpolyArgs) -> Outcome {
    let ideal = read_ideal(&a.file)?;
    let guard = a.guard.guard();
    let level = if a.level == 1 {
        ideal.clone()
    } else {
        k_fold_ideal(&ideal, a.level, guard)?
    };
    let k = match a.method {
        KpolyMethod::Ideal => ideal_kpolynomial(&level),
        KpolyMethod::Taylor => taylor_kpolynomial(level.vars(), level.gens(), guard)?,
        KpolyMethod::Degenerate => degenerate(&ideal, a.level, guard)?.kpolynomial(),
        KpolyMethod::Minimal => minimal_betti(&level)?.kpolynomial(),
    };
    print_json(&kpoly_json(&k))
}

fn reliability_report<M: ProbModel>(
    ideal: &MonomialIdeal,
    a: &ReliabilityArgs,
    model: &M,
) -> Result<DistributionReport<M::Value>, Error> {
    let guard = a.guard.guard();
    let mut report = DistributionReport {
        failure_probability: Some(failure_probability(ideal, model)?),
        ..Default::default()
    };
    if a.tails || a.distribution {
        let f = full_filtration(ideal, guard)?;
        if a.tails {
            report.tails = Some(tail_probabilities(&f, model)?);
        }
        if a.distribution {
            report.masses = Some(failure_count_distribution(&f, model)?);
        }
    }
    if let Some(n) = a.moments {
        if n == 0 {
            return Err(Error::InvalidParameters("--moments must be at least 1".into()));
        }
        report.mean = Some(mean_failures(ideal, model)?);
        for order in 1..=n {
            let v = moment(ideal, order, model, guard)?;
            if order == 2 {
                report.second_moment = Some(v.clone());
            }
            report.moments.push((order, v));
        }
    }
    Ok(report)
}

fn cmd_reliability(a: ReliabilityArgs) -> Outcome {
    let ideal = read_ideal(&a.file)?;
    ideal.require_squarefree()?;
    let value = match (&a.p, a.symbolic) {
        (None, false) => return Err(Failure::Usage("give --p num/den or --symbolic".into())),
        (None, true) => {
            if a.bounds.is_some() {
                return Err(Failure::Usage("--bounds needs a numeric --p".into()));
            }
            reliability_report(&ideal, &a, &Symbolic)?.to_json()
        }
        (Some(p), _) => {
            let model = Bernoulli::iid(p.clone(), ideal.nvars())?;
            let mut report = reliability_report(&ideal, &a, &model)?;
            if let Some(depth) = a.bounds {
                let guard = a.guard.guard();
                let (name, res) = match a.bounds_method {
                    BoundsMethod::Taylor => ("taylor", taylor(ideal.vars(), ideal.gens(), guard)?),
                    BoundsMethod::Minimal => ("minimal", minimal_betti(&ideal)?),
                };
                for d in 0..=depth {
                    let (lower, upper) = truncation_bounds(&res, d, &model)?;
                    report.bounds.push(BoundsRow {
                        method: name.into(),
                        depth: d,
                        lower,
                        upper,
                    });
                }
            }
            report.to_json()
        }
    };
    print_json(&value)
}

fn cmd_signature(a: SignatureArgs) -> Outcome {
    let ideal = read_ideal(&a.file)?;
    ideal.require_squarefree()?;
    if ideal.is_zero() {
        return Err(Error::UndefinedSignature.into());
    }
    if a.csv && (a.joint == a.histogram) {
        return Err(Failure::Usage("--csv needs exactly one of --joint or --histogram".into()));
    }
    let guard = a.guard.guard();
    let model = Bernoulli::iid(a.p.clone(), ideal.nvars())?;
    let needs_filtration = a.kfold.is_some() || a.histogram;
    let f = if needs_filtration {
        Some(full_filtration(&ideal, guard)?)
    } else {
        None
    };
    let joint = if a.joint {
        Some(Oracle::new(&ideal, &model)?.joint())
    } else {
        None
    };
    let hist = f.as_ref().filter(|_| a.histogram).map(generator_degree_histogram);
    if a.csv {
        let text = match (&joint, &hist) {
            (Some(j), _) => joint_csv(j),
            (_, Some(h)) => histogram_csv(h),
            _ => unreachable!("checked above"),
        };
        return emit(None, &text);
    }
    let mut report: DistributionReport<BigRational> = DistributionReport {
        signature: Some(signature(&ideal, &model)?),
        joint,
        gen_histogram: hist,
        ..Default::default()
    };
    if let (Some(k), Some(f)) = (a.kfold, &f) {
        report.kfold_signature = Some(k_fold_signature(f, k, &model)?);
    }
    print_json(&report.to_json())
}

fn cmd_profile(a: ProfileArgs) -> Outcome {
    let ideal = read_ideal(&a.file)?;
    let methods = Methods::parse(&a.methods).map_err(|e| Failure::Usage(e.to_string()))?;
    let rows = profile(&ideal, methods, a.guard.guard())?;
    let mut text = String::from(ProfileRow::CSV_HEADER);
    text.push('\n');
    let mut worst: Option<Error> = None;
    for row in &rows {
        text.push_str(&row.csv());
        text.push('\n');
        if let Some(e) = &row.error {
            eprintln!("level {}: {e}", row.k);
            if worst.as_ref().map_or(true, |w| e.exit_code() > w.exit_code()) {
                worst = Some(e.clone());
            }
        }
    }
    emit(a.out.as_deref(), &text)?;
    match worst {
        Some(e) => Err(Failure::Domain(e)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let outcome = match cli.command {
        Command::System(a) => cmd_system(a),
        Command::Filtration(a) => cmd_filtration(a),
        Command::Resolve(a) => cmd_resolve(a),
        Command::Kpoly(a) => cmd_kpoly(a),
        Command::Reliability(a) => cmd_reliability(a),
        Command::Signature(a) => cmd_signature(a),
        Command::Profile(a) => cmd_profile(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
