//! `votelab` — voting-rule outcomes, axiom checks, asymptotic classification,
//! Monte Carlo sweeps, Preflib corpus tables, and fixture construction.

use std::collections::HashSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use votelab::axioms;
use votelab::classifier::{self, Parity};
use votelab::constructions;
use votelab::model::PreferenceModel;
use votelab::preflib;
use votelab::sampling::{self, EstimatedAxiom, SamplerPlan};
use votelab::{Profile, Ranking, RuleSpec, TieBreakOrder};

const EXIT_VALIDATION: i32 = 2;
const EXIT_BOUND: i32 = 3;

#[derive(Parser)]
#[command(name = "votelab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an axiom on a profile file.
    Evaluate(EvaluateArgs),
    /// Classify the asymptotic smoothed satisfaction of an axiom.
    Classify(ClassifyArgs),
    /// Monte Carlo estimate of axiom satisfaction at one population size.
    Estimate(EstimateArgs),
    /// CSV sweep over rules and population sizes (resumable).
    Sweep(SweepArgs),
    /// Evaluate a directory of Preflib SOC files.
    Corpus(CorpusArgs),
    /// Generate witness fixtures (participation violations and
    /// Condorcet-vs-scoring gaps).
    Construct(ConstructArgs),
}

#[derive(Args)]
struct EvaluateArgs {
    /// Profile file in the `<weight>: a1>a2>...` text format.
    #[arg(long)]
    profile: PathBuf,
    #[arg(long)]
    rule: String,
    /// One of cc, ccstar, par, cl.
    #[arg(long)]
    axiom: String,
    /// Tie-break priority, e.g. `1,2,3,4` (identity by default).
    #[arg(long)]
    tiebreak: Option<String>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Preference model JSON file.
    #[arg(long, conflicts_with = "ic")]
    model: Option<PathBuf>,
    /// Impartial culture with the given number of alternatives.
    #[arg(long)]
    ic: Option<usize>,
    #[arg(long)]
    rule: String,
    /// cc or par.
    #[arg(long)]
    axiom: String,
    /// even, odd, or both.
    #[arg(long, default_value = "even")]
    parity: String,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long, conflicts_with = "ic")]
    model: Option<PathBuf>,
    #[arg(long)]
    ic: Option<usize>,
    #[arg(long)]
    rule: String,
    #[arg(long)]
    axiom: String,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    tiebreak: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, conflicts_with = "ic")]
    model: Option<PathBuf>,
    #[arg(long)]
    ic: Option<usize>,
    /// Comma-separated rule list.
    #[arg(long)]
    rules: String,
    #[arg(long)]
    axiom: String,
    /// Comma-separated population sizes.
    #[arg(long)]
    n: String,
    #[arg(long)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    tiebreak: Option<String>,
    /// Output CSV; existing rows double as the resume checkpoint.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long)]
    dir: PathBuf,
    /// Comma-separated rule list.
    #[arg(long)]
    rules: String,
    /// Comma-separated axiom list (cc, par).
    #[arg(long, default_value = "cc,par")]
    axioms: String,
    #[arg(long)]
    tiebreak: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON-lines audit output path.
    #[arg(long)]
    audit: Option<PathBuf>,
    /// Skip parallel-universe searches above this number of alternatives.
    #[arg(long, default_value_t = 8)]
    put_bound: usize,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ConstructArgs {
    /// Rule family for a participation violation, or `cwgap`.
    #[arg(long)]
    family: String,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: u64,
    /// For cwgap: the scoring rule, intended Condorcet winner, and winner.
    #[arg(long)]
    rule: Option<String>,
    #[arg(long, default_value_t = 1)]
    cw: u8,
    #[arg(long, default_value_t = 2)]
    winner: u8,
    #[arg(long)]
    tiebreak: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                votelab::Error::BoundExceeded(_) => EXIT_BOUND,
                _ => EXIT_VALIDATION,
            }
        }
    };
    std::process::exit(code);
}

fn parse_tiebreak(spec: &Option<String>, m: usize) -> votelab::Result<TieBreakOrder> {
    match spec {
        None => Ok(TieBreakOrder::identity(m)),
        Some(s) => {
            let ids: Vec<u8> = s
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u8>()
                        .map_err(|_| votelab::Error::Parse(format!("bad tie-break id {p:?}")))
                })
                .collect::<votelab::Result<_>>()?;
            TieBreakOrder::new(ids)
        }
    }
}

fn load_model(model: &Option<PathBuf>, ic: &Option<usize>) -> votelab::Result<PreferenceModel> {
    match (model, ic) {
        (Some(path), None) => {
            let content = std::fs::read_to_string(path)
                .map_err(|e| votelab::Error::Parse(format!("{}: {e}", path.display())))?;
            PreferenceModel::from_json(&content)
        }
        (None, Some(m)) => Ok(PreferenceModel::impartial_culture(*m)),
        _ => Err(votelab::Error::Parse(
            "provide exactly one of --model or --ic".into(),
        )),
    }
}

fn configure_jobs(jobs: Option<usize>) {
    if let Some(j) = jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> votelab::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| votelab::Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> votelab::Result<()> {
    match cli.command {
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Corpus(args) => cmd_corpus(args),
        Command::Construct(args) => cmd_construct(args),
    }
}

fn cmd_evaluate(args: EvaluateArgs) -> votelab::Result<()> {
    let content = std::fs::read_to_string(&args.profile)
        .map_err(|e| votelab::Error::Parse(format!("{}: {e}", args.profile.display())))?;
    let profile = Profile::parse_text(&content)?;
    let rule = RuleSpec::parse(&args.rule)?;
    let tiebreak = parse_tiebreak(&args.tiebreak, profile.m())?;
    let verdict = match args.axiom.to_ascii_lowercase().as_str() {
        "cc" => axioms::sat_cc(&rule, &profile)?,
        "ccstar" | "cc*" => axioms::sat_cc_star(&rule, &profile)?,
        "par" | "participation" => axioms::sat_par(&rule, &profile, &tiebreak)?,
        "cl" => axioms::sat_cl_profile(&rule, &profile)?,
        other => {
            return Err(votelab::Error::Parse(format!(
                "unknown axiom {other:?} (expected cc, ccstar, par, cl)"
            )))
        }
    };
    println!("{}", verdict.to_json(&args.axiom.to_ascii_lowercase(), &args.rule));
    Ok(())
}

fn cmd_classify(args: ClassifyArgs) -> votelab::Result<()> {
    let model = load_model(&args.model, &args.ic)?;
    let rule = RuleSpec::parse(&args.rule)?;
    let axiom = args.axiom.to_ascii_lowercase();
    let parities: Vec<Parity> = match args.parity.to_ascii_lowercase().as_str() {
        "even" => vec![Parity::Even],
        "odd" => vec![Parity::Odd],
        "both" => vec![Parity::Even, Parity::Odd],
        other => {
            return Err(votelab::Error::Parse(format!(
                "unknown parity {other:?} (expected even, odd, both)"
            )))
        }
    };
    let mut results = Vec::new();
    for parity in parities {
        let case = match axiom.as_str() {
            "cc" => classifier::classify_cc(&model, &rule, parity)?,
            "par" | "participation" => classifier::classify_par(&model, &rule)?,
            other => {
                return Err(votelab::Error::Parse(format!(
                    "unknown axiom {other:?} (expected cc, par)"
                )))
            }
        };
        results.push(case.to_json());
    }
    if results.len() == 1 {
        println!("{}", results[0]);
    } else {
        println!("[{}]", results.join(","));
    }
    Ok(())
}

fn estimate_row(
    rule: &RuleSpec,
    axiom: EstimatedAxiom,
    model_name: &str,
    est: &sampling::SatisfactionEstimate,
    n: u64,
    trials: u64,
    seed: u64,
) -> String {
    format!(
        "{rule},{axiom},{model_name},{n},{trials},{seed},{:.6},{:.6},{:.6}",
        est.estimate, est.ci_lo, est.ci_hi
    )
}

const CSV_HEADER: &str = "rule,axiom,model,n,trials,seed,estimate,ci_lo,ci_hi";

fn cmd_estimate(args: EstimateArgs) -> votelab::Result<()> {
    configure_jobs(args.jobs);
    if args.trials == 0 {
        return Err(votelab::Error::Parse("need --trials >= 1".into()));
    }
    let model = load_model(&args.model, &args.ic)?;
    let rule = RuleSpec::parse(&args.rule)?;
    let axiom = EstimatedAxiom::parse(&args.axiom)?;
    let tiebreak = parse_tiebreak(&args.tiebreak, model.m())?;
    let model_name = args
        .model
        .as_ref()
        .and_then(|p| p.file_stem().map(|s| s.to_string_lossy().into_owned()))
        .unwrap_or_else(|| format!("ic{}", model.m()));

    if model.len() == 1 {
        let plan = SamplerPlan::iid(
            model.m(),
            args.n,
            model.distributions()[0].clone(),
            args.seed,
            args.trials,
        )?;
        let est = sampling::estimate_satisfaction(&rule, axiom, &plan, &tiebreak)?;
        let content = match args.format.as_str() {
            "csv" => format!(
                "{CSV_HEADER}\n{}\n",
                estimate_row(&rule, axiom, &model_name, &est, args.n, args.trials, args.seed)
            ),
            _ => serde_json::json!({
                "rule": rule.to_string(),
                "axiom": axiom.to_string(),
                "model": model_name,
                "n": args.n,
                "trials": args.trials,
                "seed": args.seed,
                "estimate": est.estimate,
                "ci_lo": est.ci_lo,
                "ci_hi": est.ci_hi,
                "wall_ms": est.wall_ms,
            })
            .to_string(),
        };
        write_or_print(&args.out, &content)?;
    } else {
        // Multi-vertex model: heuristic adversary search over hull points.
        let adv = sampling::adversarial_estimate(
            &model, &rule, axiom, args.n, args.trials, args.seed, &tiebreak, &[],
        )?;
        let candidates: Vec<serde_json::Value> = adv
            .candidates
            .iter()
            .map(|c| {
                serde_json::json!({
                    "candidate": c.name,
                    "estimate": c.estimate.estimate,
                    "ci_lo": c.estimate.ci_lo,
                    "ci_hi": c.estimate.ci_hi,
                })
            })
            .collect();
        let content = serde_json::json!({
            "rule": rule.to_string(),
            "axiom": axiom.to_string(),
            "model": model_name,
            "n": args.n,
            "trials": args.trials,
            "seed": args.seed,
            "candidates": candidates,
            "minimizing": adv.candidates[adv.minimizing].name,
            "caveat": adv.caveat,
        })
        .to_string();
        write_or_print(&args.out, &content)?;
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> votelab::Result<()> {
    configure_jobs(args.jobs);
    if args.trials == 0 {
        return Err(votelab::Error::Parse("need --trials >= 1".into()));
    }
    let model = load_model(&args.model, &args.ic)?;
    if model.len() != 1 {
        return Err(votelab::Error::Parse(
            "sweeps run on single-distribution models".into(),
        ));
    }
    let rules: Vec<RuleSpec> = args
        .rules
        .split(',')
        .map(RuleSpec::parse)
        .collect::<votelab::Result<_>>()?;
    let ns: Vec<u64> = args
        .n
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| votelab::Error::Parse(format!("bad n {p:?}")))
        })
        .collect::<votelab::Result<_>>()?;
    if ns.is_empty() {
        return Err(votelab::Error::Parse("need a nonempty --n list".into()));
    }
    let axiom = EstimatedAxiom::parse(&args.axiom)?;
    let tiebreak = parse_tiebreak(&args.tiebreak, model.m())?;
    let model_name = args
        .model
        .as_ref()
        .and_then(|p| p.file_stem().map(|s| s.to_string_lossy().into_owned()))
        .unwrap_or_else(|| format!("ic{}", model.m()));

    // The output CSV is the checkpoint: rows already present are skipped.
    let mut done: HashSet<String> = HashSet::new();
    let mut needs_header = true;
    if args.out.exists() {
        let existing = std::fs::read_to_string(&args.out)
            .map_err(|e| votelab::Error::Parse(format!("{}: {e}", args.out.display())))?;
        for line in existing.lines().skip(1) {
            let key: Vec<&str> = line.split(',').take(6).collect();
            done.insert(key.join(","));
        }
        needs_header = existing.trim().is_empty();
    }
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&args.out)
        .map_err(|e| votelab::Error::Parse(format!("{}: {e}", args.out.display())))?;
    if needs_header {
        writeln!(file, "{CSV_HEADER}")
            .map_err(|e| votelab::Error::Parse(e.to_string()))?;
    }

    for rule in &rules {
        for &n in &ns {
            let key = format!(
                "{rule},{axiom},{model_name},{n},{},{}",
                args.trials, args.seed
            );
            if done.contains(&key) {
                continue;
            }
            let plan = SamplerPlan::iid(
                model.m(),
                n,
                model.distributions()[0].clone(),
                args.seed,
                args.trials,
            )?;
            let est = sampling::estimate_satisfaction(rule, axiom, &plan, &tiebreak)?;
            writeln!(
                file,
                "{}",
                estimate_row(rule, axiom, &model_name, &est, n, args.trials, args.seed)
            )
            .map_err(|e| votelab::Error::Parse(e.to_string()))?;
            file.flush().ok();
        }
    }
    Ok(())
}

fn cmd_corpus(args: CorpusArgs) -> votelab::Result<()> {
    configure_jobs(args.jobs);
    let rules: Vec<RuleSpec> = args
        .rules
        .split(',')
        .map(RuleSpec::parse)
        .collect::<votelab::Result<_>>()?;
    let axioms_list: Vec<EstimatedAxiom> = args
        .axioms
        .split(',')
        .map(EstimatedAxiom::parse)
        .collect::<votelab::Result<_>>()?;
    // Tie-break ids apply to files whose alternative count matches; other
    // files fall back to the identity order.
    let tiebreak = match &args.tiebreak {
        Some(_) => parse_tiebreak(&args.tiebreak, 0)?,
        None => TieBreakOrder::identity(1),
    };
    let report = preflib::evaluate_corpus(
        Path::new(&args.dir),
        &rules,
        &axioms_list,
        &tiebreak,
        args.put_bound,
    )?;
    let csv = preflib::report_csv(&report);
    write_or_print(&args.out, &csv)?;
    if let Some(audit_path) = &args.audit {
        std::fs::write(audit_path, report.audit.join("\n") + "\n")
            .map_err(|e| votelab::Error::Parse(format!("{}: {e}", audit_path.display())))?;
    }
    for (path, err) in &report.failures {
        eprintln!("skipped {}: {err}", path.display());
    }
    if !report.failures.is_empty() {
        return Err(votelab::Error::Parse(format!(
            "{} file(s) could not be evaluated",
            report.failures.len()
        )));
    }
    Ok(())
}

fn cmd_construct(args: ConstructArgs) -> votelab::Result<()> {
    if args.family.to_ascii_lowercase() == "cwgap" {
        let rule_str = args
            .rule
            .clone()
            .ok_or_else(|| votelab::Error::Parse("cwgap needs --rule".into()))?;
        let rule = RuleSpec::parse(&rule_str)?;
        let s = rule.scoring_vector(args.m)?;
        let profile =
            constructions::cw_scoring_gap_profile(&s, args.m, args.n, args.cw, args.winner)?;
        let mut content = format!(
            "# condorcet-vs-scoring gap fixture\n# rule: {rule}\n# m: {}\n# n: {}\n# condorcet_winner: {}\n# scoring_winner: {}\n",
            args.m, args.n, args.cw, args.winner
        );
        content.push_str(&profile.to_text());
        write_or_print(&args.out, &content)?;
        return Ok(());
    }
    let family = RuleSpec::parse(&args.family)?;
    let tiebreak = parse_tiebreak(&args.tiebreak, args.m)?;
    let (profile, witness) =
        constructions::par_violation_profile(&family, args.m, args.n, &tiebreak)?;
    let pre = family.resolve(&profile, &tiebreak)?;
    let post = family.resolve(&profile.remove_one(&witness)?, &tiebreak)?;
    let mut content = format!(
        "# participation violation fixture\n# family: {family}\n# m: {}\n# n: {}\n# witness: {witness}\n# winner_with_vote: {pre}\n# winner_without_vote: {post}\n",
        args.m, args.n
    );
    content.push_str(&profile.to_text());
    write_or_print(&args.out, &content)?;
    let _ = Ranking::identity(args.m);
    Ok(())
}
