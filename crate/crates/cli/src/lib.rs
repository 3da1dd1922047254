//! Command implementations behind the `fewsum` binary.
//!
//! Four subcommands: `gen` writes input families to disk, `select` runs
//! translate selection, `verify` runs the inequality checkers and the
//! exhaustive small-group sweeps, `sim` runs the random-covering
//! experiment. Every run emits a deterministic report; reruns with the
//! same inputs and seed are byte-identical.
//!
//! Exit codes: 0 for pass (or an explicitly vacuous run), 2 for contract,
//! parse, and usage errors, 3 when the selection cascade is exhausted
//! (the best witness found is still reported), 4 when a statement that is
//! a theorem fails, which means a bug, never an expected outcome.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use fewsum_core::cyclic::{
    self, cauchy_davenport_check, exhaustive_triple_select_sweep, exhaustive_xs_sweep,
    popular_product, sample_cover_experiment, CyclicSet,
};
use fewsum_core::error::Error;
use fewsum_core::generate;
use fewsum_core::io::{parse_cyclic_set, parse_point_set, write_cyclic_set, write_point_set};
use fewsum_core::select::{
    select_general, select_line_covered, select_triple_1d, SelectionBudget,
};
use fewsum_core::structure::{
    best_line_cover, check_freiman, check_m2_inequality, check_plunnecke_ruzsa,
    check_ruzsa_asymmetric, line_cover,
};
use fewsum_core::{Direction, MetricValue, PointSet, Report, Verdict};

use rand::SeedableRng;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CONTRACT: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "fewsum",
    about = "Exact sumset-growth experiments: translate selection, inequality checks, cyclic-group simulation",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an input family and write it to a file.
    Gen(GenArgs),
    /// Select translates certifying a sumset growth bound.
    Select(SelectArgs),
    /// Run a verification check (single input, pair, or exhaustive sweep).
    Verify(VerifyArgs),
    /// Run the random-covering experiment on a popular product set.
    Sim(SimArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    pub family: GenFamily,
}

#[derive(Subcommand, Debug)]
pub enum GenFamily {
    /// Sharp-growth family: d parallel lines of N points in Z^d.
    Chr {
        #[arg(long)]
        d: usize,
        #[arg(long = "N")]
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The cube {0,..,side-1}^d.
    Grid {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        side: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The standard simplex {0, e_1, .., e_d}.
    Simplex {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// n distinct uniform points of {0,..,box-1}^d.
    RandomLattice {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "box")]
        box_side: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// n distinct uniform elements of Z_p x Z_m.
    RandomCyclic {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
pub struct OutArgs {
    /// Output path.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub fmt: FormatArgs,
}

#[derive(Args, Debug, Clone, Copy, Default)]
pub struct FormatArgs {
    /// Append a single-line JSON object to the report.
    #[arg(long)]
    pub json: bool,
    /// Also render rational metrics as 12-digit decimals.
    #[arg(long)]
    pub decimal: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectMode {
    Triple1d,
    LineCovered,
    General,
}

#[derive(Args, Debug)]
pub struct SelectArgs {
    /// Point-set input file for A.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub mode: SelectMode,
    /// Second point-set file (B); defaults to A for triple1d.
    #[arg(long)]
    pub b: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Elements drawn per sampling round.
    #[arg(long, default_value_t = 64)]
    pub sample_size: usize,
    /// Sampling rounds.
    #[arg(long, default_value_t = 200)]
    pub rounds: usize,
    /// Greedy stage cap (default 4(d+1)^3).
    #[arg(long)]
    pub max_greedy: Option<usize>,
    /// Candidate-direction budget for cover detection.
    #[arg(long)]
    pub dir_budget: Option<usize>,
    /// Explicit cover direction as comma-separated integers.
    #[arg(long)]
    pub dir: Option<String>,
    /// Drop duplicate input points instead of rejecting them.
    #[arg(long)]
    pub dedupe: bool,
    #[command(flatten)]
    pub fmt: FormatArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Freiman,
    Ruzsa,
    M2,
    Pr,
    CauchyDavenport,
    Xs,
    PopularNesting,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub check: CheckKind,
    /// First input file (point set or cyclic set, depending on the check).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Second input file where the check needs a pair.
    #[arg(long)]
    pub b: Option<PathBuf>,
    /// Manifest of input paths (one per line) for batch runs.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Iterated-sumset order for the pr check.
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    /// Cover direction for the m2 check, comma-separated integers.
    #[arg(long)]
    pub dir: Option<String>,
    /// Group modulus for the xs sweep.
    #[arg(long)]
    pub p: Option<u64>,
    /// Kernel size for the xs sweep.
    #[arg(long)]
    pub m: Option<u64>,
    /// Run the exhaustive sweep (required for xs).
    #[arg(long)]
    pub exhaustive: bool,
    /// Size cap for the exhaustive sweep.
    #[arg(long, default_value_t = 5)]
    pub maxsize: usize,
    #[arg(long)]
    pub dedupe: bool,
    #[command(flatten)]
    pub fmt: FormatArgs,
}

#[derive(Args, Debug)]
pub struct SimArgs {
    /// Cyclic-set input file for A.
    #[arg(long)]
    pub a: PathBuf,
    /// Cyclic-set input file for B.
    #[arg(long)]
    pub b: PathBuf,
    /// Popularity threshold as an integer convolution count.
    #[arg(long)]
    pub t_count: u64,
    /// Translates drawn per trial.
    #[arg(long = "c")]
    pub c: u64,
    #[arg(long)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub dedupe: bool,
    #[command(flatten)]
    pub fmt: FormatArgs,
}

/// Everything a command run produces; `main` prints and exits with it.
#[derive(Debug, Default)]
pub struct ExecOutcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn execute(cli: Cli) -> ExecOutcome {
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Select(args) => cmd_select(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sim(args) => cmd_sim(args),
    };
    match result {
        Ok(outcome) => outcome,
        Err(CmdError { error, partial }) => {
            let code = match &error {
                Error::CascadeExhausted { .. } => EXIT_EXHAUSTED,
                Error::Invariant(_) => EXIT_INVARIANT,
                _ => EXIT_CONTRACT,
            };
            ExecOutcome {
                stdout: partial,
                stderr: format!("error: {error}\n"),
                code,
            }
        }
    }
}

/// An error plus whatever report text was already produced (the cascade
/// failure path still reports its best witness).
struct CmdError {
    error: Error,
    partial: String,
}

impl From<Error> for CmdError {
    fn from(error: Error) -> Self {
        CmdError {
            error,
            partial: String::new(),
        }
    }
}

type CmdResult = Result<ExecOutcome, CmdError>;

fn render(report: &Report, fmt: FormatArgs) -> String {
    let mut out = String::new();
    if fmt.decimal {
        // Interleave decimal renderings after each rational metric.
        for line in report.records().lines() {
            out.push_str(line);
            out.push('\n');
            if let Some((name, _)) = line.split_once('\t') {
                if let Some((_, v)) = report.metrics.iter().find(|(n, _)| n == name) {
                    if matches!(v, MetricValue::Rat(_)) {
                        let _ = writeln!(out, "{name}.decimal\t{}", v.decimal(12));
                    }
                }
            }
        }
    } else {
        out.push_str(&report.records());
    }
    if fmt.json {
        out.push_str(&report.json_line());
        out.push('\n');
    }
    out
}

fn digest_file(path: &Path) -> Result<(Vec<u8>, String), CmdError> {
    let bytes = fs::read(path).map_err(|e| {
        CmdError::from(Error::Parse(format!("cannot read {}: {e}", path.display())))
    })?;
    let hex = hex_digest(&bytes);
    Ok((bytes, hex))
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

fn input_label(path: &Path, hex: &str) -> String {
    format!("{}:{hex}", path.display())
}

fn load_point_set(path: &Path, dedupe: bool) -> Result<(PointSet, String, Vec<String>), CmdError> {
    let (bytes, hex) = digest_file(path)?;
    let text = String::from_utf8_lossy(&bytes);
    let (set, warnings) = parse_point_set(&text, dedupe)?;
    Ok((set, input_label(path, &hex), warnings))
}

fn load_cyclic_set(path: &Path, dedupe: bool) -> Result<(CyclicSet, String, Vec<String>), CmdError> {
    let (bytes, hex) = digest_file(path)?;
    let text = String::from_utf8_lossy(&bytes);
    let (set, warnings) = parse_cyclic_set(&text, dedupe)?;
    Ok((set, input_label(path, &hex), warnings))
}

fn parse_direction(spec: &str, dim: usize) -> Result<Direction, CmdError> {
    let coords: Result<Vec<i64>, _> = spec.split(',').map(|t| t.trim().parse::<i64>()).collect();
    let coords =
        coords.map_err(|_| CmdError::from(Error::Parse(format!("bad direction '{spec}'"))))?;
    if coords.len() != dim {
        return Err(Error::Contract(format!(
            "direction '{spec}' has {} entries, expected {dim}",
            coords.len()
        ))
        .into());
    }
    Ok(Direction::from_i64(&coords)?)
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

fn cmd_gen(args: GenArgs) -> CmdResult {
    let (report, out_args) = match args.family {
        GenFamily::Chr { d, n, out } => {
            let set = generate::chr_family(d, n)?;
            let text = write_point_set(&set);
            let report = gen_report("chr", &out.out, &text)?
                .metric_usize("d", d)
                .metric_usize("N", n)
                .metric_usize("points", set.len());
            (report, out)
        }
        GenFamily::Grid { d, side, out } => {
            let set = generate::grid(d, side)?;
            let text = write_point_set(&set);
            let report = gen_report("grid", &out.out, &text)?
                .metric_usize("d", d)
                .metric_usize("side", side)
                .metric_usize("points", set.len());
            (report, out)
        }
        GenFamily::Simplex { d, out } => {
            let set = generate::simplex(d)?;
            let text = write_point_set(&set);
            let report = gen_report("simplex", &out.out, &text)?
                .metric_usize("d", d)
                .metric_usize("points", set.len());
            (report, out)
        }
        GenFamily::RandomLattice {
            d,
            n,
            box_side,
            seed,
            out,
        } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let set = generate::random_lattice(d, n, box_side, &mut rng)?;
            let text = write_point_set(&set);
            let report = gen_report("random-lattice", &out.out, &text)?
                .seed(seed)
                .metric_usize("d", d)
                .metric_usize("n", n)
                .metric_usize("box", box_side as usize)
                .metric_usize("points", set.len());
            (report, out)
        }
        GenFamily::RandomCyclic { p, m, n, seed, out } => {
            let space = cyclic::CyclicProductSpace::new(p, m)?;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let set = generate::random_cyclic(&space, n, &mut rng)?;
            let text = write_cyclic_set(&set);
            let report = gen_report("random-cyclic", &out.out, &text)?
                .seed(seed)
                .metric_usize("p", p as usize)
                .metric_usize("m", m as usize)
                .metric_usize("elements", set.len());
            (report, out)
        }
    };
    Ok(ExecOutcome {
        stdout: render(&report.verdict(Verdict::Pass), out_args.fmt),
        stderr: String::new(),
        code: EXIT_PASS,
    })
}

fn gen_report(family: &str, out: &Path, text: &str) -> Result<Report, CmdError> {
    fs::write(out, text).map_err(|e| {
        CmdError::from(Error::Parse(format!("cannot write {}: {e}", out.display())))
    })?;
    Ok(Report::new("gen")
        .input("family", family)
        .metric_text("output", out.display().to_string())
        .metric_text("output_digest", hex_digest(text.as_bytes())))
}

// ---------------------------------------------------------------------------
// select
// ---------------------------------------------------------------------------

fn cmd_select(args: SelectArgs) -> CmdResult {
    let (a, label_a, warnings) = load_point_set(&args.input, args.dedupe)?;
    let mut report = Report::new("select")
        .input("a", label_a)
        .seed(args.seed)
        .metric_text("mode", format!("{:?}", args.mode).to_lowercase())
        .metric_usize("a_size", a.len())
        .metric_usize("dim", a.dim());
    for w in &warnings {
        report = report.metric_text("warning", w);
    }

    let witness = match args.mode {
        SelectMode::Triple1d => {
            let b = match &args.b {
                Some(path) => {
                    let (b, label_b, _) = load_point_set(path, args.dedupe)?;
                    report = report.input("b", label_b);
                    b
                }
                None => a.clone(),
            };
            select_triple_1d(&a, &b)?
        }
        SelectMode::LineCovered => {
            let budget = SelectionBudget {
                seed: args.seed,
                ..SelectionBudget::default()
            };
            let cover = match &args.dir {
                Some(spec) => line_cover(&a, &parse_direction(spec, a.dim())?)?,
                None => best_line_cover(
                    &a,
                    args.dir_budget
                        .unwrap_or(if a.len() <= 512 { usize::MAX } else { 4096 }),
                    budget.seed,
                )?,
            };
            report = report
                .metric_text("cover_dir", cover.dir().to_string())
                .metric_usize("cover_lines", cover.r());
            select_line_covered(&a, &cover)?
        }
        SelectMode::General => {
            let budget = SelectionBudget {
                sample_size: args.sample_size,
                rounds: args.rounds,
                max_greedy: args.max_greedy,
                direction_budget: args.dir_budget,
                seed: args.seed,
            };
            match select_general(&a, &budget) {
                Ok(w) => w,
                Err(Error::CascadeExhausted { best }) => {
                    // Report the best witness found, then fail with the
                    // dedicated exit code.
                    let report = report
                        .metric_usize("achieved", best.achieved)
                        .metric_i64("target", best.target)
                        .metric_text("strategy", best.strategy.to_string())
                        .witness(*best.clone())
                        .verdict(Verdict::Fail);
                    return Err(CmdError {
                        error: Error::CascadeExhausted { best },
                        partial: render(&report, args.fmt),
                    });
                }
                Err(e) => return Err(e.into()),
            }
        }
    };

    let report = report
        .metric_usize("achieved", witness.achieved)
        .metric_i64("target", witness.target)
        .metric_usize("witness_size", witness.selected.len())
        .metric_text("strategy", witness.strategy.to_string())
        .witness(witness)
        .verdict(Verdict::Pass);
    Ok(ExecOutcome {
        stdout: render(&report, args.fmt),
        stderr: String::new(),
        code: EXIT_PASS,
    })
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    if let Some(manifest) = &args.manifest {
        return cmd_verify_batch(&args, manifest.clone());
    }
    let report = verify_one(&args, args.input.as_deref())?;
    Ok(ExecOutcome {
        stdout: render(&report, args.fmt),
        stderr: String::new(),
        code: EXIT_PASS,
    })
}

fn verify_one(args: &VerifyArgs, input: Option<&Path>) -> Result<Report, CmdError> {
    let need_input = |path: Option<&Path>| -> Result<PathBuf, CmdError> {
        path.map(Path::to_path_buf).ok_or_else(|| {
            CmdError::from(Error::Contract(
                "this check needs --input (or a manifest)".into(),
            ))
        })
    };
    let need_b = || -> Result<PathBuf, CmdError> {
        args.b.clone().ok_or_else(|| {
            CmdError::from(Error::Contract("this check needs a second set via --b".into()))
        })
    };
    match args.check {
        CheckKind::Freiman => {
            let (a, label, _) = load_point_set(&need_input(input)?, args.dedupe)?;
            Ok(check_freiman(&a)?.input("a", label))
        }
        CheckKind::Ruzsa => {
            let (a, la, _) = load_point_set(&need_input(input)?, args.dedupe)?;
            let (b, lb, _) = load_point_set(&need_b()?, args.dedupe)?;
            Ok(check_ruzsa_asymmetric(&a, &b)?.input("a", la).input("b", lb))
        }
        CheckKind::M2 => {
            let (a, la, _) = load_point_set(&need_input(input)?, args.dedupe)?;
            let (b, lb, _) = load_point_set(&need_b()?, args.dedupe)?;
            let dir = match &args.dir {
                Some(spec) => parse_direction(spec, a.dim())?,
                None => best_line_cover(&a, usize::MAX, 0)?.dir().clone(),
            };
            let cover_a = line_cover(&a, &dir)?;
            let cover_b = line_cover(&b, &dir)?;
            Ok(check_m2_inequality(&a, &b, &cover_a, &cover_b)?
                .input("a", la)
                .input("b", lb))
        }
        CheckKind::Pr => {
            let (a, la, _) = load_point_set(&need_input(input)?, args.dedupe)?;
            let (b, lb, _) = load_point_set(&need_b()?, args.dedupe)?;
            Ok(check_plunnecke_ruzsa(&a, &b, args.k)?
                .input("a", la)
                .input("b", lb))
        }
        CheckKind::CauchyDavenport => {
            let (a, la, _) = load_cyclic_set(&need_input(input)?, args.dedupe)?;
            let (b, lb, _) = load_cyclic_set(&need_b()?, args.dedupe)?;
            Ok(cauchy_davenport_check(&a, &b)?.input("a", la).input("b", lb))
        }
        CheckKind::Xs => {
            if !args.exhaustive {
                return Err(Error::Contract(
                    "the xs check runs the exhaustive sweep; pass --exhaustive".into(),
                )
                .into());
            }
            let p = args.p.ok_or_else(|| {
                CmdError::from(Error::Contract("xs sweep needs --p".into()))
            })?;
            let m = args.m.ok_or_else(|| {
                CmdError::from(Error::Contract("xs sweep needs --m".into()))
            })?;
            let xs = exhaustive_xs_sweep(p, m, args.maxsize)?;
            let sel = exhaustive_triple_select_sweep(p, m, args.maxsize.max(2))?;
            Ok(Report::new("xs")
                .input("family", format!("p={p} m={m} maxsize={}", args.maxsize))
                .metric_usize("projection_instances", xs.instances as usize)
                .metric_usize("projection_min_slack", xs.min_slack as usize)
                .metric_usize("selection_instances", sel.instances as usize)
                .metric_usize("selection_undiminished", sel.undiminished as usize)
                .metric_usize("selection_needed_slack", sel.needed_slack as usize)
                .metric_usize("selection_spot_checks", sel.spot_checks as usize)
                .verdict(Verdict::Pass))
        }
        CheckKind::PopularNesting => {
            let (a, la, _) = load_cyclic_set(&need_input(input)?, args.dedupe)?;
            let (b, lb, _) = load_cyclic_set(&need_b()?, args.dedupe)?;
            let tmax = a.len().min(b.len()) as u64;
            let sumset = a.sumset(&b)?;
            let mut prev = popular_product(&a, &b, 1)?;
            if prev != sumset {
                return Err(Error::Invariant(format!(
                    "popular set at threshold 1 differs from the sumset for A = {:?}, B = {:?}",
                    a.elems(),
                    b.elems()
                ))
                .into());
            }
            for t in 2..=tmax {
                let cur = popular_product(&a, &b, t)?;
                if !cur.elems().iter().all(|e| prev.contains(*e)) {
                    return Err(Error::Invariant(format!(
                        "popular sets failed to nest between thresholds {} and {t}",
                        t - 1
                    ))
                    .into());
                }
                prev = cur;
            }
            Ok(Report::new("popular-nesting")
                .input("a", la)
                .input("b", lb)
                .metric_usize("thresholds", tmax as usize)
                .metric_usize("sumset_size", sumset.len())
                .verdict(Verdict::Pass))
        }
    }
}

fn cmd_verify_batch(args: &VerifyArgs, manifest: PathBuf) -> CmdResult {
    let (bytes, manifest_hex) = digest_file(&manifest)?;
    let text = String::from_utf8_lossy(&bytes);
    let paths: Vec<PathBuf> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(PathBuf::from)
        .collect();
    if paths.is_empty() {
        return Err(Error::Parse("manifest lists no inputs".into()).into());
    }
    // Runs are independent; aggregation sorts by input digest so the
    // output does not depend on scheduling.
    let results: Vec<Result<(String, Report), (String, Error)>> = paths
        .par_iter()
        .map(|path| {
            let digest = digest_file(path).map(|(_, h)| h).unwrap_or_default();
            match verify_one(args, Some(path)) {
                Ok(report) => Ok((digest, report)),
                Err(e) => Err((format!("{}", path.display()), e.error)),
            }
        })
        .collect();
    let mut ok: Vec<(String, Report)> = Vec::new();
    for r in results {
        match r {
            Ok(pair) => ok.push(pair),
            Err((path, error)) => {
                return Err(CmdError {
                    error: Error::Contract(format!("batch input {path} failed: {error}")),
                    partial: String::new(),
                });
            }
        }
    }
    ok.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = String::new();
    for (_, report) in &ok {
        out.push_str(&render(report, args.fmt));
        out.push('\n');
    }
    let summary = Report::new("verify-batch")
        .input("manifest", input_label(&manifest, &manifest_hex))
        .metric_usize("inputs", ok.len())
        .metric_usize("passes", ok.iter().filter(|(_, r)| r.passed()).count())
        .verdict(Verdict::Pass);
    out.push_str(&render(&summary, args.fmt));
    Ok(ExecOutcome {
        stdout: out,
        stderr: String::new(),
        code: EXIT_PASS,
    })
}

// ---------------------------------------------------------------------------
// sim
// ---------------------------------------------------------------------------

fn cmd_sim(args: SimArgs) -> CmdResult {
    let (a, la, _) = load_cyclic_set(&args.a, args.dedupe)?;
    let (b, lb, _) = load_cyclic_set(&args.b, args.dedupe)?;
    let report = sample_cover_experiment(&a, &b, args.t_count, args.c, args.trials, args.seed)?
        .input("a", la)
        .input("b", lb);
    let code = match report.verdict {
        Verdict::Fail => EXIT_INVARIANT,
        _ => EXIT_PASS,
    };
    Ok(ExecOutcome {
        stdout: render(&report, args.fmt),
        stderr: String::new(),
        code,
    })
}

// ---------------------------------------------------------------------------
// shared helpers for tests and the acceptance suite
// ---------------------------------------------------------------------------

/// Runs a command line (without the binary name) and returns its outcome.
pub fn run_args<I, S>(args: I) -> ExecOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let mut full: Vec<std::ffi::OsString> = vec!["fewsum".into()];
    full.extend(args.into_iter().map(|a| a.into()));
    match Cli::try_parse_from(full) {
        Ok(cli) => execute(cli),
        Err(e) => ExecOutcome {
            stdout: String::new(),
            stderr: e.to_string(),
            code: EXIT_CONTRACT,
        },
    }
}

/// Re-exports used by the acceptance suite.
pub mod prelude {
    pub use fewsum_core::cyclic::{
        exhaustive_triple_select_sweep, exhaustive_xs_sweep, interval_triple_select,
        sample_cover_experiment, CyclicProductSpace, CyclicSet, IntervalWindow,
    };
    pub use fewsum_core::generate::{
        chr_family, cyclic_interval, grid, random_cyclic, random_lattice, simplex,
    };
    pub use fewsum_core::select::{
        minimal_witness_oracle, select_general, select_line_covered, select_triple_1d,
        SelectionBudget,
    };
    pub use fewsum_core::structure::{
        best_line_cover, check_freiman, check_m2_inequality, check_plunnecke_ruzsa,
        check_ruzsa_asymmetric, line_cover,
    };
    pub use fewsum_core::{Direction, LatticePoint, PointSet, Report, Verdict};
}
