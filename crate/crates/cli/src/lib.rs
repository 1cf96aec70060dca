//! The `pktop` command line.

pub mod manifest;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use holdem_topology::cards::{parse_pair_list, Card, HolePair};
use holdem_topology::complex::{order_complex, SimplicialComplex, Tournament};
use holdem_topology::equity::{
    closest_call, matchup_counts, relation_at, win_probability, CountsMatrix, LiveMatchups, MatchupSource,
    MatrixJob, Threshold, TieConvention,
};
use holdem_topology::error::FormatError;
use holdem_topology::evaluator::rank;
use holdem_topology::explore::{search, SearchConfig, Target};
use holdem_topology::homology::{filtration_from_source, homology, persistence, HomologyReport};
use holdem_topology::penney::{correlation, first_occurrence_probability, penney_tournament, BinaryWord};
use holdem_topology::probability::{format_exact, to_f64, Probability};
use holdem_topology::{reference, verify};

use manifest::{check_against_manifest, FileDigest, RunManifest};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn data(e: impl ToString) -> CliError {
    CliError::Data(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "pktop", version, about = "Hold'em matchup tournaments and the topology of their order complexes")]
pub struct Cli {
    /// Output format for read-out subcommands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// How ties count toward a winning probability: split-tie or strict-win.
    #[arg(long, global = true, default_value = "split-tie")]
    pub tie_convention: TieConvention,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct HandsSource {
    /// Hole pairs ("Ac2c,3c5c,2d2h") or a named set: triangle, sphere,
    /// aces, middle, bottom.
    #[arg(long)]
    pub hands: Option<String>,
    /// Matrix file to read counts from; without it matchups are enumerated.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Winning-probability threshold in [0.5, 1]; 0.5 means "more than half".
    #[arg(long, default_value = "0.5")]
    pub p: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank a hand of 5 to 7 cards.
    Eval { cards: Vec<String> },
    /// Exact win/tie/loss counts of one hole pair against another.
    Matchup { a: String, b: String },
    /// Compute the full 1326 x 1326 matrix of matchup counts.
    Matrix {
        #[arg(long)]
        out: PathBuf,
        /// Continue from the checkpoint left by an interrupted run.
        #[arg(long)]
        resume: bool,
        /// Enumerate every matchup instead of one per suit class.
        #[arg(long)]
        no_symmetry: bool,
        /// Also export the complete entries as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        quiet: bool,
    },
    /// The matchup won with the smallest probability above 1/2.
    Closest {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// The "beats" relation on a set of hands, as an edge list.
    Relation {
        #[command(flatten)]
        src: HandsSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximal faces of an order complex.
    Complex {
        /// Edge-list file (`u v [prob]` per line).
        #[arg(long)]
        relation: Option<PathBuf>,
        #[command(flatten)]
        src: HandsSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integer homology, one line per degree.
    Homology {
        /// Complex file (one maximal face per line).
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long)]
        relation: Option<PathBuf>,
        #[command(flatten)]
        src: HandsSource,
        /// Reduced homology (H0 counts components minus one).
        #[arg(long)]
        reduced: bool,
    },
    /// Persistence diagram of the threshold filtration of a hand set.
    Persist {
        #[arg(long)]
        hands: String,
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Penney's coin game on words of length n.
    Penney {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        homology: bool,
        #[arg(long)]
        relation: bool,
        /// Probability that the first word shows up before the second.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        odds: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random search for hand sets with sphere-like homology.
    Search {
        #[arg(long)]
        matrix: PathBuf,
        /// Probability of keeping each card.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        first_trial: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        min_degree: usize,
        /// Report any nontrivial homology in degree >= min-degree, not only spheres.
        #[arg(long)]
        any_homology: bool,
        /// Extra hand sets to test alongside the random trials.
        #[arg(long)]
        force: Vec<String>,
    },
    /// Check the published results and print PASS/FAIL per item.
    VerifyPaper {
        /// Skip the full-matrix job.
        #[arg(long)]
        fast: bool,
        /// Use an existing matrix for the full-matrix check.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Matchup { .. } => "matchup",
            Command::Matrix { .. } => "matrix",
            Command::Closest { .. } => "closest",
            Command::Relation { .. } => "relation",
            Command::Complex { .. } => "complex",
            Command::Homology { .. } => "homology",
            Command::Persist { .. } => "persist",
            Command::Penney { .. } => "penney",
            Command::Search { .. } => "search",
            Command::VerifyPaper { .. } => "verify-paper",
        }
    }
}

struct Ctx {
    format: Format,
    tc: TieConvention,
    jobs: usize,
    args: Vec<String>,
    subcommand: &'static str,
    started: Instant,
    inputs: Vec<PathBuf>,
}

impl Ctx {
    fn manifest(&self, outputs: &[&Path]) -> Result<RunManifest, CliError> {
        Ok(RunManifest {
            tool: "pktop".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            subcommand: self.subcommand.into(),
            args: self.args.clone(),
            tie_convention: self.tc.name().into(),
            jobs: rayon_threads(self.jobs),
            inputs: self.inputs.iter().map(|p| FileDigest::of(p)).collect::<Result<_, _>>()?,
            outputs: outputs.iter().map(|p| FileDigest::of(p)).collect::<Result<_, _>>()?,
            wall_clock_seconds: self.started.elapsed().as_secs_f64(),
        })
    }

    /// Writes `text` to `out` with its manifest, or returns it for stdout.
    fn emit_file(&self, out: Option<&Path>, text: String) -> Result<String, CliError> {
        match out {
            Some(path) => {
                std::fs::write(path, text)?;
                self.manifest(&[path])?.write_beside(path)?;
                Ok(format!("wrote {}\n", path.display()))
            }
            None => Ok(text),
        }
    }

    fn load_matrix(&mut self, path: &Path) -> Result<CountsMatrix, CliError> {
        if check_against_manifest(path)? == Some(false) {
            return Err(data(format!(
                "{} does not match the digest in its manifest (partial or modified file)",
                path.display()
            )));
        }
        let m = CountsMatrix::load(path)?;
        self.inputs.push(path.to_path_buf());
        Ok(m)
    }

    fn source(&mut self, matrix: Option<&Path>) -> Result<Box<dyn MatchupSource>, CliError> {
        Ok(match matrix {
            Some(p) => Box::new(self.load_matrix(p)?),
            None => Box::new(LiveMatchups::new()),
        })
    }

    fn read_input(&mut self, path: &Path) -> Result<String, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| data(format!("{}: {e}", path.display())))?;
        self.inputs.push(path.to_path_buf());
        Ok(text)
    }
}

fn rayon_threads(jobs: usize) -> usize {
    if jobs == 0 {
        rayon::current_num_threads()
    } else {
        jobs
    }
}

pub fn parse_hands(text: &str) -> Result<Vec<HolePair>, CliError> {
    let hands = match text.trim() {
        "triangle" => reference::triangle(),
        "sphere" | "Y" => reference::eight_hand_sphere(),
        "aces" => reference::aces_row(),
        "middle" => reference::middle_row(),
        "bottom" => reference::bottom_row(),
        other => parse_pair_list(other).map_err(usage)?,
    };
    if hands.is_empty() {
        return Err(usage("no hands given"));
    }
    Ok(hands)
}

fn parse_cards(tokens: &[String]) -> Result<Vec<Card>, CliError> {
    let joined: String = tokens.concat().chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
    if !joined.len().is_multiple_of(2) {
        return Err(usage(format!("cannot split {joined:?} into two-character cards")));
    }
    (0..joined.len())
        .step_by(2)
        .map(|i| joined[i..i + 2].parse::<Card>().map_err(usage))
        .collect()
}

fn prob_text(p: &Probability) -> String {
    format!("{} ({:.6})", format_exact(p), to_f64(p))
}

fn prob_json(p: &Probability) -> serde_json::Value {
    json!({ "exact": format_exact(p), "decimal": to_f64(p) })
}

fn homology_json(h: &HomologyReport) -> serde_json::Value {
    json!({
        "reduced": h.reduced,
        "degrees": h.groups.iter().enumerate().map(|(k, g)| json!({
            "degree": k,
            "betti": g.betti,
            "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "text": g.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn to_json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn tournament_for(ctx: &mut Ctx, src: &HandsSource) -> Result<Tournament, CliError> {
    let hands = parse_hands(src.hands.as_deref().ok_or_else(|| usage("--hands is required"))?)?;
    let threshold = Threshold::parse(&src.p).map_err(usage)?;
    let source = ctx.source(src.matrix.as_deref())?;
    relation_at(source.as_ref(), &hands, ctx.tc, threshold).map_err(|e| match e {
        holdem_topology::error::EquityError::MissingEntry(..) => data(e),
        _ => usage(e),
    })
}

fn run_command(ctx: &mut Ctx, command: Command) -> Result<String, CliError> {
    let mut out = String::new();
    match command {
        Command::Eval { cards } => {
            let cards = parse_cards(&cards)?;
            let v = rank(&cards).map_err(usage)?;
            if ctx.format == Format::Json {
                return Ok(to_json(&json!({
                    "cards": cards.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "category": v.category().name(),
                    "tiebreak": v.tiebreak(),
                    "packed": v.packed(),
                })));
            }
            writeln!(out, "{v}").ok();
        }
        Command::Matchup { a, b } => {
            let a: HolePair = a.parse().map_err(usage)?;
            let b: HolePair = b.parse().map_err(usage)?;
            let c = matchup_counts(a, b).map_err(usage)?;
            let strict = win_probability(&c, TieConvention::StrictWin);
            let split = win_probability(&c, TieConvention::SplitTie);
            if ctx.format == Format::Json {
                return Ok(to_json(&json!({
                    "a": a, "b": b,
                    "wins": c.wins, "ties": c.ties, "losses": c.losses, "total": c.total(),
                    "strict_win": prob_json(&strict),
                    "split_tie": prob_json(&split),
                })));
            }
            writeln!(out, "{a} vs {b}").ok();
            writeln!(out, "wins {} ties {} losses {} total {}", c.wins, c.ties, c.losses, c.total()).ok();
            writeln!(out, "strict-win {}", prob_text(&strict)).ok();
            writeln!(out, "split-tie {}", prob_text(&split)).ok();
        }
        Command::Matrix {
            out: path,
            resume,
            no_symmetry,
            csv,
            quiet,
        } => {
            let mut ckpt = path.as_os_str().to_owned();
            ckpt.push(".ckpt");
            let ckpt = PathBuf::from(ckpt);
            let last = std::sync::atomic::AtomicUsize::new(0);
            let progress = |done: usize, total: usize| {
                let pct = done * 100 / total.max(1);
                if !quiet && last.fetch_max(pct, std::sync::atomic::Ordering::Relaxed) < pct {
                    eprintln!("{done}/{total} matchup classes ({pct}%)");
                }
            };
            let job = MatrixJob {
                use_symmetry: !no_symmetry,
                jobs: ctx.jobs,
                checkpoint: Some(ckpt.clone()),
                resume,
                progress: Some(&progress),
                ..MatrixJob::default()
            };
            let m = job.run().map_err(data)?;
            m.save(&path)?;
            let mut outputs = vec![path.as_path()];
            if let Some(csv) = &csv {
                m.write_csv(std::fs::File::create(csv)?)?;
                outputs.push(csv.as_path());
            }
            let manifest = ctx.manifest(&outputs)?;
            for o in &outputs {
                manifest.write_beside(o)?;
            }
            std::fs::remove_file(&ckpt).ok();
            writeln!(out, "wrote {} ({} complete entries)", path.display(), m.complete_entries()).ok();
        }
        Command::Closest { matrix } => {
            let m = ctx.load_matrix(&matrix)?;
            let c = closest_call(&m, ctx.tc).ok_or_else(|| data("no matchup is won with probability above 1/2"))?;
            if ctx.format == Format::Json {
                return Ok(to_json(&json!({
                    "tie_convention": ctx.tc.name(),
                    "probability": prob_json(&c.probability),
                    "matchups": c.matchups.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
                })));
            }
            writeln!(out, "closest call ({}): {}", ctx.tc.name(), prob_text(&c.probability)).ok();
            for (a, b) in &c.matchups {
                writeln!(out, "{a} {b}").ok();
            }
        }
        Command::Relation { src, out: path } => {
            let t = tournament_for(ctx, &src)?;
            return ctx.emit_file(path.as_deref(), t.to_edge_list());
        }
        Command::Complex { relation, src, out: path } => {
            let t = match &relation {
                Some(p) => Tournament::parse_edge_list(&ctx.read_input(p)?)?,
                None => tournament_for(ctx, &src)?,
            };
            return ctx.emit_file(path.as_deref(), order_complex(&t).to_text());
        }
        Command::Homology {
            complex,
            relation,
            src,
            reduced,
        } => {
            let k = match (&complex, &relation) {
                (Some(p), None) => SimplicialComplex::parse_text(&ctx.read_input(p)?)?,
                (None, Some(p)) => order_complex(&Tournament::parse_edge_list(&ctx.read_input(p)?)?),
                (None, None) => order_complex(&tournament_for(ctx, &src)?),
                (Some(_), Some(_)) => return Err(usage("give either --complex or --relation")),
            };
            let h = homology(&k, reduced);
            if ctx.format == Format::Json {
                return Ok(to_json(&homology_json(&h)));
            }
            out.push_str(&h.to_string());
        }
        Command::Persist { hands, matrix } => {
            let hands = parse_hands(&hands)?;
            let source = ctx.source(matrix.as_deref())?;
            let f = filtration_from_source(source.as_ref(), &hands, ctx.tc).map_err(usage)?;
            let dgm = persistence(&f);
            if ctx.format == Format::Json {
                return Ok(to_json(&json!({
                    "thresholds": f.thresholds().iter().map(format_exact).collect::<Vec<_>>(),
                    "points": dgm.points.iter().map(|p| json!({
                        "dim": p.dim,
                        "birth": format_exact(&p.birth),
                        "death": p.death.as_ref().map(format_exact),
                    })).collect::<Vec<_>>(),
                })));
            }
            out.push_str(&dgm.to_string());
        }
        Command::Penney {
            n,
            homology: want_homology,
            relation,
            odds,
            out: path,
        } => {
            if let Some(words) = odds {
                let a: BinaryWord = words[0].parse().map_err(usage)?;
                let b: BinaryWord = words[1].parse().map_err(usage)?;
                let p = first_occurrence_probability(&a, &b).map_err(usage)?;
                let corr = |x: &BinaryWord, y: &BinaryWord| correlation(x, y).map_err(usage);
                let (aa, ab, ba, bb) = (corr(&a, &a)?, corr(&a, &b)?, corr(&b, &a)?, corr(&b, &b)?);
                if ctx.format == Format::Json {
                    return Ok(to_json(&json!({
                        "a": a.to_string(), "b": b.to_string(),
                        "probability": prob_json(&p),
                        "correlations": { "aa": aa, "ab": ab, "ba": ba, "bb": bb },
                    })));
                }
                writeln!(out, "P({a} before {b}) = {}", prob_text(&p)).ok();
                writeln!(out, "correlations aa={aa} ab={ab} ba={ba} bb={bb}").ok();
                return Ok(out);
            }
            let n = n.ok_or_else(|| usage("--n is required unless --odds is given"))?;
            let t = penney_tournament(n).map_err(usage)?;
            if relation {
                return ctx.emit_file(path.as_deref(), t.to_edge_list());
            }
            let _ = want_homology;
            let k = order_complex(&t);
            let h = homology(&k, true);
            if ctx.format == Format::Json {
                return Ok(to_json(&json!({
                    "n": n,
                    "f_vector": k.f_vector(),
                    "homology": homology_json(&h),
                })));
            }
            out.push_str(&h.to_string());
        }
        Command::Search {
            matrix,
            p,
            trials,
            first_trial,
            seed,
            min_degree,
            any_homology,
            force,
        } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(usage("--p must lie in [0, 1]"));
            }
            let m = ctx.load_matrix(&matrix)?;
            let forced = force.iter().map(|f| parse_hands(f)).collect::<Result<Vec<_>, _>>()?;
            let cfg = SearchConfig {
                keep_probability: p,
                trials,
                first_trial,
                seed,
                target: if any_homology {
                    Target::Nontrivial { min_degree }
                } else {
                    Target::SphereLike { min_degree }
                },
            };
            let hits = search(&cfg, &m, ctx.tc, &forced).map_err(data)?;
            if ctx.format == Format::Json {
                return Ok(to_json(&json!(hits
                    .iter()
                    .map(|h| json!({
                        "trial": h.trial.to_string(),
                        "hands": h.hands,
                        "homology": homology_json(&h.report),
                    }))
                    .collect::<Vec<_>>())));
            }
            for h in hits {
                writeln!(out, "{h}").ok();
            }
        }
        Command::VerifyPaper { fast, matrix } => {
            let json = ctx.format == Format::Json;
            let live = LiveMatchups::new();
            let mut checks = verify::fast_checks(&live, ctx.tc, |c| {
                if !json {
                    println!("{c}");
                }
            });
            let full = match (&matrix, fast) {
                (Some(p), _) => Some(ctx.load_matrix(p)?),
                (None, false) => {
                    let job = MatrixJob {
                        jobs: ctx.jobs,
                        checkpoint: Some(PathBuf::from("pktop-verify.ckpt")),
                        resume: true,
                        ..MatrixJob::default()
                    };
                    Some(job.run().map_err(data)?)
                }
                (None, true) => None,
            };
            if let Some(m) = full {
                let c = verify::full_matrix_check(&m, ctx.tc, 1000, 11);
                if !json {
                    println!("{c}");
                }
                checks.push(c);
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if json {
                print!("{}", to_json(&json!(checks)));
            }
            if failed > 0 {
                return Err(CliError::Verification(format!("{failed} check(s) failed")));
            }
        }
    }
    Ok(out)
}

/// Parses `argv`, runs the subcommand, prints its output and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if cli.jobs > 0 {
        // Fails only if a pool already exists, e.g. when called twice in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    let mut ctx = Ctx {
        format: cli.format,
        tc: cli.tie_convention,
        jobs: cli.jobs,
        args: argv.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
        subcommand: cli.command.name(),
        started: Instant::now(),
        inputs: Vec::new(),
    };
    match run_command(&mut ctx, cli.command) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            eprintln!("pktop: {e}");
            e.exit_code()
        }
    }
}
