//! `corex` command-line tool: extraction, tree similarity, clustering and
//! corpus evaluation.
//!
//! Results go to stdout; diagnostics go to stderr and are controlled by
//! `COREX_LOG` (error, info or debug). Exit codes: 0 success, 1 usage or
//! I/O error, 2 content-free page.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corex::cluster::{cluster_pages, normalized_distance, Algo, DistanceMatrix};
use corex::coreex::CoreexParams;
use corex::econ::EconParams;
use corex::eval::{evaluate_corpus, generate_corpus_with, CorpusOptions, DEFAULT_GOLD_SUFFIX};
use corex::treedist::{
    project_sim, rtdm, simple_tree_matching, stm_normalized, SimTree, UnitCosts,
};
use corex::{fixed6, parse_html_bytes, Extractor, Strategy};
use serde::Serialize;

const STACK_SIZE: usize = 256 * 1024 * 1024;

#[derive(Debug, Parser)]
#[command(
    name = "corex",
    version,
    about = "Main-content extraction and page structure tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract the main content of one HTML page.
    Extract(ExtractArgs),
    /// Compare the tag structure of two HTML pages.
    Sim(SimArgs),
    /// Group the HTML pages of a directory by structure.
    Cluster(ClusterArgs),
    /// Score a strategy on a gold corpus, or generate a synthetic one.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct ExtractArgs {
    #[arg(long)]
    strategy: Strategy,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// CoreEx weight of the link-density term.
    #[arg(long)]
    alpha: Option<f64>,
    /// CoreEx minimum word count for a candidate node.
    #[arg(long)]
    min_words: Option<u64>,
    /// ECON big-node tags, comma separated.
    #[arg(long)]
    big_tags: Option<String>,
}

#[derive(Debug, Args)]
struct SimArgs {
    #[arg(long)]
    algo: Algo,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Print the stm similarity or rtdm distance scaled to [0, 1].
    #[arg(long)]
    normalized: bool,
    /// rtdm pruning threshold (default: infinite).
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    #[arg(long)]
    dir: PathBuf,
    #[arg(long)]
    algo: Algo,
    #[arg(long)]
    threshold: f64,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    dir: PathBuf,
    #[arg(long, required_unless_present = "generate")]
    strategy: Option<Strategy>,
    #[arg(long, default_value = DEFAULT_GOLD_SUFFIX)]
    gold_suffix: String,
    /// Write a synthetic corpus into --dir instead of evaluating.
    #[arg(long, requires_all = ["seed", "n"], conflicts_with = "strategy")]
    generate: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    /// Number of page templates to cycle through when generating.
    #[arg(long, requires = "generate")]
    templates: Option<usize>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(corex::Error),
}

impl From<corex::Error> for Failure {
    fn from(e: corex::Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_content_free() => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_sim(path: &Path) -> CliResult<SimTree> {
    let bytes = read(path)?;
    Ok(project_sim(&parse_html_bytes(
        &bytes,
        &path.display().to_string(),
    )))
}

fn print_json<T: Serialize>(value: &T) -> CliResult {
    let json = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Usage(format!("cannot encode output: {e}")))?;
    println!("{json}");
    Ok(())
}

fn extractor(args: &ExtractArgs) -> CliResult<Extractor> {
    match args.strategy {
        Strategy::Coreex => {
            if args.big_tags.is_some() {
                return Err(Failure::Usage("--big-tags only applies to econ".into()));
            }
            let defaults = CoreexParams::default();
            let params = CoreexParams::new(
                args.alpha.unwrap_or(defaults.alpha),
                args.min_words.unwrap_or(defaults.min_words),
            )
            .map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(Extractor::Coreex(params))
        }
        Strategy::Econ => {
            if args.alpha.is_some() || args.min_words.is_some() {
                return Err(Failure::Usage(
                    "--alpha and --min-words only apply to coreex".into(),
                ));
            }
            let params = match &args.big_tags {
                Some(csv) => {
                    EconParams::from_csv(csv).map_err(|e| Failure::Usage(e.to_string()))?
                }
                None => EconParams::default(),
            };
            Ok(Extractor::Econ(params))
        }
    }
}

fn cmd_extract(args: ExtractArgs) -> CliResult {
    let extractor = extractor(&args)?;
    let bytes = read(&args.input)?;
    let name = args
        .input
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| args.input.display().to_string());
    let tree = parse_html_bytes(&bytes, &name);
    log::info!("{name}: parsed {} nodes", tree.node_count());
    let result = extractor.extract(&tree)?;
    log::debug!("{name}: selected node path {:?}", result.node_path);
    match args.format {
        Format::Json => print_json(&result),
        Format::Text => {
            println!("{}", result.text);
            Ok(())
        }
    }
}

fn cmd_sim(args: SimArgs) -> CliResult {
    if args.epsilon.is_some_and(|e| e.is_nan() || e < 0.0) {
        return Err(Failure::Usage("--epsilon must be non-negative".into()));
    }
    if args.epsilon.is_some() && args.algo == Algo::Stm {
        return Err(Failure::Usage("--epsilon only applies to rtdm".into()));
    }
    let a = load_sim(&args.a)?;
    let b = load_sim(&args.b)?;
    log::info!("comparing trees of {} and {} nodes", a.size(), b.size());
    let value = match (args.algo, args.normalized) {
        (Algo::Stm, false) => simple_tree_matching(&a, &b) as f64,
        (Algo::Stm, true) => stm_normalized(&a, &b),
        (Algo::Rtdm, normalized) => {
            let costs = args
                .epsilon
                .map_or_else(UnitCosts::default, UnitCosts::with_epsilon);
            match (normalized, args.epsilon) {
                (true, None) => normalized_distance(&a, &b, Algo::Rtdm),
                (true, Some(_)) => {
                    (rtdm(&a, &b, &costs) / (a.size() + b.size()) as f64).clamp(0.0, 1.0)
                }
                (false, _) => rtdm(&a, &b, &costs),
            }
        }
    };
    println!("{}", fixed6::format(value));
    Ok(())
}

#[derive(Serialize)]
struct ClusterReport {
    threshold: fixed6::Fixed6,
    clusters: Vec<Vec<String>>,
    diameters: Vec<fixed6::Fixed6>,
}

fn html_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let entries =
        fs::read_dir(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry
            .map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?
            .path();
        if path.is_file() && path.extension().is_some_and(|x| x == "html") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn cmd_cluster(args: ClusterArgs) -> CliResult {
    if !(0.0..=1.0).contains(&args.threshold) {
        return Err(Failure::Usage(format!(
            "--threshold must lie in [0, 1], got {}",
            args.threshold
        )));
    }
    let files = html_files(&args.dir)?;
    if files.is_empty() {
        return Err(Failure::Usage(format!(
            "no .html files in {}",
            args.dir.display()
        )));
    }
    let trees = files
        .iter()
        .map(|p| load_sim(p))
        .collect::<CliResult<Vec<_>>>()?;
    let matrix = DistanceMatrix::from_trees(&trees, args.algo);
    let clusters = cluster_pages(&matrix, args.threshold)?;
    log::info!(
        "{} pages in {} clusters",
        files.len(),
        clusters.groups.len()
    );
    print_json(&ClusterReport {
        threshold: fixed6::Fixed6(args.threshold),
        clusters: clusters
            .groups
            .iter()
            .map(|g| g.iter().map(|&i| files[i].display().to_string()).collect())
            .collect(),
        diameters: clusters
            .diameters(&matrix)
            .into_iter()
            .map(fixed6::Fixed6)
            .collect(),
    })
}

#[derive(Serialize)]
struct GeneratedPair {
    html_path: String,
    gold_path: String,
}

#[derive(Serialize)]
struct GenerateReport {
    seed: u64,
    n: usize,
    templates: usize,
    pairs: Vec<GeneratedPair>,
}

fn cmd_eval(args: EvalArgs) -> CliResult {
    if args.generate {
        let (seed, n) = (args.seed.unwrap_or_default(), args.n.unwrap_or_default());
        if n == 0 {
            return Err(Failure::Usage("--n must be at least 1".into()));
        }
        let mut opts = CorpusOptions::default();
        if let Some(t) = args.templates {
            opts.templates = t;
        }
        let pairs = generate_corpus_with(seed, n, &args.dir, &opts)
            .map_err(|e| Failure::Usage(e.to_string()))?;
        return print_json(&GenerateReport {
            seed,
            n,
            templates: opts.templates,
            pairs: pairs
                .into_iter()
                .map(|p| GeneratedPair {
                    html_path: p.html_path.display().to_string(),
                    gold_path: p.gold_path.display().to_string(),
                })
                .collect(),
        });
    }
    let strategy = args
        .strategy
        .ok_or_else(|| Failure::Usage("--strategy is required".into()))?;
    let report = evaluate_corpus(
        &args.dir,
        &Extractor::default_for(strategy),
        &args.gold_suffix,
    )
    .map_err(|e| Failure::Usage(e.to_string()))?;
    print_json(&report)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Extract(args) => cmd_extract(args),
        Command::Sim(args) => cmd_sim(args),
        Command::Cluster(args) => cmd_cluster(args),
        Command::Eval(args) => cmd_eval(args),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("COREX_LOG", "error"))
        .target(env_logger::Target::Stderr)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    // Tree algorithms recurse once per nesting level; give deep pages room.
    let worker = std::thread::Builder::new()
        .stack_size(STACK_SIZE)
        .spawn(move || run(cli));
    let outcome = match worker {
        Ok(handle) => handle.join().unwrap_or_else(|_| {
            Err(Failure::Usage(
                "internal error: worker thread panicked".into(),
            ))
        }),
        Err(e) => Err(Failure::Usage(format!("cannot start worker thread: {e}"))),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("corex: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
