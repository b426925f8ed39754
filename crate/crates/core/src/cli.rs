//! Command-line front end: `extract`, `stats`, `validate` and `inspect`.
//!
//! Every subcommand writes its normal output to the given stdout handle.
//! Failures produce a nonzero status and one tab-separated line
//! `error<TAB>Kind<TAB>message` on stderr.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use thiserror::Error;

use crate::cleaning::{TraceMode, TracePolicy};
use crate::pipeline::{
    self, discover_files, export_csv, load_exclusions, load_file, read_dataset_csv, resolve_role,
    validate_corpus, CorpusLayout, ExtractOptions, ExtractSummary, PipelineError, Schema,
};
use crate::propbank::RoleLabel;
use crate::stats::{self, compute_stats, DatasetStats, SentimentLexicon, StatsConfig, StatsError, Thresholds};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error("unknown file id {0:?}")]
    UnknownFile(String),
    #[error("{file_id} has {trees} trees; index {index} is out of range")]
    IndexOutOfRange {
        file_id: String,
        index: usize,
        trees: usize,
    },
    #[error("{0} violations")]
    Violations(usize),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Pipeline(e) => e.kind(),
            CliError::Stats(e) => e.kind(),
            CliError::Config(_) => "ConfigError",
            CliError::Usage(_) => "UsageError",
            CliError::UnknownFile(_) => "UnknownFile",
            CliError::IndexOutOfRange { .. } => "IndexOutOfRange",
            CliError::Violations(_) => "ValidationFailed",
            CliError::Io { .. } => "IoError",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "srl-extract", version, about = "Build ARG0/REL/ARG1 datasets from PropBank and OntoNotes")]
pub struct Cli {
    /// TOML file with flat keys named like the long flags; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract the dataset to CSV.
    Extract(ExtractArgs),
    /// Compute statistics over an exported CSV.
    Stats(StatsArgs),
    /// Check sentence/tree alignment and pointer ranges.
    Validate(CorpusArgs),
    /// Show one tree with its terminals, sentences and resolved propositions.
    Inspect(InspectArgs),
}

#[derive(Debug, Args, Default)]
pub struct CorpusArgs {
    /// Directory of `.prop` files (optionally in 00..24 subfolders).
    #[arg(long)]
    pub prop: Option<PathBuf>,
    /// Directory of `.onf` files.
    #[arg(long)]
    pub onf: Option<PathBuf>,
    /// Directory of `.parse` files.
    #[arg(long)]
    pub parse: Option<PathBuf>,
    /// File ids to skip, one per line.
    #[arg(long)]
    pub exclude: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Column set: ARG0/REL/ARG1 or holder/expression/target [default: srl]
    #[arg(long, value_parser = ["srl", "orl"])]
    pub schema: Option<String>,
    /// Drop `-NONE-` leaves from the tree, or match trace patterns only [default: tree]
    #[arg(long, value_parser = ["tree", "pattern"])]
    pub trace_mode: Option<String>,
    /// Fail on the first bad proposition or file.
    #[arg(long)]
    pub strict: bool,
    /// Output CSV path [default: dataset.csv].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads [default: 1].
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write skipped files and rows here instead of stderr.
    #[arg(long)]
    pub skip_log: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct StatsArgs {
    /// Dataset written by `extract`, either schema
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// `token<TAB>valence` lexicon for predicate sentiment.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Neutral band half-width [default: 0.05]
    #[arg(long)]
    pub t1: Option<f64>,
    /// Strong sentiment cut-off [default: 0.5]
    #[arg(long)]
    pub t2: Option<f64>,
    /// Report directory [default: .].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Number of predicates in the frequency table [default: 10].
    #[arg(long)]
    pub top_k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// File id, e.g. wsj_0001.
    #[arg(long)]
    pub file: String,
    /// Tree index within the file.
    #[arg(long)]
    pub tree: usize,
}

/// Keys accepted in the `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ConfigFile {
    pub prop: Option<PathBuf>,
    pub onf: Option<PathBuf>,
    pub parse: Option<PathBuf>,
    pub exclude: Option<PathBuf>,
    pub schema: Option<String>,
    pub trace_mode: Option<String>,
    pub strict: Option<bool>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub skip_log: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub t1: Option<f64>,
    pub t2: Option<f64>,
    pub top_k: Option<usize>,
}

impl ConfigFile {
    /// Loads a config file; relative paths are taken from its directory.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut cfg: ConfigFile = toml::from_str(&text).map_err(|e| CliError::Config(e.to_string()))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [
            &mut cfg.prop,
            &mut cfg.onf,
            &mut cfg.parse,
            &mut cfg.exclude,
            &mut cfg.out,
            &mut cfg.skip_log,
            &mut cfg.csv,
            &mut cfg.lexicon,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

/// Fully resolved settings for an extraction run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub layout: CorpusLayout,
    pub output_path: PathBuf,
    pub schema: Schema,
    pub trace_mode: TraceMode,
    pub strict: bool,
    pub parallelism: usize,
    pub skip_log: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(layout: CorpusLayout) -> Self {
        RunConfig {
            layout,
            output_path: PathBuf::from("dataset.csv"),
            schema: Schema::Srl,
            trace_mode: TraceMode::TreeGuided,
            strict: false,
            parallelism: 1,
            skip_log: None,
        }
    }
}

/// Settings for a statistics run.
#[derive(Debug, Clone)]
pub struct StatsRun {
    pub csv_path: PathBuf,
    pub lexicon_path: Option<PathBuf>,
    pub thresholds: Thresholds,
    pub top_k: usize,
    pub out_dir: PathBuf,
}

fn resolve_layout(args: &CorpusArgs, cfg: &ConfigFile) -> Result<CorpusLayout, CliError> {
    let pick = |flag: &Option<PathBuf>, key: &Option<PathBuf>, name: &str| {
        flag.clone()
            .or_else(|| key.clone())
            .ok_or_else(|| CliError::Usage(format!("missing --{name}")))
    };
    let mut layout = CorpusLayout::new(
        pick(&args.prop, &cfg.prop, "prop")?,
        pick(&args.onf, &cfg.onf, "onf")?,
        pick(&args.parse, &cfg.parse, "parse")?,
    );
    if let Some(path) = args.exclude.as_ref().or(cfg.exclude.as_ref()) {
        layout.exclusions = load_exclusions(path)?;
    }
    Ok(layout)
}

fn resolve_extract(args: &ExtractArgs, cfg: &ConfigFile) -> Result<RunConfig, CliError> {
    let mut run = RunConfig::new(resolve_layout(&args.corpus, cfg)?);
    if let Some(s) = args.schema.as_ref().or(cfg.schema.as_ref()) {
        run.schema = s.parse().map_err(CliError::Config)?;
    }
    if let Some(m) = args.trace_mode.as_ref().or(cfg.trace_mode.as_ref()) {
        run.trace_mode = m.parse().map_err(|e: crate::cleaning::CleaningError| CliError::Config(e.to_string()))?;
    }
    run.strict = args.strict || cfg.strict.unwrap_or(false);
    if let Some(out) = args.out.as_ref().or(cfg.out.as_ref()) {
        run.output_path = out.clone();
    }
    run.parallelism = args.jobs.or(cfg.jobs).unwrap_or(1);
    if run.parallelism == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    run.skip_log = args.skip_log.clone().or_else(|| cfg.skip_log.clone());
    Ok(run)
}

fn resolve_stats(args: &StatsArgs, cfg: &ConfigFile) -> Result<StatsRun, CliError> {
    let csv_path = args
        .csv
        .clone()
        .or_else(|| cfg.csv.clone())
        .ok_or_else(|| CliError::Usage("missing --csv".into()))?;
    let defaults = Thresholds::default();
    let thresholds = Thresholds::new(
        args.t1.or(cfg.t1).unwrap_or(defaults.t1),
        args.t2.or(cfg.t2).unwrap_or(defaults.t2),
    )?;
    let top_k = args.top_k.or(cfg.top_k).unwrap_or(10);
    if top_k == 0 {
        return Err(StatsError::BadTopK.into());
    }
    Ok(StatsRun {
        csv_path,
        lexicon_path: args.lexicon.clone().or_else(|| cfg.lexicon.clone()),
        thresholds,
        top_k,
        out_dir: args.out.clone().unwrap_or_else(|| PathBuf::from(".")),
    })
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// discover → parse → resolve → filter → export, then prints the counts.
pub fn cmd_extract(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<ExtractSummary, CliError> {
    let options = ExtractOptions {
        policy: TracePolicy::new(config.trace_mode),
        strict: config.strict,
        jobs: config.parallelism,
    };
    let extraction = pipeline::extract(&config.layout, &options)?;
    export_csv(&extraction.records, &config.output_path, config.schema)?;

    let skip_lines: String = extraction.skips.iter().map(|s| format!("{s}\n")).collect();
    match &config.skip_log {
        Some(path) => fs::write(path, &skip_lines).map_err(io_err(path))?,
        None => {
            let _ = err.write_all(skip_lines.as_bytes());
        }
    }

    let s = &extraction.summary;
    let stdout = io_err(Path::new("<stdout>"));
    (|| -> io::Result<()> {
        writeln!(out, "files discovered           {:>8}", s.files_discovered)?;
        writeln!(out, "files processed            {:>8}", s.files_processed)?;
        writeln!(out, "files skipped              {:>8}", s.files_skipped)?;
        writeln!(out, "propositions               {:>8}", s.propositions)?;
        writeln!(out, "  in skipped files         {:>8}", s.propositions_skipped)?;
        writeln!(out, "  with errors              {:>8}", s.error_rows)?;
        writeln!(out, "  filtered (no ARG0/ARG1)  {:>8}", s.rows_filtered)?;
        writeln!(out, "rows emitted               {:>8}", s.rows_emitted)?;
        writeln!(out, "wrote {} ({})", config.output_path.display(), config.schema)
    })()
    .map_err(stdout)?;
    Ok(extraction.summary)
}

/// Loads an exported CSV, writes `stats.json`/`stats.txt` and prints the
/// headline numbers.
pub fn cmd_stats(run: &StatsRun, out: &mut dyn Write) -> Result<DatasetStats, CliError> {
    let records = read_dataset_csv(&run.csv_path)?;
    let lexicon = match &run.lexicon_path {
        Some(p) => SentimentLexicon::load(p)?,
        None => SentimentLexicon::new(),
    };
    let config = StatsConfig {
        thresholds: run.thresholds,
        top_k: run.top_k,
        source: Some(run.csv_path.display().to_string()),
        lexicon: run.lexicon_path.as_ref().map(|p| p.display().to_string()),
    };
    let stats = compute_stats(&records, &lexicon, &config)?;
    let (json, txt) = stats::emit_report(&stats, &run.out_dir)?;

    let b = &stats.breakdown;
    let l = &stats.span_lengths;
    (|| -> io::Result<()> {
        writeln!(out, "records            {}", stats.records)?;
        writeln!(out, "Both ARG0 & ARG1   {:.1}", b.both_pct)?;
        writeln!(out, "Only ARG1          {:.1}", b.only_arg1_pct)?;
        writeln!(out, "Only ARG0          {:.1}", b.only_arg0_pct)?;
        writeln!(out, "mean ARG0 words    {:.1}", l.arg0.mean)?;
        writeln!(out, "mean ARG1 words    {:.1}", l.arg1.mean)?;
        writeln!(out, "top predicates")?;
        for p in &stats.top_predicates {
            writeln!(out, "  {:<16} {}", p.predicate, p.count)?;
        }
        writeln!(
            out,
            "neutral predicates {:.1}% of types, {:.1}% of occurrences (t1={}, t2={})",
            stats.sentiment.neutral_pct_by_type,
            stats.sentiment.neutral_pct_by_occurrence,
            run.thresholds.t1,
            run.thresholds.t2
        )?;
        writeln!(out, "wrote {} and {}", json.display(), txt.display())
    })()
    .map_err(io_err(Path::new("<stdout>")))?;
    Ok(stats)
}

/// Prints a violation table. Returns the number of violations.
pub fn cmd_validate(layout: &CorpusLayout, out: &mut dyn Write) -> Result<usize, CliError> {
    let (violations, files) = validate_corpus(layout)?;
    (|| -> io::Result<()> {
        writeln!(out, "file\ttree\tline\tpointer\tkind\tdetail")?;
        for v in &violations {
            writeln!(out, "{v}")?;
        }
        writeln!(out, "{files} files checked, {} violations", violations.len())
    })()
    .map_err(io_err(Path::new("<stdout>")))?;
    Ok(violations.len())
}

/// Debugging view of one tree and the propositions that point into it.
pub fn cmd_inspect(layout: &CorpusLayout, file_id: &str, tree_index: usize, out: &mut dyn Write) -> Result<(), CliError> {
    let discovery = discover_files(layout)?;
    let triple = discovery
        .triples
        .iter()
        .find(|t| t.id == file_id)
        .ok_or_else(|| CliError::UnknownFile(file_id.to_string()))?;
    let file = load_file(triple)?;
    let tree = file.trees.get(tree_index).ok_or_else(|| CliError::IndexOutOfRange {
        file_id: file_id.to_string(),
        index: tree_index,
        trees: file.trees.len(),
    })?;
    let policy = TracePolicy::new(TraceMode::TreeGuided);

    let mut text = String::new();
    use std::fmt::Write as _;
    let _ = writeln!(text, "{file_id} tree {tree_index} of {}", file.trees.len());
    let _ = writeln!(text, "\n{}\n", tree.pretty());
    let _ = writeln!(text, "terminals");
    for (i, (pos, tok)) in tree.terminals().into_iter().enumerate() {
        let _ = writeln!(text, "  {i:>3}  {pos:<8} {tok}");
    }
    match file.sentences.get(tree_index) {
        Some(pair) => {
            let _ = writeln!(text, "\nplain       {}", pair.plain);
            let _ = writeln!(text, "treebanked  {}", pair.treebanked);
        }
        None => {
            let _ = writeln!(text, "\n(no sentence pair: {} sentences)", file.sentences.len());
        }
    }
    let _ = writeln!(text, "\npropositions");
    let props: Vec<_> = file.propositions.iter().filter(|p| p.tree_index == tree_index).collect();
    if props.is_empty() {
        let _ = writeln!(text, "  (none)");
    }
    for prop in props {
        let _ = writeln!(text, "  line {} predicate terminal {}", prop.line_no, prop.predicate_terminal);
        for label in [RoleLabel::Arg0, RoleLabel::Rel, RoleLabel::Arg1] {
            let exprs: Vec<_> = prop.exprs(label).collect();
            if exprs.is_empty() {
                continue;
            }
            let ptrs = exprs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
            let resolved = match resolve_role(exprs.iter().copied(), tree, &policy) {
                Ok(s) if s.is_empty() => "(empty)".to_string(),
                Ok(s) => format!("{s:?}"),
                Err((ptr, e)) => format!("error at {ptr}: {e}"),
            };
            let _ = writeln!(text, "    {:<5} {:<16} {}", label.as_str(), ptrs, resolved);
        }
    }
    out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>")))
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Extract(args) => {
            let run = resolve_extract(&args, &cfg)?;
            cmd_extract(&run, out, err)?;
        }
        Command::Stats(args) => {
            let run = resolve_stats(&args, &cfg)?;
            cmd_stats(&run, out)?;
        }
        Command::Validate(args) => {
            let layout = resolve_layout(&args, &cfg)?;
            let n = cmd_validate(&layout, out)?;
            if n > 0 {
                return Err(CliError::Violations(n));
            }
        }
        Command::Inspect(args) => {
            let mut layout = resolve_layout(&args.corpus, &cfg)?;
            layout.exclusions = BTreeSet::new();
            cmd_inspect(&layout, &args.file, args.tree, out)?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if e.use_stderr() {
                let first = e.to_string();
                let first = first.lines().next().unwrap_or("").trim_start_matches("error: ");
                let _ = writeln!(err, "error\tUsageError\t{first}");
                let _ = write!(err, "{}", e.render());
            } else {
                let _ = write!(out, "{}", e.render());
            }
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string().replace(['\n', '\t'], " ");
            let _ = writeln!(err, "error\t{}\t{msg}", e.kind());
            1
        }
    }
}
