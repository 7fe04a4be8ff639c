//! The `satkg` command line.
//!
//! Every subcommand is a single pipeline over a store file in the Turtle
//! fragment. Exit codes: 0 on success, 1 when the work itself fails, 2 when
//! the command line is wrong.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use satkg_core::ingest::{ingest_with, parse_csv, ResolveConfig};
use satkg_core::interop::{apply_mapping, export_dot, export_turtle, import_turtle};
use satkg_core::ontology::{InstanceStore, Ontology};
use satkg_core::query::{evaluate, parse_query, Semantics};
use satkg_core::reasoner::{classify_orbits, validate};
use satkg_core::report::{ingest_lines, to_jsonl, validation_lines};
use satkg_core::schema::{build_mapping, build_ssao_core, build_ssao_schema, build_ucsso, ModelingMode, Overlay};

#[derive(Debug, Parser)]
#[command(name = "satkg", version, about = "Satellite catalog knowledge graph tool")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ingest a catalog CSV and write a store file.
    Load(LoadArgs),
    /// Check a store against its schema.
    Validate(ValidateArgs),
    /// Type orbits by eccentricity and write the updated store.
    Classify(ClassifyArgs),
    /// Run a query against a store.
    Query(QueryArgs),
    /// Write a store or a bare schema as Turtle or DOT.
    Export(ExportArgs),
    /// Add reference-core typing to a store.
    Map(MapArgs),
    /// Print class, instance and assertion counts.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemaChoice {
    Ucsso,
    Ssao,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Reified,
    Direct,
}

impl From<ModeArg> for ModelingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Reified => ModelingMode::Reified,
            ModeArg::Direct => ModelingMode::Direct,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SemanticsArg {
    #[value(alias = "open_world")]
    Open,
    #[value(alias = "closed_world")]
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ResultFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Turtle,
    Dot,
}

#[derive(Debug, Args)]
struct SchemaArgs {
    #[arg(long, value_enum, default_value = "reified")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "ucsso")]
    schema: SchemaChoice,
    /// Extra classes, one `class <Name> < <Parent>` per line.
    #[arg(long)]
    overlay: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LoadArgs {
    #[command(flatten)]
    schema: SchemaArgs,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long)]
    store: PathBuf,
    /// Write the JSONL report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long)]
    store: PathBuf,
    /// Defaults to the mode the store's schema was built in.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Defaults to overwriting the input store.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("text").required(true).args(["query", "query_file"]))]
struct QueryArgs {
    #[arg(long)]
    store: PathBuf,
    #[arg(long, value_enum, default_value = "open")]
    semantics: SemanticsArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: ResultFormat,
    #[arg(long)]
    query_file: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    query: Option<String>,
}

#[derive(Debug, Args)]
struct ExportArgs {
    /// Without a store, the schema selected by the schema flags is exported.
    #[arg(long)]
    store: Option<PathBuf>,
    #[command(flatten)]
    schema: SchemaArgs,
    #[arg(long, value_enum, default_value = "turtle")]
    format: GraphFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MapArgs {
    #[arg(long)]
    store: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[arg(long)]
    store: PathBuf,
}

/// Runs the tool with `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                2
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Load(a) => load(a, out),
        Command::Validate(a) => validate_cmd(a, out),
        Command::Classify(a) => classify(a, out),
        Command::Query(a) => query(a, out),
        Command::Export(a) => export(a, out),
        Command::Map(a) => map(a, out),
        Command::Stats(a) => stats(a, out),
    }
}

fn require_file(path: &Path) -> Result<()> {
    if !path.is_file() {
        bail!("input file {} does not exist", path.display());
    }
    Ok(())
}

fn require_writable(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => {
            bail!("output directory {} does not exist", dir.display())
        }
        _ => Ok(()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, contents),
        None => out.write_all(contents.as_bytes()).context("writing to stdout"),
    }
}

fn read_store(path: &Path) -> Result<InstanceStore> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    import_turtle(&bytes).with_context(|| format!("loading store {}", path.display()))
}

fn build_schema(args: &SchemaArgs) -> Result<Ontology> {
    let mode = args.mode.into();
    let mut ont = match args.schema {
        SchemaChoice::Ucsso => build_ucsso(mode),
        SchemaChoice::Ssao => build_ssao_schema(mode, &build_mapping()).context("building reference schema")?,
    };
    if let Some(path) = &args.overlay {
        let text = fs::read_to_string(path).with_context(|| format!("reading overlay {}", path.display()))?;
        let overlay = Overlay::parse(&text).with_context(|| format!("overlay {}", path.display()))?;
        overlay.apply(&mut ont).with_context(|| format!("overlay {}", path.display()))?;
    }
    Ok(ont)
}

fn load(a: LoadArgs, out: &mut dyn Write) -> Result<()> {
    require_file(&a.input)?;
    if let Some(p) = &a.schema.overlay {
        require_file(p)?;
    }
    require_writable(&a.out)?;
    if let Some(p) = &a.report {
        require_writable(p)?;
    }

    let ont = build_schema(&a.schema)?;
    let bytes = fs::read(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let parsed = parse_csv(&bytes).with_context(|| format!("parsing {}", a.input.display()))?;
    let (store, report) = ingest_with(&parsed.records, a.schema.mode.into(), Arc::new(ont), &ResolveConfig::default());

    write_file(&a.out, &export_turtle(&store))?;
    if let Some(p) = &a.report {
        write_file(p, &to_jsonl(&ingest_lines(&report)))?;
    }
    if !parsed.missing_columns.is_empty() {
        writeln!(out, "missing columns: {}", parsed.missing_columns.join(", "))?;
    }
    writeln!(
        out,
        "rows read {}, ingested {}, assertions {}, violations {}, warnings {}",
        report.rows_read,
        report.rows_ingested,
        report.assertions_created,
        report.violations.len(),
        report.warnings.len()
    )?;
    Ok(())
}

fn validate_cmd(a: ValidateArgs, out: &mut dyn Write) -> Result<()> {
    require_file(&a.store)?;
    if let Some(p) = &a.report {
        require_writable(p)?;
    }
    let store = read_store(&a.store)?;
    let lines = validation_lines(&validate(&store));
    emit(out, a.report.as_deref(), &to_jsonl(&lines))
}

fn store_mode(store: &InstanceStore) -> Result<ModelingMode> {
    ModelingMode::detect(store.ontology()).context("store schema matches neither modeling mode; pass --mode")
}

fn classify(a: ClassifyArgs, out: &mut dyn Write) -> Result<()> {
    require_file(&a.store)?;
    let target = a.out.clone().unwrap_or_else(|| a.store.clone());
    require_writable(&target)?;
    let store = read_store(&a.store)?;
    let mode = match a.mode {
        Some(m) => m.into(),
        None => store_mode(&store)?,
    };
    let result = classify_orbits(&store, mode)?;
    write_file(&target, &export_turtle(&result.store))?;

    let mut text = String::new();
    for (orbit, class) in &result.outcomes {
        let class = class.as_ref().map_or("unclassified".to_string(), ToString::to_string);
        text.push_str(&format!("{orbit}\t{class}\n"));
    }
    for c in &result.conflicts {
        text.push_str(&format!("conflict\t{}\t{}\n", c.orbit, c.detail));
    }
    emit(out, a.report.as_deref(), &text)
}

fn query(a: QueryArgs, out: &mut dyn Write) -> Result<()> {
    require_file(&a.store)?;
    if let Some(p) = &a.query_file {
        require_file(p)?;
    }
    if let Some(p) = &a.out {
        require_writable(p)?;
    }
    let text = match (&a.query, &a.query_file) {
        (Some(q), _) => q.clone(),
        (None, Some(p)) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        (None, None) => unreachable!("clap requires one of the two"),
    };
    let store = read_store(&a.store)?;
    let semantics = match a.semantics {
        SemanticsArg::Open => Semantics::OpenWorld,
        SemanticsArg::Closed => Semantics::ClosedWorld,
    };
    let q = parse_query(&text, store.ontology())?.with_semantics(semantics);
    let answers = evaluate(&q, &store)?;
    let rendered = match a.format {
        ResultFormat::Csv => answers.to_csv(),
        ResultFormat::Json => format!("{}\n", answers.to_json()),
    };
    emit(out, a.out.as_deref(), &rendered)
}

fn export(a: ExportArgs, out: &mut dyn Write) -> Result<()> {
    if let Some(p) = &a.store {
        require_file(p)?;
    }
    if let Some(p) = &a.schema.overlay {
        require_file(p)?;
    }
    if let Some(p) = &a.out {
        require_writable(p)?;
    }
    let store = match &a.store {
        Some(p) => read_store(p)?,
        None => InstanceStore::new(build_schema(&a.schema)?),
    };
    let text = match a.format {
        GraphFormat::Turtle => export_turtle(&store),
        GraphFormat::Dot => export_dot(store.ontology()),
    };
    emit(out, a.out.as_deref(), &text)
}

fn map(a: MapArgs, out: &mut dyn Write) -> Result<()> {
    require_file(&a.store)?;
    require_writable(&a.out)?;
    let store = read_store(&a.store)?;
    let mapped = apply_mapping(&store, &build_mapping(), &build_ssao_core())?;
    write_file(&a.out, &export_turtle(&mapped))?;
    writeln!(out, "assertions {} -> {}", store.len(), mapped.len())?;
    Ok(())
}

fn stats(a: StatsArgs, out: &mut dyn Write) -> Result<()> {
    require_file(&a.store)?;
    let store = read_store(&a.store)?;
    let ont = store.ontology();
    writeln!(out, "classes {}", ont.class_count())?;
    writeln!(out, "properties {}", ont.property_count())?;
    writeln!(out, "instances {}", store.instance_count())?;
    writeln!(out, "assertions {}", store.len())?;
    Ok(())
}
