//! Command dispatch. Exit codes: 0 success, 1 usage, 2 missing or unreadable
//! file, 3 schema / alignment error, 4 internal invariant breach.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use shona_morph_core::pipeline::check_token_ids;
use shona_morph_core::{compute_metrics, render_report, Analyzer, Lexicon, RuleTables, TokenAnnotation};

use crate::annotations::{export_json, load_gold, Format};
use crate::json::LoadError;
use crate::lexicon_file::{check_lexicon, load_lexicon};
use crate::tables_file::{load_tables, resolve_tables_path};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_MISSING_FILE: u8 = 2;
pub const EXIT_SCHEMA: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "shona-morph", version, about = "Rule-based morphological analyzer for Shona")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Annotate text and write one record per token.
    Analyze {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::JsonArray)]
        format: Format,
    },
    /// Annotate text and score it against a gold annotation file.
    Eval {
        #[command(flatten)]
        common: Common,
        /// Gold annotations (JSON array or JSON lines, export format).
        #[arg(long)]
        gold: PathBuf,
    },
    /// Check a lexicon (and optionally a rule table file) record by record.
    Validate {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Lexicon JSON file.
    #[arg(long, conflicts_with = "no_lexicon")]
    lexicon: Option<PathBuf>,
    /// Run with an empty lexicon (rules only).
    #[arg(long)]
    no_lexicon: bool,
    /// Rule table JSON file [default: built-in, or $SHONA_MORPH_TABLES].
    #[arg(long)]
    tables: Option<PathBuf>,
    /// Input text file [default: stdin].
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file [default: stdout].
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Analyze,
    Eval,
    Validate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub command: CommandKind,
    pub lexicon_path: Option<PathBuf>,
    pub no_lexicon: bool,
    pub tables_path: Option<PathBuf>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub gold: Option<PathBuf>,
}

impl CliConfig {
    pub fn new(command: CommandKind) -> Self {
        CliConfig {
            command,
            lexicon_path: None,
            no_lexicon: false,
            tables_path: None,
            input: None,
            output: None,
            format: Format::JsonArray,
            gold: None,
        }
    }

    /// Parses command-line arguments (program name first). Help and version
    /// requests come back as `Err` too, with exit status 0.
    pub fn from_args<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        let (command, common, format, gold) = match cli.command {
            Command::Analyze { common, format } => (CommandKind::Analyze, common, format, None),
            Command::Eval { common, gold } => (CommandKind::Eval, common, Format::JsonArray, Some(gold)),
            Command::Validate { common } => (CommandKind::Validate, common, Format::JsonArray, None),
        };
        Ok(CliConfig {
            command,
            lexicon_path: common.lexicon,
            no_lexicon: common.no_lexicon,
            tables_path: resolve_tables_path(common.tables),
            input: common.input,
            output: common.output,
            format,
            gold,
        })
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn load(path: &Path, e: LoadError) -> Self {
        let code = match &e {
            LoadError::Io(_) => EXIT_MISSING_FILE,
            _ => EXIT_SCHEMA,
        };
        Failure::new(code, format!("{}: {e}", path.display()))
    }
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::new(EXIT_MISSING_FILE, format!("{}: {e}", path.display())))
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn main_with_args<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match CliConfig::from_args(args) {
        Ok(config) => run(&config, stdin, stdout, stderr),
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{}", e.render());
            EXIT_OK
        }
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            EXIT_USAGE
        }
    }
}

pub fn run(config: &CliConfig, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let result = match config.command {
        CommandKind::Analyze => analyze(config, stdin, stdout),
        CommandKind::Eval => eval(config, stdin, stdout),
        CommandKind::Validate => validate(config, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "shona-morph: {}", f.message);
            f.code
        }
    }
}

fn lexicon(config: &CliConfig) -> Result<Lexicon, Failure> {
    match (&config.lexicon_path, config.no_lexicon) {
        (Some(path), false) => load_lexicon(open(path)?).map_err(|e| Failure::load(path, e)),
        (None, true) => Ok(Lexicon::new()),
        _ => Err(Failure::new(
            EXIT_USAGE,
            "exactly one of --lexicon or --no-lexicon is required",
        )),
    }
}

fn tables(config: &CliConfig) -> Result<RuleTables, Failure> {
    match &config.tables_path {
        Some(path) => load_tables(open(path)?).map_err(|e| Failure::load(path, e)),
        None => Ok(RuleTables::shona()),
    }
}

fn read_input(config: &CliConfig, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut bytes = Vec::new();
    let (name, result) = match &config.input {
        Some(path) => (path.display().to_string(), open(path)?.read_to_end(&mut bytes)),
        None => ("<stdin>".to_string(), stdin.read_to_end(&mut bytes)),
    };
    result.map_err(|e| Failure::new(EXIT_MISSING_FILE, format!("{name}: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Failure::new(EXIT_SCHEMA, format!("{name}: input is not UTF-8: {e}")))
}

fn write_output(
    config: &CliConfig,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), Failure> {
    let result = match &config.output {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = io::BufWriter::new(f);
            body(&mut w)?;
            w.flush()
        }),
        None => body(stdout).and_then(|()| stdout.flush()),
    };
    result.map_err(|e| {
        let name = config
            .output
            .as_ref()
            .map_or("<stdout>".into(), |p| p.display().to_string());
        Failure::new(EXIT_MISSING_FILE, format!("{name}: {e}"))
    })
}

fn annotate_checked(config: &CliConfig, stdin: &mut dyn Read) -> Result<Vec<TokenAnnotation>, Failure> {
    let analyzer = Analyzer::new(lexicon(config)?, tables(config)?);
    let text = read_input(config, stdin)?;
    let annotations = analyzer.annotate(&text);
    let breach = |m: String| Failure::new(EXIT_INVARIANT, format!("internal invariant breach: {m}"));
    for a in &annotations {
        a.check_invariants().map_err(breach)?;
    }
    check_token_ids(&annotations).map_err(breach)?;
    Ok(annotations)
}

fn analyze(config: &CliConfig, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<u8, Failure> {
    let annotations = annotate_checked(config, stdin)?;
    write_output(config, stdout, |w| export_json(&annotations, w, config.format))?;
    Ok(EXIT_OK)
}

fn eval(config: &CliConfig, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<u8, Failure> {
    let Some(gold_path) = &config.gold else {
        return Err(Failure::new(EXIT_USAGE, "eval requires --gold"));
    };
    let system = annotate_checked(config, stdin)?;
    let gold = load_gold(open(gold_path)?).map_err(|e| Failure::load(gold_path, e))?;
    let report = compute_metrics(&system, &gold).map_err(|e| Failure::new(EXIT_SCHEMA, e.to_string()))?;
    write_output(config, stdout, |w| w.write_all(render_report(&report).as_bytes()))?;
    Ok(EXIT_OK)
}

fn validate(config: &CliConfig, stdout: &mut dyn Write) -> Result<u8, Failure> {
    let Some(path) = &config.lexicon_path else {
        return Err(Failure::new(EXIT_USAGE, "validate requires --lexicon"));
    };
    let mut bytes = Vec::new();
    open(path)?
        .read_to_end(&mut bytes)
        .map_err(|e| Failure::new(EXIT_MISSING_FILE, format!("{}: {e}", path.display())))?;
    let check = check_lexicon(&bytes).map_err(|e| Failure::load(path, e))?;
    let mut clean = check.is_clean();

    let mut report = format!("{} entries\n", check.entries.len());
    for rec in &check.records {
        for v in &rec.violations {
            report.push_str(&format!("record {} ({:?}): error: {v}\n", rec.index, rec.surface));
        }
        for w in &rec.warnings {
            report.push_str(&format!("record {} ({:?}): warning: {w}\n", rec.index, rec.surface));
        }
    }
    for d in &check.duplicates {
        report.push_str(&format!("duplicate: {d}\n"));
    }
    if let Some(tables_path) = &config.tables_path {
        match load_tables(open(tables_path)?) {
            Ok(_) => report.push_str("rule tables: valid\n"),
            Err(LoadError::Io(e)) => {
                return Err(Failure::new(
                    EXIT_MISSING_FILE,
                    format!("{}: {e}", tables_path.display()),
                ))
            }
            Err(e) => {
                clean = false;
                report.push_str(&format!("rule tables: error: {e}\n"));
            }
        }
    }
    write_output(config, stdout, |w| w.write_all(report.as_bytes()))?;
    Ok(if clean { EXIT_OK } else { EXIT_SCHEMA })
}
