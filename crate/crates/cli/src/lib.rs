//! The `blockdsa` command line: validate, run, dump the catalog, and check
//! the bundled corpus.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use blockdsa_core::corpus::{corpus, parse_inputs};
use blockdsa_core::project::render_report;
use blockdsa_core::{
    catalog_load, is_runnable, parse_project, validate_project, Machine, Progress, Project, Status,
    DEFAULT_STEP_BUDGET,
};
use clap::{Parser, Subcommand, ValueEnum};

/// Exit code for unreadable, malformed or unrunnable projects.
pub const EXIT_INVALID: i32 = 1;
/// Exit code for bad command-line arguments. Kept apart from the run
/// statuses so 2 always means the step budget ran out.
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "blockdsa", version, about = "Run block programs with arrays, sets and dictionaries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a project file and print its diagnostics.
    Validate { path: PathBuf },
    /// Run a project with scripted answers.
    Run(RunArgs),
    /// Print the block catalog.
    Catalog {
        /// Print a human-readable block reference instead of JSON.
        #[arg(long)]
        markdown: bool,
    },
    /// Run every bundled reference program and compare with its golden transcript.
    Corpus {
        /// Write the current transcripts into this directory instead of checking.
        #[arg(long, value_name = "DIR")]
        bless: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    pub path: PathBuf,
    /// File with one answer per line.
    #[arg(long, value_name = "FILE")]
    pub inputs: Option<PathBuf>,
    /// An answer; repeat for several. Used after any from `--inputs`.
    #[arg(long = "input", value_name = "TEXT")]
    pub input: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_STEP_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub step_budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Read answers from stdin when the scripted ones run out.
    #[arg(long)]
    pub interactive: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli.command, stdin, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INVALID
        }
    }
}

pub fn execute(cmd: Command, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Validate { path } => cmd_validate(&path, out),
        Command::Run(args) => cmd_run(&args, stdin, out, err),
        Command::Catalog { markdown } => {
            let cat = catalog_load();
            out.write_all(if markdown { cat.to_markdown() } else { cat.to_json() }.as_bytes())?;
            Ok(0)
        }
        Command::Corpus { bless } => cmd_corpus(bless.as_deref(), out),
    }
}

fn read_project(path: &Path, out: &mut dyn Write) -> Result<Option<Project>> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    match parse_project(&bytes) {
        Ok(p) => Ok(Some(p)),
        Err(diags) => {
            out.write_all(render_report(&diags).as_bytes())?;
            Ok(None)
        }
    }
}

pub fn cmd_validate(path: &Path, out: &mut dyn Write) -> Result<i32> {
    let Some(project) = read_project(path, out)? else { return Ok(EXIT_INVALID) };
    let diags = validate_project(&project);
    if diags.is_empty() {
        writeln!(out, "ok")?;
        Ok(0)
    } else {
        out.write_all(render_report(&diags).as_bytes())?;
        Ok(EXIT_INVALID)
    }
}

pub fn cmd_run(args: &RunArgs, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let Some(project) = read_project(&args.path, err)? else { return Ok(EXIT_INVALID) };
    let diags = validate_project(&project);
    if !is_runnable(&diags) {
        err.write_all(render_report(&diags).as_bytes())?;
        return Ok(EXIT_INVALID);
    }
    for d in &diags {
        writeln!(err, "warning: {d}")?;
    }

    let mut answers = match &args.inputs {
        Some(file) => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            parse_inputs(&text)
        }
        None => Vec::new(),
    };
    answers.extend(args.input.iter().cloned());

    let mut m = Machine::new(&project, args.seed, args.step_budget);
    for a in answers {
        m.push_input(a);
    }
    let live = args.interactive && args.format == Format::Text;
    let mut shown = 0;
    let status = loop {
        let progress = m.resume();
        if live {
            for e in &m.events()[shown..] {
                writeln!(out, "{e}")?;
            }
            out.flush()?;
            shown = m.events().len();
        }
        match progress {
            Progress::Finished(status) => break status,
            Progress::NeedsInput if args.interactive => {
                if !live {
                    if let Some(q) = m.events().last() {
                        writeln!(err, "{q}")?;
                    }
                }
                let mut line = String::new();
                if stdin.read_line(&mut line)? == 0 {
                    m.halt(Status::InputExhausted);
                    continue;
                }
                m.push_input(line.trim_end_matches(['\n', '\r']));
            }
            Progress::NeedsInput => {
                m.halt(Status::InputExhausted);
            }
        }
    };

    let result = m.result();
    match args.format {
        Format::Json => out.write_all(result.to_json().as_bytes())?,
        Format::Text if live => {
            let full = result.render_text();
            // Events were printed as they happened; print the remainder.
            let tail = full.split_once("--- variables ---\n").map(|(_, t)| t).unwrap_or("");
            write!(out, "--- variables ---\n{tail}")?;
        }
        Format::Text => out.write_all(result.render_text().as_bytes())?,
    }
    Ok(status.exit_code())
}

pub fn cmd_corpus(bless: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let mut failed = 0;
    for entry in corpus() {
        if let Some(dir) = bless {
            let path = dir.join(format!("{}.golden.txt", entry.name));
            std::fs::write(&path, entry.run().render_text()).with_context(|| format!("writing {}", path.display()))?;
            writeln!(out, "wrote {}", path.display())?;
            continue;
        }
        match entry.check() {
            Ok(r) => writeln!(out, "PASS {} ({}, {} steps)", entry.name, r.status, r.steps_used)?,
            Err(actual) => {
                failed += 1;
                writeln!(out, "FAIL {}", entry.name)?;
                writeln!(out, "--- expected\n{}--- actual\n{}", entry.golden, actual)?;
            }
        }
    }
    if bless.is_none() {
        writeln!(out, "{} of {} corpus programs match", corpus().len() - failed, corpus().len())?;
    }
    Ok(if failed == 0 { 0 } else { EXIT_INVALID })
}
