//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage errors, 2 for unreadable or
//! malformed input, 3 when `verify` finds a disagreement.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::gen::{generate, GenConfig};
use crate::{match_text, naive_match, Occurrence, Relation, Scera, Symbol};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "scera",
    version,
    about = "Dictionary matching under exact, parameterized and order-preserving equivalence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report every occurrence of every pattern in the text.
    Match(MatchArgs),
    /// Compare the automaton against the naive matcher.
    Verify(MatchArgs),
    /// Print the automaton as a Graphviz graph.
    Dot(DotArgs),
    /// Time construction and scanning, report counters as JSON.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RelationArg {
    Exact,
    Param,
    Op,
}

impl From<RelationArg> for Relation {
    fn from(r: RelationArg) -> Self {
        match r {
            RelationArg::Exact => Relation::Exact,
            RelationArg::Param => Relation::Parameterized,
            RelationArg::Op => Relation::OrderPreserving,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// One string per line, one symbol per character (its code point).
    Chars,
    /// Whitespace-separated non-negative integers.
    Ints,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Tsv,
    Json,
}

#[derive(Debug, Args)]
struct MatchArgs {
    #[arg(long, value_enum)]
    relation: RelationArg,
    /// Pattern file, one pattern per line (`-` for standard input).
    #[arg(long)]
    patterns: PathBuf,
    /// Text file (`-` for standard input).
    #[arg(long)]
    text: PathBuf,
    #[arg(long, value_enum, default_value = "chars")]
    format: InputFormat,
    #[arg(long, value_enum, default_value = "tsv")]
    output: OutputFormat,
    /// Include construction and search counters.
    #[arg(long)]
    stats: bool,
}

#[derive(Debug, Args)]
struct DotArgs {
    #[arg(long, value_enum)]
    relation: RelationArg,
    #[arg(long)]
    patterns: PathBuf,
    #[arg(long, value_enum, default_value = "chars")]
    format: InputFormat,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    relation: RelationArg,
    #[arg(long, required_unless_present = "gen", conflicts_with = "gen")]
    patterns: Option<PathBuf>,
    #[arg(long, required_unless_present = "gen", conflicts_with = "gen")]
    text: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "chars")]
    format: InputFormat,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    repeat: u32,
    #[command(flatten)]
    gen: GenArgs,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Generate the instance instead of reading files.
    #[arg(long)]
    gen: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    alphabet: u64,
    #[arg(long, default_value_t = 1)]
    min_patterns: usize,
    #[arg(long, default_value_t = 8)]
    max_patterns: usize,
    #[arg(long, default_value_t = 1)]
    min_len: usize,
    #[arg(long, default_value_t = 12)]
    max_len: usize,
    #[arg(long, default_value_t = 1000)]
    text_len: usize,
    #[arg(long, default_value_t = 0)]
    plants: usize,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
}

impl CliError {
    fn parse(file: &Path, line: usize, msg: impl std::fmt::Display) -> Self {
        CliError::Input(format!("{}:{line}: {msg}", file.display()))
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Match(args) => run_match(&args, out, err),
        Command::Verify(args) => run_verify(&args, out),
        Command::Dot(args) => run_dot(&args, out),
        Command::Bench(args) => run_bench(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    let describe = |e: io::Error| CliError::Input(format!("{}: {e}", path.display()));
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(describe)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(describe)
    }
}

fn parse_ints(file: &Path, line_no: usize, line: &str) -> CliResult<Vec<Symbol>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<Symbol>()
                .map_err(|e| CliError::parse(file, line_no, format!("bad integer `{tok}`: {e}")))
        })
        .collect()
}

/// One pattern per line; blank lines are rejected.
pub fn parse_patterns(
    file: &Path,
    contents: &str,
    format: InputFormat,
) -> Result<Vec<Vec<Symbol>>, String> {
    parse_patterns_inner(file, contents, format).map_err(|e| match e {
        CliError::Usage(m) | CliError::Input(m) => m,
    })
}

fn parse_patterns_inner(
    file: &Path,
    contents: &str,
    format: InputFormat,
) -> CliResult<Vec<Vec<Symbol>>> {
    let mut patterns = Vec::new();
    for (i, line) in contents.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        let pattern = match format {
            InputFormat::Chars => line.chars().map(|c| c as Symbol).collect(),
            InputFormat::Ints => parse_ints(file, i + 1, line)?,
        };
        if pattern.is_empty() {
            return Err(CliError::parse(file, i + 1, "empty pattern"));
        }
        patterns.push(pattern);
    }
    if patterns.is_empty() {
        return Err(CliError::Input(format!("{}: no patterns", file.display())));
    }
    Ok(patterns)
}

/// The text of a file. In chars mode one trailing newline is dropped and
/// any other line break is an error.
pub fn parse_text(file: &Path, contents: &str, format: InputFormat) -> Result<Vec<Symbol>, String> {
    parse_text_inner(file, contents, format).map_err(|e| match e {
        CliError::Usage(m) | CliError::Input(m) => m,
    })
}

fn parse_text_inner(file: &Path, contents: &str, format: InputFormat) -> CliResult<Vec<Symbol>> {
    match format {
        InputFormat::Chars => {
            let body = contents
                .strip_suffix('\n')
                .map(|s| s.strip_suffix('\r').unwrap_or(s))
                .unwrap_or(contents);
            if body.contains('\n') {
                return Err(CliError::parse(
                    file,
                    2,
                    "text must be a single line in chars format",
                ));
            }
            Ok(body.chars().map(|c| c as Symbol).collect())
        }
        InputFormat::Ints => {
            let mut text = Vec::new();
            for (i, line) in contents.lines().enumerate() {
                text.extend(parse_ints(file, i + 1, line)?);
            }
            Ok(text)
        }
    }
}

fn load_patterns(path: &Path, format: InputFormat) -> CliResult<Vec<Vec<Symbol>>> {
    parse_patterns_inner(path, &read_input(path)?, format)
}

fn load_text(path: &Path, format: InputFormat) -> CliResult<Vec<Symbol>> {
    parse_text_inner(path, &read_input(path)?, format)
}

fn build(relation: Relation, patterns: Vec<Vec<Symbol>>) -> CliResult<Scera> {
    Scera::build(relation, patterns).map_err(|e| CliError::Input(e.to_string()))
}

#[derive(Serialize)]
struct JsonOccurrence {
    pattern: usize,
    position: usize,
}

fn write_io(r: io::Result<()>) -> CliResult<()> {
    r.map_err(|e| CliError::Input(format!("writing output: {e}")))
}

fn run_match(args: &MatchArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let patterns = load_patterns(&args.patterns, args.format)?;
    let text = load_text(&args.text, args.format)?;
    let automaton = build(args.relation.into(), patterns)?;
    let (found, stats) = match_text(&automaton, &text);
    let stats_json = json!({
        "construction": automaton.stats(),
        "search": stats,
    });
    match args.output {
        OutputFormat::Tsv => {
            write_io(write_tsv(out, &found))?;
            if args.stats {
                write_io(writeln!(err, "{stats_json}"))?;
            }
        }
        OutputFormat::Json => {
            let occurrences: Vec<_> = found
                .iter()
                .map(|o| JsonOccurrence {
                    pattern: o.pattern_index,
                    position: o.position,
                })
                .collect();
            let doc = if args.stats {
                json!({ "occurrences": occurrences, "stats": stats_json })
            } else {
                json!(occurrences)
            };
            write_io(writeln!(out, "{doc}"))?;
        }
    }
    Ok(EXIT_OK)
}

fn write_tsv(out: &mut dyn Write, found: &[Occurrence]) -> io::Result<()> {
    for o in found {
        writeln!(out, "{}\t{}", o.pattern_index, o.position)?;
    }
    Ok(())
}

fn run_verify(args: &MatchArgs, out: &mut dyn Write) -> CliResult<i32> {
    let relation: Relation = args.relation.into();
    let patterns = load_patterns(&args.patterns, args.format)?;
    let text = load_text(&args.text, args.format)?;
    let expected =
        naive_match(relation, &patterns, &text).map_err(|e| CliError::Input(e.to_string()))?;
    let automaton = build(relation, patterns)?;
    let (found, _) = match_text(&automaton, &text);
    if found == expected {
        write_io(writeln!(out, "ok: {} occurrences", found.len()))?;
        return Ok(EXIT_OK);
    }
    write_io(writeln!(
        out,
        "mismatch: automaton reported {}, naive matcher {}",
        found.len(),
        expected.len()
    ))?;
    for o in expected.iter().filter(|o| !found.contains(o)) {
        write_io(writeln!(out, "- {}\t{}", o.pattern_index, o.position))?;
    }
    for o in found.iter().filter(|o| !expected.contains(o)) {
        write_io(writeln!(out, "+ {}\t{}", o.pattern_index, o.position))?;
    }
    Ok(EXIT_MISMATCH)
}

fn run_dot(args: &DotArgs, out: &mut dyn Write) -> CliResult<i32> {
    let patterns = load_patterns(&args.patterns, args.format)?;
    let automaton = build(args.relation.into(), patterns)?;
    write_io(out.write_all(automaton.to_dot().as_bytes()))?;
    Ok(EXIT_OK)
}

fn run_bench(args: &BenchArgs, out: &mut dyn Write) -> CliResult<i32> {
    let relation: Relation = args.relation.into();
    let (patterns, text) = if args.gen.gen {
        let g = &args.gen;
        let cfg = GenConfig {
            seed: g.seed,
            relation,
            alphabet: g.alphabet,
            pattern_count: g.min_patterns..=g.max_patterns,
            pattern_len: g.min_len..=g.max_len,
            text_len: g.text_len,
            plants: g.plants,
        };
        let inst = generate(&cfg).map_err(|e| CliError::Usage(e.to_string()))?;
        (inst.patterns, inst.text)
    } else {
        let (Some(p), Some(t)) = (&args.patterns, &args.text) else {
            return Err(CliError::Usage("--patterns and --text are required".into()));
        };
        (load_patterns(p, args.format)?, load_text(t, args.format)?)
    };

    let mut build_ms = Vec::new();
    let mut scan_ms = Vec::new();
    let mut last = None;
    for _ in 0..args.repeat {
        let t0 = Instant::now();
        let automaton = build(relation, patterns.clone())?;
        build_ms.push(t0.elapsed().as_secs_f64() * 1e3);
        let t1 = Instant::now();
        let (found, stats) = match_text(&automaton, &text);
        scan_ms.push(t1.elapsed().as_secs_f64() * 1e3);
        last = Some((automaton, found.len(), stats));
    }
    let (automaton, occurrences, stats) = last.expect("repeat is at least 1");
    let summary = |v: &[f64]| {
        json!({
            "min": v.iter().copied().fold(f64::INFINITY, f64::min),
            "mean": v.iter().sum::<f64>() / v.len() as f64,
        })
    };
    let report = json!({
        "relation": relation.name(),
        "patterns": patterns.len(),
        "total_pattern_len": automaton.total_len(),
        "longest_pattern": automaton.height(),
        "text_len": text.len(),
        "states": automaton.num_states(),
        "max_out_degree": automaton.max_out_degree(),
        "repeat": args.repeat,
        "build_ms": summary(&build_ms),
        "scan_ms": summary(&scan_ms),
        "occurrences": occurrences,
        "construction": automaton.stats(),
        "search": stats,
    });
    write_io(writeln!(out, "{report}"))?;
    Ok(EXIT_OK)
}
