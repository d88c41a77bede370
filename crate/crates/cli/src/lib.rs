//! The `proofflow` command: `build`, `lint` and `stats` over `.pf` files.
//!
//! Exit statuses:
//!
//! | code | meaning                                              |
//! |------|------------------------------------------------------|
//! | 0    | success                                              |
//! | 1    | errors in the input (or warnings under `--strict`)   |
//! | 2    | the input could not be parsed at all                 |
//! | 3    | the external renderer failed                         |
//! | 4    | an input or output file could not be read or written |
//! | 5    | bad command line                                     |
//! | 6    | no renderer found for `svg`/`png` output             |

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::{Command as Process, Stdio};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use proofflow::emit::{self, RankDir, RenderOptions, TexMode};
use proofflow::metrics::{self, CorpusStats, GraphStats};
use proofflow::{Diagnostic, Severity};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DIAGNOSTICS: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_RENDERER_FAILED: u8 = 3;
pub const EXIT_IO: u8 = 4;
pub const EXIT_USAGE: u8 = 5;
pub const EXIT_NO_RENDERER: u8 = 6;

#[derive(Debug, Parser)]
#[command(
    name = "proofflow",
    version,
    about = "Compile ProofFlow proof scripts to diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compile a proof to DOT, JSON, SVG or PNG.
    Build(BuildArgs),
    /// Check a proof and report diagnostics only.
    Lint(LintArgs),
    /// Print structural statistics as JSON.
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// Input file, or `-` for standard input.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    format: Format,
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Layout program used for svg/png; defaults to `dot` on the PATH.
    #[arg(long)]
    renderer: Option<PathBuf>,
    /// Treat warnings as errors.
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    render: RenderArgs,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(long, value_enum, default_value_t = Rankdir::Tb)]
    rankdir: Rankdir,
    /// URL for citation nodes, with `{name}` standing for the citation text.
    #[arg(long, value_name = "TEMPLATE")]
    cite_url_template: Option<String>,
    #[arg(long, value_enum, default_value_t = TexArg::Passthrough)]
    tex_mode: TexArg,
}

#[derive(Debug, Args)]
struct LintArgs {
    /// Input file, or `-` for standard input.
    input: PathBuf,
    /// Treat warnings as errors.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Args)]
struct StatsArgs {
    /// Input files; `-` reads standard input.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Svg,
    Png,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rankdir {
    #[value(name = "TB")]
    Tb,
    #[value(name = "LR")]
    Lr,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TexArg {
    Passthrough,
    Strip,
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn new(code: u8, error: anyhow::Error) -> Self {
        Failure { code, error }
    }
}

type Outcome = Result<u8, Failure>;

/// Standard streams, swappable for tests.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(io.stderr, "{e}");
            return EXIT_USAGE;
        }
        // --help and --version
        Err(e) => {
            let _ = write!(io.stdout, "{e}");
            return EXIT_OK;
        }
    };
    let outcome = match cli.command {
        Command::Build(args) => build(args, io),
        Command::Lint(args) => lint(args, io),
        Command::Stats(args) => stats(args, io),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.stderr, "proofflow: {:#}", f.error);
            f.code
        }
    }
}

fn display_name(path: &Path) -> String {
    if is_stdin(path) {
        "<stdin>".to_string()
    } else {
        path.display().to_string()
    }
}

fn is_stdin(path: &Path) -> bool {
    path.as_os_str() == "-"
}

fn read_input(path: &Path, stdin: &mut dyn Read) -> Result<String, Failure> {
    let text = if is_stdin(path) {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .context("cannot read standard input")
            .map(|_| s)
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read `{}`", path.display()))
    };
    text.map_err(|e| Failure::new(EXIT_IO, e))
}

fn write_output(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), Failure> {
    let result = match path {
        Some(p) if !is_stdin(p) => {
            fs::write(p, bytes).with_context(|| format!("cannot write `{}`", p.display()))
        }
        _ => stdout
            .write_all(bytes)
            .and_then(|_| stdout.flush())
            .context("cannot write standard output"),
    };
    result.map_err(|e| Failure::new(EXIT_IO, e))
}

pub fn format_diagnostic(file: &str, d: &Diagnostic) -> String {
    match &d.span {
        Some(s) => format!("{file}:{}:{}: {d}", s.line, s.column),
        None => format!("{file}: {d}"),
    }
}

fn report(file: &str, diags: &[Diagnostic], stderr: &mut dyn Write) {
    for d in diags {
        let _ = writeln!(stderr, "{}", format_diagnostic(file, d));
    }
}

fn status(diags: &[Diagnostic], strict: bool) -> u8 {
    let failing = diags
        .iter()
        .any(|d| d.severity == Severity::Error || (strict && d.severity == Severity::Warning));
    if failing {
        EXIT_DIAGNOSTICS
    } else {
        EXIT_OK
    }
}

/// Parses, links and validates; diagnostics are written to `stderr`.
fn front_end(path: &Path, io: &mut Io<'_>) -> Result<proofflow::Compilation, Failure> {
    let source = read_input(path, io.stdin)?;
    let name = display_name(path);
    match proofflow::compile(&source) {
        Ok(c) => {
            report(&name, &c.diagnostics, io.stderr);
            Ok(c)
        }
        Err(diags) => {
            report(&name, &diags, io.stderr);
            Err(Failure::new(
                EXIT_PARSE,
                anyhow!("`{name}` could not be parsed"),
            ))
        }
    }
}

fn render_options(args: &RenderArgs) -> Result<RenderOptions, Failure> {
    let mut opts = RenderOptions::default();
    if let Some(t) = &args.cite_url_template {
        opts = opts
            .with_citation_url(t.clone())
            .map_err(|e| Failure::new(EXIT_USAGE, e.into()))?;
    }
    opts.rankdir = match args.rankdir {
        Rankdir::Tb => RankDir::TopBottom,
        Rankdir::Lr => RankDir::LeftRight,
    };
    opts.tex_mode = match args.tex_mode {
        TexArg::Passthrough => TexMode::Passthrough,
        TexArg::Strip => TexMode::StripMathDelimiters,
    };
    Ok(opts)
}

fn find_renderer(explicit: Option<&Path>) -> Result<PathBuf, Failure> {
    match explicit {
        Some(p) => which::which(p).map_err(|_| {
            Failure::new(
                EXIT_NO_RENDERER,
                anyhow!("renderer `{}` not found", p.display()),
            )
        }),
        None => which::which("dot").map_err(|_| {
            Failure::new(
                EXIT_NO_RENDERER,
                anyhow!("svg/png output needs Graphviz `dot` on the PATH, or --renderer"),
            )
        }),
    }
}

fn run_renderer(renderer: &Path, format: Format, dot: &str) -> Result<Vec<u8>, Failure> {
    let flag = match format {
        Format::Svg => "-Tsvg",
        Format::Png => "-Tpng",
        Format::Dot | Format::Json => unreachable!("only image formats are rendered"),
    };
    let failed = |e: anyhow::Error| Failure::new(EXIT_RENDERER_FAILED, e);
    let mut child = Process::new(renderer)
        .arg(flag)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .with_context(|| format!("cannot start `{}`", renderer.display()))
        .map_err(failed)?;
    // Write from a separate thread so a renderer that streams output before
    // reading all its input cannot deadlock us.
    let mut stdin = child.stdin.take().expect("stdin is piped");
    let input = dot.to_owned();
    let writer = std::thread::spawn(move || stdin.write_all(input.as_bytes()));
    let out = child
        .wait_with_output()
        .context("renderer did not finish")
        .map_err(failed)?;
    let write_result = writer.join().expect("writer thread");
    if !out.status.success() {
        return Err(failed(anyhow!(
            "`{}` exited with {}: {}",
            renderer.display(),
            out.status,
            String::from_utf8_lossy(&out.stderr).trim()
        )));
    }
    write_result
        .context("cannot send DOT to the renderer")
        .map_err(failed)?;
    Ok(out.stdout)
}

fn build(args: BuildArgs, io: &mut Io<'_>) -> Outcome {
    let opts = render_options(&args.render)?;
    // Look for the renderer before compiling so a missing tool is reported
    // without a screenful of diagnostics first.
    let renderer = match args.format {
        Format::Svg | Format::Png => Some(find_renderer(args.renderer.as_deref())?),
        Format::Dot | Format::Json => None,
    };
    let c = front_end(&args.input, io)?;
    let bytes = match args.format {
        Format::Dot => emit::to_dot(&c.graph, &opts).into_bytes(),
        Format::Json => emit::to_json(&c.graph).into_bytes(),
        Format::Svg | Format::Png => {
            let dot = emit::to_dot(&c.graph, &opts);
            run_renderer(renderer.as_deref().unwrap(), args.format, &dot)?
        }
    };
    write_output(args.output.as_deref(), &bytes, io.stdout)?;
    Ok(status(&c.diagnostics, args.strict))
}

fn lint(args: LintArgs, io: &mut Io<'_>) -> Outcome {
    let c = front_end(&args.input, io)?;
    Ok(status(&c.diagnostics, args.strict))
}

#[derive(Serialize)]
struct FileStats {
    input: String,
    stats: GraphStats,
}

#[derive(Serialize)]
struct StatsReport {
    graphs: Vec<FileStats>,
    corpus: CorpusStats,
}

fn stats(args: StatsArgs, io: &mut Io<'_>) -> Outcome {
    if args.inputs.iter().filter(|p| is_stdin(p)).count() > 1 {
        return Err(Failure::new(
            EXIT_USAGE,
            anyhow!("`-` may be given only once"),
        ));
    }
    let mut stdin_text = None;
    if args.inputs.iter().any(|p| is_stdin(p)) {
        stdin_text = Some(read_input(Path::new("-"), io.stdin)?);
    }
    // Compile in parallel; results keep input order.
    let loaded: Vec<Result<_, Failure>> = args
        .inputs
        .par_iter()
        .map(|path| {
            let source = match &stdin_text {
                Some(text) if is_stdin(path) => text.clone(),
                _ => read_input(path, &mut io::empty())?,
            };
            Ok(proofflow::compile(&source))
        })
        .collect();

    let mut code = EXIT_OK;
    let mut graphs = Vec::new();
    for (path, result) in args.inputs.iter().zip(loaded) {
        let name = display_name(path);
        match result? {
            Ok(c) => {
                report(&name, &c.diagnostics, io.stderr);
                code = code.max(status(&c.diagnostics, false));
                graphs.push(FileStats {
                    input: name,
                    stats: metrics::graph_stats(&c.graph),
                });
            }
            Err(d) => {
                report(&name, &d, io.stderr);
                return Err(Failure::new(
                    EXIT_PARSE,
                    anyhow!("`{name}` could not be parsed"),
                ));
            }
        }
    }

    let mut text = if graphs.len() == 1 {
        serde_json::to_string_pretty(&graphs[0].stats)
    } else {
        let all: Vec<GraphStats> = graphs.iter().map(|g| g.stats.clone()).collect();
        let corpus = metrics::corpus_stats(&all).expect("at least one input");
        serde_json::to_string_pretty(&StatsReport { graphs, corpus })
    }
    .expect("stats serialize");
    text.push('\n');
    write_output(args.output.as_deref(), text.as_bytes(), io.stdout)?;
    Ok(code)
}
