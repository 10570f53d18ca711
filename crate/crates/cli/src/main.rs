use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use rlz77::codec::{self, FactorWriter, Format};
use rlz77::parser::{self, ParseStats};
use rlz77::{Decoder, Error};

/// LZ77 compressor whose working memory follows the number of runs in the
/// BWT of the reversed input.
#[derive(Parser, Debug)]
#[command(name = "rlz77", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the LZ77 factors of the input.
    Compress {
        /// Input file (standard input when omitted).
        input: Option<PathBuf>,
        /// Output file (standard output when omitted).
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "binary")]
        format: FormatArg,
        /// Print statistics to standard error.
        #[arg(long)]
        stats: bool,
        /// Refuse inputs longer than this many bytes.
        #[arg(long = "max-n")]
        max_n: Option<u64>,
    },
    /// Rebuild the original bytes from a factor file.
    Decompress {
        input: Option<PathBuf>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "binary")]
        format: FormatArg,
    },
    /// Parse the input and print key=value statistics.
    Stats {
        input: Option<PathBuf>,
        #[arg(long = "max-n")]
        max_n: Option<u64>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Binary,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Binary => Format::Binary,
            FormatArg::Text => Format::Text,
        }
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_MALFORMED: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::Malformed(_) => EXIT_MALFORMED,
        Error::OutOfRange { .. } | Error::Contract(_) | Error::Corrupt(_) => EXIT_INTERNAL,
    }
}

fn open_input(path: Option<&Path>) -> Result<Box<dyn Read>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(File::open(p).map_err(|e| with_path(e, p))?)),
        None => Box::new(io::stdin().lock()),
    })
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| with_path(e, p))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn with_path(e: io::Error, p: &Path) -> Error {
    Error::Io(io::Error::new(e.kind(), format!("{}: {e}", p.display())))
}

struct Timings {
    build: Duration,
    parse: Duration,
}

fn report(stats: &ParseStats, t: &Timings) -> String {
    let n = &stats.nodes;
    let lines = [
        ("n", stats.n.to_string()),
        ("z", stats.z.to_string()),
        ("R", stats.runs.to_string()),
        ("max_samples", stats.max_samples.to_string()),
        ("final_samples", stats.final_samples.to_string()),
        (
            "max_samples_within_2R",
            (stats.max_samples <= 2 * stats.runs).to_string(),
        ),
        ("nodes_heads", n.heads.to_string()),
        ("nodes_run_starts", n.run_starts.to_string()),
        ("nodes_run_lengths", n.run_lengths.to_string()),
        ("nodes_symbol_counts", n.symbol_counts.to_string()),
        ("nodes_samples", stats.max_samples.to_string()),
        ("nodes_total", stats.total_nodes().to_string()),
        ("structure_ops", stats.total_ops().to_string()),
        (
            "ops_per_char",
            format!("{:.2}", stats.total_ops() as f64 / stats.n as f64),
        ),
        ("build_seconds", format!("{:.6}", t.build.as_secs_f64())),
        ("parse_seconds", format!("{:.6}", t.parse.as_secs_f64())),
    ];
    lines.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
}

fn compress(
    input: Option<&Path>,
    output: Option<&Path>,
    format: Format,
    max_n: Option<u64>,
) -> Result<(ParseStats, Timings), Error> {
    let out = open_output(output)?;
    let start = Instant::now();
    let bwt = parser::build(open_input(input)?, max_n)?;
    let build = start.elapsed();

    let start = Instant::now();
    let (factors, worker) = parser::spawn_factorizer(bwt, 4096);
    let mut writer = FactorWriter::new(out, format)?;
    let mut write_result = Ok(());
    for f in factors.iter() {
        if let Err(e) = writer.write(&f) {
            write_result = Err(e);
            break;
        }
    }
    drop(factors);
    let stats = worker
        .join()
        .map_err(|_| Error::Corrupt("parser thread panicked".into()));
    // a failed write makes the parser see a closed channel; report the write
    write_result?;
    let stats = stats??;
    writer.finish()?;
    Ok((
        stats,
        Timings {
            build,
            parse: start.elapsed(),
        },
    ))
}

fn decompress(input: Option<&Path>, output: Option<&Path>, format: Format) -> Result<(), Error> {
    let reader = BufReader::new(open_input(input)?);
    let mut dec = Decoder::new();
    match format {
        Format::Binary => {
            for f in codec::BinaryReader::new(reader)? {
                dec.push(f?)?;
            }
        }
        Format::Text => {
            for f in codec::TextReader::new(reader) {
                dec.push(f?)?;
            }
        }
    }
    // decode fully before touching the output
    let text = dec.finish()?;
    let mut out = open_output(output)?;
    out.write_all(&text)?;
    out.flush()?;
    Ok(())
}

fn stats(input: Option<&Path>, max_n: Option<u64>) -> Result<String, Error> {
    let start = Instant::now();
    let bwt = parser::build(open_input(input)?, max_n)?;
    let build = start.elapsed();
    let start = Instant::now();
    let stats = parser::factorize(&bwt, |_| Ok(()))?;
    let t = Timings {
        build,
        parse: start.elapsed(),
    };
    Ok(report(&stats, &t))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Compress {
            input,
            output,
            format,
            stats,
            max_n,
        } => {
            let result = compress(input.as_deref(), output.as_deref(), format.into(), max_n);
            if result.is_err() {
                if let Some(p) = &output {
                    let _ = std::fs::remove_file(p);
                }
            }
            let (s, t) = result?;
            if stats {
                eprint!("{}", report(&s, &t));
            }
            Ok(())
        }
        Command::Decompress {
            input,
            output,
            format,
        } => decompress(input.as_deref(), output.as_deref(), format.into()),
        Command::Stats { input, max_n } => {
            let text = stats(input.as_deref(), max_n)?;
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if matches!(&e, Error::Io(io) if io.kind() == io::ErrorKind::BrokenPipe) {
                return ExitCode::from(EXIT_IO);
            }
            eprintln!("rlz77: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
