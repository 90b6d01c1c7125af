//! Trace replayer for the `multistream` matcher.
//!
//! Reads interleaved `<stream_id><TAB><symbol>` events, pushes each into its
//! stream and prints one record per report that has a full alignment.

use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use multistream::oracle::{oracle_exact_reports, oracle_hamming, oracle_kdiff};
use multistream::{Engine, MatchReport, Mode, OpsReport, SpaceReport, StreamId, Verdict};
use serde::Serialize;

pub mod trace;

use trace::parse_line;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIVERGED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportKind {
    Space,
    Ops,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "multistream",
    version,
    about = "Replay a multi-stream trace through the matcher"
)]
pub struct Args {
    /// Pattern given inline (bytes of the argument)
    #[arg(
        long,
        conflicts_with = "pattern_file",
        required_unless_present = "pattern_file"
    )]
    pub pattern: Option<String>,

    /// Read the pattern from a file; one trailing newline is dropped
    #[arg(long, value_name = "PATH")]
    pub pattern_file: Option<PathBuf>,

    #[arg(long, value_parser = parse_mode)]
    pub mode: Mode,

    /// Error bound, required for mismatch and difference
    #[arg(long)]
    pub k: Option<usize>,

    /// Trace file, or `-` for stdin
    #[arg(long, value_name = "PATH", default_value = "-")]
    pub trace: String,

    /// Check every report against a brute-force oracle
    #[arg(long)]
    pub verify: bool,

    #[arg(long, value_enum, default_value = "none")]
    pub report: ReportKind,

    #[arg(long, value_enum, default_value = "tsv")]
    pub format: Format,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
        .map_err(|_| format!("expected exact, mismatch or difference, got {s:?}"))
}

#[derive(Serialize)]
struct Record {
    stream_id: u64,
    position: u64,
    verdict: &'static str,
    distance: Option<u32>,
}

#[derive(Serialize)]
struct StreamSpace {
    stream_id: u64,
    words: usize,
}

#[derive(Serialize)]
struct SpaceOut {
    pattern_words: usize,
    streams: Vec<StreamSpace>,
    total_words: usize,
}

#[derive(Serialize)]
struct OpsOut {
    mode: String,
    k: usize,
    pushes: u64,
    per_push_max_ops: u64,
    total_ops: u64,
    lce_queries: u64,
    max_regions_per_query: u32,
    out_of_window_events: u64,
}

struct Event {
    line: usize,
    stream: usize,
    report: MatchReport,
}

/// Parses `argv` (program name first) and runs the replay. Returns the
/// process exit code.
pub fn run_cli<I, T>(
    argv: I,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match run(&args, stdin, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn load_pattern(args: &Args) -> Result<Vec<u8>, Failure> {
    if let Some(p) = &args.pattern {
        return Ok(p.as_bytes().to_vec());
    }
    let path = args
        .pattern_file
        .as_ref()
        .expect("clap enforces one pattern source");
    let mut bytes = fs::read(path)
        .map_err(|e| Failure::Usage(format!("cannot read pattern file {}: {e}", path.display())))?;
    if bytes.last() == Some(&b'\n') {
        bytes.pop();
        if bytes.last() == Some(&b'\r') {
            bytes.pop();
        }
    }
    Ok(bytes)
}

fn run(
    args: &Args,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let k = match (args.mode, args.k) {
        (Mode::Exact, k) => k.unwrap_or(0),
        (_, Some(k)) => k,
        (mode, None) => return Err(Failure::Usage(format!("--k is required in {mode} mode"))),
    };
    let pattern = load_pattern(args)?;
    let mut engine =
        Engine::new(&pattern, args.mode, k).map_err(|e| Failure::Usage(e.to_string()))?;

    let mut file_reader;
    let reader: &mut dyn BufRead = if args.trace == "-" {
        stdin
    } else {
        let f = fs::File::open(&args.trace)
            .map_err(|e| Failure::Usage(format!("cannot open trace {}: {e}", args.trace)))?;
        file_reader = BufReader::new(f);
        &mut file_reader
    };

    let mut out = io::BufWriter::new(out);
    let mut texts: Vec<Vec<u8>> = Vec::new();
    let mut events: Vec<Event> = Vec::new();
    let mut buf = Vec::new();
    let mut line_no = 0usize;
    loop {
        buf.clear();
        if reader.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let line = buf.strip_suffix(b"\n").unwrap_or(&buf);
        let ev = match parse_line(line) {
            Ok(Some(ev)) => ev,
            Ok(None) => continue,
            Err(e) => return Err(Failure::Usage(format!("trace line {line_no}: {e}"))),
        };
        let sid = ev.stream_id as usize;
        if sid > texts.len() {
            return Err(Failure::Usage(format!(
                "trace line {line_no}: stream id {sid} skips id {} (ids must be dense from 0)",
                texts.len()
            )));
        }
        if sid == texts.len() {
            engine.add_stream();
            texts.push(Vec::new());
        }
        let report = engine
            .push(StreamId(ev.stream_id), ev.symbol)
            .expect("streams are created on first mention");
        if args.verify {
            texts[sid].push(ev.symbol);
            events.push(Event {
                line: line_no,
                stream: sid,
                report,
            });
        }
        if report.verdict != Verdict::NoAlignment {
            write_record(&mut out, args, ev.stream_id, &report)?;
        }
    }

    match args.report {
        ReportKind::Space => write_space(&mut out, args.format, &engine.space_report())?,
        ReportKind::Ops => write_ops(&mut out, args.format, &engine.ops_report())?,
        ReportKind::None => {}
    }
    out.flush()?;

    if args.verify {
        if let Some(msg) = first_divergence(&pattern, args.mode, k, &texts, &events) {
            writeln!(err, "verify: {msg}")?;
            return Ok(EXIT_DIVERGED);
        }
    }
    Ok(EXIT_OK)
}

fn write_record(
    out: &mut dyn Write,
    args: &Args,
    stream_id: u64,
    r: &MatchReport,
) -> io::Result<()> {
    let distance = match args.mode {
        Mode::Exact => None,
        _ => r.distance(),
    };
    match args.format {
        Format::Tsv => {
            let d = distance.map(|d| d.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{stream_id}\t{}\t{}\t{d}",
                r.position,
                r.verdict.as_str()
            )
        }
        Format::Json => {
            let rec = Record {
                stream_id,
                position: r.position,
                verdict: r.verdict.as_str(),
                distance,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&rec).map_err(io::Error::other)?
            )
        }
    }
}

fn write_space(out: &mut dyn Write, format: Format, s: &SpaceReport) -> io::Result<()> {
    match format {
        Format::Tsv => {
            writeln!(out, "# space\tpattern_words\t{}", s.pattern_words)?;
            for (sid, w) in &s.per_stream_words {
                writeln!(out, "# space\tstream_words\t{sid}\t{w}")?;
            }
            writeln!(out, "# space\ttotal_words\t{}", s.total_words)
        }
        Format::Json => {
            let o = SpaceOut {
                pattern_words: s.pattern_words,
                streams: s
                    .per_stream_words
                    .iter()
                    .map(|&(sid, words)| StreamSpace {
                        stream_id: sid.0,
                        words,
                    })
                    .collect(),
                total_words: s.total_words,
            };
            let v = serde_json::json!({ "space": o });
            writeln!(out, "{v}")
        }
    }
}

fn write_ops(out: &mut dyn Write, format: Format, r: &OpsReport) -> io::Result<()> {
    let o = OpsOut {
        mode: r.mode.to_string(),
        k: r.k,
        pushes: r.pushes,
        per_push_max_ops: r.per_push_max_ops,
        total_ops: r.total_ops,
        lce_queries: r.lce_queries,
        max_regions_per_query: r.max_regions_per_query,
        out_of_window_events: r.out_of_window_events,
    };
    match format {
        Format::Tsv => {
            let fields: [(&str, String); 8] = [
                ("mode", o.mode.clone()),
                ("k", o.k.to_string()),
                ("pushes", o.pushes.to_string()),
                ("per_push_max_ops", o.per_push_max_ops.to_string()),
                ("total_ops", o.total_ops.to_string()),
                ("lce_queries", o.lce_queries.to_string()),
                ("max_regions_per_query", o.max_regions_per_query.to_string()),
                ("out_of_window_events", o.out_of_window_events.to_string()),
            ];
            for (key, value) in fields {
                writeln!(out, "# ops\t{key}\t{value}")?;
            }
            Ok(())
        }
        Format::Json => writeln!(out, "{}", serde_json::json!({ "ops": o })),
    }
}

fn first_divergence(
    pattern: &[u8],
    mode: Mode,
    k: usize,
    texts: &[Vec<u8>],
    events: &[Event],
) -> Option<String> {
    let expected: Vec<Vec<MatchReport>> = texts
        .iter()
        .map(|t| match mode {
            Mode::Exact => oracle_exact_reports(pattern, t),
            Mode::Mismatch => oracle_hamming(pattern, t, k),
            Mode::Difference => oracle_kdiff(pattern, t, k),
        })
        .collect();
    let mut seen = vec![0usize; texts.len()];
    for ev in events {
        let want = expected[ev.stream][seen[ev.stream]];
        seen[ev.stream] += 1;
        if !agrees(mode, &ev.report, &want) {
            return Some(format!(
                "trace line {}: stream {} position {}: engine {} but oracle {}",
                ev.line, ev.stream, ev.report.position, ev.report.verdict, want.verdict
            ));
        }
    }
    None
}

/// In difference mode the oracle has no alignment-length notion, so the
/// engine's early `NoMatch` and `NoAlignment` both stand for "no hit".
fn agrees(mode: Mode, got: &MatchReport, want: &MatchReport) -> bool {
    if got.position != want.position {
        return false;
    }
    match mode {
        Mode::Difference => got.distance() == want.distance(),
        _ => got.verdict == want.verdict,
    }
}
