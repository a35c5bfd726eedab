//! `pcpl`: encode, decode and analyze integers with prefix codes for
//! power-law sources.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use pcpl::analysis::{
    designer_expected_length, golin, grid, is_j_smooth_lengths, smoothness_level, table2_grid,
    AnalysisError, GolinAlg,
};
use pcpl::bitio::{frame_read, frame_write, BitError, Frame, LexOrdering};
use pcpl::codes::{CodeError, CodeId};
use pcpl::distributions::{DistError, DistId};
use pcpl::rational::{cf_expand, decode_rational, encode_rational, Rational, RationalError};

#[derive(Parser)]
#[command(name = "pcpl", version, about = "Prefix codes for power-law sources")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode whitespace-separated positive integers into a PCPL frame.
    Encode {
        #[arg(long)]
        code: CodeId,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Decode a PCPL frame back to integers, one line, space-separated.
    Decode {
        /// Expected code; omit to trust the frame header.
        #[arg(long)]
        code: Option<CodeId>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Print `i`, `n(i)` and `c(i)` for the first symbols.
    Codebook {
        #[arg(long)]
        code: CodeId,
        #[arg(long, default_value_t = 10)]
        count: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Expected codeword lengths of every code column under each source.
    Analyze {
        /// Repeatable; defaults to the nine standard sources.
        #[arg(long = "dist")]
        dists: Vec<DistId>,
        #[arg(long, default_value_t = 1e-4)]
        precision: f64,
        #[arg(long, value_enum, default_value_t = GridFormat::Text)]
        format: GridFormat,
    },
    /// Build a Golin designer code for a source.
    Golin {
        #[arg(long)]
        dist: DistId,
        #[arg(long, value_parser = parse_alg, default_value = "2")]
        alg: GolinAlg,
        #[arg(long, default_value_t = 64)]
        groups: usize,
        /// Codeword lengths printed for the first symbols.
        #[arg(long, default_value_t = 16)]
        show: u64,
    },
    /// Encode a rational `p/q` as a continued fraction.
    RationalEncode {
        value: Rational,
        #[arg(long, default_value = "codek:-1")]
        code: CodeId,
        /// Print the payload bits instead of writing a frame.
        #[arg(long)]
        bits: bool,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Decode a frame written by `rational-encode` and print `p/q`.
    RationalDecode {
        #[arg(long)]
        code: Option<CodeId>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Structural diagnostics for a code over symbols `1..=n`.
    Check {
        #[arg(long)]
        code: CodeId,
        #[arg(long, default_value_t = 0)]
        j: u64,
        #[arg(long, default_value_t = 1000)]
        n: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridFormat {
    Text,
    Csv,
    Json,
}

fn parse_alg(s: &str) -> Result<GolinAlg, String> {
    match s {
        "1" => Ok(GolinAlg::Alg1),
        "2" => Ok(GolinAlg::Alg2),
        _ => Err(format!("expected 1 or 2, got {s:?}")),
    }
}

/// Exit statuses besides success and usage errors.
enum Failure {
    Data(anyhow::Error),
    NonConvergence(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Data(e)
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        Failure::Data(e.into())
    }
}

impl From<BitError> for Failure {
    fn from(e: BitError) -> Self {
        Failure::Data(e.into())
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        let stalled = matches!(
            e,
            AnalysisError::PrecisionUnreachable { .. }
                | AnalysisError::SandwichValidationFailed(_)
                | AnalysisError::Dist(DistError::PrecisionUnreachable { .. })
                | AnalysisError::Dist(DistError::SandwichValidationFailed(_))
        );
        if stalled {
            Failure::NonConvergence(e.into())
        } else {
            Failure::Data(e.into())
        }
    }
}

fn read_input(path: Option<&Path>) -> anyhow::Result<Vec<u8>> {
    let mut buf = Vec::new();
    match path {
        Some(p) => buf = fs::read(p).with_context(|| format!("reading {}", p.display()))?,
        None => {
            io::stdin().read_to_end(&mut buf).context("reading stdin")?;
        }
    }
    Ok(buf)
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn parse_symbols(text: &str) -> anyhow::Result<Vec<u64>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            let i: u64 = tok
                .parse()
                .with_context(|| format!("line {}: {tok:?} is not a positive integer", n + 1))?;
            if i == 0 {
                bail!("line {}: symbols start at 1", n + 1);
            }
            out.push(i);
        }
    }
    Ok(out)
}

/// The frame's code, checked against `--code` when given.
fn frame_code(frame: &Frame, expected: Option<CodeId>) -> anyhow::Result<CodeId> {
    let code = CodeId::from_frame_code(frame.code)?;
    if let Some(want) = expected {
        if want != code {
            bail!("frame was written with {code}, not {want}");
        }
    }
    Ok(code)
}

fn encode(code: CodeId, input: Option<&Path>, output: Option<&Path>) -> Result<(), Failure> {
    let text = String::from_utf8(read_input(input)?).context("input is not UTF-8")?;
    let codewords = parse_symbols(&text)?
        .into_iter()
        .map(|i| code.encode(i).with_context(|| format!("encoding {i}")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    write_output(output, &frame_write(code.frame_code(), &codewords))?;
    Ok(())
}

fn decode(
    code: Option<CodeId>,
    input: Option<&Path>,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let frame = frame_read(&read_input(input)?)?;
    let code = frame_code(&frame, code)?;
    let mut cur = frame.cursor();
    let mut text = String::new();
    for n in 0..frame.symbol_count {
        let i = code
            .decode(&mut cur)
            .with_context(|| format!("symbol {}", n + 1))?;
        if n > 0 {
            text.push(' ');
        }
        let _ = write!(text, "{i}");
    }
    if !cur.is_at_end() {
        return Err(anyhow!(
            "{} payload bits left after {} symbols",
            cur.remaining(),
            frame.symbol_count
        )
        .into());
    }
    text.push('\n');
    write_output(output, text.as_bytes())?;
    Ok(())
}

fn codebook(code: CodeId, count: u64, format: TableFormat) -> Result<(), Failure> {
    let entries = pcpl::codes::codebook(code, count)?;
    let mut s = String::new();
    match format {
        TableFormat::Text => {
            let _ = writeln!(s, "{:>8} {:>6}  codeword", "i", "n(i)");
            for e in &entries {
                let _ = writeln!(s, "{:>8} {:>6}  {}", e.symbol, e.length, e.codeword);
            }
        }
        TableFormat::Csv => {
            s.push_str("symbol,length,codeword\n");
            for e in &entries {
                let _ = writeln!(s, "{},{},{}", e.symbol, e.length, e.codeword);
            }
        }
    }
    write_output(None, s.as_bytes())?;
    Ok(())
}

fn analyze(dists: Vec<DistId>, precision: f64, format: GridFormat) -> Result<(), Failure> {
    if !(precision > 0.0 && precision.is_finite()) {
        return Err(anyhow!("precision must be positive, got {precision}").into());
    }
    let dists = if dists.is_empty() {
        DistId::standard_set()
    } else {
        dists
    };
    let rows = table2_grid(&dists, precision)?;
    let mut s = match format {
        GridFormat::Text => grid::to_text(&rows),
        GridFormat::Csv => grid::to_csv(&rows),
        GridFormat::Json => grid::to_json(&rows),
    };
    if !s.ends_with('\n') {
        s.push('\n');
    }
    write_output(None, s.as_bytes())?;
    Ok(())
}

fn golin_cmd(dist: DistId, alg: GolinAlg, groups: usize, show: u64) -> Result<(), Failure> {
    if groups == 0 {
        return Err(anyhow!("need at least one group").into());
    }
    let dc = golin(&dist, groups, alg);
    let e = designer_expected_length(&dc, &dist, dc.groups());
    let mut s = String::new();
    let _ = writeln!(s, "{dc} for {dist}, algorithm {alg}");
    let _ = writeln!(
        s,
        "{:>5} {:>4} {:>22} {:>6}",
        "group", "k", "symbols", "length"
    );
    for (h, &k) in dc.exponents.iter().enumerate() {
        let _ = writeln!(
            s,
            "{:>5} {:>4} {:>22} {:>6}",
            h + 1,
            k,
            1u128 << k,
            h as u64 + 1 + k as u64
        );
    }
    let lengths: Vec<String> = (1..=show)
        .map_while(|i| dc.length(i))
        .map(|n| n.to_string())
        .collect();
    let _ = writeln!(s, "lengths {}", lengths.join(" "));
    let _ = writeln!(
        s,
        "expected length {:.6} [{:.9}, {:.9}]",
        e.mid(),
        e.lo,
        e.hi
    );
    write_output(None, s.as_bytes())?;
    Ok(())
}

fn rational_encode(
    r: &Rational,
    code: CodeId,
    bits: bool,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let encode = || -> Result<_, RationalError> { Ok((cf_expand(r)?, encode_rational(r, code)?)) };
    let (cf, payload) = encode().context("encoding rational")?;
    if bits {
        write_output(output, format!("{payload}\n").as_bytes())?;
    } else {
        let frame = Frame::new(code.frame_code(), cf.terms.len() as u64 + 2, payload);
        write_output(output, &frame.to_bytes())?;
    }
    Ok(())
}

fn rational_decode(code: Option<CodeId>, input: Option<&Path>) -> Result<(), Failure> {
    let frame = frame_read(&read_input(input)?)?;
    let code = frame_code(&frame, code)?;
    let mut cur = frame.cursor();
    let r = decode_rational(&mut cur, code).context("decoding rational")?;
    if !cur.is_at_end() {
        return Err(anyhow!("{} payload bits left after the rational", cur.remaining()).into());
    }
    write_output(None, format!("{r}\n").as_bytes())?;
    Ok(())
}

fn check(code: CodeId, j: u64, n: u64) -> Result<(), Failure> {
    if n < 2 {
        return Err(anyhow!("need n >= 2").into());
    }
    let lengths: Vec<u64> = (1..=n).map(|i| code.raw_length(i)).collect();
    let monotone = lengths.windows(2).all(|w| w[0] <= w[1]);
    // consecutive codewords in strict order and never prefixes of each other
    let mut alphabetic = true;
    let mut prev = code.encode(1)?;
    for i in 2..=n {
        let next = code.encode(i).with_context(|| format!("encoding {i}"))?;
        alphabetic &= prev.lex_compare(&next) == LexOrdering::Less;
        prev = next;
    }
    let mut s = String::new();
    let _ = writeln!(s, "code {code}, symbols 1..={n}");
    let _ = writeln!(s, "smoothness level {}", smoothness_level(&lengths));
    let _ = writeln!(s, "{j}-smooth {}", is_j_smooth_lengths(&lengths, j));
    let _ = writeln!(s, "alphabetic {alphabetic}");
    let _ = writeln!(s, "monotone lengths {monotone}");
    let _ = writeln!(s, "kraft sum {:.12}", code.kraft_sum(n));
    write_output(None, s.as_bytes())?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Encode {
            code,
            input,
            output,
        } => encode(code, input.as_deref(), output.as_deref()),
        Command::Decode {
            code,
            input,
            output,
        } => decode(code, input.as_deref(), output.as_deref()),
        Command::Codebook {
            code,
            count,
            format,
        } => codebook(code, count, format),
        Command::Analyze {
            dists,
            precision,
            format,
        } => analyze(dists, precision, format),
        Command::Golin {
            dist,
            alg,
            groups,
            show,
        } => golin_cmd(dist, alg, groups, show),
        Command::RationalEncode {
            value,
            code,
            bits,
            output,
        } => rational_encode(&value, code, bits, output.as_deref()),
        Command::RationalDecode { code, input } => rational_decode(code, input.as_deref()),
        Command::Check { code, j, n } => check(code, j, n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::NonConvergence(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
