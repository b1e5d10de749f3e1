use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dcover::census::{self, CensusOptions, VerifyTier};
use dcover::FpPoly;

/// Elementary-abelian covers of doubled cycles.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep (n, p, eps) and emit one row per proper divisor of x^n - (-1)^eps.
    ///
    /// TSV columns: n p eps g d r wr mwr maxdiv order sym pred_G pred_Gt
    /// verified_Gt profile aut minimal simple status. JSON lines carry the same
    /// fields plus a `mismatches` list. Verification columns read `-` when the
    /// tier was not requested and `skipped` when the cover exceeds a budget.
    /// Exit code 2 means some prediction disagreed with its verification.
    Census {
        /// Primes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u64>,
        /// Cycle lengths: `a..b` (inclusive), a single value, or a comma list.
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value_t = Eps::Both)]
        eps: Eps,
        #[arg(long, default_value = "orbits", value_parser = parse_tier)]
        verify: VerifyTier,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest cover order that is built and verified.
        #[arg(long, default_value_t = 2500)]
        max_order: u128,
        /// Largest cover order given to the automorphism oracle.
        #[arg(long, default_value_t = 256)]
        aut_limit: usize,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Write the edge list of one cover: a header line, then sorted `u v` lines.
    Export {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: u8,
        /// Coefficients low to high, e.g. "5 1" for x + 5.
        #[arg(long)]
        g: String,
        #[arg(long)]
        out: PathBuf,
        /// Also write the voltage columns, one `j: <r ints>` line per layer.
        #[arg(long)]
        voltages: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Eps {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Jsonl,
}

fn parse_tier(s: &str) -> Result<VerifyTier, String> {
    s.parse()
}

fn parse_range(s: &str) -> Result<Vec<usize>> {
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().context("range start")?;
        let b: usize = b.trim_start_matches('=').trim().parse().context("range end")?;
        if a > b {
            bail!("empty range {s}");
        }
        return Ok((a..=b).collect());
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().with_context(|| format!("bad n value {x:?}")))
        .collect()
}

fn run() -> Result<bool> {
    match Cli::parse().cmd {
        Command::Census { p, n, eps, verify, format, out, max_order, aut_limit, jobs } => {
            let ns = parse_range(&n)?;
            let epss: &[u8] = match eps {
                Eps::Zero => &[0],
                Eps::One => &[1],
                Eps::Both => &[0, 1],
            };
            let opts = CensusOptions { verify, max_order, aut_limit, jobs };
            let rows = census::run_census(&p, &ns, epss, &opts)?;
            let mut w: Box<dyn Write> = match &out {
                Some(path) => Box::new(BufWriter::new(
                    File::create(path).with_context(|| format!("creating {}", path.display()))?,
                )),
                None => Box::new(BufWriter::new(io::stdout().lock())),
            };
            match format {
                Format::Tsv => census::write_tsv(&rows, &mut w)?,
                Format::Jsonl => census::write_jsonl(&rows, &mut w)?,
            }
            w.flush()?;
            let bad: Vec<_> = rows.iter().filter(|r| !r.is_consistent()).collect();
            for r in &bad {
                eprintln!(
                    "mismatch: n={} p={} eps={} g={}: {}",
                    r.n,
                    r.p,
                    r.eps,
                    r.g,
                    r.mismatches.join("; ")
                );
            }
            Ok(bad.is_empty())
        }
        Command::Export { p, n, eps, g, out, voltages } => {
            let g = FpPoly::parse(p, &g)?;
            census::export_graph(p, n, eps, &g, &out, voltages.as_deref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
