use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use hktor::asymptotics::rational_from_decimal;
use hktor::exec::{execute, ExecOptions, EXIT_INPUT, EXIT_IO};
use hktor::jobspec::parse_jobspec;
use hktor::parse::parse_polynomial;
use hktor::report::{csv_text, report_json, write_atomic};

/// Exact Frobenius-twisted homological invariants for graded quotient rings
/// over prime fields.
#[derive(Parser, Debug)]
#[command(name = "hktor", version, about)]
struct Cli {
    /// Job file ([ring] and [job] sections)
    #[arg(long)]
    job: PathBuf,

    /// Override the job's emax
    #[arg(long)]
    emax: Option<u32>,

    /// Override the job's spots, comma separated (e.g. 1,2,3)
    #[arg(long)]
    spot: Option<String>,

    /// Override the job's resolution length
    #[arg(long)]
    length: Option<usize>,

    /// Override the job's tolerance (decimal, e.g. 0.01)
    #[arg(long)]
    tol: Option<String>,

    /// Override the job's candidate multiplier (polynomial text)
    #[arg(long)]
    c: Option<String>,

    /// Write the table as CSV to this path
    #[arg(long)]
    csv: Option<PathBuf>,

    /// Write the report document to this path (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Cache directory (default: $HKTOR_CACHE_DIR, else no cache)
    #[arg(long)]
    cache_dir: Option<PathBuf>,

    /// Disable the cache entirely
    #[arg(long)]
    no_cache: bool,

    /// Worker threads for per-(i,e) homology computations (0 = rayon default)
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

fn fail(code: i32, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("hktor: {msg}");
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let text = match std::fs::read_to_string(&cli.job) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_IO, format!("cannot read job file '{}': {e}", cli.job.display())),
    };
    let mut job = match parse_jobspec(&text) {
        Ok(j) => j,
        Err(e) => return fail(EXIT_INPUT, e),
    };

    // flag overrides
    if let Some(e) = cli.emax {
        job.emax = Some(e);
    }
    if let Some(sp) = &cli.spot {
        let mut spots = Vec::new();
        for part in sp.split(',') {
            match part.trim().parse::<usize>() {
                Ok(i) => spots.push(i),
                Err(_) => return fail(EXIT_INPUT, format!("bad --spot value '{part}'")),
            }
        }
        job.spots = Some(spots);
    }
    if let Some(l) = cli.length {
        job.length = Some(l);
    }
    if let Some(t) = &cli.tol {
        if let Err(e) = rational_from_decimal(t) {
            return fail(EXIT_INPUT, e);
        }
        job.tol = Some(t.clone());
    }
    if let Some(c) = &cli.c {
        match parse_polynomial(&job.descriptor, c) {
            Ok(p) => job.c = Some(p),
            Err(e) => return fail(EXIT_INPUT, format!("bad --c polynomial: {e}")),
        }
    }
    if let Some(p) = &cli.csv {
        job.csv = Some(p.clone());
    }
    if let Some(p) = &cli.out {
        job.out = Some(p.clone());
    }

    let cache_dir = if cli.no_cache {
        None
    } else {
        cli.cache_dir
            .clone()
            .or_else(|| std::env::var_os("HKTOR_CACHE_DIR").map(PathBuf::from))
    };
    let opts = ExecOptions { cache_dir, threads: cli.threads };

    let (report, exit) = execute(&job, &opts);
    for err in &report.body.errors {
        eprintln!("hktor: {err}");
    }

    let json = report_json(&report);
    if let Some(out) = &job.out {
        if let Err(e) = write_atomic(out, &json) {
            return fail(EXIT_IO, format!("cannot write report '{}': {e}", out.display()));
        }
    } else {
        print!("{json}");
    }
    if let Some(csv) = &job.csv {
        if let Err(e) = write_atomic(csv, &csv_text(&report.body.table)) {
            return fail(EXIT_IO, format!("cannot write csv '{}': {e}", csv.display()));
        }
    }
    ExitCode::from(exit as u8)
}
