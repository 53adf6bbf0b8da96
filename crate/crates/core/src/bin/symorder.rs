use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use symorder::builders::{self, ClassData, Fixture, GroupTable};
use symorder::bundle::Bundle;
use symorder::lattice::Limits;
use symorder::report::{run, Command, Options};
use symorder::{Prime, Result};

#[derive(Parser)]
#[command(name = "symorder", version, about = "Checks on symmetric orders over the p-local integers")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a named check over a bundle.
    Check {
        #[arg(long)]
        bundle: PathBuf,
        /// validate, symmetrising, casimir, psp, tate, knorr, stable-exponent,
        /// constant-value, morita-psp, rational, heights, divisibility or all
        #[arg(long, default_value = "all")]
        check: String,
        /// Form used by form-dependent checks (default: the first in the bundle).
        #[arg(long)]
        form: Option<String>,
        /// Box bound for the Morita and rational searches.
        #[arg(long, default_value_t = 5)]
        bound: i64,
        /// Largest residue End dimension searched exhaustively for the radical.
        #[arg(long, default_value_t = 6)]
        radical_dim: usize,
        /// Largest p^rank enumerated when spinning residue vectors.
        #[arg(long, default_value_t = 1_000_000)]
        spin_limit: u64,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Record elapsed time per entry.
        #[arg(long)]
        timings: bool,
    },
    /// Emit a built-in fixture as a bundle.
    Build {
        #[command(subcommand)]
        builder: Builder,
        /// Output path (stdout if absent).
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Builder {
    /// Group algebra of S3.
    S3 {
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
    /// Group algebra of a cyclic group.
    Cyclic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    /// The rank-2 order spanned by (1,1) and (0,p^m).
    Rank2 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u64,
    },
    /// Rank-1 Hecke algebra with parameter q.
    Hecke {
        #[arg(long)]
        q: i64,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Character ring of S3 or C2.
    CharacterRing {
        #[arg(long, value_parser = ["s3", "c2"])]
        group: String,
        #[arg(long)]
        p: u64,
    },
    /// The 4-dimensional commutative order with parameter x at p = 2.
    FourDim {
        #[arg(long)]
        x: i64,
    },
    /// Full matrix order of size n.
    Matrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
}

fn build(b: &Builder) -> Result<Fixture> {
    match *b {
        Builder::S3 { p } => builders::symmetric_group_s3(Prime::new(p)?),
        Builder::Cyclic { n, p } => builders::group_algebra(&format!("C{n}"), &GroupTable::cyclic(n), Prime::new(p)?),
        Builder::Rank2 { m, p } => builders::rank2_order(m, Prime::new(p)?),
        Builder::Hecke { q, p } => builders::hecke_rank1(q, Prime::new(p)?),
        Builder::CharacterRing { ref group, p } => {
            let data = if group == "s3" { ClassData::s3() } else { ClassData::c2() };
            builders::character_ring(&data, Prime::new(p)?)
        }
        Builder::FourDim { x } => builders::four_dim_nonrational(x),
        Builder::Matrix { n, p } => builders::matrix_order(n, Prime::new(p)?),
    }
}

fn write(path: Option<&PathBuf>, text: &str) -> std::result::Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Check { bundle, check, form, bound, radical_dim, spin_limit, json, timings } => {
            let command: Command = match check.parse() {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let loaded = match Bundle::load(&bundle) {
                Ok(b) => b,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let limits = Limits { radical_dim, spin_size: spin_limit, ..Limits::default() };
            let options = Options { form, bound, limits, timings };
            let report = run(command, &loaded, &options);
            print!("{}", report.to_text());
            if let Some(path) = json {
                if let Err(e) = std::fs::write(&path, report.to_json()) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(report.exit_code as u8)
        }
        Cmd::Build { builder, out } => {
            let fixture = match build(&builder) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match write(out.as_ref(), &Bundle::from_fixture(&fixture).to_json()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
