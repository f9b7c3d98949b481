use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use recoupling::asymptotics::asym12j;
use recoupling::exact::{wigner12j_first_with, wigner6j, wigner9j_with, DEFAULT_DIGITS};
use recoupling::harness::{
    emit_csv, emit_plot, error_metrics, run_sweep, validate, write_csv, SweepConfig,
    ValidateOptions,
};
use recoupling::{Error, Spin, Symbol12Args};

/// Exact and asymptotic Wigner recoupling symbols.
///
/// Spins are written as `n` or `n/2`.
#[derive(Parser)]
#[command(name = "recoupling", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact 6j symbol {a b c; d e f}
    Exact6j {
        #[arg(num_args = 6, required = true, value_names = ["A", "B", "C", "D", "E", "F"])]
        spins: Vec<Spin>,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: u32,
    },
    /// Exact 9j symbol, rows left to right
    Exact9j {
        #[arg(num_args = 9, required = true, value_name = "J")]
        spins: Vec<Spin>,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: u32,
    },
    /// Exact 12j symbol of the first kind: j1 s2 j12 j346 j3 j4 j34 j135 j13 j24 j5 j6
    Exact12j {
        #[arg(num_args = 12, required = true, value_name = "J")]
        spins: Vec<Spin>,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: u32,
    },
    /// Asymptotic 12j symbol with one small spin (s2), same argument order
    Asym12j {
        #[arg(num_args = 12, required = true, value_name = "J")]
        spins: Vec<Spin>,
    },
    /// Sweep j5 and compare exact with asymptotic values
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// CSV output (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// SVG plot output
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Run the identity and geometry suites
    Validate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        tuples: usize,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Forbidden { .. }
        | Error::Caustic { .. }
        | Error::Region { .. }
        | Error::EmptyRange
        | Error::NoAllowedRows
        | Error::UndefinedAngle(_) => 3,
        _ => 2,
    }
}

fn run(cmd: Command) -> Result<u8, Error> {
    match cmd {
        Command::Exact6j { spins, digits } => {
            let [a, b, c, d, e, f] = spins[..] else {
                unreachable!()
            };
            let v = wigner6j(a, b, c, d, e, f);
            println!("{:.*}", digits as usize, v);
        }
        Command::Exact9j { spins, digits } => {
            let rows = [
                [spins[0], spins[1], spins[2]],
                [spins[3], spins[4], spins[5]],
                [spins[6], spins[7], spins[8]],
            ];
            println!("{:.*}", digits as usize, wigner9j_with(rows, digits));
        }
        Command::Exact12j { spins, digits } => {
            let args = Symbol12Args::from_slice(&spins)?;
            println!(
                "{:.*}",
                digits as usize,
                wigner12j_first_with(&args, digits)
            );
        }
        Command::Asym12j { spins } => {
            let args = Symbol12Args::from_slice(&spins)?;
            let r = asym12j(&args)?;
            println!("{:e}", r.value);
            eprintln!(
                "prefactor {:e}  term1 {:.6}  term2 {:.6}  S1 {:.6}  S2 {:.6}  margins {:.4e} {:.4e}{}",
                r.prefactor,
                r.term1,
                r.term2,
                r.s1,
                r.s2,
                r.margin1,
                r.margin2,
                if r.near_caustic { "  (near caustic)" } else { "" }
            );
        }
        Command::Sweep { config, out, plot } => {
            let cfg = SweepConfig::load(&config)?;
            let rows = run_sweep(&cfg)?;
            match &out {
                Some(path) => emit_csv(&rows, path)?,
                None => write_csv(&rows, std::io::stdout().lock())?,
            }
            if let Some(path) = &plot {
                emit_plot(&rows, path, &format!("12j sweep: {}", cfg.base))?;
            }
            let m = error_metrics(&rows, cfg.margin)?;
            eprintln!(
                "rows {}  allowed j5 {}..{}  used {}  rms_rel_err {:.4}  max_abs_err {:.3e}  sign agreement {:.3}  nodes {}",
                rows.len(),
                Spin::from_twice(m.window.0),
                Spin::from_twice(m.window.1),
                m.rows_used,
                m.rms_rel_err,
                m.max_abs_err,
                m.sign_agreement,
                m.node_count
            );
        }
        Command::Validate { seed, tuples } => {
            let report = validate(&ValidateOptions {
                seed,
                tuples,
                ..Default::default()
            });
            println!("{report}");
            return Ok(if report.all_passed() { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = std::io::stdout().flush();
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
