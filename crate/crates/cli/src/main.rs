//! `qmod`: verification suites, single pairings and parameter sweeps for the
//! modular Fredholm modules.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qmod_core::ktheory::Sign;
use qmod_core::ModuleKind;

use commands::{Projection, Quantity};
use config::{parse_list, CliError, CliResult, Common, Format};

#[derive(Parser, Debug)]
#[command(
    name = "qmod",
    version,
    about = "Twisted Chern characters and modular index pairings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the invariant suite for one module.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate one pairing against its closed form.
    Pair {
        #[arg(value_enum)]
        quantity: Quantity,
        #[command(flatten)]
        common: Common,
        /// Level of the spectral projection for `p_k`.
        #[arg(long)]
        k: Option<usize>,
        /// `+` or `-` summand for `p_k`.
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
    },
    /// Evaluate a pairing over a grid of parameters.
    Sweep {
        #[arg(value_enum)]
        quantity: Quantity,
        #[command(flatten)]
        common: Common,
        /// Comma-separated q values.
        #[arg(long, default_value = "0.3,0.5,0.7")]
        qs: String,
        /// Comma-separated s values (Podleś only).
        #[arg(long, default_value = "0.25,0.5,1")]
        ss: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
    },
    /// Residuals of the defining relations on the truncated representation.
    Relations {
        #[command(flatten)]
        common: Common,
        /// Print the presentation, sigma and the K-theory representatives.
        #[arg(long)]
        dump_symbolic: bool,
        /// Write the dense matrix of one generator as JSON.
        #[arg(long, value_name = "GENERATOR")]
        dump_operator: Option<String>,
    },
}

fn projection(k: Option<usize>, sign: Option<String>) -> CliResult<Option<Projection>> {
    match (k, sign) {
        (None, None) => Ok(None),
        (Some(k), Some(s)) => {
            let sign =
                Sign::parse(&s).ok_or_else(|| CliError::Config(format!("bad sign '{s}'")))?;
            Ok(Some(Projection { k, sign }))
        }
        _ => Err(CliError::Config("--k and --sign go together".into())),
    }
}

fn finish(pass: bool) -> u8 {
    if pass {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Verify { mut common } => {
            common.load()?;
            let cfg = common.resolve(common.kind_or(ModuleKind::Podles)?)?;
            let checks = commands::verify_checks(&cfg)?;
            commands::emit(&cfg.output, &commands::render_checks(&cfg, &checks)?)?;
            Ok(finish(checks.iter().all(|c| c.pass)))
        }
        Command::Pair {
            quantity,
            mut common,
            k,
            sign,
        } => {
            let file = common.load()?;
            let proj = projection(file.k.or(k), file.sign.or(sign))?;
            let cfg = common.resolve(common.kind_or(quantity.default_kind())?)?;
            let r = commands::pair_report(quantity, &cfg, proj)?;
            commands::emit(
                &cfg.output,
                &commands::render_pairs(cfg.format, std::slice::from_ref(&r))?,
            )?;
            Ok(finish(r.pass))
        }
        Command::Sweep {
            quantity,
            mut common,
            qs,
            ss,
            k,
            sign,
        } => {
            let file = common.load()?;
            let proj = projection(file.k.or(k), file.sign.or(sign))?;
            let qs = match file.qs {
                Some(v) => v,
                None => parse_list(&qs)?,
            };
            let ss = match file.ss {
                Some(v) => v,
                None => parse_list(&ss)?,
            };
            let kind = common.kind_or(quantity.default_kind())?;
            let format = common.format.unwrap_or(Format::Csv);
            let reports = commands::sweep_reports(quantity, &common, kind, &qs, &ss, proj)?;
            commands::emit(&common.output, &commands::render_pairs(format, &reports)?)?;
            let worst = reports
                .iter()
                .map(|r| ((r.value.re - r.reference).powi(2) + r.value.im.powi(2)).sqrt())
                .fold(0.0, f64::max);
            let failed = reports.iter().filter(|r| !r.pass).count();
            eprintln!(
                "{} points, {failed} failed, max deviation from reference {worst:e}",
                reports.len()
            );
            Ok(finish(failed == 0))
        }
        Command::Relations {
            mut common,
            dump_symbolic,
            dump_operator,
        } => {
            common.load()?;
            let cfg = common.resolve(common.kind_or(ModuleKind::Podles)?)?;
            if dump_symbolic {
                commands::emit(&cfg.output, &commands::dump_symbolic(cfg.kind)?)?;
                return Ok(0);
            }
            if let Some(g) = dump_operator {
                commands::emit(&cfg.output, &commands::dump_operator(&cfg, &g)?)?;
                return Ok(0);
            }
            let checks = commands::relation_checks(&cfg)?;
            commands::emit(&cfg.output, &commands::render_checks(&cfg, &checks)?)?;
            Ok(finish(checks.iter().all(|c| c.pass)))
        }
    }
}

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("QMOD_THREADS") {
        let n: usize = v.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
            CliError::Config(format!(
                "QMOD_THREADS must be a positive integer, got '{v}'"
            ))
        })?;
        b = b.num_threads(n);
    }
    b.build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    std::panic::set_hook(Box::new(|info| eprintln!("internal error: {info}")));
    let outcome =
        std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| pool.install(|| run(cli))));
    match outcome {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(_) => ExitCode::from(1),
    }
}
