use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use corrdyn_cli::{
    run_sweep, run_transitions, run_verify, TransitionQuery, VerifyOptions,
};
use corrdyn_core::{BipartitionLabel, ChannelKind, TransitionKind};

#[derive(Parser)]
#[command(
    name = "corrdyn",
    version,
    about = "Decoherence dynamics of two-qubit correlations under local noise channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep config (JSON) and export one CSV per bipartition.
    Sweep {
        /// Path to the JSON config file.
        config: PathBuf,
    },
    /// Check the closed-form reduced matrices against the numeric evolution.
    Verify(VerifyArgs),
    /// Locate entanglement sudden death / sudden birth for a Werner state.
    Transitions(TransitionArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict to one channel kind.
    #[arg(long)]
    channel: Option<String>,
    /// Max allowed entrywise deviation.
    #[arg(long, default_value_t = corrdyn_core::tol::ORACLE_MATCH)]
    tolerance: f64,
    /// Seed for the Bell-diagonal parameter draws.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Number of Bell-diagonal parameter draws.
    #[arg(long, default_value_t = 10)]
    draws: usize,
    /// Number of uniform p values in [0, 1].
    #[arg(long, default_value_t = 11)]
    p_points: usize,
    /// Test mode: corrupt one oracle cell, given as `<channel>:<partition>`.
    #[arg(long)]
    inject_fault: Option<String>,
}

#[derive(Args)]
struct TransitionArgs {
    #[arg(long)]
    channel: String,
    /// Werner parameter in [0, 1].
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    partition: String,
    /// Either `death` or `birth`.
    #[arg(long)]
    event: String,
    /// Bisection interval tolerance.
    #[arg(long, default_value_t = corrdyn_core::tol::TRANSITION_INTERVAL)]
    tol: f64,
}

fn parse_channel(s: &str) -> Result<ChannelKind, String> {
    ChannelKind::parse(s).ok_or_else(|| format!("unknown channel `{s}`"))
}

fn parse_partition(s: &str) -> Result<BipartitionLabel, String> {
    BipartitionLabel::parse(s).ok_or_else(|| format!("unknown partition `{s}`"))
}

fn cmd_sweep(config: &std::path::Path) -> ExitCode {
    match run_sweep(config) {
        Ok(manifest) => {
            for output in &manifest.outputs {
                eprintln!("wrote {}", output.path);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, String> {
    let channel = args.channel.as_deref().map(parse_channel).transpose()?;
    let inject_fault = args
        .inject_fault
        .as_deref()
        .map(|spec| -> Result<_, String> {
            let (kind, part) = spec
                .split_once(':')
                .ok_or_else(|| format!("expected `<channel>:<partition>`, got `{spec}`"))?;
            Ok((parse_channel(kind)?, parse_partition(part)?))
        })
        .transpose()?;
    let report = run_verify(&VerifyOptions {
        channel,
        tolerance: args.tolerance,
        seed: args.seed,
        draws: args.draws,
        p_points: args.p_points,
        inject_fault,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    if report.all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        for check in report.checks.iter().filter(|c| !c.pass) {
            eprintln!(
                "oracle mismatch at {}/{}: max deviation {:.3e} > {:.3e}",
                check.channel, check.partition, check.max_deviation, report.tolerance
            );
        }
        Ok(ExitCode::from(3))
    }
}

fn cmd_transitions(args: &TransitionArgs) -> Result<ExitCode, String> {
    let event = match args.event.as_str() {
        "death" => TransitionKind::Death,
        "birth" => TransitionKind::Birth,
        other => return Err(format!("unknown event `{other}` (use death|birth)")),
    };
    let query = TransitionQuery {
        channel: parse_channel(&args.channel)?,
        alpha: args.alpha,
        partition: parse_partition(&args.partition)?,
        event,
        interval: args.tol,
    };
    match run_transitions(&query) {
        Ok(Some(p)) => {
            println!("{p:.9}");
            Ok(ExitCode::SUCCESS)
        }
        Ok(None) => {
            println!("none");
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => Err(e.message().to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not flag errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let result = match &cli.command {
        Command::Sweep { config } => return cmd_sweep(config),
        Command::Verify(args) => cmd_verify(args),
        Command::Transitions(args) => cmd_transitions(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
