use clap::Parser;
use goldilocks_cli::{run, Cli, Command, Format};
use std::io::Write;
use std::process::ExitCode;

/// Thread count for parallel sweeps; unset or `0` leaves rayon's default.
const THREADS_VAR: &str = "GOLDILOCKS_THREADS";

fn format_of(c: &Command) -> Format {
    match c {
        Command::Spectrum(a) => a.format,
        Command::Levels(a) => a.format,
        Command::Wavefunction(a) => a.format,
        Command::Slopes(a) => a.format,
        Command::LadderCheck(a) => a.format,
        Command::ContactEd(a) => a.format,
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_VAR} must be a non-negative integer, got '{v}'"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("usage error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli.command) {
        Ok(outcome) => {
            let text = match format_of(&cli.command) {
                Format::Csv => outcome.record.to_csv(),
                Format::Json => outcome.record.to_json(),
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            for v in &outcome.violations {
                eprintln!("invariant violated: {v}");
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
