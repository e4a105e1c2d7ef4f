use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hyperell::code::DEFAULT_BUDGET;
use hyperell::jobspec::run_text;

/// Riemann-Roch bases and Goppa codes on imaginary hyperelliptic curves.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// Job file, or `-` for standard input.
    job: PathBuf,
    /// Largest number of messages the distance search may enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = if cli.job.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&cli.job)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error[Io]: {}: {e}", cli.job.display());
            return ExitCode::from(2);
        }
    };
    let out = run_text(&text, cli.budget);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.exit_code as u8)
}
