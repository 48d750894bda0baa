use std::process::ExitCode;

use clap::Parser;
use padecheb_cli::args::{Cli, Command};
use padecheb_cli::registry::registry;
use padecheb_cli::run::{run_approx, run_convergence, thread_pool};
use padecheb_cli::CliError;

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Registry => {
            let text = serde_json::to_string_pretty(&registry()).map_err(|e| CliError::Io(e.to_string()))?;
            println!("{text}");
            Ok(())
        }
        Command::Approx(args) => {
            let config = args.into_config()?;
            let summary = thread_pool()?.install(|| run_approx(&config))?;
            for w in &summary.windows {
                println!("l1 = {:.6e}  linf = {:.6e}  poles = {}", w.l1, w.linf, w.pole_count);
            }
            Ok(())
        }
        Command::Convergence(args) => {
            let config = args.into_config()?;
            thread_pool()?.install(|| run_convergence(&config))?;
            println!("wrote {}", config.out.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("padecheb: {e}");
            if let CliError::Build { failed_cells, .. } = &e {
                if !failed_cells.is_empty() {
                    eprintln!("failed cells: {failed_cells:?}");
                }
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
