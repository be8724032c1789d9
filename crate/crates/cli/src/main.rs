use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Ccdf(a) => commands::ccdf(a),
        Command::AnalyzePerm(a) => commands::analyze_perm(a),
        Command::AnalyzePss(a) => commands::analyze_pss(a),
        Command::VerifyVarRho(a) => commands::verify_var_rho(a),
        Command::GenPss(a) => commands::gen_pss(a),
        Command::GenPerm(a) => commands::gen_perm(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
