use std::io;
use std::process::ExitCode;

use clap::Parser;

use qfun_cli::{resolve, run, Cli, EXIT_ERROR};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match resolve(cli).and_then(|cfg| run(&cfg, &mut io::stdout().lock())) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qfun: {e}");
            EXIT_ERROR
        }
    };
    ExitCode::from(code as u8)
}
