use clap::Parser;

use comanifold_cli::{resolve_format, run, Cli};

fn main() {
    let cli = Cli::parse();
    let format = match resolve_format(cli.format) {
        Ok(format) => format,
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    };
    match run(cli.command, format) {
        Ok(code) => std::process::exit(code),
        Err(error) => {
            eprintln!("error: {error:#}");
            std::process::exit(1);
        }
    }
}
