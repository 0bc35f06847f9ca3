use clap::Parser;
use paradd_cli::{execute, Cli, EXIT_INVALID};

fn main() {
    let cli = Cli::parse();
    let report = execute(&cli);
    let text = report.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("{}: {e}", path.display());
                std::process::exit(EXIT_INVALID);
            }
        }
        None => print!("{text}"),
    }
    std::process::exit(report.exit_code);
}
