use clap::Parser;
use resdyn_cli::{run, Cli};
use serde_json::json;

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("{}", json!({ "warning": w }));
            }
            match outcome.failure {
                Some(e) => {
                    eprintln!("{}", e.to_json());
                    e.exit_code()
                }
                None => 0,
            }
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    };
    std::process::exit(code);
}
