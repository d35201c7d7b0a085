use clap::Parser;

use curveideal_cli::app::{self, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { app::EXIT_INPUT } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match app::execute(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            std::process::exit(out.exit);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit);
        }
    }
}
