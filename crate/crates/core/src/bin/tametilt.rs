use clap::error::ErrorKind;
use clap::Parser;

use tametilt::cli::{run, usage_error, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return;
        }
        Err(e) => {
            eprint!("{e}");
            let out = usage_error(&e.kind().to_string());
            print!("{}", out.stdout);
            std::process::exit(out.code);
        }
    };
    let out = run(&cli);
    print!("{}", out.stdout);
    std::process::exit(out.code);
}
