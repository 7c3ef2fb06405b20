use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use sundial_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("hilbert-sundial: {e}");
            e.exit_code()
        }
    };
    if let Err(e) = out.flush() {
        eprintln!("hilbert-sundial: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
