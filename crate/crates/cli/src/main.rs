use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = episodes_cli::run(std::env::args_os(), &mut input, &mut out, &mut err);
    if out.flush().is_err() && code == 0 {
        return ExitCode::from(episodes_cli::EXIT_PARSE as u8);
    }
    ExitCode::from(code as u8)
}
