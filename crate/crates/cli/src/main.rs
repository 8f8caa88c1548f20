use std::io::{self, IsTerminal};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let ansi = gem_cli::ansi_from_env(stdout.is_terminal());
    let mut out = stdout.lock();
    let mut err = io::stderr().lock();
    let code = gem_cli::run(std::env::args_os(), &mut out, &mut err, ansi);
    ExitCode::from(code as u8)
}
