use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = orbitcalc_cli::run(std::env::args(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(u8::try_from(code).unwrap_or(2))
}
