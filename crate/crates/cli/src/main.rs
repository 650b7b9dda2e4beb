use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gammalab::run(std::env::args_os()))
}
