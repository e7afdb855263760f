use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(relcoh::cli::run(std::env::args_os()))
}
