use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(pcrbc::cli::run(std::env::args_os()))
}
