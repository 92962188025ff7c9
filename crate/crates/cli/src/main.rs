use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(monoext_cli::run(std::env::args_os()))
}
