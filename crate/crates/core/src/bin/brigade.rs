use std::process::ExitCode;

fn main() -> ExitCode {
    brigade::cli::main_with_args(std::env::args_os())
}
