use std::process::ExitCode;

fn main() -> ExitCode {
    rama_sim::cli::main_with_args(std::env::args_os())
}
