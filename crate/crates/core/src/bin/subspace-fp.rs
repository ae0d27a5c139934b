use std::process::ExitCode;

fn main() -> ExitCode {
    subspace_fp::cli::main_with_args(std::env::args_os())
}
