use std::process::ExitCode;

fn main() -> ExitCode {
    dcf_throughput::harness::cli::main_with_args(std::env::args_os())
}
