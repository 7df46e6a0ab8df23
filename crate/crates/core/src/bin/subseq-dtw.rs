use std::process::ExitCode;

fn main() -> ExitCode {
    subseq_dtw::cli::run(std::env::args_os())
}
