use std::process::ExitCode;

fn main() -> ExitCode {
    gpcas::cli::run()
}
