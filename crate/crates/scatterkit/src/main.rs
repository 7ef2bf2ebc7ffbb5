use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(scatterkit::cli::run() as u8)
}
