use std::process::ExitCode;

fn main() -> ExitCode {
    siegel248::cli::main()
}
