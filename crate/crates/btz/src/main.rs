use std::process::ExitCode;

fn main() -> ExitCode {
    btz::cli::main()
}
