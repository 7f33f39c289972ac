use std::process::ExitCode;

fn main() -> ExitCode {
    toric_roots::cli::main()
}
