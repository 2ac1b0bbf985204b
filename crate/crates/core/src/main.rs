use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let code =
        kneighborhood::cli::main_with(&args, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}
