use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let (code, output) = refinery::cli::run(&argv);
    let _ = std::io::stdout().write_all(output.as_bytes());
    std::process::exit(code);
}
