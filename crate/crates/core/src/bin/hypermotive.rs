use std::io::Write;

use clap::Parser;
use hypermotive::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (out, err, code) = run(&cli);
    std::io::stdout().write_all(out.as_bytes()).ok();
    std::io::stderr().write_all(err.as_bytes()).ok();
    std::process::exit(code);
}
