use branchcover::cli::{run, Cli};
use clap::Parser;

fn main() {
    let out = run(&Cli::parse());
    print!("{}", out.text);
    std::process::exit(out.code);
}
