mod args;
mod batch;
mod commands;
mod svg;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    std::process::exit(commands::dispatch(cli));
}
