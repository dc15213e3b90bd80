use clap::Parser;

fn main() {
    let cli = bochner::cli::Cli::parse();
    std::process::exit(bochner::cli::run(&cli));
}
