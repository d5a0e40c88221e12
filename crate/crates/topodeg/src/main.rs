use clap::Parser;

fn main() {
    let cli = topodeg::cli::Cli::parse();
    std::process::exit(topodeg::cli::main_with(&cli));
}
