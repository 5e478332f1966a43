use clap::Parser;

fn main() {
    let cli = hh_cli::Cli::parse();
    std::process::exit(hh_cli::main_with(&cli));
}
