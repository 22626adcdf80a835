use clap::Parser;

fn main() {
    let cli = coinwalk::cli::Cli::parse();
    std::process::exit(coinwalk::cli::main_with(cli));
}
