use clap::Parser;

fn main() {
    let cli = qcx::cli::Cli::parse();
    std::process::exit(qcx::run(&cli));
}
