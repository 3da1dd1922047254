use clap::Parser;

fn main() {
    let cli = fewsum_cli::Cli::parse();
    let outcome = fewsum_cli::execute(cli);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
