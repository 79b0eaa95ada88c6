use clap::Parser;

fn main() {
    let cli = relay_tradeoff_cli::args::Cli::parse();
    if let Err(e) = relay_tradeoff_cli::run(cli) {
        if e.is_broken_pipe() {
            return;
        }
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
