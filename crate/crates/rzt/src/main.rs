use clap::Parser;

fn main() {
    let cli = rzt::cli::Cli::parse();
    let code = rzt::cli::run(cli, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
