use clap::Parser;

fn main() {
    let cli = ortega::cli::Cli::parse();
    let code = ortega::cli::run(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
