use clap::Parser;

fn main() {
    let cli = smc_cli::Cli::parse();
    let code = smc_cli::run(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
