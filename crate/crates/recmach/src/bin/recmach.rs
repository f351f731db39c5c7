fn main() {
    let status = recmach::cli::run_cli(std::env::args(), &mut std::io::stdout());
    std::process::exit(status);
}
