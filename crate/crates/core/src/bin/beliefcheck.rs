fn main() {
    std::process::exit(beliefcheck::cli::run_cli(std::env::args_os()));
}
