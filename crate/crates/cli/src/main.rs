fn main() {
    std::process::exit(sboxmetrics_cli::run(std::env::args_os()));
}
