fn main() {
    std::process::exit(catrep::cli::run(std::env::args_os()));
}
