fn main() {
    std::process::exit(f2q::cli::run_from(std::env::args_os()));
}
