fn main() {
    std::process::exit(qorth::cli::run(std::env::args_os()));
}
