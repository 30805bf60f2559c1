fn main() {
    std::process::exit(tensortrack::cli::run(std::env::args_os()));
}
