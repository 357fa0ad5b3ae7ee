fn main() {
    std::process::exit(bqg::cli::run(std::env::args_os()));
}
