fn main() {
    std::process::exit(crossmono::cli::run(std::env::args_os()));
}
