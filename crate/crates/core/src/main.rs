fn main() {
    std::process::exit(padic_hypergeo::cli::run(std::env::args_os()));
}
