fn main() {
    std::process::exit(centra::cli::main_with_args(std::env::args().collect()));
}
