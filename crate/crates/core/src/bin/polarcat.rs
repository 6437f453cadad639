fn main() {
    std::process::exit(polarcat::cli::main_with(std::env::args().collect()));
}
