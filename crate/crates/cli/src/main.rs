fn main() {
    std::process::exit(sweedler_cli::main_with(std::env::args().collect()));
}
