fn main() {
    std::process::exit(wzcong::cli::main());
}
