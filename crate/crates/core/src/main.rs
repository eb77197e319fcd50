fn main() {
    std::process::exit(weylpq::cli::main());
}
