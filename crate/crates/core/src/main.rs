fn main() {
    std::process::exit(astab::cli::run());
}
