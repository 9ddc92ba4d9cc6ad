fn main() {
    std::process::exit(tambara::cli::run());
}
