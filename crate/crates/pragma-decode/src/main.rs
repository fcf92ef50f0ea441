fn main() {
    std::process::exit(pragma_decode::cli::run());
}
