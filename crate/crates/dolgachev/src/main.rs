fn main() {
    std::process::exit(dolgachev::cli::run());
}
