fn main() {
    std::process::exit(binlength::cli::run());
}
