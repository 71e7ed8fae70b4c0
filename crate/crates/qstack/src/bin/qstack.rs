fn main() {
    std::process::exit(qstack::cli::run());
}
