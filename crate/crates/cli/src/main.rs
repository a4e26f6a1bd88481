fn main() {
    std::process::exit(hyperoval_cli::run());
}
