fn main() {
    std::process::exit(superjack_cli::run());
}
