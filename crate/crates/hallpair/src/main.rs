fn main() {
    std::process::exit(hallpair::cli::run(std::env::args()));
}
