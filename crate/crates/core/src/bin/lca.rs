fn main() {
    std::process::exit(lca::cli::run(std::env::args_os()));
}
