fn main() {
    std::process::exit(convex_sandwich::cli::run(std::env::args_os()));
}
