fn main() {
    std::process::exit(yfusion::cli::run(std::env::args_os()));
}
