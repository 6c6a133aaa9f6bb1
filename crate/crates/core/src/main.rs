fn main() {
    std::process::exit(oddform::cli::run(std::env::args_os()));
}
