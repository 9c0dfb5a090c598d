fn main() {
    std::process::exit(rpys::cli::run(std::env::args_os()));
}
