fn main() {
    std::process::exit(planarcount::cli::run(std::env::args_os()));
}
