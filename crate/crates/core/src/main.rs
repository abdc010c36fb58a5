fn main() {
    std::process::exit(redword::cli::run(std::env::args_os()));
}
