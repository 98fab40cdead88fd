fn main() {
    std::process::exit(redzone::cli::run(std::env::args_os()));
}
