fn main() {
    std::process::exit(muntz::cli::run(std::env::args_os()));
}
