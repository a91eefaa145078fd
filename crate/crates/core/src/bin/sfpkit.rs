fn main() {
    std::process::exit(sfpkit::cli::run(std::env::args_os()));
}
