fn main() {
    std::process::exit(ricf::cli::run(std::env::args_os()));
}
