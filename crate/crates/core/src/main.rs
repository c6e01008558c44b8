fn main() {
    std::process::exit(mubase::cli::run(std::env::args_os()));
}
