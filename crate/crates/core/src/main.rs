fn main() {
    std::process::exit(schwarz_eigen::cli::run(std::env::args_os()));
}
