fn main() {
    std::process::exit(zetavals::cli::run(std::env::args_os()));
}
