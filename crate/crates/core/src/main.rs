fn main() {
    std::process::exit(gfenum::cli::run(std::env::args_os()));
}
