fn main() {
    std::process::exit(tripleview::cli::main_with_args(std::env::args_os()));
}
