fn main() {
    std::process::exit(llct::cli::main_with_args(std::env::args_os()));
}
