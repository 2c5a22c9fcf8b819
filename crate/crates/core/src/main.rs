fn main() {
    std::process::exit(superloc::cli::main_with_args(std::env::args_os()));
}
