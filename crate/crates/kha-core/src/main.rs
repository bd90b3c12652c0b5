fn main() {
    std::process::exit(kha_core::cli::main_with_args(std::env::args_os()));
}
