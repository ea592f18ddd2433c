fn main() {
    std::process::exit(ptwishart::cli::main_with_args(std::env::args_os()));
}
