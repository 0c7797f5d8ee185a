fn main() {
    std::process::exit(tomolink::cli::main_with_args(std::env::args_os()));
}
