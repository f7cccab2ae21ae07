fn main() {
    std::process::exit(aybe::cli::main_with_args(std::env::args_os()));
}
