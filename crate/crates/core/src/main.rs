fn main() {
    std::process::exit(scheme_forge::cli::main_with_args(std::env::args_os()));
}
