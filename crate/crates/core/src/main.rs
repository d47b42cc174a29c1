fn main() {
    std::process::exit(apk::cli::main_with_args(std::env::args_os()));
}
