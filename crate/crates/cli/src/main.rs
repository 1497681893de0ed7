fn main() {
    std::process::exit(permv_cli::main_with_args(std::env::args_os()));
}
