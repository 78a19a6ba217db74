fn main() {
    std::process::exit(limid_cli::main_with_args(std::env::args_os()));
}
