fn main() {
    std::process::exit(koszul_cli::main_with_args(std::env::args_os()));
}
