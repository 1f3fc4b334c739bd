fn main() {
    std::process::exit(rkode::cli::main_from_args(std::env::args_os()));
}
