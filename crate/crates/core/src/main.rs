fn main() {
    std::process::exit(oscillwalk::cli::main_from_args(std::env::args_os()));
}
