fn main() {
    std::process::exit(kratzer2d::cli::main_with_args(std::env::args_os()));
}
