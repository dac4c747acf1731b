fn main() {
    std::process::exit(perverse_hodge::cli::main_with_args(std::env::args_os()));
}
