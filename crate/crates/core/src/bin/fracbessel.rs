fn main() {
    std::process::exit(fracbessel::cli::main_with_args(std::env::args_os()));
}
