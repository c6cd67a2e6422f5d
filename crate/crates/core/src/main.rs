fn main() {
    std::process::exit(virasoro::cli::main_with_args(std::env::args_os()));
}
