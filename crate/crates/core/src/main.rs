fn main() {
    std::process::exit(tpc::cli::main_with_args(std::env::args_os()))
}
