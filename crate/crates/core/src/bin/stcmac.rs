fn main() {
    std::process::exit(stcmac::cli::main_with_args(std::env::args_os()));
}
