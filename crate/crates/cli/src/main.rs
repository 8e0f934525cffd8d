fn main() {
    std::process::exit(dts_cli::main_with_args(std::env::args().collect()));
}
