fn main() {
    std::process::exit(czmax_cli::run(std::env::args_os()));
}
