fn main() {
    std::process::exit(pointlike_cli::run_main(std::env::args_os()));
}
