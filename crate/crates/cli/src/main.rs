fn main() {
    std::process::exit(negspin_cli::run(std::env::args_os()));
}
