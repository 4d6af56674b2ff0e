fn main() {
    std::process::exit(catext_cli::main_with(std::env::args_os()));
}
