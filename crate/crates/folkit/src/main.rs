fn main() {
    std::process::exit(folkit::cli::main_with(std::env::args_os()));
}
