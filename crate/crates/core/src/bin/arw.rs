fn main() {
    std::process::exit(antlion::cli::main_with(std::env::args_os()));
}
