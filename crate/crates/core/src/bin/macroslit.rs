fn main() {
    std::process::exit(macroslit::cli::main_entry(std::env::args_os()));
}
