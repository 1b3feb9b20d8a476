fn main() {
    std::process::exit(contact_cli::main_with_args(std::env::args_os()));
}
