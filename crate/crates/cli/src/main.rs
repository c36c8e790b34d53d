fn main() {
    std::process::exit(ipdt_cli::cli::main());
}
