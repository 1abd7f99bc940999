fn main() {
    std::process::exit(fconlab::cli::main());
}
