fn main() {
    std::process::exit(granger_lab::cli::main());
}
