fn main() {
    std::process::exit(moment_forge::cli::main());
}
