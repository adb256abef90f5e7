fn main() {
    std::process::exit(coupled_chroma::cli::main());
}
