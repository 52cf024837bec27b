fn main() {
    std::process::exit(concept_flow::cli::main());
}
