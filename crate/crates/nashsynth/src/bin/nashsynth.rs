fn main() {
    std::process::exit(nashsynth::cli::main_with_args());
}
