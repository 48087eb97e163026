fn main() {
    std::process::exit(dirac_barrier::cli::run());
}
