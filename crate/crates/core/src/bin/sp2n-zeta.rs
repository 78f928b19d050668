fn main() {
    std::process::exit(sp2n_zeta::cli::main());
}
