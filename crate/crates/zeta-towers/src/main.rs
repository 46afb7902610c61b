fn main() {
    std::process::exit(zeta_towers::cli::run());
}
