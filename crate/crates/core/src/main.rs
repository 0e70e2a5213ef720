fn main() {
    std::process::exit(k3moduli::cli_main());
}
