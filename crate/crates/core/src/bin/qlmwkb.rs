fn main() {
    std::process::exit(qlmwkb::cli::run_from(std::env::args_os()));
}
