fn main() {
    std::process::exit(gkm_crystals::cli::run(std::env::args_os()));
}
