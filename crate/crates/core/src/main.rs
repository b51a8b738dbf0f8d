fn main() {
    std::process::exit(lensbound::cli::run(std::env::args_os()));
}
