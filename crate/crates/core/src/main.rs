fn main() {
    std::process::exit(pmatroid::cli::run(std::env::args_os()));
}
