fn main() {
    std::process::exit(polyquant::cli::run(std::env::args_os()));
}
