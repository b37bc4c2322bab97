fn main() {
    std::process::exit(gaw::cli::run(std::env::args_os()));
}
