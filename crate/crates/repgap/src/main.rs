fn main() {
    std::process::exit(repgap::run(std::env::args_os()));
}
