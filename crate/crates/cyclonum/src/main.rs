fn main() {
    std::process::exit(cyclonum::run(std::env::args_os()));
}
