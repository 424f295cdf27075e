fn main() {
    std::process::exit(normgrid::run(std::env::args_os()));
}
