fn main() {
    std::process::exit(simple_drawings_cli::run(std::env::args_os()));
}
