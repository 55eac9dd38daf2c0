fn main() {
    std::process::exit(rsurf::cli::run(std::env::args_os()));
}
