fn main() {
    std::process::exit(grd_core::cli::run(std::env::args_os()));
}
