fn main() {
    std::process::exit(convexotonic::cli::run(std::env::args_os()));
}
