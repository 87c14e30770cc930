fn main() {
    std::process::exit(snakes_sp::cli::run(std::env::args_os()));
}
