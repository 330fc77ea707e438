fn main() {
    std::process::exit(fosnet::cli::run(std::env::args_os()));
}
