fn main() {
    std::process::exit(monopath::lab::cli::run(std::env::args_os()));
}
