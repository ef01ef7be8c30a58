fn main() {
    std::process::exit(spanner_tools::cli::run(std::env::args_os()));
}
