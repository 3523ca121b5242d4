fn main() {
    std::process::exit(nemsqueeze_cli::run(std::env::args_os()));
}
