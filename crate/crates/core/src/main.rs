fn main() {
    std::process::exit(dipolar_channel::cli::run_cli(std::env::args_os()));
}
