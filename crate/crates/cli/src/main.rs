fn main() {
    std::process::exit(rendezvous_cli::run(std::env::args_os()));
}
