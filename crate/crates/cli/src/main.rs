fn main() {
    std::process::exit(holdem_topology_cli::run(std::env::args_os()));
}
