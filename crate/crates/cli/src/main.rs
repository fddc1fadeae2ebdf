//! Entry point of the `msf` binary.

fn main() {
    std::process::exit(msf_cli::main_with_args(std::env::args().collect()));
}
