use std::io::{stderr, stdout};

fn main() {
    let code = grouplin::cli::main_dispatch(std::env::args(), &mut stdout(), &mut stderr());
    std::process::exit(code);
}
