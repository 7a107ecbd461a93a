use std::io::{stderr, stdout};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let code = polyterm_cli::run(&refs, &mut stdout().lock(), &mut stderr().lock());
    std::process::exit(code);
}
