use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let status = fieldlab::cli::parse_and_dispatch(std::env::args_os(), &mut out);
    out.flush().ok();
    std::process::exit(status);
}
