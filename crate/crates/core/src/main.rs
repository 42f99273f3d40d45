use std::io::{self, BufWriter, Write};

fn main() {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = scera::cli::run(std::env::args_os(), &mut out, &mut io::stderr());
    if out.flush().is_err() && code == 0 {
        std::process::exit(scera::cli::EXIT_INPUT);
    }
    drop(out);
    std::process::exit(code);
}
