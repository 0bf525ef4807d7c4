//! Binary entry point for the qtknots command-line tool.

fn main() {
    std::process::exit(qtknots::cli::run(std::env::args_os()));
}
