fn main() {
    std::process::exit(diskfactor::cli::run(std::env::args_os()));
}
