fn main() {
    std::process::exit(workbench::run(std::env::args_os()));
}
