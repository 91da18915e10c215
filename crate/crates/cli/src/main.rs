fn main() {
    let code = nev_cli::run(std::env::args_os());
    std::process::exit(code);
}
