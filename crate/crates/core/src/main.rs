fn main() {
    let code = nilfield::cli::main_with(std::env::args_os(), &mut std::io::stdin());
    std::process::exit(code);
}
