fn main() {
    std::process::exit(alphacheck::main_with_args(std::env::args_os()));
}
