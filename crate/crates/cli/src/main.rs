fn main() -> std::process::ExitCode {
    ptent::run(std::env::args_os())
}
