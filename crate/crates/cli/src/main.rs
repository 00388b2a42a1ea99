fn main() {
    let stdin = std::io::stdin();
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let code = minorlab::run(std::env::args_os(), stdin.lock(), &mut stdout, &mut stderr);
    std::process::exit(code);
}
