use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = hybrid_control_cli::run(std::env::args_os());
    if code == 0 || code == 1 {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    ExitCode::from(code)
}
