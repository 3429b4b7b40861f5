use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let (output, code) = p1z_cli::run(&args);
    if code == 0 {
        print!("{output}");
    } else {
        eprint!("{output}");
    }
    ExitCode::from(code)
}
