use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(qf::run(std::env::args_os()))
}
