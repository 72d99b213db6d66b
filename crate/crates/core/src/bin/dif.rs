use std::io::IsTerminal;
use std::process::ExitCode;

fn main() -> ExitCode {
    let color = dif::cli::color_enabled(std::io::stdout().is_terminal());
    let exit = dif::cli::run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
        color,
    );
    ExitCode::from(exit.code())
}
