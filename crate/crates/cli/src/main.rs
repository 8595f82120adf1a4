use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = sphere_forge_cli::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(sphere_forge_cli::EXIT_USAGE as u8);
    }
    let result = sphere_forge_cli::run(std::env::args_os());
    if result.exit_code == sphere_forge_cli::EXIT_USAGE {
        eprint!("{}", result.report);
    } else {
        print!("{}", result.report);
    }
    ExitCode::from(result.exit_code as u8)
}
