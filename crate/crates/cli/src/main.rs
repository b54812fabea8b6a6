fn main() -> std::process::ExitCode {
    sigframes_cli::main_entry()
}
