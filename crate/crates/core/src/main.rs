fn main() -> std::process::ExitCode {
    le3::cli::main_entry()
}
