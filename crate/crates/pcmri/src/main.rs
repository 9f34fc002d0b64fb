fn main() -> std::process::ExitCode {
    pcmri::cli::main()
}
