fn main() -> std::process::ExitCode {
    dmres::cli::main()
}
