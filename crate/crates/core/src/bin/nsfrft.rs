fn main() -> std::process::ExitCode {
    nsfrft::cli::main()
}
