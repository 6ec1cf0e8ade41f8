fn main() { std::process::exit(jacobi::cli::main()) }
