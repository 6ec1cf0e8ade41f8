use jacobi::cli::acceptance::{line, run_all, SuiteOptions};

fn main() {
    let outcomes = run_all(&SuiteOptions::default());
    for o in &outcomes {
        println!("{}", line(o));
    }
    if outcomes.iter().any(|o| !o.pass) {
        std::process::exit(1);
    }
}
