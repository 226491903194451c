use clap::Parser;

fn main() {
    let config = conjfree::cli::RunConfig::parse();
    let report = conjfree::cli::run(&config);
    if !report.output.is_empty() {
        println!("{}", report.output);
    }
    std::process::exit(report.status.code());
}
