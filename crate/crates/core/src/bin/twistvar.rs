use clap::Parser;
use twistvar::cli::{main_run, CliArgs};

fn main() {
    let args = CliArgs::parse();
    match main_run(&args) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(1);
        }
    }
}
