//! The text workspace format: emit the built-in quantum exterior workspace,
//! parse it back, and run a subcommand against the parsed entities. Also
//! shows the positioned errors the parser reports on malformed input.

use twistvar::cli::{run, CliError, Command, Workspace};
use twistvar::exactla::{Field, Scalar};
use twistvar::qexterior::QExterior;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lambda = QExterior::build(Scalar::from_i64(2, Field::Rationals))?;
    let text = twistvar::cli::emit_builtin(&lambda);
    println!("--- emitted workspace (first lines) ---");
    for line in text.lines().take(8) {
        println!("{}", line);
    }
    println!("...");

    let ws = Workspace::parse_texts(&[("builtin.tw", &text)])?;
    println!(
        "parsed {} algebra(s), {} automorphism(s), {} module(s)",
        ws.algebras.len(),
        ws.morphisms.len(),
        ws.modules.len()
    );

    let cmd = Command::Ext {
        module: "M_1_1".to_string(),
        twist: Some("nu".to_string()),
        t: 2,
        max_degree: 4,
    };
    let report = run(&ws, &cmd, 0)?;
    println!("ext report: {}", serde_json::to_string(&report)?);

    // malformed input carries file/line/column positions
    let bad = "algebra A\nfield Q\ndim 2\nunit 1 oops\nend\n";
    match Workspace::parse_texts(&[("bad.tw", bad)]) {
        Err(e @ CliError::Syntax { .. }) => println!("parse error: {}", e),
        other => panic!("expected a syntax error, got {:?}", other.map(|_| "workspace")),
    }
    Ok(())
}
