//! Twisted support-variety dimension reports over the quantum exterior
//! algebra: M_(1,1) has a one-dimensional nontrivial variety, the regular
//! module a trivial one, and the simple module k realizes the full dimension
//! two — with an honest finite-generation caveat attached.

use std::rc::Rc;
use twistvar::exactla::{Field, Scalar};
use twistvar::hochschild::HhSetup;
use twistvar::modules::Module;
use twistvar::qexterior::QExterior;
use twistvar::varieties::variety_report;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::Rationals;
    let lambda = QExterior::build(Scalar::from_i64(2, f))?;
    let setup = HhSetup::minimal(&lambda.algebra, &lambda.nakayama, 2);
    let gens = setup.ctx.basis(4, 2)?;
    let window = 12;

    let one = Scalar::one(f);
    let cases: Vec<(&str, _)> = vec![
        ("M_(1,1)", lambda.module(&one, &one)),
        ("Lambda", Rc::new(Module::regular(&lambda.algebra))),
        ("k", lambda.simple()),
    ];

    for (label, m) in &cases {
        let rep = variety_report(&setup, m, &gens, window)?;
        println!(
            "{:<8} variety dim {:?}  growth {:?}  trivial: {}",
            label, rep.dim, rep.growth, rep.trivial
        );
        println!("         betti in window: {:?}", rep.betti);
        for c in &rep.caveats {
            println!("         caveat: {}", c);
        }
    }
    Ok(())
}
