//! Window-bounded finite-generation evidence for the twisted Ext modules of
//! the two-parameter family M_(alpha,beta): the Hochschild class theta acts
//! injectively for nondegenerate beta, while for M_(1,0) and M_(0,1) an
//! entire graded piece is annihilated — an explicit failure witness.

use twistvar::exactla::{Field, Scalar};
use twistvar::hochschild::HhSetup;
use twistvar::qexterior::QExterior;
use twistvar::varieties::{fg_check, FgVerdict};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::Rationals;
    let lambda = QExterior::build(Scalar::from_i64(2, f))?;
    let setup = HhSetup::minimal(&lambda.algebra, &lambda.nakayama, 2);
    // positive-grade Hochschild generators up to grade 2: just theta here
    let gens = setup.ctx.basis(4, 2)?;

    let window = 10;
    for (label, alpha, beta) in [
        ("M_(1,1)", 1, 1),
        ("M_(1,2)", 1, 2),
        ("M_(1,-1)", 1, -1),
        ("M_(1,0)", 1, 0),
        ("M_(0,1)", 0, 1),
    ] {
        let m = lambda.module(&Scalar::from_i64(alpha, f), &Scalar::from_i64(beta, f));
        let ev = fg_check(&setup, &m, &gens, window)?;
        print!("{:<9} dims {:?}  ", label, ev.dims);
        match &ev.verdict {
            FgVerdict::PassEvidence => println!(
                "pass (generated up to {}, theta-action injective from degree {:?})",
                ev.generated_up_to, ev.action_injective_from
            ),
            FgVerdict::FailWitness { degree, .. } => {
                println!("FAIL: graded piece at degree {} is annihilated by every generator", degree)
            }
            FgVerdict::Inconclusive => println!("inconclusive in window {}", window),
        }
    }
    Ok(())
}
