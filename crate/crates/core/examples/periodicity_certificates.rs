//! Syzygy-periodicity certificates. M_(1,beta) is (0,1)-periodic under the
//! Nakayama twist with stride 2 — the first syzygy pair is already twisted-
//! isomorphic — and M_(1,0) is even untwisted (0,1)-periodic. A free module
//! has no certificate: its syzygies vanish.

use std::rc::Rc;
use twistvar::algebra::AlgebraMorphism;
use twistvar::exactla::{Field, Scalar};
use twistvar::modules::Module;
use twistvar::qexterior::QExterior;
use twistvar::varieties::{periodicity, tau_periodicity, PeriodicityOutcome};

fn report(label: &str, out: &PeriodicityOutcome) {
    match out {
        PeriodicityOutcome::Certificate(c) => println!(
            "{}: certificate (shift {}, period {}), verified: {}",
            label,
            c.shift,
            c.period,
            c.verify()
        ),
        PeriodicityOutcome::NotFoundUpTo { j_max, w_max, note } => println!(
            "{}: none up to shift {}, period {} ({})",
            label,
            j_max,
            w_max,
            note.as_deref().unwrap_or("no certificate in range")
        ),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::Rationals;
    let lambda = QExterior::build(Scalar::from_i64(2, f))?;
    let one = Scalar::one(f);
    let zero = Scalar::zero(f);
    let seed = 7;

    let m11 = lambda.module(&one, &one);
    report(
        "M_(1,1) under (nu, t=2)",
        &periodicity(&m11, &lambda.nakayama, 2, 3, 3, seed)?,
    );

    let id = AlgebraMorphism::identity(&lambda.algebra);
    let m10 = lambda.module(&one, &zero);
    report("M_(1,0) untwisted (t=1)", &periodicity(&m10, &id, 1, 3, 3, seed)?);
    report("M_(1,1) untwisted (t=1)", &periodicity(&m11, &id, 1, 3, 3, seed)?);

    // tau-periodicity: M = Omega^(2p)(M) twisted by the p-th Nakayama power
    report("M_(1,1) tau-periodicity", &tau_periodicity(&m11, &lambda.form, 2, seed)?);

    let free = Rc::new(Module::regular(&lambda.algebra));
    report("regular module", &periodicity(&free, &lambda.nakayama, 2, 2, 2, seed)?);
    Ok(())
}
