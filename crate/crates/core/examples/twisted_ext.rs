//! Twisted Ext dimensions Ext^{2n}(_{nu^n} M_(1,1), k) for n = 0..6: every
//! graded piece of the Nakayama-twisted Ext series is one-dimensional, the
//! signature of a tau-periodic module.

use std::cell::RefCell;
use std::rc::Rc;
use twistvar::exactla::{Field, Scalar};
use twistvar::ext::ExtContext;
use twistvar::qexterior::QExterior;
use twistvar::resolution::Resolution;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::Rationals;
    let lambda = QExterior::build(Scalar::from_i64(2, f))?;
    let one = Scalar::one(f);
    let m = lambda.module(&one, &one);
    let k = lambda.simple();

    let res = Rc::new(RefCell::new(Resolution::minimal(&m)));
    let ctx = ExtContext::new(res, &k, lambda.nakayama.clone(), 2);

    println!("dim Ext^(2n)(_(nu^n) M_(1,1), k) over {}:", lambda.algebra.name);
    for n in 0..=6usize {
        println!("  n = {}:  {}", n, ctx.dim(2 * n, n as i64)?);
    }

    // the untwisted series for comparison: same dimensions here, but the ring
    // structures differ (the twisted one carries the nu-grading)
    let res = Rc::new(RefCell::new(Resolution::minimal(&m)));
    let id = twistvar::algebra::AlgebraMorphism::identity(&lambda.algebra);
    let plain = ExtContext::new(res, &k, id, 1);
    let dims: Vec<usize> = (0..=6usize).map(|n| plain.dim(n, 0).unwrap()).collect();
    println!("untwisted dim Ext^n(M_(1,1), k), n = 0..6: {:?}", dims);
    Ok(())
}
