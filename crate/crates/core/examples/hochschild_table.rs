//! Twisted Hochschild dimension table of the quantum exterior algebra under
//! the Nakayama twist with stride t = 2, plus a truncated sample of the
//! graded ring: it is the fiber product k[x] x_k k, with x the class theta
//! in grade 2 and a nilpotent degree-zero class.

use twistvar::exactla::{Field, Scalar};
use twistvar::ext::twisted_product;
use twistvar::hochschild::HhSetup;
use twistvar::qexterior::QExterior;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lambda = QExterior::build(Scalar::from_i64(2, Field::Rationals))?;
    let setup = HhSetup::from_resolution(
        &lambda.algebra,
        &lambda.enveloping,
        &lambda.nakayama,
        2,
        lambda.bimodule_resolution(),
    );

    // grade n holds dim Ext^{2n}(_{nu^n} Lambda, Lambda)
    println!("HH^(2*)(_(nu^*) Lambda, Lambda) graded dimensions, grades 0..8:");
    println!("  {:?}", setup.dims(8)?);

    let sample = setup.sample(4)?;
    println!();
    println!("ring sample to grade 4: dims {:?}", sample.dims);
    println!("unit coordinates in grade 0: {:?}", strs(&sample.unit));

    // grade 0 is two-dimensional; the non-unit class squares to zero
    for i in 0..sample.dims[0] {
        let p = sample.product(0, i, 0, i).unwrap();
        println!("degree-0 basis class {} squared: {:?}", i, strs(p));
    }

    // theta spans grade 2 and its powers stay nonzero through grade 8
    let theta = &sample.basis[2][0];
    let mut power = theta.clone();
    for m in 2..=4usize {
        power = twisted_product(&setup.ctx, &power, theta)?;
        println!("theta^{} coordinates in grade {}: {:?}", m, 2 * m, strs(&power.coords));
    }

    // the nilpotent degree-zero class annihilates theta: fiber product relation
    for i in 0..sample.dims[0] {
        let p = sample.product(0, i, 2, 0).unwrap();
        println!("(degree-0 class {}) * theta: {:?}", i, strs(p));
    }
    Ok(())
}

fn strs(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}
