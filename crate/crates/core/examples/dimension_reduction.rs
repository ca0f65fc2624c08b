//! Support-variety dimension reduction: the self-extension K_theta attached
//! to the Hochschild class theta is exact, stays exact after tensoring with
//! M_(1,1), and the reduced module Omega(K_theta) (x) M_(1,1) has complexity
//! zero — one dimension below the complexity-one module we started from.

use twistvar::exactla::{Field, Scalar};
use twistvar::hochschild::{k_eta, HhSetup};
use twistvar::qexterior::QExterior;
use twistvar::resolution::complexity;
use twistvar::varieties::{k_eta_tensor_exact, reduce_dimension};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::Rationals;
    let lambda = QExterior::build(Scalar::from_i64(2, f))?;
    let setup = HhSetup::from_resolution(
        &lambda.algebra,
        &lambda.enveloping,
        &lambda.nakayama,
        2,
        lambda.bimodule_resolution(),
    );
    let theta = setup.ctx.basis(4, 2)?.remove(0);

    let ext = k_eta(&setup, &theta)?;
    println!(
        "K_theta: 0 -> Lambda -> K ({} over Lambda^e) -> syzygy ({}) -> 0, exact: {}",
        ext.module.dim, ext.omega.dim, ext.exact
    );

    let one = Scalar::one(f);
    let m = lambda.module(&one, &one);
    println!(
        "exactness preserved under (x) M_(1,1): {}",
        k_eta_tensor_exact(&setup, &ext, &m)?
    );

    let (growth, betti) = complexity(&m, 6)?;
    println!("complexity of M_(1,1): {:?} (betti {:?})", growth, betti);

    let reduced = reduce_dimension(&setup, &theta, &m)?;
    let (growth, betti) = complexity(&reduced, 6)?;
    println!(
        "reduced module dim {}: complexity {:?} (betti {:?})",
        reduced.dim, growth, betti
    );
    Ok(())
}
