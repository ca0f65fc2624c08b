//! Closed-form power identity in the twisted Hochschild ring: over the
//! explicit periodic bimodule resolution of the quantum exterior algebra,
//! theta^m equals q^(4(1 + ... + (m-1))) times the closed-form degree-4m
//! class g_(4m). Checked here for m = 2 and m = 3.

use twistvar::exactla::{Field, Scalar};
use twistvar::ext::{class_equal, twisted_product};
use twistvar::hochschild::HhSetup;
use twistvar::qexterior::QExterior;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::Rationals;
    let q = Scalar::from_i64(2, f);
    let lambda = QExterior::build(q.clone())?;
    let setup = HhSetup::from_resolution(
        &lambda.algebra,
        &lambda.enveloping,
        &lambda.nakayama,
        2,
        lambda.bimodule_resolution(),
    );

    // theta is the class of g_4 in grade 2
    let theta = setup
        .ctx
        .class_from_images(4, 2, &lambda.g_class_images(1))?;

    let mut power = theta.clone();
    for m in 2..=3usize {
        power = twisted_product(&setup.ctx, &power, &theta)?;
        // q^(4(1 + ... + (m-1)))
        let exponent: i64 = 4 * (1..m as i64).sum::<i64>();
        let mut scale = Scalar::one(f);
        for _ in 0..exponent {
            scale = scale.mul(&q);
        }
        let g4m = setup.ctx.class_from_images(4 * m, 2 * m as i64, &lambda.g_class_images(m))?;
        let expected = g4m.scale(&scale);
        println!(
            "theta^{} == q^{} * g_{}: {}",
            m,
            exponent,
            4 * m,
            class_equal(&power, &expected)?
        );
    }
    Ok(())
}
