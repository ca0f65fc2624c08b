//! Minimal projective resolution of the two-dimensional module M_(1,1) over
//! the quantum exterior algebra: the resolution has rank one in every step,
//! and each differential is right multiplication by x + q^n y up to a unit.

use twistvar::exactla::{Field, Matrix, Scalar};
use twistvar::qexterior::QExterior;
use twistvar::resolution::Resolution;

fn show(m: &Matrix) -> String {
    (0..m.rows)
        .map(|r| {
            (0..m.cols)
                .map(|c| m.at(r, c).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::Rationals;
    let lambda = QExterior::build(Scalar::from_i64(2, f))?;
    let one = Scalar::one(f);
    let m = lambda.module(&one, &one);

    let mut res = Resolution::minimal(&m);
    res.ensure_length(10)?;
    res.verify_exact(10)?;
    res.verify_minimal(10)?;
    println!("module M_(1,1) over {}, q = {}", lambda.algebra.name, lambda.q);
    println!("betti numbers of P_0..P_10: {:?}", res.betti(10)?);
    println!("projective dims:            {:?}", res.lengths(10)?);
    println!();
    println!("differentials d_n: P_n -> P_(n-1) (columns = images of basis vectors):");
    for n in 1..=10 {
        println!("  d_{:<2} = [{}]", n, show(&res.maps[n].matrix));
    }
    Ok(())
}
