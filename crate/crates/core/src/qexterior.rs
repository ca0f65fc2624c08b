//! The quantum exterior algebra `Λ_q = k<x,y>/(x², xy + q·yx, y²)` on the
//! basis {1, x, y, yx}, its Nakayama automorphism, the two-dimensional
//! modules `M_(α,β) = Λ_q·(αx + βy)`, and the explicit periodic-pattern
//! resolution of Λ_q over its enveloping algebra.

use crate::algebra::{Algebra, AlgebraMorphism, AlgebraRef, FrobeniusForm};
use crate::exactla::{Field, Matrix, Scalar};
use crate::modules::{assemble_hom, Module, ModuleMap, ModuleRef};
use crate::resolution::Resolution;
use std::rc::Rc;

#[derive(Clone, Debug, thiserror::Error, PartialEq)]
pub enum QExteriorError {
    #[error("q must avoid 0, 1 and -1")]
    BadQ,
    #[error("characteristic 2 is not supported for the quantum exterior algebra")]
    CharacteristicTwo,
    #[error("algebra construction failed: {0}")]
    Algebra(String),
    #[error("Nakayama automorphism does not match its closed form")]
    NakayamaMismatch,
}

/// Basis indices in Λ_q.
pub const ONE: usize = 0;
pub const X: usize = 1;
pub const Y: usize = 2;
pub const YX: usize = 3;

pub struct QExterior {
    pub q: Scalar,
    pub algebra: AlgebraRef,
    pub enveloping: AlgebraRef,
    pub form: FrobeniusForm,
    /// Nakayama automorphism ν: x -> -q⁻¹x, y -> -qy.
    pub nakayama: AlgebraMorphism,
}

impl QExterior {
    /// Builds Λ_q for a nonzero q, verifying the Nakayama automorphism
    /// against its closed form diag(1, -q⁻¹, -q, 1).
    pub fn build(q: Scalar) -> Result<QExterior, QExteriorError> {
        let f = q.field();
        if f.characteristic() == 2 {
            return Err(QExteriorError::CharacteristicTwo);
        }
        if q.is_zero() || q.is_one() || q == Scalar::from_i64(-1, f) {
            return Err(QExteriorError::BadQ);
        }
        let z = || Scalar::zero(f);
        let o = || Scalar::one(f);
        let basis = |i: usize| -> Vec<Scalar> {
            let mut v = vec![z(), z(), z(), z()];
            v[i] = o();
            v
        };
        let zero4 = || vec![z(), z(), z(), z()];
        // products of the basis: rows indexed by left factor, then right
        let mut mul = vec![vec![zero4(); 4]; 4];
        for j in 0..4 {
            mul[ONE][j] = basis(j);
            mul[j][ONE] = basis(j);
        }
        // x·x = 0, x·y = -q·yx, x·yx = 0
        mul[X][Y] = {
            let mut v = zero4();
            v[YX] = q.neg();
            v
        };
        // y·x = yx, y·y = 0, y·yx = 0
        mul[Y][X] = basis(YX);
        // all remaining products (with a yx factor, or squares) are zero
        let algebra = Algebra::validate(
            "quantum-exterior",
            f,
            vec!["1".into(), "x".into(), "y".into(), "yx".into()],
            mul,
            basis(ONE),
            Some(vec![basis(X), basis(Y), basis(YX)]),
            None,
            Some(vec![0, 1, 1, 2]),
        )
        .map_err(|e| QExteriorError::Algebra(e.to_string()))?;
        let algebra = Rc::new(algebra);
        // Frobenius form: coefficient of yx
        let form = FrobeniusForm::new(&algebra, vec![z(), z(), z(), o()])
            .map_err(|e| QExteriorError::Algebra(e.to_string()))?;
        let nakayama = form
            .nakayama()
            .map_err(|e| QExteriorError::Algebra(e.to_string()))?;
        let qinv = q.inv().unwrap();
        let closed = Matrix::from_fn(4, 4, f, |r, c| {
            if r != c {
                return z();
            }
            match r {
                X => qinv.neg(),
                Y => q.neg(),
                _ => o(),
            }
        });
        if nakayama.matrix != closed {
            return Err(QExteriorError::NakayamaMismatch);
        }
        let enveloping = Rc::new(algebra.enveloping());
        Ok(QExterior {
            q,
            algebra,
            enveloping,
            form,
            nakayama,
        })
    }

    fn f(&self) -> Field {
        self.q.field()
    }

    /// M_(α,β) = Λ_q·(αx + βy), two-dimensional on the basis {g, yx} with
    /// x·g = -qβ·yx and y·g = α·yx. (α, β) ≠ (0, 0) is required.
    pub fn module(&self, alpha: &Scalar, beta: &Scalar) -> ModuleRef {
        assert!(
            !(alpha.is_zero() && beta.is_zero()),
            "M_(0,0) is not defined"
        );
        let f = self.f();
        let z = || Scalar::zero(f);
        let id = Matrix::identity(2, f);
        let mut ax = Matrix::zero(2, 2, f);
        ax.set(1, 0, self.q.neg().mul(beta));
        let mut ay = Matrix::zero(2, 2, f);
        ay.set(1, 0, alpha.clone());
        let m = Module {
            algebra: self.algebra.clone(),
            dim: 2,
            action: vec![id, ax, ay, Matrix::zero(2, 2, f)],
            presentation: None,
        };
        let _ = z;
        debug_assert!(m.validate().is_ok());
        Rc::new(m)
    }

    /// The trivial simple module k = Λ_q / rad.
    pub fn simple(&self) -> ModuleRef {
        let f = self.f();
        Rc::new(Module {
            algebra: self.algebra.clone(),
            dim: 1,
            action: vec![
                Matrix::identity(1, f),
                Matrix::zero(1, 1, f),
                Matrix::zero(1, 1, f),
                Matrix::zero(1, 1, f),
            ],
            presentation: None,
        })
    }

    /// Λ_q as a module over its enveloping algebra (the regular bimodule).
    pub fn regular_bimodule(&self) -> ModuleRef {
        crate::modules::regular_bimodule(&self.algebra, &self.enveloping)
    }

    /// The explicit free resolution of Λ_q over its enveloping algebra:
    /// F_n is free of rank n + 1 on generators f(n, 0) .. f(n, n), with
    ///   d(f(n,i)) = x·f(n-1,i) + (-1)ⁿ qⁱ · f(n-1,i)·x
    ///             + q^{n-i}·y·f(n-1,i-1) + (-1)ⁿ · f(n-1,i-1)·y
    /// (terms with out-of-range second index are dropped) and augmentation
    /// F_0 = Λ_q^e -> Λ_q the multiplication map.
    pub fn bimodule_resolution(&self) -> Resolution {
        let lambda = self.regular_bimodule();
        let lambda_for_aug = lambda.clone();
        let env = self.enveloping.clone();
        let alg = self.algebra.clone();
        let q = self.q.clone();
        let f = self.f();
        let provider = move |n: usize, res: &Resolution| -> (ModuleRef, ModuleMap) {
            let fn_ = Rc::new(Module::free(&env, n + 1));
            if n == 0 {
                // augmentation: generator 1 (x) 1 -> 1 in Λ_q
                let images = vec![alg.unit.clone()];
                let mat = assemble_hom(&fn_, None, &lambda_for_aug, &images);
                return (fn_.clone(), ModuleMap::new(&fn_, &lambda_for_aug, mat));
            }
            let prev = &res.projectives[n - 1];
            let d_prev = alg.dim;
            let sign = Scalar::from_i64(if n % 2 == 0 { 1 } else { -1 }, f);
            // coordinates of a (x) b placed in block `blk` of F_{n-1}
            let place = |blk: usize, a: usize, b: usize, coeff: &Scalar| -> Vec<Scalar> {
                let mut v = vec![Scalar::zero(f); prev.dim];
                let mut e = vec![Scalar::zero(f); d_prev];
                e[a] = Scalar::one(f);
                let mut e2 = vec![Scalar::zero(f); d_prev];
                e2[b] = Scalar::one(f);
                let t = alg.env_tensor(&e, &e2);
                for (k, s) in t.iter().enumerate() {
                    if !s.is_zero() {
                        v[blk * env.dim + k] = coeff.mul(s);
                    }
                }
                v
            };
            let add = |u: &mut Vec<Scalar>, v: Vec<Scalar>| {
                for (a, b) in u.iter_mut().zip(v) {
                    *a = a.add(&b);
                }
            };
            let images: Vec<Vec<Scalar>> = (0..=n)
                .map(|i| {
                    let mut img = vec![Scalar::zero(f); prev.dim];
                    if i < n {
                        // x·f(n-1,i) + (-1)ⁿ qⁱ f(n-1,i)·x
                        add(&mut img, place(i, X, ONE, &Scalar::one(f)));
                        add(&mut img, place(i, ONE, X, &sign.mul(&q.pow(i as i64))));
                    }
                    if i > 0 {
                        // q^{n-i}·y·f(n-1,i-1) + (-1)ⁿ f(n-1,i-1)·y
                        add(&mut img, place(i - 1, Y, ONE, &q.pow((n - i) as i64)));
                        add(&mut img, place(i - 1, ONE, Y, &sign));
                    }
                    img
                })
                .collect();
            let mat = assemble_hom(&fn_, None, prev, &images);
            (fn_.clone(), ModuleMap::new(&fn_, prev, mat))
        };
        Resolution::explicit(&lambda, Box::new(provider))
    }

    /// Generator images of the degree-4m cocycle g_{4m}: the generator
    /// f(4m, i) maps to δ_{i,2m}·1 in Λ_q.
    pub fn g_class_images(&self, m: usize) -> Vec<Vec<Scalar>> {
        let f = self.f();
        (0..=4 * m)
            .map(|i| {
                if i == 2 * m {
                    self.algebra.unit.clone()
                } else {
                    vec![Scalar::zero(f); 4]
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{hom_basis, is_isomorphic};

    fn lam(qn: i64, qd: i64) -> QExterior {
        QExterior::build(Scalar::from_fraction(qn, qd, Field::Rationals)).unwrap()
    }

    #[test]
    fn algebra_structure() {
        let l = lam(2, 1);
        let a = &l.algebra;
        assert!(a.is_local());
        assert!(!a.is_commutative());
        // x·y = -2·yx, y·x = yx
        assert_eq!(a.mul[X][Y][YX], Scalar::from_i64(-2, a.field));
        assert_eq!(a.mul[Y][X][YX], Scalar::one(a.field));
        let center = a.center();
        assert_eq!(center.len(), 2);
    }

    #[test]
    fn nakayama_closed_form_all_q() {
        for (n, d) in [(2, 1), (3, 1), (1, 2)] {
            let l = lam(n, d);
            let nu = &l.nakayama;
            let x = l.algebra.basis_vec(X);
            let img = nu.apply(&x);
            assert_eq!(
                img[X],
                Scalar::from_fraction(n, d, Field::Rationals).inv().unwrap().neg()
            );
        }
    }

    #[test]
    fn degenerate_parameters_rejected() {
        let f = Field::Rationals;
        for bad in [0i64, 1, -1] {
            assert!(QExterior::build(Scalar::from_i64(bad, f)).is_err());
        }
        assert!(QExterior::build(Scalar::from_i64(1, Field::Prime(2))).is_err());
        // ν² scales x by q⁻²
        let l = lam(2, 1);
        let sq = l.nakayama.power(2);
        let img = sq.apply(&l.algebra.basis_vec(X));
        assert_eq!(img[X], Scalar::from_fraction(1, 4, f));
    }

    #[test]
    fn modules_and_twists() {
        let l = lam(2, 1);
        let one = Scalar::one(Field::Rationals);
        let m = l.module(&one, &one);
        m.validate().unwrap();
        // syzygy of M_(1,β) is M_(1,qβ) (up to iso)
        let (s, ..) = crate::modules::syzygy(&m).unwrap();
        let q = Scalar::from_i64(2, Field::Rationals);
        let mq = l.module(&one, &q);
        assert!(is_isomorphic(&s, &mq, 3).is_iso());
        // M_(1,0) and M_(0,1) are non-isomorphic
        let z = Scalar::zero(Field::Rationals);
        let m10 = l.module(&one, &z);
        let m01 = l.module(&z, &one);
        assert!(!is_isomorphic(&m10, &m01, 3).is_iso());
    }

    #[test]
    fn enveloping_is_local_of_dim_16() {
        let l = lam(3, 1);
        assert_eq!(l.enveloping.dim, 16);
        assert!(l.enveloping.is_local());
        let bim = l.regular_bimodule();
        bim.validate().unwrap();
        assert_eq!(hom_basis(&Rc::new(Module::regular(&l.enveloping)), &bim).len(), 4);
    }

    #[test]
    fn bimodule_resolution_exact_and_minimal() {
        let l = lam(2, 1);
        let mut res = l.bimodule_resolution();
        assert_eq!(res.betti(6).unwrap(), vec![1, 2, 3, 4, 5, 6, 7]);
        res.verify_exact(6).unwrap();
        res.verify_minimal(4).unwrap();
        // syzygy dimensions 12, 20, 28, 36
        for (n, want) in [(1usize, 12usize), (2, 20), (3, 28), (4, 36)] {
            assert_eq!(res.syzygy_module(n).unwrap().dim, want);
        }
    }

    #[test]
    fn resolution_works_in_prime_characteristic() {
        let f = Field::Prime(7);
        let l = QExterior::build(Scalar::from_i64(2, f)).unwrap();
        let mut res = l.bimodule_resolution();
        res.verify_exact(3).unwrap();
    }
}
