//! Exact-arithmetic homological algebra for finite-dimensional algebras given
//! by structure constants: minimal projective resolutions, twisted Ext
//! algebras, twisted Hochschild cohomology, complexity and support-variety
//! dimensions, and periodicity certificates.
//!
//! The built-in family is the quantum exterior algebra
//! `Λ_q = k<x,y>/(x², xy + q·yx, y²)` together with its Nakayama automorphism
//! and the two-dimensional modules `M_(α,β) = Λ(αx + βy)`; see the `qexterior`
//! module and the runnable examples under `examples/`.

pub mod exactla;
pub mod algebra;
pub mod modules;
pub mod resolution;
pub mod ext;
pub mod hochschild;
pub mod varieties;
pub mod qexterior;
pub mod cli;
