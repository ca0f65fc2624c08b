//! Twisted Hochschild cohomology over the enveloping algebra: the graded
//! ring ⊕_m Ext^{tm}_{Λ^e}(_{ψ^m}Λ, Λ), the bar-complex oracle, strong
//! commutativity checks, the K_η bimodule extension, and the tensor-down map
//! into module Ext.
//!
//! Twists of bimodules are twists by automorphisms of the enveloping
//! algebra: _{ψ^j}Λ is twist(Λ, ψ⊗id, j), and (Λ)_{ψ^{-n}} is
//! twist(Λ, id⊗ψ, -n).

use crate::algebra::{AlgebraMorphism, AlgebraRef};
use crate::exactla::{Matrix, Scalar};
use crate::ext::{
    class_equal, lift_ladder, ring_sample, twisted_product, ExtClass, ExtContext, ExtCtxRef,
    ExtError, GradedRingSample,
};
use crate::modules::{
    assemble_hom, collapse_regular_tensor, direct_sum, quotient, regular_bimodule,
    tensor_matrix, tensor_over_algebra, Module, ModuleError, ModuleMap, ModuleRef, Tensor,
};
use crate::resolution::{Resolution, ResolutionError};
use std::cell::RefCell;
use std::rc::Rc;

#[derive(Clone, Debug, thiserror::Error, PartialEq)]
pub enum HhError {
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error("bar complex differential would exceed the size cap ({0} entries)")]
    SizeCap(usize),
    #[error("operation requires a positive-degree class")]
    DegreeZero,
    #[error("class does not belong to this Hochschild setup")]
    ForeignClass,
    #[error("comparison ladder lifting failed (exactness violated)")]
    LadderFailed,
}

/// Default cap on the number of entries of a single materialized bar-complex
/// differential.
pub const BAR_CAP: usize = 1_000_000;

/// A fixed Hochschild computation environment: the algebra, its enveloping
/// algebra, the regular bimodule, a bimodule resolution, and the twist data.
pub struct HhSetup {
    pub base: AlgebraRef,
    pub env: AlgebraRef,
    /// Λ as a module over the enveloping algebra (the resolved module).
    pub bimodule: ModuleRef,
    /// The twisting automorphism of the base algebra.
    pub psi: AlgebraMorphism,
    /// ψ ⊗ id on the enveloping algebra.
    pub psi_env: AlgebraMorphism,
    pub t: usize,
    pub resolution: Rc<RefCell<Resolution>>,
    pub ctx: ExtCtxRef,
}

impl HhSetup {
    /// Uses the given bimodule resolution (its resolved module must be the
    /// regular bimodule over `env`).
    pub fn from_resolution(
        base: &AlgebraRef,
        env: &AlgebraRef,
        psi: &AlgebraMorphism,
        t: usize,
        resolution: Resolution,
    ) -> HhSetup {
        let bimodule = resolution.module.clone();
        let psi_env = AlgebraMorphism::enveloping_twist(env, base, psi, 1, psi, 0);
        let resolution = Rc::new(RefCell::new(resolution));
        let ctx = ExtContext::new(resolution.clone(), &bimodule, psi_env.clone(), t);
        HhSetup {
            base: base.clone(),
            env: env.clone(),
            bimodule,
            psi: psi.clone(),
            psi_env,
            t,
            resolution,
            ctx,
        }
    }

    /// Generic path: minimal resolution of the regular bimodule.
    pub fn minimal(base: &AlgebraRef, psi: &AlgebraMorphism, t: usize) -> HhSetup {
        let env = Rc::new(base.enveloping());
        let bim = regular_bimodule(base, &env);
        let res = Resolution::minimal(&bim);
        HhSetup::from_resolution(base, &env, psi, t, res)
    }

    /// Twisted Hochschild dimension table over the ring grading: entry n is
    /// dim Ext^{tn}(_{ψ^n}Λ, Λ), the n-th graded piece of HH^{t*}(_{ψ^*}Λ, Λ).
    pub fn dims(&self, n_max: usize) -> Result<Vec<usize>, HhError> {
        (0..=n_max)
            .map(|n| Ok(self.ctx.dim(self.t * n, n as i64)?))
            .collect()
    }

    /// Degree-truncated sample of the twisted Hochschild ring.
    pub fn sample(&self, m_max: usize) -> Result<GradedRingSample, HhError> {
        Ok(ring_sample(&self.ctx, m_max)?)
    }
}

/// The induced class −⊗_Λ M: for η ∈ Ext^{tm}_{Λ^e}(_{ψ^m}Λ, Λ), the class
/// of η⊗id_M in Ext^{tm}_Λ(_{ψ^m}M, M), computed in `out` (a context whose
/// resolution resolves M with coefficients M and twist (ψ, t)).
///
/// The bimodule resolution tensored with M is a projective resolution of M
/// (right-projectivity of Λ); a comparison ladder from the minimal resolution
/// of M transports the tensored cocycle.
pub fn tensor_down(
    setup: &HhSetup,
    eta: &ExtClass,
    m: &ModuleRef,
    out: &ExtCtxRef,
) -> Result<ExtClass, HhError> {
    if !Rc::ptr_eq(&eta.ctx, &setup.ctx) {
        return Err(HhError::ForeignClass);
    }
    let tm = eta.n;
    let grade = eta.j;
    setup.resolution.borrow_mut().ensure_length(tm)?;
    let field = m.field();
    // tensored complex T_i = F_i ⊗_Λ M with augmentation to M
    let (tensors, tdiff, aug_t) = {
        let res = setup.resolution.borrow();
        let tensors: Vec<Tensor> = (0..=tm)
            .map(|i| tensor_over_algebra(&setup.base, &res.projectives[i], m))
            .collect::<Result<_, _>>()?;
        let tdiff: Vec<Matrix> = (1..=tm)
            .map(|i| tensor_matrix(&res.maps[i].matrix, m.dim, &tensors[i], &tensors[i - 1]))
            .collect();
        let t_lam = tensor_over_algebra(&setup.base, &setup.bimodule, m)?;
        let collapse = collapse_regular_tensor(&setup.base, m, &t_lam);
        let aug_t = collapse
            .matrix
            .mul(&tensor_matrix(&res.maps[0].matrix, m.dim, &tensors[0], &t_lam));
        (tensors, tdiff, aug_t)
    };
    // ladder h_i: P^M_i -> T_i lifting the identity of M
    out.resolution.borrow_mut().ensure_length(tm)?;
    let mut ladder: Vec<Matrix> = Vec::with_capacity(tm + 1);
    for i in 0..=tm {
        let (p, d_mat, aug_m) = {
            let res = out.resolution.borrow();
            let d = if i == 0 {
                None
            } else {
                Some(res.maps[i].matrix.clone())
            };
            (res.projectives[i].clone(), d, res.maps[0].matrix.clone())
        };
        let genvecs: Vec<Vec<Scalar>> = p
            .presentation
            .as_ref()
            .expect("resolution projectives are presented")
            .gens
            .iter()
            .map(|g| g.vector.clone())
            .collect();
        let (target_mat, rhs_full) = match &d_mat {
            None => (aug_t.clone(), aug_m),
            Some(d) => (tdiff[i - 1].clone(), ladder[i - 1].mul(d)),
        };
        let rhs_cols: Vec<Vec<Scalar>> = genvecs.iter().map(|v| rhs_full.apply(v)).collect();
        let rhs = Matrix::from_cols(target_mat.rows, &rhs_cols, field);
        let sol = target_mat.solve(&rhs).ok_or(HhError::LadderFailed)?;
        let images: Vec<Vec<Scalar>> = (0..genvecs.len()).map(|c| sol.col(c)).collect();
        let hi = assemble_hom(&p, None, &tensors[i].module, &images);
        // verify the square exactly
        let lhs = match &d_mat {
            None => aug_t.mul(&hi),
            Some(d) => {
                let _ = d;
                tdiff[i - 1].mul(&hi)
            }
        };
        if !lhs.sub(&rhs_full).is_zero() {
            return Err(HhError::LadderFailed);
        }
        ladder.push(hi);
    }
    // composite: collapse ∘ (f_η ⊗ id) ∘ h_{tm}
    let f = eta.full_matrix()?;
    let t_lam = tensor_over_algebra(&setup.base, &setup.bimodule, m)?;
    let collapse = collapse_regular_tensor(&setup.base, m, &t_lam);
    let f_tensor = tensor_matrix(&f, m.dim, &tensors[tm], &t_lam);
    let full = collapse.matrix.mul(&f_tensor).mul(&ladder[tm]);
    Ok(out.class_from_full(tm, grade, &full)?)
}

/// Strong commutativity of a homogeneous class against the n-th power of ψ:
/// compares _{ψ^n}η and η_{ψ^{-n}} as classes in
/// Ext^{tm}(_{ψ^{m+n}}Λ, _{ψ^n}Λ).
///
/// _{ψ^n}η is η's matrix with both sides twisted (matrices unchanged).
/// η_{ψ^{-n}} is transported along the canonical identification
/// Λ_{ψ^{-n}} ≅ _{ψ^n}Λ, v ↦ ψ^n(v): a comparison ladder u_• lifting ψ^{-n}
/// carries the standard twisted resolution onto the right-twisted one, and
/// the transported cocycle is ψ^n ∘ f_η ∘ u_{tm}.
pub fn strong_comm_check(setup: &HhSetup, eta: &ExtClass, n: i64) -> Result<bool, HhError> {
    if !Rc::ptr_eq(&eta.ctx, &setup.ctx) {
        return Err(HhError::ForeignClass);
    }
    let tm = eta.n;
    let m = eta.j;
    let f = eta.full_matrix()?;
    let target_tw = Rc::new(setup.bimodule.twist(&setup.psi_env, n)?);
    let ctx2 = ExtContext::new(
        setup.resolution.clone(),
        &target_tw,
        setup.psi_env.clone(),
        setup.t,
    );
    let left = ctx2.class_from_full(tm, m + n, &f)?;
    // right-twist automorphism id ⊗ ψ^{-n} of the enveloping algebra
    let phi_r = AlgebraMorphism::enveloping_twist(&setup.env, &setup.base, &setup.psi, 0, &setup.psi, -n);
    let psin_inv = setup.psi.power(-n).matrix;
    setup.resolution.borrow_mut().ensure_length(tm)?;
    let mut ladder: Vec<Matrix> = Vec::with_capacity(tm + 1);
    for i in 0..=tm {
        let (p, d_mat, aug) = {
            let res = setup.resolution.borrow();
            let d = if i == 0 {
                None
            } else {
                Some(res.maps[i].matrix.clone())
            };
            (res.projectives[i].clone(), d, res.maps[0].matrix.clone())
        };
        // the right-left twisted copy of P_i the rung lands in
        let rl = Rc::new(p.twist(&setup.psi_env, m)?.twist(&phi_r, 1)?);
        let (target_mat, rhs_full) = match &d_mat {
            None => (aug.clone(), psin_inv.mul(&aug)),
            Some(d) => (d.clone(), ladder[i - 1].mul(d)),
        };
        let genvecs: Vec<Vec<Scalar>> = p
            .presentation
            .as_ref()
            .expect("resolution projectives are presented")
            .gens
            .iter()
            .map(|g| g.vector.clone())
            .collect();
        let rhs_cols: Vec<Vec<Scalar>> = genvecs.iter().map(|v| rhs_full.apply(v)).collect();
        let rhs = Matrix::from_cols(target_mat.rows, &rhs_cols, target_mat.field);
        let sol = target_mat.solve(&rhs).ok_or(HhError::LadderFailed)?;
        let images: Vec<Vec<Scalar>> = (0..genvecs.len()).map(|c| sol.col(c)).collect();
        let ui = assemble_hom(&p, Some((&setup.psi_env, m + n)), &rl, &images);
        if !target_mat.mul(&ui).sub(&rhs_full).is_zero() {
            return Err(HhError::LadderFailed);
        }
        ladder.push(ui);
    }
    let psin = setup.psi.power(n).matrix;
    let g = psin.mul(&f).mul(&ladder[tm]);
    let right = ctx2.class_from_full(tm, m + n, &g)?;
    Ok(class_equal(&left, &right)?)
}

/// Outcome of the bounded strongly-commutative-subalgebra search.
pub enum StrongifyOutcome {
    /// Smallest power s whose basis powers all pass, with those powers.
    Found { s: usize, powers: Vec<ExtClass> },
    NotFound { s_max: usize },
}

/// Searches for the smallest s ≤ s_max such that the s-th power of every
/// sampled basis class passes strong_comm_check with n = 1.
pub fn strongify(
    setup: &HhSetup,
    sample: &GradedRingSample,
    s_max: usize,
) -> Result<StrongifyOutcome, HhError> {
    for s in 1..=s_max {
        let mut powers = Vec::new();
        let mut all_ok = true;
        'outer: for grade in sample.basis.iter() {
            for class in grade {
                let mut power = class.clone();
                for _ in 1..s {
                    power = twisted_product(&setup.ctx, &power, class)?;
                }
                if !strong_comm_check(setup, &power, 1)? {
                    all_ok = false;
                    break 'outer;
                }
                powers.push(power);
            }
        }
        if all_ok {
            return Ok(StrongifyOutcome::Found { s, powers });
        }
    }
    Ok(StrongifyOutcome::NotFound { s_max })
}

/// The extension 0 → Λ → K_η → Ω^{tm-1}(_{ψ^m}Λ) → 0 attached to a
/// positive-degree class η: K_η is the pushout of Ω^{tm}(_{ψ^m}Λ) ↪ P_{tm-1}
/// along the corestriction f̄ of η's cocycle.
pub struct KEtaExtension {
    pub module: ModuleRef,
    /// Matrix of Λ → K_η.
    pub inject: Matrix,
    /// Matrix of K_η → Ω^{tm-1}(_{ψ^m}Λ) (coordinates of the cached syzygy).
    pub project: Matrix,
    /// Ω^{tm-1}(_{ψ^m}Λ) as a twisted module.
    pub omega: ModuleRef,
    /// Exactness certificate: dimension count, injectivity, surjectivity,
    /// zero composite.
    pub exact: bool,
}

pub fn k_eta(setup: &HhSetup, eta: &ExtClass) -> Result<KEtaExtension, HhError> {
    if !Rc::ptr_eq(&eta.ctx, &setup.ctx) {
        return Err(HhError::ForeignClass);
    }
    let tm = eta.n;
    if tm == 0 {
        return Err(HhError::DegreeZero);
    }
    let grade = eta.j;
    let f = eta.full_matrix()?;
    let (w, iota, d_tm, p_prev, aug) = {
        let mut res = setup.resolution.borrow_mut();
        res.ensure_length(tm)?;
        let (w, iota) = res.kernel_of(tm - 1)?;
        (
            w,
            iota,
            res.maps[tm].matrix.clone(),
            res.projectives[tm - 1].clone(),
            res.maps[0].matrix.clone(),
        )
    };
    // corestriction of d_tm onto its image W = Ω^{tm}, then f̄ with f̄∘D = f
    let d_cor = iota.matrix.solve(&d_tm).expect("image of d lies in ker of previous d");
    let fbar = d_cor
        .transpose()
        .solve(&f.transpose())
        .ok_or(HhError::LadderFailed)?
        .transpose();
    debug_assert!(fbar.mul(&d_cor).sub(&f).is_zero());
    // K_η = (Λ ⊕ twist(P_{tm-1})) / graph{(f̄ w, -ι w)}
    let p_tw = Rc::new(p_prev.twist(&setup.psi_env, grade)?);
    let big = direct_sum(&setup.bimodule, &p_tw);
    let lam_dim = setup.bimodule.dim;
    let graph: Vec<Vec<Scalar>> = (0..w.dim)
        .map(|k| {
            let mut v = fbar.col(k);
            v.extend(iota.matrix.col(k).iter().map(|s| s.neg()));
            v
        })
        .collect();
    let (k_mod, proj, sect) = quotient(&big, &graph);
    // Λ → K_η: first summand through the projection
    let inject = Matrix::from_cols(
        k_mod.dim,
        &(0..lam_dim)
            .map(|c| proj.matrix.col(c))
            .collect::<Vec<_>>(),
        f.field,
    );
    // K_η → Ω^{tm-1}: second summand through d_{tm-1} (or the augmentation
    // when tm = 1), corestricted onto the syzygy
    let (omega_plain, c_mat) = if tm == 1 {
        (setup.bimodule.clone(), aug)
    } else {
        let (w1, iota1) = setup.resolution.borrow_mut().kernel_of(tm - 2)?;
        let d_prev = setup.resolution.borrow().maps[tm - 1].matrix.clone();
        let c = iota1.matrix.solve(&d_prev).expect("image of d lies in syzygy");
        (w1, c)
    };
    let omega = Rc::new(omega_plain.twist(&setup.psi_env, grade)?);
    let mut second = Matrix::zero(omega.dim, big.dim, f.field);
    for r in 0..omega.dim {
        for c in 0..p_prev.dim {
            let v = c_mat.at(r, c);
            if !v.is_zero() {
                second.set(r, lam_dim + c, v.clone());
            }
        }
    }
    let project = second.mul(&sect);
    let exact = k_mod.dim == lam_dim + omega.dim
        && inject.rank() == lam_dim
        && project.rank() == omega.dim
        && project.mul(&inject).is_zero()
        && k_mod.validate().is_ok();
    Ok(KEtaExtension {
        module: k_mod,
        inject,
        project,
        omega,
        exact,
    })
}

/// Materialized bar complex: B^n is the free enveloping module of rank dⁿ on
/// the interior tensors, with the alternating-sum differential and the
/// multiplication augmentation.
pub struct BarComplex {
    pub n_max: usize,
    pub terms: Vec<ModuleRef>,
    /// maps[0]: B^0 → Λ; maps[n]: B^n → B^{n-1}.
    pub maps: Vec<Matrix>,
}

pub fn bar_complex(
    base: &AlgebraRef,
    env: &AlgebraRef,
    bimodule: &ModuleRef,
    n_max: usize,
    cap: usize,
) -> Result<BarComplex, HhError> {
    let d = base.dim;
    let field = base.field;
    // size guard on the largest differential
    if n_max >= 1 {
        let largest = (env.dim * d.pow(n_max as u32)) * (env.dim * d.pow(n_max as u32 - 1));
        if largest > cap {
            return Err(HhError::SizeCap(cap));
        }
    }
    let mut terms: Vec<ModuleRef> = Vec::with_capacity(n_max + 1);
    let mut maps: Vec<Matrix> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let rank = d.pow(n as u32);
        let bn = Rc::new(Module::free(env, rank));
        if n == 0 {
            let images = vec![base.unit.clone()];
            maps.push(assemble_hom(&bn, None, bimodule, &images));
            terms.push(bn);
            continue;
        }
        let prev = &terms[n - 1];
        let prev_rank = d.pow(n as u32 - 1);
        let digits = |idx: usize| -> Vec<usize> {
            let mut v = vec![0usize; n];
            let mut rem = idx;
            for k in (0..n).rev() {
                v[k] = rem % d;
                rem /= d;
            }
            v
        };
        let tuple_index = |t: &[usize]| -> usize { t.iter().fold(0, |acc, &x| acc * d + x) };
        let place = |blk: usize, a: &[Scalar], b: &[Scalar], coeff: &Scalar, out: &mut Vec<Scalar>| {
            let tv = base.env_tensor(a, b);
            for (k, s) in tv.iter().enumerate() {
                if !s.is_zero() {
                    let idx = blk * env.dim + k;
                    out[idx] = out[idx].add(&coeff.mul(s));
                }
            }
        };
        let images: Vec<Vec<Scalar>> = (0..d.pow(n as u32))
            .map(|gi| {
                let t = digits(gi);
                let mut img = vec![Scalar::zero(field); prev.dim];
                // leading factor moves out to the left
                place(
                    tuple_index(&t[1..]),
                    &base.basis_vec(t[0]),
                    &base.unit,
                    &Scalar::one(field),
                    &mut img,
                );
                // interior merges
                for k in 0..n - 1 {
                    let sign = Scalar::from_i64(if (k + 1) % 2 == 0 { 1 } else { -1 }, field);
                    let prod = &base.mul[t[k]][t[k + 1]];
                    for (c, coeff) in prod.iter().enumerate() {
                        if coeff.is_zero() {
                            continue;
                        }
                        let mut merged: Vec<usize> = Vec::with_capacity(n - 1);
                        merged.extend_from_slice(&t[..k]);
                        merged.push(c);
                        merged.extend_from_slice(&t[k + 2..]);
                        place(
                            tuple_index(&merged),
                            &base.unit,
                            &base.unit,
                            &sign.mul(coeff),
                            &mut img,
                        );
                    }
                }
                // trailing factor moves out to the right
                let sign = Scalar::from_i64(if n % 2 == 0 { 1 } else { -1 }, field);
                place(
                    tuple_index(&t[..n - 1]),
                    &base.unit,
                    &base.basis_vec(t[n - 1]),
                    &sign,
                    &mut img,
                );
                img
            })
            .collect();
        maps.push(assemble_hom(&bn, None, prev, &images));
        terms.push(bn);
        let _ = prev_rank;
    }
    Ok(BarComplex {
        n_max,
        terms,
        maps,
    })
}

impl BarComplex {
    /// d² = 0 and rank-exactness of the augmented complex in the computed range.
    pub fn validate(&self, lam_dim: usize) -> bool {
        for n in 1..=self.n_max {
            if !self.maps[n - 1].mul(&self.maps[n]).is_zero() {
                return false;
            }
        }
        if self.maps[0].rank() != lam_dim {
            return false;
        }
        for n in 0..self.n_max {
            if self.maps[n].rank() + self.maps[n + 1].rank() != self.terms[n].dim {
                return false;
            }
        }
        true
    }

    /// Wraps the materialized complex as an explicit Resolution (for ladder
    /// lifting against another resolution of the same bimodule).
    pub fn as_resolution(self, bimodule: &ModuleRef) -> Rc<RefCell<Resolution>> {
        let terms = self.terms;
        let maps = self.maps;
        let bim = bimodule.clone();
        let provider = move |n: usize, _res: &Resolution| -> (ModuleRef, ModuleMap) {
            assert!(n < terms.len(), "bar complex depth exceeded");
            let map = if n == 0 {
                ModuleMap::new(&terms[0], &bim, maps[0].clone())
            } else {
                ModuleMap::new(&terms[n], &terms[n - 1], maps[n].clone())
            };
            (terms[n].clone(), map)
        };
        let module = bimodule.clone();
        Rc::new(RefCell::new(Resolution::explicit(
            &module,
            Box::new(provider),
        )))
    }
}

/// Twisted Hochschild dimensions computed purely on bar cochains
/// (Hom(twist(B^k, (ψ⊗id)^j), Λ) ≅ Λ^(dᵏ)), without materializing the
/// bimodule-sized differentials. Indexed like `HhSetup::dims`: entry n is
/// the dimension of the n-th graded piece, the cohomology at cohomological
/// degree tn of the twist-j=n cochain complex.
///
/// When the unit of the algebra is a basis vector the normalized (reduced)
/// bar subcomplex is used: interior tensor factors range over the non-unit
/// basis, and merged products are reduced modulo the unit. This is
/// chain-homotopy equivalent to the full bar complex and keeps the cochain
/// spaces small enough to reach a couple more degrees under the cap.
pub fn bar_hh_dims(
    base: &AlgebraRef,
    psi: &AlgebraMorphism,
    t: usize,
    n_max: usize,
    cap: usize,
) -> Result<Vec<usize>, HhError> {
    let d = base.dim;
    let field = base.field;
    // interior alphabet: non-unit basis indices if the unit is a basis
    // vector, otherwise the whole basis (full bar complex)
    let unit_index = (0..d).find(|&i| base.unit == base.basis_vec(i));
    let alph: Vec<usize> = match unit_index {
        Some(u) => (0..d).filter(|&i| i != u).collect(),
        None => (0..d).collect(),
    };
    let r = alph.len();
    let mut inv: Vec<Option<usize>> = vec![None; d];
    for (pos, &i) in alph.iter().enumerate() {
        inv[i] = Some(pos);
    }
    // δ_k: C^k -> C^{k+1}, where C^k has dimension d·rᵏ; built per twist j
    let delta = |k: usize, j: i64| -> Result<Matrix, HhError> {
        let rows = d * r.pow(k as u32 + 1);
        let cols = d * r.pow(k as u32);
        if rows * cols > cap {
            return Err(HhError::SizeCap(cap));
        }
        let psij = psi.power(-j);
        let lpsi: Vec<Matrix> = (0..d)
            .map(|i| base.left_mult(&psij.apply(&base.basis_vec(i))))
            .collect();
        let rmul: Vec<Matrix> = (0..d).map(|i| base.right_mult(&base.basis_vec(i))).collect();
        let mut mat = Matrix::zero(rows, cols, field);
        let add = |mat: &mut Matrix, row: usize, col: usize, v: &Scalar| {
            if !v.is_zero() {
                let cur = mat.at(row, col).add(v);
                mat.set(row, col, cur);
            }
        };
        for h in 0..r.pow(k as u32 + 1) {
            // digit positions of the (k+1)-tuple, most significant first
            let mut hd = vec![0usize; k + 1];
            let mut rem = h;
            for s in (0..=k).rev() {
                hd[s] = rem % r;
                rem /= r;
            }
            let tail = h % r.pow(k as u32);
            for c in 0..d {
                for row in 0..d {
                    add(&mut mat, h * d + row, tail * d + c, lpsi[alph[hd[0]]].at(row, c));
                }
            }
            for kk in 0..k {
                let sign = if (kk + 1) % 2 == 0 { 1i64 } else { -1 };
                let signs = Scalar::from_i64(sign, field);
                let prod = &base.mul[alph[hd[kk]]][alph[hd[kk + 1]]];
                for (cc, coeff) in prod.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    // unit components of merged products die in the
                    // normalized quotient
                    let Some(cpos) = inv[cc] else { continue };
                    let mut merged: Vec<usize> = Vec::with_capacity(k);
                    merged.extend_from_slice(&hd[..kk]);
                    merged.push(cpos);
                    merged.extend_from_slice(&hd[kk + 2..]);
                    let g = merged.iter().fold(0, |acc, &x| acc * r + x);
                    let v = signs.mul(coeff);
                    for c in 0..d {
                        add(&mut mat, h * d + c, g * d + c, &v);
                    }
                }
            }
            let sign = if (k + 1) % 2 == 0 { 1i64 } else { -1 };
            let signs = Scalar::from_i64(sign, field);
            let init = h / r;
            let last = alph[hd[k]];
            for c in 0..d {
                for row in 0..d {
                    add(&mut mat, h * d + row, init * d + c, &signs.mul(rmul[last].at(row, c)));
                }
            }
        }
        Ok(mat)
    };
    let mut dims = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let k = t * n;
        let j = n as i64;
        let out = delta(k, j)?;
        let ck = d * r.pow(k as u32);
        let cocycles = ck - out.rank();
        let boundaries = if k == 0 { 0 } else { delta(k - 1, j)?.rank() };
        dims.push(cocycles - boundaries);
    }
    Ok(dims)
}

/// Bar criterion for strong commutativity (a sufficient condition): lifts η
/// to a bar cochain f and checks
/// f(ψ^{-n}(λ₀) ⊗ ⋯ ⊗ 1) = ψ^{-n}(f(λ₀ ⊗ ⋯ ⊗ 1)) on all basis tensors.
pub fn bar_criterion_check(
    setup: &HhSetup,
    eta: &ExtClass,
    n: i64,
    cap: usize,
) -> Result<bool, HhError> {
    if !Rc::ptr_eq(&eta.ctx, &setup.ctx) {
        return Err(HhError::ForeignClass);
    }
    let tm = eta.n;
    let j = eta.j;
    let bar = bar_complex(&setup.base, &setup.env, &setup.bimodule, tm, cap)?;
    let aug = bar.maps[0].clone();
    let bar_res = bar.as_resolution(&setup.bimodule);
    let id_env = AlgebraMorphism::identity(&setup.env);
    let ladder = lift_ladder(&bar_res, 0, &id_env, 0, &setup.resolution, &aug, tm)
        .map_err(|_| HhError::LadderFailed)?;
    let composite = eta.full_matrix()?.mul(&ladder[tm]);
    // values on the interior generators
    let d = setup.base.dim;
    let env_dim = setup.env.dim;
    let gens = d.pow(tm as u32);
    let psij_inv = setup.psi.power(-j);
    let psin_inv = setup.psi.power(-n);
    for g in 0..gens {
        // generator vector of block g in the free module B^{tm}
        let mut gv = vec![Scalar::zero(setup.base.field); gens * env_dim];
        for (k, s) in setup.env.unit.iter().enumerate() {
            gv[g * env_dim + k] = s.clone();
        }
        let v = composite.apply(&gv);
        for l0 in 0..d {
            let lam = setup.base.basis_vec(l0);
            let lhs = setup
                .base
                .left_mult(&psij_inv.apply(&psin_inv.apply(&lam)))
                .apply(&v);
            let rhs = psin_inv.apply(&setup.base.left_mult(&psij_inv.apply(&lam)).apply(&v));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::exactla::Field;
    use crate::qexterior::QExterior;

    fn lambda() -> QExterior {
        QExterior::build(Scalar::from_i64(2, Field::Rationals)).unwrap()
    }

    fn builtin_setup(l: &QExterior) -> HhSetup {
        HhSetup::from_resolution(
            &l.algebra,
            &l.enveloping,
            &l.nakayama,
            2,
            l.bimodule_resolution(),
        )
    }

    fn kxk() -> (AlgebraRef, AlgebraMorphism) {
        // k × k with the swap automorphism
        let f = Field::Rationals;
        let z = || Scalar::zero(f);
        let o = || Scalar::one(f);
        let mul = vec![
            vec![vec![o(), z()], vec![z(), z()]],
            vec![vec![z(), z()], vec![z(), o()]],
        ];
        let a = Rc::new(
            Algebra::validate(
                "kxk",
                f,
                vec!["e1".into(), "e2".into()],
                mul,
                vec![o(), o()],
                Some(vec![]),
                Some(vec![vec![o(), z()], vec![z(), o()]]),
                None,
            )
            .unwrap(),
        );
        let swap = AlgebraMorphism::automorphism(&a, Matrix::from_i64(&[&[0, 1], &[1, 0]], f)).unwrap();
        (a, swap)
    }

    #[test]
    fn hh_dims_builtin_small_window() {
        let l = lambda();
        let setup = builtin_setup(&l);
        assert_eq!(setup.dims(4).unwrap(), vec![2, 0, 1, 0, 1]);
    }

    #[test]
    fn hh_dims_minimal_matches_builtin() {
        let l = lambda();
        let setup = HhSetup::minimal(&l.algebra, &l.nakayama, 2);
        assert_eq!(setup.dims(2).unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn bar_complex_valid_and_dims_agree() {
        let l = lambda();
        let bar = bar_complex(&l.algebra, &l.enveloping, &l.regular_bimodule(), 3, BAR_CAP)
            .unwrap();
        assert_eq!(bar.terms[1].dim, 64);
        assert!(bar.validate(4));
        let dims = bar_hh_dims(&l.algebra, &l.nakayama, 2, 2, BAR_CAP).unwrap();
        assert_eq!(dims, vec![2, 0, 1]);
    }

    #[test]
    fn bar_cap_respected() {
        let l = lambda();
        let err = bar_complex(&l.algebra, &l.enveloping, &l.regular_bimodule(), 6, 1000);
        assert!(matches!(err, Err(HhError::SizeCap(_))));
    }

    #[test]
    fn tensor_down_unit_is_identity_class() {
        let l = lambda();
        let setup = builtin_setup(&l);
        let one = Scalar::one(Field::Rationals);
        let m = l.module(&one, &one);
        let res = Rc::new(RefCell::new(Resolution::minimal(&m)));
        let out = ExtContext::new(res, &m, l.nakayama.clone(), 2);
        let unit = setup.ctx.unit_class().unwrap();
        let down = tensor_down(&setup, &unit, &m, &out).unwrap();
        let id = out.unit_class().unwrap();
        assert!(class_equal(&down, &id).unwrap());
    }

    #[test]
    fn strong_comm_central_degree_zero() {
        let l = lambda();
        let setup = builtin_setup(&l);
        // yx is central and fixed by ν: its degree-0 class is strongly
        // commutative against every power
        let yx_mult = l.algebra.left_mult(&l.algebra.basis_vec(crate::qexterior::YX));
        let aug = {
            let mut res = setup.resolution.borrow_mut();
            res.ensure_length(0).unwrap();
            res.maps[0].matrix.clone()
        };
        let class = setup.ctx.class_from_full(0, 0, &yx_mult.mul(&aug)).unwrap();
        assert!(strong_comm_check(&setup, &class, 1).unwrap());
        assert!(strong_comm_check(&setup, &class, 2).unwrap());
    }

    #[test]
    fn strong_comm_fails_on_swapped_idempotent() {
        let (a, swap) = kxk();
        let setup = HhSetup::minimal(&a, &swap, 1);
        let aug = {
            let mut res = setup.resolution.borrow_mut();
            res.ensure_length(0).unwrap();
            res.maps[0].matrix.clone()
        };
        let e1 = a.left_mult(&a.basis_vec(0));
        let class = setup.ctx.class_from_full(0, 0, &e1.mul(&aug)).unwrap();
        assert!(!strong_comm_check(&setup, &class, 1).unwrap());
        // the unit itself is fine
        let unit = setup.ctx.unit_class().unwrap();
        assert!(strong_comm_check(&setup, &unit, 1).unwrap());
        // and strongify never fixes the swap
        let sample = setup.sample(0).unwrap();
        assert!(matches!(
            strongify(&setup, &sample, 3).unwrap(),
            StrongifyOutcome::NotFound { .. }
        ));
    }

    #[test]
    fn k_eta_dimension_bookkeeping() {
        let l = lambda();
        let setup = builtin_setup(&l);
        let theta = setup
            .ctx
            .class_from_images(4, 2, &l.g_class_images(1))
            .unwrap();
        assert!(!theta.is_zero());
        let ext = k_eta(&setup, &theta).unwrap();
        assert_eq!(ext.omega.dim, 28);
        assert_eq!(ext.module.dim, 32);
        assert!(ext.exact);
    }
}
