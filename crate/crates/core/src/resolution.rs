//! Projective resolutions: minimal ones built from iterated projective
//! covers, and explicit ones supplied degree by degree (used for the built-in
//! bimodule resolution of the quantum exterior algebra). Both are extended
//! lazily and cache their syzygies.

use crate::exactla::Matrix;
use crate::modules::{
    projective_cover, submodule, ModuleError, ModuleMap, ModuleRef,
};
use std::rc::Rc;

#[derive(Clone, Debug, thiserror::Error, PartialEq)]
pub enum ResolutionError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("d^2 != 0 between degrees {0} and {1}")]
    NotComplex(usize, usize),
    #[error("complex not exact at degree {0}")]
    NotExact(usize),
    #[error("differential {0} does not land in the radical")]
    NotMinimal(usize),
}

/// Degree-by-degree supplier for an explicit resolution: given n, return
/// (P_n, d_n) where d_n maps P_n to P_{n-1} for n >= 1 and to the resolved
/// module for n = 0.
pub type StepProvider = Box<dyn Fn(usize, &Resolution) -> (ModuleRef, ModuleMap)>;

enum Builder {
    Minimal,
    Explicit(StepProvider),
}

pub struct Resolution {
    pub module: ModuleRef,
    pub projectives: Vec<ModuleRef>,
    /// maps[0] is the augmentation P_0 -> module; maps[n] is d_n: P_n -> P_{n-1}.
    pub maps: Vec<ModuleMap>,
    /// syzygies[n] = (kernel of maps[n], embedding into projectives[n]);
    /// that kernel is the (n+1)-st syzygy of the module.
    syzygies: Vec<Option<(ModuleRef, ModuleMap)>>,
    builder: Builder,
}

impl Resolution {
    pub fn minimal(module: &ModuleRef) -> Resolution {
        Resolution {
            module: module.clone(),
            projectives: Vec::new(),
            maps: Vec::new(),
            syzygies: Vec::new(),
            builder: Builder::Minimal,
        }
    }

    pub fn explicit(module: &ModuleRef, provider: StepProvider) -> Resolution {
        Resolution {
            module: module.clone(),
            projectives: Vec::new(),
            maps: Vec::new(),
            syzygies: Vec::new(),
            builder: Builder::Explicit(provider),
        }
    }

    pub fn len(&self) -> usize {
        self.projectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectives.is_empty()
    }

    /// Extends the resolution so that P_0 .. P_n exist.
    pub fn ensure_length(&mut self, n: usize) -> Result<(), ResolutionError> {
        while self.projectives.len() <= n {
            let k = self.projectives.len();
            match &self.builder {
                Builder::Minimal => {
                    if k == 0 {
                        let (p, cover) = projective_cover(&self.module)?;
                        self.projectives.push(p);
                        self.maps.push(cover);
                    } else {
                        let (omega, emb) = self.kernel_of(k - 1)?;
                        let (p, cover) = projective_cover(&omega)?;
                        let d = emb.compose(&cover);
                        self.projectives.push(p);
                        self.maps.push(d);
                    }
                }
                Builder::Explicit(provider) => {
                    let (p, d) = provider(k, self);
                    if k > 0 {
                        // incremental d^2 = 0 check
                        if !self.maps[k - 1].matrix.mul(&d.matrix).is_zero() {
                            return Err(ResolutionError::NotComplex(k - 1, k));
                        }
                    }
                    self.projectives.push(p);
                    self.maps.push(d);
                }
            }
            self.syzygies.push(None);
        }
        Ok(())
    }

    /// Kernel of maps[n] with its embedding into P_n (cached). This is the
    /// (n+1)-st syzygy of the resolved module when the resolution is minimal.
    pub fn kernel_of(&mut self, n: usize) -> Result<(ModuleRef, ModuleMap), ResolutionError> {
        self.ensure_length(n)?;
        if self.syzygies[n].is_none() {
            let ker = self.maps[n].matrix.kernel_basis();
            let cols: Vec<_> = (0..ker.cols).map(|c| ker.col(c)).collect();
            let (s, emb) = submodule(&self.projectives[n], &cols);
            self.syzygies[n] = Some((s, emb));
        }
        Ok(self.syzygies[n].clone().unwrap())
    }

    /// The n-th syzygy module: Omega^0 = the module itself, Omega^n for n >= 1
    /// is the kernel of maps[n-1].
    pub fn syzygy_module(&mut self, n: usize) -> Result<ModuleRef, ResolutionError> {
        if n == 0 {
            return Ok(self.module.clone());
        }
        Ok(self.kernel_of(n - 1)?.0)
    }

    /// Ranks of P_0 .. P_n (number of presentation generators).
    pub fn betti(&mut self, n: usize) -> Result<Vec<usize>, ResolutionError> {
        self.ensure_length(n)?;
        Ok(self
            .projectives
            .iter()
            .take(n + 1)
            .map(|p| {
                p.presentation
                    .as_ref()
                    .map(|pr| pr.rank())
                    .unwrap_or(p.dim)
            })
            .collect())
    }

    /// Dimensions of P_0 .. P_n.
    pub fn lengths(&mut self, n: usize) -> Result<Vec<usize>, ResolutionError> {
        self.ensure_length(n)?;
        Ok(self.projectives.iter().take(n + 1).map(|p| p.dim).collect())
    }

    /// Checks d^2 = 0 and rank-exactness through degree n:
    /// rank d_{k+1} = dim P_k - rank d_k for 0 <= k < n.
    pub fn verify_exact(&mut self, n: usize) -> Result<(), ResolutionError> {
        self.ensure_length(n)?;
        for k in 1..=n {
            if !self.maps[k - 1].matrix.mul(&self.maps[k].matrix).is_zero() {
                return Err(ResolutionError::NotComplex(k - 1, k));
            }
        }
        // augmentation onto the module
        if self.maps[0].matrix.rank() != self.module.dim {
            return Err(ResolutionError::NotExact(0));
        }
        for k in 0..n {
            let dk = self.maps[k].matrix.rank();
            let dk1 = self.maps[k + 1].matrix.rank();
            if dk + dk1 != self.projectives[k].dim {
                return Err(ResolutionError::NotExact(k + 1));
            }
        }
        Ok(())
    }

    /// Checks that every differential through degree n lands in the radical
    /// of its target (the defining property of a minimal resolution).
    pub fn verify_minimal(&mut self, n: usize) -> Result<(), ResolutionError> {
        self.ensure_length(n)?;
        for k in 1..=n {
            let target = &self.projectives[k - 1];
            let rad = target.radical_span();
            let rmat = Matrix::from_cols(target.dim, &rad, target.field());
            if rmat.solve(&self.maps[k].matrix).is_none() {
                return Err(ResolutionError::NotMinimal(k));
            }
        }
        Ok(())
    }
}

/// Growth verdict for a sequence of non-negative integers (betti numbers,
/// module lengths, Ext dimensions) over an observation window.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum GrowthEstimate {
    /// Tail is identically zero: complexity 0.
    EventuallyZero,
    /// Tail is a nonzero constant: complexity 1.
    Bounded,
    /// Tail agrees with a polynomial of degree c - 1: complexity c.
    PolynomialDegree(usize),
    /// Window too short or no polynomial pattern found.
    Inconclusive,
}

impl GrowthEstimate {
    pub fn complexity(&self) -> Option<usize> {
        match self {
            GrowthEstimate::EventuallyZero => Some(0),
            GrowthEstimate::Bounded => Some(1),
            GrowthEstimate::PolynomialDegree(c) => Some(*c),
            GrowthEstimate::Inconclusive => None,
        }
    }
}

/// Estimates growth from the last `window` entries of the sequence.
pub fn estimate_growth(seq: &[usize], window: usize) -> GrowthEstimate {
    if seq.len() < window || window < 4 {
        return GrowthEstimate::Inconclusive;
    }
    let tail = &seq[seq.len() - window..];
    let zeros_needed = window.div_ceil(2);
    if tail[window - zeros_needed..].iter().all(|&v| v == 0) {
        return GrowthEstimate::EventuallyZero;
    }
    if tail.iter().all(|&v| v == tail[0]) {
        return GrowthEstimate::Bounded;
    }
    // successive finite differences on the tail
    let mut diffs: Vec<i64> = tail.iter().map(|&v| v as i64).collect();
    for c in 1..window {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
        if diffs.iter().all(|&d| d == 0) {
            // degree c - 1 polynomial, but require at least 2 surviving
            // differences so the conclusion is not vacuous
            if diffs.len() >= 2 {
                return GrowthEstimate::PolynomialDegree(c);
            }
            return GrowthEstimate::Inconclusive;
        }
    }
    GrowthEstimate::Inconclusive
}

/// Complexity of a module read off a minimal resolution: growth of its betti
/// numbers over the window.
pub fn complexity(
    module: &ModuleRef,
    window: usize,
) -> Result<(GrowthEstimate, Vec<usize>), ResolutionError> {
    let mut res = Resolution::minimal(module);
    let betti = res.betti(window.max(4) * 2 - 1)?;
    let est = estimate_growth(&betti, window.max(4));
    Ok((est, betti))
}

/// Convenience: a resolution of a twisted module shares all differential
/// matrices with the untwisted one, so the syzygies of the twist are the
/// twists of the syzygies.
pub fn twisted_syzygy(
    res: &mut Resolution,
    n: usize,
    phi: &crate::algebra::AlgebraMorphism,
    j: i64,
) -> Result<ModuleRef, ResolutionError> {
    let s = res.syzygy_module(n)?;
    Ok(Rc::new(s.twist(phi, j).map_err(ResolutionError::Module)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::exactla::{Field, Scalar};
    use crate::modules::Module;
    use std::rc::Rc;

    fn dual_numbers() -> crate::algebra::AlgebraRef {
        let f = Field::Rationals;
        let z = || Scalar::zero(f);
        let o = || Scalar::one(f);
        let mul = vec![
            vec![vec![o(), z()], vec![z(), o()]],
            vec![vec![z(), o()], vec![z(), z()]],
        ];
        Rc::new(
            Algebra::validate(
                "k[x]/(x2)",
                f,
                vec!["1".into(), "x".into()],
                mul,
                vec![o(), z()],
                None,
                None,
                None,
            )
            .unwrap(),
        )
    }

    fn simple(a: &crate::algebra::AlgebraRef) -> ModuleRef {
        let f = a.field;
        Rc::new(Module {
            algebra: a.clone(),
            dim: 1,
            action: vec![Matrix::identity(1, f), Matrix::zero(1, 1, f)],
            presentation: None,
        })
    }

    #[test]
    fn periodic_resolution_of_simple() {
        let a = dual_numbers();
        let k = simple(&a);
        let mut res = Resolution::minimal(&k);
        assert_eq!(res.betti(6).unwrap(), vec![1; 7]);
        res.verify_exact(6).unwrap();
        res.verify_minimal(6).unwrap();
        let (est, _) = complexity(&k, 5).unwrap();
        assert_eq!(est, GrowthEstimate::Bounded);
    }

    #[test]
    fn projective_resolves_in_one_step() {
        let a = dual_numbers();
        let r = Rc::new(Module::regular(&a));
        let mut res = Resolution::minimal(&r);
        assert_eq!(res.betti(3).unwrap(), vec![1, 0, 0, 0]);
        let (est, _) = complexity(&r, 5).unwrap();
        assert_eq!(est, GrowthEstimate::EventuallyZero);
    }

    #[test]
    fn growth_estimates() {
        assert_eq!(
            estimate_growth(&[3, 1, 0, 0, 0, 0, 0, 0], 8),
            GrowthEstimate::EventuallyZero
        );
        assert_eq!(
            estimate_growth(&[5, 2, 2, 2, 2, 2, 2, 2], 7),
            GrowthEstimate::Bounded
        );
        assert_eq!(
            estimate_growth(&[4, 8, 12, 16, 20, 24, 28, 32], 8),
            GrowthEstimate::PolynomialDegree(2)
        );
        assert_eq!(
            estimate_growth(&[1, 2, 4, 8, 16, 32, 64, 128], 8),
            GrowthEstimate::Inconclusive
        );
        assert_eq!(estimate_growth(&[1, 2], 8), GrowthEstimate::Inconclusive);
    }

    #[test]
    fn syzygy_modules_line_up() {
        let a = dual_numbers();
        let k = simple(&a);
        let mut res = Resolution::minimal(&k);
        let s1 = res.syzygy_module(1).unwrap();
        assert_eq!(s1.dim, 1);
        let s3 = res.syzygy_module(3).unwrap();
        assert!(crate::modules::is_isomorphic(&s1, &s3, 11).is_iso());
    }
}
