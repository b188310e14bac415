use std::collections::BTreeMap;

use super::{AlgebraComplex, AlgebraError, CentralSign, StructuredAlgebra};
use crate::bigraded::{
    BiDegree, BigradedChainComplex, ChainMap, GradedHomology, HomologyGroup, Window,
};
use crate::coeffs::{span_contains, Matrix};

/// Outcome of the Σ-structure checks for `[1]` on a finite window.
#[derive(Clone, Debug)]
pub struct SigmaReport {
    pub bound: BiDegree,
    /// d[1] = 0.
    pub one_is_cycle: bool,
    /// First cycle `z` (with its bidegree) for which `[1]z ∓ z[1]` is not a
    /// boundary.
    pub central_failure: Option<(BiDegree, String)>,
    /// First bidegree where `Σ₁¹A → cotr₁A`, `x ↦ [1]x`, fails to be a
    /// homology isomorphism.
    pub quasi_iso_failure: Option<BiDegree>,
    /// First bidegree where `H_m` differs from `Σ^m H_0`.
    pub shape_failure: Option<BiDegree>,
    pub homology: GradedHomology,
}

impl SigmaReport {
    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<String> {
        if !self.one_is_cycle {
            return Some("d[1] is not zero".into());
        }
        if let Some((b, z)) = &self.central_failure {
            return Some(format!("[1] is not central in homology: cycle {z} at {b}"));
        }
        if let Some(b) = self.quasi_iso_failure {
            return Some(format!(
                "multiplication by [1] is not a homology isomorphism at {b}"
            ));
        }
        if let Some(b) = self.shape_failure {
            return Some(format!("H at {b} differs from the suspension of H_0"));
        }
        None
    }
}

/// `tr_{m−1}(A)` with the outcome of the Σ-structure check on it.
#[derive(Clone, Debug)]
pub struct TruncatedAlgebra {
    pub m: i64,
    pub complex: BigradedChainComplex,
    /// `None` when the check does not apply (m = 1 or no `[1]`).
    pub sigma_failure: Option<Option<BiDegree>>,
}

impl StructuredAlgebra {
    /// Centrality of `[1]` in homology is tested with `sign`; the remaining
    /// checks are skipped when `d[1] ≠ 0`.
    pub fn verify_sigma_structure_with(
        &self,
        bound: BiDegree,
        sign: CentralSign,
    ) -> Result<SigmaReport, AlgebraError> {
        self.sigma_report(bound, sign)
    }

    /// Checks on degrees `0..=bound.degree`, dimensions `0..=bound.dimension`.
    /// `[1]` must commute strictly with homology classes: with the Koszul
    /// sign `[1]·[1] = −[1]·[1]` would kill `[1]²` whenever p is odd.
    pub fn verify_sigma_structure(&self, bound: BiDegree) -> Result<SigmaReport, AlgebraError> {
        self.sigma_report(bound, CentralSign::Trivial)
    }

    fn sigma_report(
        &self,
        bound: BiDegree,
        sign: CentralSign,
    ) -> Result<SigmaReport, AlgebraError> {
        let one = self.one().ok_or(AlgebraError::NoDistinguishedOne)?;
        let one_el = self.element(super::Word::letter(one));
        let (nmax, mmax) = (bound.degree, bound.dimension);
        let full = self.chain_complex(BiDegree::new(nmax, mmax + 2))?;
        let c = &full.complex;
        let window = Window::new(0..=nmax, 0..=mmax);
        let homology = c.homology(&window)?;

        let one_is_cycle = self.d(&one_el)?.is_zero();

        let mut central_failure = None;
        'outer: for n in 0..if one_is_cycle { nmax } else { 0 } {
            for m in 0..=mmax {
                let b = BiDegree::new(n, m);
                let target = b + BiDegree::new(1, 1);
                let cycles = c.cycle_generators(b);
                if cycles.cols() == 0 {
                    continue;
                }
                let boundaries = c.boundary_generators(target);
                for z in cycles.columns() {
                    let ze = full.element(self.ring(), b, &z);
                    let left = self.multiply(&one_el, &ze)?;
                    let right = self
                        .multiply(&ze, &one_el)?
                        .scale(sign.sign(self.ring(), 1, m));
                    let v = full.coordinates(target, &left.sub(&right))?;
                    if !span_contains(&boundaries, &v) {
                        central_failure = Some((b, ze.display(self.generators()).to_string()));
                        break 'outer;
                    }
                }
            }
        }

        let quasi_iso_failure = if nmax == 0 || !one_is_cycle {
            None
        } else {
            let lower = self.chain_complex(BiDegree::new(nmax - 1, mmax + 1))?;
            let source = lower.complex.suspend(1, 1);
            let target = c.cotruncate(1);
            let comps = self.one_components(&lower, &full, &source, |b| b.dimension >= 1)?;
            let f = ChainMap::new(&source, &target, comps)?;
            f.quasi_iso_failure(&window)?
        };

        let mut shape_failure = None;
        for b in window.iter() {
            let h0 = if b.degree >= b.dimension {
                homology.get(BiDegree::new(b.degree - b.dimension, 0))
            } else {
                HomologyGroup::zero(self.ring())
            };
            if !homology.get(b).same_shape(&h0) {
                shape_failure = Some(b);
                break;
            }
        }

        Ok(SigmaReport {
            bound,
            one_is_cycle,
            central_failure,
            quasi_iso_failure,
            shape_failure,
            homology,
        })
    }

    /// Components of `x ↦ [1]·x` from a suspended complex (indexed by the
    /// target bidegree) built on `lower`'s bases into `upper`'s bases.
    fn one_components(
        &self,
        lower: &AlgebraComplex,
        upper: &AlgebraComplex,
        source: &BigradedChainComplex,
        keep: impl Fn(BiDegree) -> bool,
    ) -> Result<BTreeMap<BiDegree, Matrix>, AlgebraError> {
        let one = self.one().ok_or(AlgebraError::NoDistinguishedOne)?;
        let one_el = self.element(super::Word::letter(one));
        let shift = BiDegree::new(1, 1);
        let mut comps = BTreeMap::new();
        for (at, _) in source.groups() {
            if !keep(at) || upper.basis(at).is_empty() {
                continue;
            }
            let m = self.left_multiplication(&one_el, shift, lower, upper, at - shift)?;
            comps.insert(at, m);
        }
        Ok(comps)
    }

    /// `tr_{m−1}` of the underlying complex on degrees `0..=max_degree`.
    /// For `m ≥ 2` and an algebra with `[1]`, also checks that
    /// `Σ₁¹ tr_{m−2}(B) → cotr₁(B)` is a homology isomorphism.
    pub fn truncate_algebra(
        &self,
        m: i64,
        max_degree: i64,
    ) -> Result<TruncatedAlgebra, AlgebraError> {
        if m < 1 {
            return Err(AlgebraError::InvalidTruncation(m));
        }
        let full = self.chain_complex(BiDegree::new(max_degree, m))?;
        let b = full.complex.truncate_presented(m - 1);
        let sigma_failure = if m >= 2 && self.one().is_some() && max_degree >= 1 {
            let lower = self.chain_complex(BiDegree::new(max_degree - 1, m))?;
            let source = lower.complex.truncate_presented(m - 2).suspend(1, 1);
            let target = b.cotruncate(1);
            let comps = self.one_components(&lower, &full, &source, |at| at.dimension >= 1)?;
            let f = ChainMap::new(&source, &target, comps)?;
            Some(f.quasi_iso_failure(&Window::new(0..=max_degree, 0..=m - 1))?)
        } else {
            None
        };
        Ok(TruncatedAlgebra {
            m,
            complex: b,
            sigma_failure,
        })
    }
}
