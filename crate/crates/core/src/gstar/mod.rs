//! The coefficient algebra `𝔾∗`, its truncations, and the word basis of
//! `B∗ = 𝔾∗ ⊔ T_𝔾(E)`.

mod bstar;

use std::fmt;

use crate::algebra::{
    AlgebraElement, AlgebraError, BigradedSet, DifferentialSpec, RewriteRule, StructuredAlgebra,
    TruncatedAlgebra, Word,
};
use crate::bigraded::{BiDegree, BigradedChainComplex, HomologyGroup};
use crate::coeffs::{Matrix, Prime, Ring};

pub use bstar::{
    bstar_basis, BStar, BStarSkeleton, BStarWord, SkeletonGenerator, SkeletonRelation,
};

/// `[1]^r [p]_s`; `[1]^0 [p]_0` is the unit. Bidegree `(r, r + s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GStarBasisElement {
    pub r: u32,
    pub s: u32,
}

impl GStarBasisElement {
    pub fn bidegree(self) -> BiDegree {
        BiDegree::new(self.r as i64, (self.r + self.s) as i64)
    }

    pub fn is_unit(self) -> bool {
        self.r == 0 && self.s == 0
    }

    /// Letters in [`gstar_algebra`]: `[1]` is letter 0, `[p]_s` is letter `s`.
    pub fn word(self) -> Word {
        let mut v = vec![0u32; self.r as usize];
        if self.s > 0 {
            v.push(self.s);
        }
        Word(v)
    }

    /// The unique basis element in a bidegree, if any.
    pub fn at(b: BiDegree) -> Option<Self> {
        (b.degree >= 0 && b.dimension >= b.degree).then(|| GStarBasisElement {
            r: b.degree as u32,
            s: (b.dimension - b.degree) as u32,
        })
    }
}

impl fmt::Display for GStarBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.r, self.s) {
            (0, 0) => write!(f, "1"),
            (r, s) => {
                match r {
                    0 => {}
                    1 => write!(f, "[1]")?,
                    _ => write!(f, "[1]^{r}")?,
                }
                if s > 0 {
                    write!(f, "[p]_{s}")?;
                }
                Ok(())
            }
        }
    }
}

pub fn one_label() -> &'static str {
    "[1]"
}

pub fn p_label(s: u32) -> String {
    format!("[p]_{s}")
}

/// `𝔾∗` over `ℤ/p²` with generators `[1]` and `[p]_1 … [p]_max_dimension`,
/// rules `[p]_s[1] → [1][p]_s` and `[p]_s[p]_t → 0`, `d[1] = 0`,
/// `d[p]_s = p[p]_{s−1}`. Exact in dimensions `≤ max_dimension`.
pub fn gstar_algebra(p: Prime, max_dimension: u32) -> StructuredAlgebra {
    gstar_with(p, max_dimension, true)
}

/// `𝔾∗` without the commutation rule for `[1]` (a negative control).
pub fn gstar_without_commutation(p: Prime, max_dimension: u32) -> StructuredAlgebra {
    gstar_with(p, max_dimension, false)
}

fn gstar_with(p: Prime, max_dimension: u32, commute: bool) -> StructuredAlgebra {
    let ring = Ring::local(p);
    let mut set = BigradedSet::new();
    set.push(one_label(), BiDegree::new(1, 1)).expect("fresh");
    for s in 1..=max_dimension {
        set.push(p_label(s), BiDegree::new(0, s as i64))
            .expect("fresh");
    }
    let mut rules = Vec::new();
    for s in 1..=max_dimension {
        if commute {
            rules.push(RewriteRule {
                lhs: Word(vec![s, 0]),
                rhs: AlgebraElement::monomial(ring, Word(vec![0, s]), 1),
            });
        }
        for t in 1..=max_dimension {
            rules.push(RewriteRule {
                lhs: Word(vec![s, t]),
                rhs: AlgebraElement::zero(ring),
            });
        }
    }
    let values = (1..=max_dimension).map(|s| {
        let below = if s == 1 {
            Word::unit()
        } else {
            Word::letter(s - 1)
        };
        (s, AlgebraElement::monomial(ring, below, p.get()))
    });
    let spec = DifferentialSpec::new(ring, &set, values).expect("d² = 0 on generators");
    StructuredAlgebra::new(ring, set, rules, spec, Some(0), None).expect("valid presentation")
}

/// `𝔾∗^{(m)} = tr_{m−1}(𝔾∗)` on degrees `0..=max_degree`.
pub fn gstar_truncation(
    p: Prime,
    m: i64,
    max_degree: i64,
) -> Result<TruncatedAlgebra, AlgebraError> {
    if m < 1 {
        return Err(AlgebraError::InvalidTruncation(m));
    }
    gstar_algebra(p, m as u32).truncate_algebra(m, max_degree)
}

/// Whether `d_n: cok(d_{n+1}) → im(d_n)` splits over `𝔾` in every degree.
///
/// The sequence `0 → H_n → cok d_{n+1} → im d_n → 0` of finite modules
/// splits exactly when the middle term is isomorphic to the sum of the
/// outer two.
pub fn split_check(c: &BigradedChainComplex, n: i64) -> bool {
    split_failures(c, n).is_empty()
}

/// Degrees where [`split_check`] fails.
pub fn split_failures(c: &BigradedChainComplex, n: i64) -> Vec<i64> {
    let ring = c.ring();
    let mut degrees = c.degrees();
    degrees.retain(|&k| c.group(BiDegree::new(k, n)).is_some());
    degrees
        .into_iter()
        .filter(|&k| {
            let at = BiDegree::new(k, n);
            let g = c.group(at).expect("retained");
            let sub = g.sub_matrix(ring);
            let cok = HomologyGroup::quotient(&sub, &c.boundary_generators(at));
            let h = c.homology_at(at);
            let below = at.below();
            let image = c.differential(at).mul(&sub);
            let rel_below = c
                .group(below)
                .map(|b| b.rel_matrix(ring))
                .unwrap_or_else(|| Matrix::zeros(ring, image.rows(), 0));
            let im = HomologyGroup::quotient(&image.hcat(&rel_below), &rel_below);
            cok.order_p != h.order_p + im.order_p || cok.order_p2 != h.order_p2 + im.order_p2
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CentralSign;
    use crate::bigraded::Window;

    #[test]
    fn basis_counts() {
        for p in [Prime::TWO, Prime::THREE] {
            let g = gstar_algebra(p, 6);
            for n in 0..5 {
                for m in 0..6 {
                    let b = BiDegree::new(n, m);
                    let basis = g.normal_basis(b);
                    let expected = GStarBasisElement::at(b).map(|e| e.word());
                    assert_eq!(basis, expected.into_iter().collect::<Vec<_>>(), "{b}");
                }
            }
        }
    }

    #[test]
    fn relations_and_differential() {
        let g = gstar_algebra(Prime::TWO, 4);
        let p1 = g.letter("[p]_1").unwrap();
        let p2 = g.letter("[p]_2").unwrap();
        let p3 = g.letter("[p]_3").unwrap();
        let one = g.letter("[1]").unwrap();
        let ring = g.ring();
        assert_eq!(g.d(&p1).unwrap(), AlgebraElement::one(ring).scale(2));
        assert!(g.multiply(&p2, &p3).unwrap().is_zero());
        assert_eq!(
            g.multiply(&p2, &one).unwrap(),
            g.multiply(&one, &p2).unwrap()
        );
        assert!(g.d(&one).unwrap().is_zero());
    }

    #[test]
    fn leibniz_sign_on_one_times_p2() {
        for (p, coeff) in [(Prime::TWO, 2i64), (Prime::THREE, -3)] {
            let g = gstar_algebra(p, 4);
            let x = g.element(g.word("[1] [p]_2").unwrap());
            let expected =
                AlgebraElement::from_terms(g.ring(), [(g.word("[1] [p]_1").unwrap(), coeff)]);
            assert_eq!(g.d(&x).unwrap(), expected);
        }
    }

    #[test]
    fn degree_zero_is_the_p_chain() {
        let g = gstar_algebra(Prime::TWO, 6);
        let c = g.chain_complex(BiDegree::new(0, 6)).unwrap();
        for m in 1..=6 {
            let d = c.complex.differential(BiDegree::new(0, m));
            assert_eq!(d, Matrix::from_rows(g.ring(), &[[2]]));
        }
    }

    #[test]
    fn first_truncation_is_f() {
        let t = gstar_truncation(Prime::THREE, 1, 4).unwrap();
        assert_eq!(t.sigma_failure, None);
        let c = &t.complex;
        let f = c.group_structure(BiDegree::ZERO);
        assert_eq!((f.order_p, f.order_p2), (1, 0));
        for n in 1..=4 {
            assert!(c.group_structure(BiDegree::new(n, 0)).is_zero());
        }
        assert!(c.groups().all(|(b, _)| b.dimension == 0));
    }

    #[test]
    fn second_truncation_is_pair_algebra() {
        let t = gstar_truncation(Prime::TWO, 2, 4).unwrap();
        assert_eq!(t.sigma_failure, Some(None));
        let c = &t.complex;
        // Σ𝔽 ⊕ 𝔽 → 𝔾 in degrees 0 and 1
        let top0 = c.group_structure(BiDegree::new(0, 1));
        let top1 = c.group_structure(BiDegree::new(1, 1));
        assert_eq!((top0.order_p, top0.order_p2), (1, 0));
        assert_eq!((top1.order_p, top1.order_p2), (1, 0));
        let bottom = c.group_structure(BiDegree::new(0, 0));
        assert_eq!((bottom.order_p, bottom.order_p2), (0, 1));
        let h = c.homology(&Window::new(0..=4, 0..=1)).unwrap();
        assert_eq!(h.support(), [BiDegree::new(0, 0), BiDegree::new(1, 1)]);
    }

    #[test]
    fn truncation_homology_below_top() {
        for m in 2..=5 {
            let t = gstar_truncation(Prime::TWO, m, 6).unwrap();
            assert_eq!(t.sigma_failure, Some(None), "m = {m}");
            let h = t.complex.homology(&Window::new(0..=6, 0..=m - 2)).unwrap();
            let expected: Vec<BiDegree> = (0..=m - 2).map(|k| BiDegree::new(k, k)).collect();
            assert_eq!(h.support(), expected);
            for b in &expected {
                assert_eq!(h.get(*b).f_dimension(), Some(1));
            }
        }
    }

    #[test]
    fn sigma_structure_small_window() {
        for p in [Prime::TWO, Prime::THREE] {
            let g = gstar_algebra(p, 8);
            let report = g.verify_sigma_structure(BiDegree::new(5, 6)).unwrap();
            assert!(report.passed(), "{:?}", report.first_failure());
            let support = report.homology.support();
            let expected: Vec<BiDegree> = (0..=5).map(|n| BiDegree::new(n, n)).collect();
            assert_eq!(support, expected);
        }
    }

    #[test]
    fn broken_commutation_is_caught() {
        let g = gstar_without_commutation(Prime::TWO, 6);
        let one = g.letter("[1]").unwrap();
        let y = g
            .check_central_with(&one, BiDegree::new(3, 3), CentralSign::Trivial)
            .unwrap();
        assert_eq!(y, Some(g.word("[p]_1").unwrap()));
        let report = g.verify_sigma_structure(BiDegree::new(3, 3)).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn one_commutes_with_everything() {
        let g = gstar_algebra(Prime::THREE, 6);
        let one = g.letter("[1]").unwrap();
        let strict = g.check_central_with(&one, BiDegree::new(3, 4), CentralSign::Trivial);
        assert_eq!(strict.unwrap(), None);
        // with the Koszul sign [1]² would have to equal −[1]²
        let signed = g.check_central(&one, BiDegree::new(3, 4)).unwrap();
        assert_eq!(signed, Some(g.word("[p]_1").unwrap()));
    }

    #[test]
    fn d_of_one_nonzero_fails_first_check() {
        // a:(1,0), [1]:(1,1) with d[1] = a
        let ring = Ring::local(Prime::TWO);
        let set =
            BigradedSet::from_pairs([("[1]", BiDegree::new(1, 1)), ("a", BiDegree::new(1, 0))])
                .unwrap();
        let spec = DifferentialSpec::new(
            ring,
            &set,
            [(0, AlgebraElement::monomial(ring, Word::letter(1), 1))],
        )
        .unwrap();
        let alg = StructuredAlgebra::new(ring, set, vec![], spec, Some(0), None).unwrap();
        let report = alg.verify_sigma_structure(BiDegree::new(2, 2)).unwrap();
        assert!(!report.one_is_cycle);
        assert_eq!(report.first_failure().unwrap(), "d[1] is not zero");
    }
}
