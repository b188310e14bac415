use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{gstar_algebra, GStarBasisElement};
use crate::algebra::{
    mon_enumerate, AlgebraElement, AlgebraError, BigradedSet, DifferentialSpec, StructuredAlgebra,
    TermDoc, Word,
};
use crate::bigraded::BiDegree;
use crate::coeffs::{Prime, Ring};
use crate::steenrod::adem_relation_set;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkeletonGenerator {
    pub label: String,
    pub degree: i64,
}

/// A dimension-1 generator with its boundary in `T(E₀)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkeletonRelation {
    pub label: String,
    pub degree: i64,
    #[serde(default)]
    pub boundary: Vec<TermDoc>,
}

/// Generators `E₀` (dimension 0), `E₁` (dimension 1) and `E₂` (dimension
/// 2) of `B∗`, with the differential on `E₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BStarSkeleton {
    pub schema: u32,
    pub p: u32,
    pub e0: Vec<SkeletonGenerator>,
    #[serde(default)]
    pub e1: Vec<SkeletonRelation>,
    #[serde(default)]
    pub e2: Vec<SkeletonGenerator>,
}

impl BStarSkeleton {
    /// `E₀ = {Sq^i}`, `E₁ = {r(a,b)}` with `d r(a,b)` the Adem element
    /// `Sq^aSq^b + Σ_c binom(b−1−c, a−2c) Sq^{a+b−c}Sq^c`, all coefficients
    /// 0 or 1.
    pub fn steenrod(max_degree: u32) -> Self {
        let e0 = (1..=max_degree)
            .map(|i| SkeletonGenerator {
                label: format!("Sq{i}"),
                degree: i as i64,
            })
            .collect();
        let e1 = adem_relation_set(max_degree)
            .into_iter()
            .map(|r| {
                let mut boundary = vec![TermDoc {
                    coeff: 1,
                    word: vec![format!("Sq{}", r.a), format!("Sq{}", r.b)],
                }];
                boundary.extend(r.rhs.terms().map(|m| TermDoc {
                    coeff: 1,
                    word: m.exponents().iter().map(|e| format!("Sq{e}")).collect(),
                }));
                SkeletonRelation {
                    label: r.label(),
                    degree: r.degree() as i64,
                    boundary,
                }
            })
            .collect();
        BStarSkeleton {
            schema: 1,
            p: 2,
            e0,
            e1,
            e2: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        let s: BStarSkeleton =
            serde_json::from_str(text).map_err(|e| AlgebraError::Presentation(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn prime(&self) -> Result<Prime, AlgebraError> {
        Prime::new(self.p).map_err(|e| AlgebraError::Presentation(e.to_string()))
    }

    /// `E = E₀ ⊔ E₁ ⊔ E₂` in that order; every generator has degree
    /// above its dimension.
    pub fn generator_set(&self) -> Result<BigradedSet, AlgebraError> {
        let mut set = BigradedSet::new();
        for g in &self.e0 {
            set.push(g.label.clone(), BiDegree::new(g.degree, 0))?;
        }
        for g in &self.e1 {
            set.push(g.label.clone(), BiDegree::new(g.degree, 1))?;
        }
        for g in &self.e2 {
            set.push(g.label.clone(), BiDegree::new(g.degree, 2))?;
        }
        set.check_degree_exceeds_dimension()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        if self.schema != 1 {
            return Err(AlgebraError::Presentation(format!(
                "unsupported schema {}",
                self.schema
            )));
        }
        self.prime()?;
        self.generator_set()?;
        self.tensor_algebra()?;
        Ok(())
    }

    /// `T_𝔾(E)` with the differential on `E₁`.
    pub fn tensor_algebra(&self) -> Result<StructuredAlgebra, AlgebraError> {
        let ring = Ring::local(self.prime()?);
        let set = self.generator_set()?;
        let mut values = Vec::new();
        for r in &self.e1 {
            let id = set.id(&r.label).expect("present");
            let mut v = AlgebraElement::zero(ring);
            for t in &r.boundary {
                let mut w = Vec::new();
                for l in &t.word {
                    let e = set
                        .id(l)
                        .ok_or_else(|| AlgebraError::UnknownGenerator(l.clone()))?;
                    if (e as usize) >= self.e0.len() {
                        return Err(AlgebraError::Presentation(format!(
                            "boundary of {} uses {l}, which is not in E0",
                            r.label
                        )));
                    }
                    w.push(e);
                }
                v.add_term(Word(w), ring.reduce(t.coeff));
            }
            values.push((id, v));
        }
        let spec = DifferentialSpec::new(ring, &set, values)?;
        StructuredAlgebra::new(ring, set, Vec::new(), spec, None, None)
    }
}

/// `B∗ = 𝔾∗ ⊔ T_𝔾(E)`; letters of `𝔾∗` come first.
#[derive(Clone, Debug)]
pub struct BStar {
    pub skeleton: BStarSkeleton,
    pub gstar: StructuredAlgebra,
    pub algebra: StructuredAlgebra,
}

impl BStar {
    /// Exact in dimensions `≤ max_dimension`.
    pub fn new(skeleton: BStarSkeleton, max_dimension: u32) -> Result<Self, AlgebraError> {
        let gstar = gstar_algebra(skeleton.prime()?, max_dimension);
        let algebra = gstar.coproduct(&skeleton.tensor_algebra()?)?;
        Ok(BStar {
            skeleton,
            gstar,
            algebra,
        })
    }

    fn gstar_letters(&self) -> u32 {
        self.gstar.generators().len() as u32
    }

    /// `ε: B∗ → 𝔾∗`, identity on `𝔾∗` and zero on `E`.
    pub fn epsilon(&self, x: &AlgebraElement) -> AlgebraElement {
        let k = self.gstar_letters();
        x.map_letters(x.ring(), |e| (e < k).then_some(e))
    }

    /// `ι: 𝔾∗ → B∗`.
    pub fn iota(&self, x: &AlgebraElement) -> AlgebraElement {
        x.map_letters(x.ring(), Some)
    }
}

/// `α₀ g₁ α₁ ⋯ g_k α_k` with `α_i ∈ Mon(E)` and `g_i = [1]^s[p]_t ≠ 1`;
/// the inner `α_i` are nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BStarWord {
    pub alphas: Vec<Word>,
    pub gs: Vec<GStarBasisElement>,
}

impl BStarWord {
    pub fn unit() -> Self {
        BStarWord {
            alphas: vec![Word::unit()],
            gs: Vec::new(),
        }
    }

    pub fn bidegree(&self, e: &BigradedSet) -> BiDegree {
        let a = self
            .alphas
            .iter()
            .fold(BiDegree::ZERO, |acc, w| acc + w.bidegree(e));
        self.gs.iter().fold(a, |acc, g| acc + g.bidegree())
    }

    /// The word in the letters of [`BStar::algebra`], where `E` is shifted
    /// past the `gstar_letters` letters of `𝔾∗`.
    pub fn to_word(&self, gstar_letters: u32) -> Word {
        let mut out = Vec::new();
        for (i, a) in self.alphas.iter().enumerate() {
            if i > 0 {
                out.extend(self.gs[i - 1].word().letters().iter().copied());
            }
            out.extend(a.letters().iter().map(|e| e + gstar_letters));
        }
        Word(out)
    }

    pub fn display<'a>(&'a self, e: &'a BigradedSet) -> BStarWordDisplay<'a> {
        BStarWordDisplay { word: self, e }
    }
}

pub struct BStarWordDisplay<'a> {
    word: &'a BStarWord,
    e: &'a BigradedSet,
}

impl fmt::Display for BStarWordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, a) in self.word.alphas.iter().enumerate() {
            if i > 0 {
                parts.push(self.word.gs[i - 1].to_string());
            }
            if !a.is_unit() {
                parts.push(a.display(self.e).to_string());
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// The `𝔾`-basis of `B∗` in bidegree `b`.
pub fn bstar_basis(skel: &BStarSkeleton, b: BiDegree) -> Result<Vec<BStarWord>, AlgebraError> {
    let e = skel.generator_set()?;
    if !b.is_non_negative() {
        return Ok(Vec::new());
    }
    let mut mon: BTreeMap<BiDegree, Vec<Word>> = BTreeMap::new();
    for n in 0..=b.degree {
        for m in 0..=b.dimension {
            let c = BiDegree::new(n, m);
            let words = mon_enumerate(&e, c);
            if !words.is_empty() {
                mon.insert(c, words);
            }
        }
    }
    let gs: Vec<GStarBasisElement> = (0..=b.degree)
        .flat_map(|r| {
            (0..=b.dimension - r).map(move |s| GStarBasisElement {
                r: r as u32,
                s: s as u32,
            })
        })
        .filter(|g| !g.is_unit())
        .collect();

    fn extend(
        mon: &BTreeMap<BiDegree, Vec<Word>>,
        gs: &[GStarBasisElement],
        current: &mut BStarWord,
        remaining: BiDegree,
        out: &mut Vec<BStarWord>,
    ) {
        for &g in gs {
            if !g.bidegree().le(remaining) {
                continue;
            }
            let rest = remaining - g.bidegree();
            current.gs.push(g);
            if rest == BiDegree::ZERO {
                current.alphas.push(Word::unit());
                out.push(current.clone());
                current.alphas.pop();
            }
            for (&c, words) in mon {
                if c == BiDegree::ZERO || !c.le(rest) {
                    continue;
                }
                for w in words {
                    current.alphas.push(w.clone());
                    if c == rest {
                        out.push(current.clone());
                    } else {
                        extend(mon, gs, current, rest - c, out);
                    }
                    current.alphas.pop();
                }
            }
            current.gs.pop();
        }
    }

    let mut out = Vec::new();
    for (&c, words) in &mon {
        if !c.le(b) {
            continue;
        }
        for w in words {
            let mut current = BStarWord {
                alphas: vec![w.clone()],
                gs: Vec::new(),
            };
            if c == b {
                out.push(current);
            } else {
                extend(&mon, &gs, &mut current, b - c, &mut out);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn skeleton(gens: &[(&str, i64)], rels: &[(&str, i64)]) -> BStarSkeleton {
        BStarSkeleton {
            schema: 1,
            p: 2,
            e0: gens
                .iter()
                .map(|(l, d)| SkeletonGenerator {
                    label: l.to_string(),
                    degree: *d,
                })
                .collect(),
            e1: rels
                .iter()
                .map(|(l, d)| SkeletonRelation {
                    label: l.to_string(),
                    degree: *d,
                    boundary: vec![],
                })
                .collect(),
            e2: vec![],
        }
    }

    fn shown(skel: &BStarSkeleton, b: BiDegree) -> Vec<String> {
        let e = skel.generator_set().unwrap();
        bstar_basis(skel, b)
            .unwrap()
            .iter()
            .map(|w| w.display(&e).to_string())
            .collect()
    }

    #[test]
    fn unit_and_one() {
        let empty = skeleton(&[], &[]);
        assert_eq!(shown(&empty, BiDegree::ZERO), ["1"]);
        assert_eq!(shown(&empty, BiDegree::new(1, 1)), ["[1]"]);
    }

    #[test]
    fn single_generator_degree_two() {
        let s = skeleton(&[("x", 2)], &[]);
        assert_eq!(shown(&s, BiDegree::new(2, 0)), ["x"]);
    }

    #[test]
    fn inner_alphas_nonempty() {
        let s = skeleton(&[("x", 1)], &[]);
        let words = shown(&s, BiDegree::new(1, 2));
        assert!(words.contains(&"[p]_1 x [p]_1".to_string()));
        assert!(words.contains(&"[1][p]_1".to_string()));
        assert!(!words.iter().any(|w| w.contains("[p]_1 [p]_1")));
    }

    #[test]
    fn matches_coproduct_basis() {
        let s = skeleton(&[("x", 1), ("y", 2)], &[("r", 3)]);
        let bstar = BStar::new(s.clone(), 4).unwrap();
        let k = bstar.gstar.generators().len() as u32;
        for n in 0..=4 {
            for m in 0..=3 {
                let b = BiDegree::new(n, m);
                let mut ours: Vec<Word> = bstar_basis(&s, b)
                    .unwrap()
                    .iter()
                    .map(|w| w.to_word(k))
                    .collect();
                let mut theirs = bstar.algebra.normal_basis(b);
                ours.sort();
                theirs.sort();
                assert_eq!(ours, theirs, "{b}");
            }
        }
    }

    #[test]
    fn steenrod_skeleton_round_trips() {
        let s = BStarSkeleton::steenrod(6);
        let back = BStarSkeleton::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert!(BStarSkeleton::from_json(r#"{"schema":1,"p":2,"e0":[],"extra":1}"#).is_err());
        // dimension 0 generators must have positive degree
        let bad = skeleton(&[("z", 0)], &[]);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn epsilon_and_iota() {
        let bstar = BStar::new(BStarSkeleton::steenrod(4), 4).unwrap();
        let a = &bstar.algebra;
        let x = a.element(a.word("[1] [1] [p]_3").unwrap());
        assert_eq!(bstar.epsilon(&x), x);
        let y = a.element(a.word("Sq2 [1]").unwrap());
        assert!(bstar.epsilon(&y).is_zero());
        let g = &bstar.gstar;
        let z = g.element(g.word("[1] [p]_2").unwrap());
        assert_eq!(bstar.epsilon(&bstar.iota(&z)), z);
    }
}
