//! The mod 2 Steenrod algebra: admissible monomials, Adem rewriting, the
//! set of Adem relations, and a Milnor-basis dimension count.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::{
    AlgebraElement, BigradedSet, DifferentialSpec, RewriteRule, StructuredAlgebra, Word,
};
use crate::bigraded::BiDegree;
use crate::coeffs::{Prime, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SteenrodError {
    #[error("unsupported prime {0}: only p = 2 has Adem rewriting")]
    UnsupportedPrime(u32),
    #[error("{0:?} is not admissible")]
    NotAdmissible(Vec<u32>),
    #[error("cannot parse {0:?} as a Steenrod monomial")]
    Parse(String),
}

/// Generators of `𝒜` as listed in `E_A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SteenrodGenerator {
    /// `Sq^i`, p = 2.
    Sq(u32),
    /// Bockstein, odd p.
    Beta,
    /// `P^i`, odd p.
    P(u32),
    /// `βP^i`, odd p.
    PBeta(u32),
}

impl SteenrodGenerator {
    pub fn degree(self, p: Prime) -> u32 {
        let q = 2 * (p.get() - 1);
        match self {
            SteenrodGenerator::Sq(i) => i,
            SteenrodGenerator::Beta => 1,
            SteenrodGenerator::P(i) => q * i,
            SteenrodGenerator::PBeta(i) => q * i + 1,
        }
    }

    pub fn label(self) -> String {
        match self {
            SteenrodGenerator::Sq(i) => format!("Sq{i}"),
            SteenrodGenerator::Beta => "b".into(),
            SteenrodGenerator::P(i) => format!("P{i}"),
            SteenrodGenerator::PBeta(i) => format!("bP{i}"),
        }
    }
}

/// `E_A` up to `max_degree`, each generator in dimension 0.
pub fn generator_set(p: Prime, max_degree: u32) -> Vec<SteenrodGenerator> {
    let mut out = Vec::new();
    if p.get() == 2 {
        out.extend((1..=max_degree).map(SteenrodGenerator::Sq));
        return out;
    }
    if max_degree >= 1 {
        out.push(SteenrodGenerator::Beta);
    }
    let q = 2 * (p.get() - 1);
    let mut i = 1;
    while q * i <= max_degree {
        out.push(SteenrodGenerator::P(i));
        if q * i < max_degree {
            out.push(SteenrodGenerator::PBeta(i));
        }
        i += 1;
    }
    out.sort_by_key(|g| (g.degree(p), *g));
    out
}

/// `Sq^{i₁}⋯Sq^{i_k}` with `i_j ≥ 2 i_{j+1}` and every `i_j ≥ 1`.
///
/// Sorted by descending lexicographic order of the exponents, which lists
/// `Sq^n` first in each degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AdmissibleMonomial(Vec<u32>);

impl AdmissibleMonomial {
    pub fn new(exponents: Vec<u32>) -> Result<Self, SteenrodError> {
        if is_admissible(&exponents) {
            Ok(AdmissibleMonomial(exponents))
        } else {
            Err(SteenrodError::NotAdmissible(exponents))
        }
    }

    pub fn unit() -> Self {
        AdmissibleMonomial(Vec::new())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for AdmissibleMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for AdmissibleMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, &self.0)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, exps: &[u32]) -> fmt::Result {
    if exps.is_empty() {
        return write!(f, "1");
    }
    for (i, e) in exps.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "Sq{e}")?;
    }
    Ok(())
}

pub fn is_admissible(exps: &[u32]) -> bool {
    exps.iter().all(|&e| e >= 1) && exps.windows(2).all(|w| w[0] >= 2 * w[1])
}

/// An element of `𝒜`: a set of admissible monomials summed mod 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SteenrodElement {
    terms: BTreeSet<AdmissibleMonomial>,
}

impl SteenrodElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(AdmissibleMonomial::unit())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &AdmissibleMonomial> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &AdmissibleMonomial) -> bool {
        self.terms.contains(m)
    }

    /// Degree of the terms; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(AdmissibleMonomial::degree)
    }

    pub fn toggle(&mut self, m: AdmissibleMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, other: &SteenrodElement) -> SteenrodElement {
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .cloned()
            .collect();
        SteenrodElement { terms }
    }
}

impl From<AdmissibleMonomial> for SteenrodElement {
    fn from(m: AdmissibleMonomial) -> Self {
        SteenrodElement {
            terms: BTreeSet::from([m]),
        }
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// `binom(n, k) mod 2` by Lucas: odd iff the bits of `k` lie in `n`.
pub fn binomial_mod2(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && k <= n && (n & k) == k
}

/// Right side of the Adem relation for `Sq^a Sq^b`, `0 < a < 2b`, as
/// exponent sequences (`Sq^0` dropped).
pub fn adem_terms(a: u32, b: u32) -> Vec<Vec<u32>> {
    debug_assert!(a > 0 && a < 2 * b);
    let (a, b) = (a as i64, b as i64);
    (0..=a / 2)
        .filter(|&c| binomial_mod2(b - 1 - c, a - 2 * c))
        .map(|c| {
            let mut v = vec![(a + b - c) as u32];
            if c > 0 {
                v.push(c as u32);
            }
            v
        })
        .collect()
}

/// Normal form of `Sq^{i₁}⋯Sq^{i_k}`. `Sq^0` is the unit.
///
/// The leftmost inadmissible adjacent pair is rewritten until none is
/// left; terms are collected mod 2.
pub fn adem_normalize(word: &[u32]) -> SteenrodElement {
    let start: Vec<u32> = word.iter().copied().filter(|&e| e > 0).collect();
    let mut pending: BTreeSet<Vec<u32>> = BTreeSet::from([start]);
    let mut out = SteenrodElement::zero();
    let toggle = |set: &mut BTreeSet<Vec<u32>>, w: Vec<u32>| {
        if !set.remove(&w) {
            set.insert(w);
        }
    };
    while let Some(w) = pending.pop_last() {
        match w.windows(2).position(|p| p[0] < 2 * p[1]) {
            None => out.toggle(AdmissibleMonomial(w)),
            Some(i) => {
                for t in adem_terms(w[i], w[i + 1]) {
                    let mut v = w[..i].to_vec();
                    v.extend(t);
                    v.extend_from_slice(&w[i + 2..]);
                    toggle(&mut pending, v);
                }
            }
        }
    }
    out
}

/// [`adem_normalize`] for a prime argument; only p = 2 is supported.
pub fn adem_normalize_at(p: Prime, word: &[u32]) -> Result<SteenrodElement, SteenrodError> {
    if p.get() != 2 {
        return Err(SteenrodError::UnsupportedPrime(p.get()));
    }
    Ok(adem_normalize(word))
}

pub fn steenrod_multiply(x: &SteenrodElement, y: &SteenrodElement) -> SteenrodElement {
    let mut out = SteenrodElement::zero();
    for a in x.terms() {
        for b in y.terms() {
            let mut w = a.0.clone();
            w.extend_from_slice(&b.0);
            out = out.add(&adem_normalize(&w));
        }
    }
    out
}

/// Admissible monomials of degree `n` in descending lexicographic order.
pub fn admissible_basis(n: u32) -> Vec<AdmissibleMonomial> {
    fn go(
        remaining: u32,
        max_first: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<AdmissibleMonomial>,
    ) {
        if remaining == 0 {
            out.push(AdmissibleMonomial(current.clone()));
            return;
        }
        for i in (1..=max_first.min(remaining)).rev() {
            // an admissible tail after Sq^i has degree below i
            if 2 * i <= remaining {
                break;
            }
            current.push(i);
            go(remaining - i, i / 2, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of monomials `ξ₁^{r₁} ξ₂^{r₂} ⋯` of degree `n`, where `ξ_i` has
/// degree `2^i − 1`.
pub fn milnor_dimension(n: u32) -> u64 {
    let n = n as usize;
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    let mut weight = 1usize;
    while weight <= n {
        for t in weight..=n {
            ways[t] += ways[t - weight];
        }
        weight = 2 * weight + 1;
    }
    ways[n]
}

/// One Adem relation `Sq^a Sq^b = Σ_c binom(b−1−c, a−2c) Sq^{a+b−c} Sq^c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdemRelationGen {
    pub a: u32,
    pub b: u32,
    pub rhs: SteenrodElement,
}

impl AdemRelationGen {
    pub fn new(a: u32, b: u32) -> Self {
        let mut rhs = SteenrodElement::zero();
        for t in adem_terms(a, b) {
            rhs.toggle(AdmissibleMonomial(t));
        }
        AdemRelationGen { a, b, rhs }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b
    }

    pub fn lhs(&self) -> [u32; 2] {
        [self.a, self.b]
    }

    /// Bidegree as a generator of `E₁`.
    pub fn bidegree(&self) -> BiDegree {
        BiDegree::new(self.degree() as i64, 1)
    }

    pub fn label(&self) -> String {
        format!("r{},{}", self.a, self.b)
    }
}

impl fmt::Display for AdemRelationGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sq{} Sq{} = {}", self.a, self.b, self.rhs)
    }
}

/// All `(a, b)` with `0 < a < 2b` and `a + b ≤ max_degree`, ordered by `b`
/// then `a`.
pub fn adem_relation_set(max_degree: u32) -> Vec<AdemRelationGen> {
    let mut out = Vec::new();
    for b in 1..max_degree {
        for a in 1..(2 * b).min(max_degree - b + 1) {
            out.push(AdemRelationGen::new(a, b));
        }
    }
    out
}

/// Parse `"Sq2 Sq2"`, `"Sq^2 Sq^1"` or `"1"` into exponents.
pub fn parse_monomial(text: &str) -> Result<Vec<u32>, SteenrodError> {
    let text = text.trim();
    if text == "1" {
        return Ok(Vec::new());
    }
    if text.is_empty() {
        return Err(SteenrodError::Parse(text.to_string()));
    }
    text.split_whitespace()
        .map(|tok| {
            let digits = tok
                .strip_prefix("Sq^")
                .or_else(|| tok.strip_prefix("Sq"))
                .ok_or_else(|| SteenrodError::Parse(tok.to_string()))?;
            digits
                .parse::<u32>()
                .map_err(|_| SteenrodError::Parse(tok.to_string()))
        })
        .collect()
}

/// `𝒜` in degrees `≤ max_degree` as a rewriting system over `𝔽₂` on
/// generators `Sq^1..Sq^max_degree` of bidegree `(i, 0)`, one rule per
/// inadmissible pair.
pub fn steenrod_structured(max_degree: u32) -> StructuredAlgebra {
    let ring = Ring::field(Prime::TWO);
    let n = max_degree;
    let set =
        BigradedSet::from_pairs((1..=n).map(|i| (format!("Sq{i}"), BiDegree::new(i as i64, 0))))
            .expect("distinct labels");
    let letter = |i: u32| i - 1;
    let rules = adem_relation_set(n)
        .into_iter()
        .map(|r| {
            let mut rhs = AlgebraElement::zero(ring);
            for m in r.rhs.terms() {
                rhs.add_term(Word(m.exponents().iter().map(|&e| letter(e)).collect()), 1);
            }
            RewriteRule {
                lhs: Word(vec![letter(r.a), letter(r.b)]),
                rhs,
            }
        })
        .collect();
    let rank = (1..=n).map(|i| n - i).collect();
    let spec = DifferentialSpec::zero(ring, &set);
    StructuredAlgebra::new(ring, set, rules, spec, None, Some(rank)).expect("Adem rules decrease")
}

/// Exponents of a word of [`steenrod_structured`].
pub fn word_exponents(w: &Word) -> Vec<u32> {
    w.letters().iter().map(|&e| e + 1).collect()
}

/// Admissible monomials of every degree up to `max_degree`.
pub fn all_admissible(max_degree: u32) -> Vec<AdmissibleMonomial> {
    (0..=max_degree).flat_map(admissible_basis).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(e: &SteenrodElement) -> String {
        e.to_string()
    }

    #[test]
    fn adem_examples() {
        assert_eq!(show(&adem_normalize(&[1, 1])), "0");
        assert_eq!(show(&adem_normalize(&[2, 2])), "Sq3 Sq1");
        assert_eq!(show(&adem_normalize(&[2, 3])), "Sq5 + Sq4 Sq1");
        assert_eq!(show(&adem_normalize(&[4])), "Sq4");
        assert_eq!(show(&adem_normalize(&[])), "1");
        assert_eq!(show(&adem_normalize(&[0, 3, 0])), "Sq3");
    }

    #[test]
    fn bases() {
        let s = |n| {
            admissible_basis(n)
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(s(0), ["1"]);
        assert_eq!(s(3), ["Sq3", "Sq2 Sq1"]);
        assert_eq!(s(7), ["Sq7", "Sq6 Sq1", "Sq5 Sq2", "Sq4 Sq2 Sq1"]);
    }

    #[test]
    fn milnor_small() {
        assert_eq!(milnor_dimension(0), 1);
        assert_eq!(milnor_dimension(3), 2);
        assert_eq!(milnor_dimension(10) as usize, admissible_basis(10).len());
    }

    #[test]
    fn relation_sets() {
        let pairs = |n| {
            adem_relation_set(n)
                .iter()
                .map(|r| (r.a, r.b))
                .collect::<Vec<_>>()
        };
        assert_eq!(pairs(2), [(1, 1)]);
        assert!(adem_relation_set(2)[0].rhs.is_zero());
        assert_eq!(pairs(4), [(1, 1), (1, 2), (2, 2), (1, 3)]);
        for r in adem_relation_set(12) {
            assert_eq!(adem_normalize(&r.lhs()), r.rhs, "{r}");
        }
    }

    #[test]
    fn multiply_examples() {
        let sq = |i| SteenrodElement::from(AdmissibleMonomial::new(vec![i]).unwrap());
        assert!(steenrod_multiply(&sq(1), &sq(1)).is_zero());
        let one = SteenrodElement::one();
        assert_eq!(steenrod_multiply(&one, &sq(5)), sq(5));
        let left = steenrod_multiply(&steenrod_multiply(&sq(2), &sq(2)), &sq(2));
        let right = steenrod_multiply(&sq(2), &steenrod_multiply(&sq(2), &sq(2)));
        assert_eq!(left, right);
    }

    #[test]
    fn odd_primes_rejected() {
        let p3 = Prime::new(3).unwrap();
        assert_eq!(
            adem_normalize_at(p3, &[1]),
            Err(SteenrodError::UnsupportedPrime(3))
        );
        let gens = generator_set(p3, 9);
        let degs: Vec<(String, u32)> = gens.iter().map(|g| (g.label(), g.degree(p3))).collect();
        assert_eq!(
            degs,
            [
                ("b".into(), 1),
                ("P1".into(), 4),
                ("bP1".into(), 5),
                ("P2".into(), 8),
                ("bP2".into(), 9)
            ]
        );
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_monomial("Sq2 Sq^1").unwrap(), [2, 1]);
        assert_eq!(parse_monomial("1").unwrap(), Vec::<u32>::new());
        assert!(parse_monomial("Sq").is_err());
        assert!(parse_monomial("x2").is_err());
        assert!(parse_monomial("").is_err());
    }

    #[test]
    fn structured_matches_adem() {
        let a = steenrod_structured(9);
        for n in 0..=9 {
            let words: Vec<Vec<u32>> = a
                .normal_basis(BiDegree::new(n, 0))
                .iter()
                .map(word_exponents)
                .collect();
            let mut expected: Vec<Vec<u32>> = admissible_basis(n as u32)
                .iter()
                .map(|m| m.exponents().to_vec())
                .collect();
            let mut got = words.clone();
            got.sort();
            expected.sort();
            assert_eq!(got, expected);
        }
        let w = a.element(a.word("Sq2 Sq3").unwrap());
        let nf = a.normalize(&w).unwrap();
        let mut terms: Vec<Vec<u32>> = nf.terms().map(|(w, _)| word_exponents(w)).collect();
        terms.sort();
        assert_eq!(terms, [vec![4, 1], vec![5]]);
    }
}
