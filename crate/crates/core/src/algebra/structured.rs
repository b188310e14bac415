use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::words::enumerate_words;
use super::{AlgebraElement, AlgebraError, BigradedSet, Word};
use crate::bigraded::{BiDegree, BigradedChainComplex, ChainGroup, Extent};
use crate::coeffs::{Matrix, Ring};

/// `lhs → rhs`; applied at the leftmost position where `lhs` occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: AlgebraElement,
}

/// Values of `d` on generators; unset generators are cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialSpec {
    values: Vec<AlgebraElement>,
}

impl DifferentialSpec {
    pub fn zero(ring: Ring, set: &BigradedSet) -> Self {
        DifferentialSpec {
            values: vec![AlgebraElement::zero(ring); set.len()],
        }
    }

    /// Checks bidegrees of the given values and that `d∘d` vanishes on
    /// every generator in the free algebra.
    pub fn new(
        ring: Ring,
        set: &BigradedSet,
        values: impl IntoIterator<Item = (u32, AlgebraElement)>,
    ) -> Result<Self, AlgebraError> {
        let spec = Self::with_values(ring, set, values)?;
        for id in 0..set.len() as u32 {
            let dd = leibniz_extend(&spec, set, &spec.values[id as usize]);
            if !dd.is_zero() {
                return Err(AlgebraError::DifferentialSquare(set.get(id).label.clone()));
            }
        }
        Ok(spec)
    }

    /// Only bidegrees are checked; `d∘d = 0` is left to the algebra, where
    /// it may hold modulo relations only.
    pub fn with_values(
        ring: Ring,
        set: &BigradedSet,
        values: impl IntoIterator<Item = (u32, AlgebraElement)>,
    ) -> Result<Self, AlgebraError> {
        let mut spec = Self::zero(ring, set);
        for (id, v) in values {
            spec.set_value(set, id, v)?;
        }
        Ok(spec)
    }

    fn set_value(
        &mut self,
        set: &BigradedSet,
        id: u32,
        v: AlgebraElement,
    ) -> Result<(), AlgebraError> {
        let ring = self
            .values
            .first()
            .map(AlgebraElement::ring)
            .unwrap_or(v.ring());
        if v.ring() != ring {
            return Err(AlgebraError::RingMismatch);
        }
        let g = set.get(id);
        let expected = g.bidegree.below();
        match v.bidegree(set)? {
            Some(b) if b != expected => {
                return Err(AlgebraError::DifferentialBidegree {
                    label: g.label.clone(),
                    expected,
                })
            }
            _ => {}
        }
        self.values[id as usize] = v;
        Ok(())
    }

    pub fn value(&self, id: u32) -> &AlgebraElement {
        &self.values[id as usize]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `d(e₁⋯e_t) = Σ_i (−1)^{dim(e₁⋯e_{i−1})} e₁⋯d(e_i)⋯e_t`, in the free
/// algebra (no rewriting).
pub fn leibniz_extend(
    spec: &DifferentialSpec,
    set: &BigradedSet,
    x: &AlgebraElement,
) -> AlgebraElement {
    let ring = x.ring();
    let mut out = AlgebraElement::zero(ring);
    for (w, c) in x.terms() {
        let letters = w.letters();
        let mut dim = 0i64;
        for (i, &e) in letters.iter().enumerate() {
            let de = spec.value(e);
            if !de.is_zero() {
                let coeff = ring.mul(c, ring.sign(dim));
                for (v, k) in de.terms() {
                    let mut word = letters[..i].to_vec();
                    word.extend_from_slice(v.letters());
                    word.extend_from_slice(&letters[i + 1..]);
                    out.add_term(Word(word), ring.mul(coeff, k));
                }
            }
            dim += set.bidegree(e).dimension;
        }
    }
    out
}

/// A bigraded differential algebra presented by generators, ordered
/// rewrite rules, a differential on generators and optionally `[1]`.
#[derive(Clone, Debug)]
pub struct StructuredAlgebra {
    ring: Ring,
    generators: BigradedSet,
    rules: Vec<RewriteRule>,
    differential: DifferentialSpec,
    one: Option<u32>,
    rank: Vec<u32>,
    rewrite_bound: usize,
    by_first: HashMap<u32, Vec<usize>>,
    by_last: HashMap<u32, Vec<usize>>,
}

const DEFAULT_REWRITE_BOUND: usize = 1_000_000;

impl StructuredAlgebra {
    /// The free algebra `T_R(E)` with zero differential.
    pub fn free(ring: Ring, generators: BigradedSet) -> Self {
        let differential = DifferentialSpec::zero(ring, &generators);
        Self::new(ring, generators, Vec::new(), differential, None, None).expect("free algebra")
    }

    /// `order` ranks the letters for the termination check (defaults to
    /// generator index); every rule must strictly decrease length-then-lex
    /// in that ranking.
    pub fn new(
        ring: Ring,
        generators: BigradedSet,
        rules: Vec<RewriteRule>,
        differential: DifferentialSpec,
        one: Option<u32>,
        order: Option<Vec<u32>>,
    ) -> Result<Self, AlgebraError> {
        let rank = order.unwrap_or_else(|| (0..generators.len() as u32).collect());
        if rank.len() != generators.len() || differential.len() != generators.len() {
            return Err(AlgebraError::Presentation("size mismatch".into()));
        }
        if let Some(o) = one {
            if generators.bidegree(o) != BiDegree::new(1, 1) {
                return Err(AlgebraError::BadDistinguishedOne(
                    generators.get(o).label.clone(),
                ));
            }
        }
        let mut by_first: HashMap<u32, Vec<usize>> = HashMap::new();
        let mut by_last: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            if r.lhs.is_empty() {
                return Err(AlgebraError::EmptyRule);
            }
            if r.rhs.ring() != ring {
                return Err(AlgebraError::RingMismatch);
            }
            let name = r.lhs.display(&generators).to_string();
            let b = r.lhs.bidegree(&generators);
            match r.rhs.bidegree(&generators) {
                Ok(None) => {}
                Ok(Some(c)) if c == b => {}
                _ => return Err(AlgebraError::RuleBidegree(name)),
            }
            if r.rhs
                .terms()
                .any(|(w, _)| ranked_cmp(&rank, w, &r.lhs) != Ordering::Less)
            {
                return Err(AlgebraError::RuleNotDecreasing(name));
            }
            by_first.entry(r.lhs.letters()[0]).or_default().push(i);
            by_last
                .entry(*r.lhs.letters().last().unwrap())
                .or_default()
                .push(i);
        }
        let a = StructuredAlgebra {
            ring,
            generators,
            rules,
            differential,
            one,
            rank,
            rewrite_bound: DEFAULT_REWRITE_BOUND,
            by_first,
            by_last,
        };
        for id in 0..a.generators.len() as u32 {
            let dd = a.d(a.differential.value(id))?;
            if !dd.is_zero() {
                return Err(AlgebraError::DifferentialSquare(
                    a.generators.get(id).label.clone(),
                ));
            }
        }
        Ok(a)
    }

    pub fn with_rewrite_bound(mut self, steps: usize) -> Self {
        self.rewrite_bound = steps;
        self
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &BigradedSet {
        &self.generators
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn differential_spec(&self) -> &DifferentialSpec {
        &self.differential
    }

    pub fn one(&self) -> Option<u32> {
        self.one
    }

    pub fn letter_order(&self) -> &[u32] {
        &self.rank
    }

    pub fn id(&self, label: &str) -> Result<u32, AlgebraError> {
        self.generators
            .id(label)
            .ok_or_else(|| AlgebraError::UnknownGenerator(label.to_string()))
    }

    /// Word from space-separated labels; `"1"` or `""` is the unit.
    pub fn word(&self, text: &str) -> Result<Word, AlgebraError> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::unit());
        }
        text.split_whitespace()
            .map(|l| self.id(l))
            .collect::<Result<_, _>>()
            .map(Word)
    }

    pub fn element(&self, word: Word) -> AlgebraElement {
        AlgebraElement::monomial(self.ring, word, 1)
    }

    pub fn letter(&self, label: &str) -> Result<AlgebraElement, AlgebraError> {
        Ok(self.element(Word::letter(self.id(label)?)))
    }

    fn find_match(&self, letters: &[u32]) -> Option<(usize, &RewriteRule)> {
        for pos in 0..letters.len() {
            if let Some(ids) = self.by_first.get(&letters[pos]) {
                for &i in ids {
                    let r = &self.rules[i];
                    if letters[pos..].starts_with(r.lhs.letters()) {
                        return Some((pos, r));
                    }
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_match(w.letters()).is_none()
    }

    /// Rewrite to normal form, always at the leftmost match.
    pub fn normalize(&self, x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if self.rules.is_empty() {
            return Ok(x.clone());
        }
        let ring = self.ring;
        let mut pending = x.clone();
        let mut out = AlgebraElement::zero(ring);
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop_last() {
            let letters = w.letters();
            match self.find_match(letters) {
                None => out.add_term(w, c),
                Some((pos, rule)) => {
                    steps += 1;
                    if steps > self.rewrite_bound {
                        return Err(AlgebraError::RewriteBoundExceeded(self.rewrite_bound));
                    }
                    let end = pos + rule.lhs.len();
                    for (r, k) in rule.rhs.terms() {
                        let mut word = letters[..pos].to_vec();
                        word.extend_from_slice(r.letters());
                        word.extend_from_slice(&letters[end..]);
                        pending.add_term(Word(word), ring.mul(c, k));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn multiply(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        if x.ring() != self.ring || y.ring() != self.ring {
            return Err(AlgebraError::RingMismatch);
        }
        self.normalize(&x.concat(y))
    }

    /// The differential, in normal form.
    pub fn d(&self, x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.normalize(&leibniz_extend(&self.differential, &self.generators, x))
    }

    /// Normal words of bidegree `b`, in length-then-lex order. These form
    /// a basis when the rules are confluent.
    pub fn normal_basis(&self, b: BiDegree) -> Vec<Word> {
        let reject = |cur: &[u32]| {
            let last = *cur.last().expect("nonempty");
            self.by_last.get(&last).is_some_and(|ids| {
                ids.iter()
                    .any(|&i| cur.ends_with(self.rules[i].lhs.letters()))
            })
        };
        let mut out = Vec::new();
        enumerate_words(&self.generators, b, &reject, &mut out);
        out
    }

    /// Free product; `other`'s letters are renumbered after ours.
    pub fn coproduct(&self, other: &StructuredAlgebra) -> Result<StructuredAlgebra, AlgebraError> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch);
        }
        let shift = self.generators.len() as u32;
        let mut generators = self.generators.clone();
        for g in other.generators.generators() {
            generators.push(g.label.clone(), g.bidegree)?;
        }
        let lift = |x: &AlgebraElement| x.map_letters(self.ring, |e| Some(e + shift));
        let lift_word = |w: &Word| Word(w.letters().iter().map(|e| e + shift).collect());
        let mut rules = self.rules.clone();
        rules.extend(other.rules.iter().map(|r| RewriteRule {
            lhs: lift_word(&r.lhs),
            rhs: lift(&r.rhs),
        }));
        let top = self.rank.iter().max().map_or(0, |r| r + 1);
        let mut rank = self.rank.clone();
        rank.extend(other.rank.iter().map(|r| r + top));
        let mut values: Vec<(u32, AlgebraElement)> = (0..shift)
            .map(|i| (i, self.differential.value(i).clone()))
            .collect();
        values.extend(
            (0..other.generators.len() as u32)
                .map(|i| (i + shift, lift(other.differential.value(i)))),
        );
        let differential = DifferentialSpec::with_values(self.ring, &generators, values)?;
        let one = self.one.or(other.one.map(|o| o + shift));
        Ok(
            StructuredAlgebra::new(self.ring, generators, rules, differential, one, Some(rank))?
                .with_rewrite_bound(self.rewrite_bound.max(other.rewrite_bound)),
        )
    }

    /// First basis word `y` with bidegree `≤ bound` such that
    /// `x·y ≠ (−1)^{dim x · dim y} y·x`; `None` when `x` is central there.
    pub fn check_central(
        &self,
        x: &AlgebraElement,
        bound: BiDegree,
    ) -> Result<Option<Word>, AlgebraError> {
        self.check_central_with(x, bound, CentralSign::Koszul)
    }

    pub fn check_central_with(
        &self,
        x: &AlgebraElement,
        bound: BiDegree,
        sign: CentralSign,
    ) -> Result<Option<Word>, AlgebraError> {
        let Some(bx) = x.bidegree(&self.generators)? else {
            return Ok(None);
        };
        for n in 0..=bound.degree {
            for m in 0..=bound.dimension {
                for y in self.normal_basis(BiDegree::new(n, m)) {
                    let ye = self.element(y.clone());
                    let left = self.multiply(x, &ye)?;
                    let right = self
                        .multiply(&ye, x)?
                        .scale(sign.sign(self.ring, bx.dimension, m));
                    if left != right {
                        return Ok(Some(y));
                    }
                }
            }
        }
        Ok(None)
    }

    /// The underlying chain complex on normal words for bidegrees in
    /// `0..=bound.degree × 0..=bound.dimension`.
    pub fn chain_complex(&self, bound: BiDegree) -> Result<AlgebraComplex, AlgebraError> {
        let points: Vec<BiDegree> = (0..=bound.degree)
            .flat_map(|n| (0..=bound.dimension).map(move |m| BiDegree::new(n, m)))
            .collect();
        let bases: BTreeMap<BiDegree, Vec<Word>> = points
            .par_iter()
            .map(|&b| (b, self.normal_basis(b)))
            .collect::<Vec<_>>()
            .into_iter()
            .filter(|(_, v)| !v.is_empty())
            .collect();
        let positions: BTreeMap<BiDegree, HashMap<Word, usize>> = bases
            .iter()
            .map(|(b, ws)| {
                (
                    *b,
                    ws.iter()
                        .cloned()
                        .enumerate()
                        .map(|(i, w)| (w, i))
                        .collect(),
                )
            })
            .collect();
        let mut out = AlgebraComplex {
            complex: BigradedChainComplex::from_parts(
                self.ring,
                BTreeMap::new(),
                BTreeMap::new(),
                Extent::complete(),
            )?,
            bases,
            positions,
        };
        let diffs: Vec<(BiDegree, Matrix)> = out
            .bases
            .par_iter()
            .filter(|(b, _)| b.dimension > 0)
            .map(|(&b, words)| {
                let rows = out.bases.get(&b.below()).map_or(0, Vec::len);
                let mut cols = Vec::with_capacity(words.len());
                for w in words {
                    let dw = self.d(&self.element(w.clone()))?;
                    cols.push(out.coordinates(b.below(), &dw)?);
                }
                Ok((b, Matrix::from_columns(self.ring, rows, &cols)))
            })
            .collect::<Result<_, AlgebraError>>()?;
        let groups = out
            .bases
            .iter()
            .map(|(b, ws)| {
                let labels = ws
                    .iter()
                    .map(|w| w.display(&self.generators).to_string())
                    .collect();
                (*b, ChainGroup::free(labels))
            })
            .collect();
        out.complex = BigradedChainComplex::from_parts(
            self.ring,
            groups,
            diffs.into_iter().collect(),
            Extent::bounded(bound),
        )?;
        Ok(out)
    }

    /// Matrix of left multiplication by `x` from the basis at `from` (in
    /// `source`) to the basis at `from + bidegree(x)` (in `target`).
    pub(crate) fn left_multiplication(
        &self,
        x: &AlgebraElement,
        shift: BiDegree,
        source: &AlgebraComplex,
        target: &AlgebraComplex,
        from: BiDegree,
    ) -> Result<Matrix, AlgebraError> {
        let to = from + shift;
        let rows = target.basis(to).len();
        let mut cols = Vec::new();
        for w in source.basis(from) {
            let prod = self.multiply(x, &self.element(w.clone()))?;
            cols.push(target.coordinates(to, &prod)?);
        }
        Ok(Matrix::from_columns(self.ring, rows, &cols))
    }
}

fn ranked_cmp(rank: &[u32], a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        let ra = a.letters().iter().map(|&e| rank[e as usize]);
        let rb = b.letters().iter().map(|&e| rank[e as usize]);
        ra.cmp(rb)
    })
}

/// Sign convention for commuting a central element past `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentralSign {
    /// `x·y = (−1)^{dim x · dim y} y·x`.
    Koszul,
    /// `x·y = y·x`.
    Trivial,
}

impl CentralSign {
    pub fn sign(self, ring: Ring, dim_x: i64, dim_y: i64) -> u32 {
        match self {
            CentralSign::Koszul => ring.sign(dim_x * dim_y),
            CentralSign::Trivial => 1,
        }
    }
}

/// Chain complex of an algebra together with its word bases.
#[derive(Clone, Debug)]
pub struct AlgebraComplex {
    pub complex: BigradedChainComplex,
    bases: BTreeMap<BiDegree, Vec<Word>>,
    positions: BTreeMap<BiDegree, HashMap<Word, usize>>,
}

impl AlgebraComplex {
    pub fn basis(&self, at: BiDegree) -> &[Word] {
        self.bases.get(&at).map_or(&[], Vec::as_slice)
    }

    /// Coordinates of a normal-form element of bidegree `at`.
    pub fn coordinates(&self, at: BiDegree, x: &AlgebraElement) -> Result<Vec<u32>, AlgebraError> {
        let n = self.basis(at).len();
        let mut v = vec![0u32; n];
        let pos = self.positions.get(&at);
        for (w, c) in x.terms() {
            match pos.and_then(|p| p.get(w)) {
                Some(&i) => v[i] = c,
                None => return Err(AlgebraError::NotHomogeneous),
            }
        }
        Ok(v)
    }

    pub fn element(&self, ring: Ring, at: BiDegree, coords: &[u32]) -> AlgebraElement {
        let mut e = AlgebraElement::zero(ring);
        for (w, &c) in self.basis(at).iter().zip(coords) {
            e.add_term(w.clone(), c);
        }
        e
    }
}
