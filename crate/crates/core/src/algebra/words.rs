use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::AlgebraError;
use crate::bigraded::BiDegree;
use crate::coeffs::Ring;

/// A labelled generator with its bidegree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub label: String,
    pub bidegree: BiDegree,
}

/// A finite non-negatively bigraded set of generators.
///
/// Generators of bidegree `(0, 0)` are rejected: they would make every
/// bidegree of the free monoid infinite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedSet {
    generators: Vec<Generator>,
    index: HashMap<String, u32>,
}

impl BigradedSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<S: Into<String>>(
        pairs: impl IntoIterator<Item = (S, BiDegree)>,
    ) -> Result<Self, AlgebraError> {
        let mut set = BigradedSet::new();
        for (l, b) in pairs {
            set.push(l, b)?;
        }
        Ok(set)
    }

    pub fn push(
        &mut self,
        label: impl Into<String>,
        bidegree: BiDegree,
    ) -> Result<u32, AlgebraError> {
        let label = label.into();
        if self.index.contains_key(&label) {
            return Err(AlgebraError::DuplicateLabel(label));
        }
        if !bidegree.is_non_negative() || bidegree == BiDegree::ZERO {
            return Err(AlgebraError::BadGeneratorDegree { label, bidegree });
        }
        let id = self.generators.len() as u32;
        self.index.insert(label.clone(), id);
        self.generators.push(Generator { label, bidegree });
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, id: u32) -> &Generator {
        &self.generators[id as usize]
    }

    pub fn id(&self, label: &str) -> Option<u32> {
        self.index.get(label).copied()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn bidegree(&self, id: u32) -> BiDegree {
        self.generators[id as usize].bidegree
    }

    /// The stricter condition on the generator set `E` of the algebra of
    /// higher operations: every generator has degree above its dimension.
    pub fn check_degree_exceeds_dimension(&self) -> Result<(), AlgebraError> {
        match self
            .generators
            .iter()
            .find(|g| g.bidegree.degree <= g.bidegree.dimension)
        {
            Some(g) => Err(AlgebraError::BadGeneratorDegree {
                label: g.label.clone(),
                bidegree: g.bidegree,
            }),
            None => Ok(()),
        }
    }
}

/// A word `e₁ ⋯ e_t` in the free monoid; the empty word is the unit.
///
/// Ordered by length, then lexicographically by generator index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(id: u32) -> Self {
        Word(vec![id])
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn bidegree(&self, set: &BigradedSet) -> BiDegree {
        self.0
            .iter()
            .fold(BiDegree::ZERO, |acc, &e| acc + set.bidegree(e))
    }

    pub fn display<'a>(&'a self, set: &'a BigradedSet) -> WordDisplay<'a> {
        WordDisplay { word: self, set }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    set: &'a BigradedSet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_unit() {
            return write!(f, "1");
        }
        for (i, &e) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.set.get(e).label)?;
        }
        Ok(())
    }
}

/// Finite linear combination of words with coefficients in 𝔽 or 𝔾.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    ring: Ring,
    terms: BTreeMap<Word, u32>,
}

impl AlgebraElement {
    pub fn zero(ring: Ring) -> Self {
        AlgebraElement {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        Self::monomial(ring, Word::unit(), 1)
    }

    pub fn monomial(ring: Ring, word: Word, coeff: u32) -> Self {
        let mut e = Self::zero(ring);
        e.add_term(word, coeff);
        e
    }

    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Word, i64)>) -> Self {
        let mut e = Self::zero(ring);
        for (w, c) in terms {
            e.add_term(w, ring.reduce(c));
        }
        e
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, u32)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coefficient(&self, w: &Word) -> u32 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Word, coeff: u32) {
        let ring = self.ring;
        let c = coeff % ring.modulus();
        if c == 0 {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = ring.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn pop_last(&mut self) -> Option<(Word, u32)> {
        self.terms.pop_last()
    }

    pub fn add_assign(&mut self, other: &AlgebraElement) {
        for (w, c) in other.terms() {
            self.add_term(w.clone(), c);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut s = self.clone();
        s.add_assign(other);
        s
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(self.ring.neg(1)))
    }

    pub fn scale(&self, c: u32) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.ring);
        for (w, x) in self.terms() {
            out.add_term(w.clone(), self.ring.mul(x, c));
        }
        out
    }

    /// Concatenation product extended bilinearly, without rewriting.
    pub fn concat(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.ring);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(a.concat(b), self.ring.mul(x, y));
            }
        }
        out
    }

    /// Common bidegree of all terms; `None` for zero.
    pub fn bidegree(&self, set: &BigradedSet) -> Result<Option<BiDegree>, AlgebraError> {
        let mut it = self.terms.keys().map(|w| w.bidegree(set));
        let Some(first) = it.next() else {
            return Ok(None);
        };
        if it.any(|b| b != first) {
            return Err(AlgebraError::NotHomogeneous);
        }
        Ok(Some(first))
    }

    /// Rewrite every letter through `f`; words with an unmapped letter drop.
    pub fn map_letters(&self, ring: Ring, f: impl Fn(u32) -> Option<u32>) -> AlgebraElement {
        let mut out = AlgebraElement::zero(ring);
        'terms: for (w, c) in self.terms() {
            let mut letters = Vec::with_capacity(w.len());
            for &e in w.letters() {
                match f(e) {
                    Some(x) => letters.push(x),
                    None => continue 'terms,
                }
            }
            out.add_term(Word(letters), c);
        }
        out
    }

    pub fn display<'a>(&'a self, set: &'a BigradedSet) -> ElementDisplay<'a> {
        ElementDisplay { element: self, set }
    }
}

pub struct ElementDisplay<'a> {
    element: &'a AlgebraElement,
    set: &'a BigradedSet,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return write!(f, "0");
        }
        let ring = self.element.ring();
        for (i, (w, c)) in self.element.terms().enumerate() {
            let c = ring.signed(c);
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag != 1 {
                write!(f, "{mag}·")?;
            }
            write!(f, "{}", w.display(self.set))?;
        }
        Ok(())
    }
}

/// All words of bidegree `b` in the free monoid on `set`, each once, in
/// length-then-lex order.
pub fn mon_enumerate(set: &BigradedSet, b: BiDegree) -> Vec<Word> {
    let mut out = Vec::new();
    enumerate_words(set, b, &|_| false, &mut out);
    out
}

/// Depth-first enumeration of words of bidegree `b`, pruning any prefix
/// for which `reject` holds (it is checked after each appended letter, so
/// it only needs to look at suffixes).
pub(crate) fn enumerate_words(
    set: &BigradedSet,
    b: BiDegree,
    reject: &dyn Fn(&[u32]) -> bool,
    out: &mut Vec<Word>,
) {
    fn go(
        set: &BigradedSet,
        remaining: BiDegree,
        current: &mut Vec<u32>,
        reject: &dyn Fn(&[u32]) -> bool,
        out: &mut Vec<Word>,
    ) {
        if remaining == BiDegree::ZERO {
            out.push(Word(current.clone()));
            return;
        }
        for (id, g) in set.generators().iter().enumerate() {
            if !g.bidegree.le(remaining) {
                continue;
            }
            current.push(id as u32);
            if !reject(current) {
                go(set, remaining - g.bidegree, current, reject, out);
            }
            current.pop();
        }
    }
    if !b.is_non_negative() {
        return;
    }
    let start = out.len();
    go(set, b, &mut Vec::new(), reject, out);
    out[start..].sort();
}
