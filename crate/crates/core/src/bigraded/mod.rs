//! Bigraded modules and chain complexes.
//!
//! An element of bidegree `(n, m)` has degree `n` and dimension `m`. The
//! differential keeps the degree and lowers the dimension by one, so a
//! bigraded complex is a family of ordinary chain complexes, one per degree.
//!
//! Chain groups are free on a list of labels, except where truncation or
//! cotruncation replaced them by a cokernel or kernel. Over 𝔾 those are not
//! free, so a [`ChainGroup`] is stored as a subquotient `sub / rel` of the
//! free module on its labels.

mod complex;
mod homology;
mod map;

use std::fmt;
use std::ops::{Add, RangeInclusive, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use complex::{
    BigradedChainComplex, CellDoc, ChainGroup, ComplexDocument, DifferentialDoc, Extent,
    FreeBigradedModule, GroupDoc, RingDoc,
};
pub use homology::{GradedHomology, HomologyGroup};
pub use map::ChainMap;

/// Bidegree `(degree, dimension)`.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
pub struct BiDegree {
    pub degree: i64,
    pub dimension: i64,
}

impl BiDegree {
    pub const ZERO: BiDegree = BiDegree {
        degree: 0,
        dimension: 0,
    };

    pub const fn new(degree: i64, dimension: i64) -> Self {
        BiDegree { degree, dimension }
    }

    pub fn is_non_negative(self) -> bool {
        self.degree >= 0 && self.dimension >= 0
    }

    /// Componentwise `self <= other`.
    pub fn le(self, other: BiDegree) -> bool {
        self.degree <= other.degree && self.dimension <= other.dimension
    }

    pub fn below(self) -> BiDegree {
        BiDegree::new(self.degree, self.dimension - 1)
    }

    pub fn above(self) -> BiDegree {
        BiDegree::new(self.degree, self.dimension + 1)
    }
}

impl Add for BiDegree {
    type Output = BiDegree;

    fn add(self, rhs: BiDegree) -> BiDegree {
        BiDegree::new(self.degree + rhs.degree, self.dimension + rhs.dimension)
    }
}

impl Sub for BiDegree {
    type Output = BiDegree;

    fn sub(self, rhs: BiDegree) -> BiDegree {
        BiDegree::new(self.degree - rhs.degree, self.dimension - rhs.dimension)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.degree, self.dimension)
    }
}

/// Rectangular window of bidegrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub degrees: RangeInclusive<i64>,
    pub dimensions: RangeInclusive<i64>,
}

impl Window {
    pub fn new(degrees: RangeInclusive<i64>, dimensions: RangeInclusive<i64>) -> Self {
        Window {
            degrees,
            dimensions,
        }
    }

    /// Degrees and dimensions `0..=bound`.
    pub fn up_to(bound: BiDegree) -> Self {
        Window::new(0..=bound.degree, 0..=bound.dimension)
    }

    pub fn contains(&self, b: BiDegree) -> bool {
        self.degrees.contains(&b.degree) && self.dimensions.contains(&b.dimension)
    }

    pub fn iter(&self) -> impl Iterator<Item = BiDegree> + '_ {
        self.degrees
            .clone()
            .flat_map(move |n| self.dimensions.clone().map(move |m| BiDegree::new(n, m)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("differential at {at} has shape {found:?}, expected {expected:?}")]
    Shape {
        at: BiDegree,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("differential at {0} has no target group")]
    MissingTarget(BiDegree),
    #[error("d∘d is nonzero at {0}")]
    NotAComplex(BiDegree),
    #[error("differential at {0} does not respect the chain group presentation")]
    IllDefined(BiDegree),
    #[error("chain map is not compatible with the differentials at {0}")]
    NotAChainMap(BiDegree),
    #[error("ring mismatch")]
    RingMismatch,
    #[error("window reaches {0}, outside the computed region")]
    WindowTooLarge(BiDegree),
    #[error("invalid complex document: {0}")]
    Document(String),
}
