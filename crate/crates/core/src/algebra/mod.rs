//! Free bigraded algebras `T_R(E)`, quotients by ordered rewrite rules,
//! differentials extended by the Leibniz rule, and the Σ-structure checks
//! for a distinguished central element `[1]`.

mod presentation;
mod sigma;
mod structured;
mod words;

use thiserror::Error;

use crate::bigraded::{BiDegree, ComplexError};

pub use presentation::{DifferentialEntry, GeneratorDoc, PresentationDocument, RuleDoc, TermDoc};
pub use sigma::{SigmaReport, TruncatedAlgebra};
pub use structured::{
    leibniz_extend, AlgebraComplex, CentralSign, DifferentialSpec, RewriteRule, StructuredAlgebra,
};
pub use words::{mon_enumerate, AlgebraElement, BigradedSet, Generator, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate generator label {0:?}")]
    DuplicateLabel(String),
    #[error("generator {label:?} has inadmissible bidegree {bidegree}")]
    BadGeneratorDegree { label: String, bidegree: BiDegree },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("ring mismatch")]
    RingMismatch,
    #[error("rule {0} changes bidegree")]
    RuleBidegree(String),
    #[error("rule {0} does not decrease the word order")]
    RuleNotDecreasing(String),
    #[error("rule with empty left-hand side")]
    EmptyRule,
    #[error("d({label}) must have bidegree {expected}")]
    DifferentialBidegree { label: String, expected: BiDegree },
    #[error("d(d({0})) is not zero")]
    DifferentialSquare(String),
    #[error("rewrite bound exceeded after {0} steps")]
    RewriteBoundExceeded(usize),
    #[error("distinguished element {0:?} must be a generator of bidegree (1,1)")]
    BadDistinguishedOne(String),
    #[error("algebra has no distinguished element [1]")]
    NoDistinguishedOne,
    #[error("truncation index must be at least 1, got {0}")]
    InvalidTruncation(i64),
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
