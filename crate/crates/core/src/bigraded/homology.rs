use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::{BiDegree, BigradedChainComplex, ComplexError, Window};
use crate::coeffs::{span_log_order, Matrix, Ring};

/// A finite module over 𝔽 or 𝔾, recorded by its cyclic decomposition
/// `(ℤ/p)^a ⊕ (ℤ/p²)^b`. Over 𝔽 only `a` can be nonzero and is the
/// dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub ring: Ring,
    /// Summands of order p.
    pub order_p: usize,
    /// Summands of order p².
    pub order_p2: usize,
}

impl HomologyGroup {
    pub fn zero(ring: Ring) -> Self {
        HomologyGroup {
            ring,
            order_p: 0,
            order_p2: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.order_p == 0 && self.order_p2 == 0
    }

    /// log_p of the group order.
    pub fn log_order(&self) -> usize {
        self.order_p + 2 * self.order_p2
    }

    /// Dimension as an 𝔽-vector space when the group is killed by p.
    pub fn f_dimension(&self) -> Option<usize> {
        (self.order_p2 == 0).then_some(self.order_p)
    }

    /// Orders of the cyclic summands, ascending.
    pub fn cyclic_orders(&self) -> Vec<u32> {
        let p = self.ring.prime().get();
        let mut v = vec![p; self.order_p];
        v.extend(std::iter::repeat_n(p * p, self.order_p2));
        v
    }

    /// Isomorphism type agrees (the ring is not compared).
    pub fn same_shape(&self, other: &HomologyGroup) -> bool {
        self.order_p == other.order_p && self.order_p2 == other.order_p2
    }

    /// Structure of `span(big) / span(small)` where `span(small) ⊆ span(big)`
    /// inside a common free module.
    pub fn quotient(big: &Matrix, small: &Matrix) -> HomologyGroup {
        let ring = big.ring();
        let both = big.hcat(small);
        let log_small = span_log_order(small);
        let log_h = span_log_order(&both) - log_small;
        let order_p2 = match ring {
            Ring::Field(_) => 0,
            Ring::Local(p) => {
                let scaled = big.scale(p.get()).hcat(small);
                span_log_order(&scaled) - log_small
            }
        };
        HomologyGroup {
            ring,
            order_p: log_h - 2 * order_p2,
            order_p2,
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let p = self.ring.prime().get();
        let mut parts = Vec::new();
        if self.order_p > 0 {
            parts.push(if self.order_p == 1 {
                format!("Z/{p}")
            } else {
                format!("(Z/{p})^{}", self.order_p)
            });
        }
        if self.order_p2 > 0 {
            parts.push(if self.order_p2 == 1 {
                format!("Z/{}", p * p)
            } else {
                format!("(Z/{})^{}", p * p, self.order_p2)
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homology groups over a window of bidegrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedHomology {
    pub ring: Ring,
    pub groups: BTreeMap<BiDegree, HomologyGroup>,
}

impl GradedHomology {
    pub fn get(&self, at: BiDegree) -> HomologyGroup {
        self.groups
            .get(&at)
            .copied()
            .unwrap_or(HomologyGroup::zero(self.ring))
    }

    /// Bidegrees with nonzero homology.
    pub fn support(&self) -> Vec<BiDegree> {
        self.groups
            .iter()
            .filter(|(_, g)| !g.is_zero())
            .map(|(b, _)| *b)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.values().all(HomologyGroup::is_zero)
    }
}

impl BigradedChainComplex {
    /// Structure of the chain group itself (`sub / rel`).
    pub fn group_structure(&self, at: BiDegree) -> HomologyGroup {
        let ring = self.ring();
        match self.group(at) {
            None => HomologyGroup::zero(ring),
            Some(g) => HomologyGroup::quotient(&g.sub_matrix(ring), &g.rel_matrix(ring)),
        }
    }

    /// `H` at a single bidegree: cycles modulo boundaries and relations.
    pub fn homology_at(&self, at: BiDegree) -> HomologyGroup {
        let ring = self.ring();
        if self.group(at).is_none() {
            return HomologyGroup::zero(ring);
        }
        let cycles = self.cycle_generators(at);
        let boundaries = self.boundary_generators(at);
        HomologyGroup::quotient(&cycles, &boundaries)
    }

    /// Homology over a window. Fails if the window (or the dimension above
    /// it) leaves the region where the complex is known.
    pub fn homology(&self, window: &Window) -> Result<GradedHomology, ComplexError> {
        let extent = self.extent();
        for at in [
            BiDegree::new(*window.degrees.end(), *window.dimensions.end() + 1),
            BiDegree::new(*window.degrees.end(), *window.dimensions.end()),
        ] {
            if !extent.covers(at) {
                return Err(ComplexError::WindowTooLarge(at));
            }
        }
        let points: Vec<BiDegree> = window.iter().collect();
        let groups = points
            .par_iter()
            .map(|&b| (b, self.homology_at(b)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        Ok(GradedHomology {
            ring: self.ring(),
            groups,
        })
    }
}
