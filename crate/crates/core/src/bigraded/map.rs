use std::collections::{BTreeMap, BTreeSet};

use super::{BiDegree, BigradedChainComplex, ChainGroup, ComplexError, Extent, Window};
use crate::coeffs::{span_includes, Matrix};

/// A bidegree-preserving chain map, given on the ambient free modules.
#[derive(Clone, Debug)]
pub struct ChainMap<'a> {
    pub source: &'a BigradedChainComplex,
    pub target: &'a BigradedChainComplex,
    /// Keyed by bidegree; `rank(target) × rank(source)`. Missing = zero.
    pub components: BTreeMap<BiDegree, Matrix>,
}

impl<'a> ChainMap<'a> {
    pub fn new(
        source: &'a BigradedChainComplex,
        target: &'a BigradedChainComplex,
        components: BTreeMap<BiDegree, Matrix>,
    ) -> Result<Self, ComplexError> {
        if source.ring() != target.ring() {
            return Err(ComplexError::RingMismatch);
        }
        let f = ChainMap {
            source,
            target,
            components,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn component(&self, at: BiDegree) -> Matrix {
        self.components.get(&at).cloned().unwrap_or_else(|| {
            Matrix::zeros(
                self.source.ring(),
                self.target.rank_at(at),
                self.source.rank_at(at),
            )
        })
    }

    fn validate(&self) -> Result<(), ComplexError> {
        let ring = self.source.ring();
        for (at, f) in &self.components {
            let expected = (self.target.rank_at(*at), self.source.rank_at(*at));
            if (f.rows(), f.cols()) != expected {
                return Err(ComplexError::Shape {
                    at: *at,
                    expected,
                    found: (f.rows(), f.cols()),
                });
            }
        }
        for (at, g) in self.source.groups() {
            let f = self.component(at);
            let sub = g.sub_matrix(ring);
            let img = f.mul(&sub);
            let tgt = self.target.group(at);
            let tgt_sub = tgt.map(|t| t.sub_matrix(ring));
            let tgt_rel = tgt
                .map(|t| t.rel_matrix(ring))
                .unwrap_or_else(|| Matrix::zeros(ring, 0, 0));
            if let Some(ts) = &tgt_sub {
                if !span_includes(ts, &img) {
                    return Err(ComplexError::IllDefined(at));
                }
            }
            if !span_includes(&tgt_rel, &f.mul(&g.rel_matrix(ring))) {
                return Err(ComplexError::IllDefined(at));
            }
            // d f - f d vanishes on sub, modulo relations below
            let below = at.below();
            let lhs = self.target.differential(at).mul(&img);
            let rhs = self
                .component(below)
                .mul(&self.source.differential(at))
                .mul(&sub);
            let diff = lhs.add(&rhs.neg());
            let rel_below = self
                .target
                .group(below)
                .map(|t| t.rel_matrix(ring))
                .unwrap_or_else(|| Matrix::zeros(ring, diff.rows(), 0));
            if !span_includes(&rel_below, &diff) {
                return Err(ComplexError::NotAChainMap(at));
            }
        }
        Ok(())
    }

    /// Mapping cone: `Cone_m = X_{m−1} ⊕ Y_m`, `d(x, y) = (−dx, f x + dy)`.
    pub fn cone(&self) -> BigradedChainComplex {
        let ring = self.source.ring();
        let mut points: BTreeSet<BiDegree> = BTreeSet::new();
        for (at, _) in self.source.groups() {
            points.insert(at.above());
        }
        for (at, _) in self.target.groups() {
            points.insert(at);
        }
        let label_sets = |at: BiDegree| -> (Vec<String>, Vec<String>) {
            let xs = self
                .source
                .group(at.below())
                .map(|g| g.labels.iter().map(|l| format!("x:{l}")).collect())
                .unwrap_or_default();
            let ys = self
                .target
                .group(at)
                .map(|g| g.labels.iter().map(|l| format!("y:{l}")).collect())
                .unwrap_or_default();
            (xs, ys)
        };
        let mut groups = BTreeMap::new();
        let mut differentials = BTreeMap::new();
        for &at in &points {
            let (xs, ys) = label_sets(at);
            let x_group = self.source.group(at.below());
            let y_group = self.target.group(at);
            let empty = |n: usize| ChainGroup::free(vec![String::new(); n]);
            let xg = x_group.cloned().unwrap_or_else(|| empty(0));
            let yg = y_group.cloned().unwrap_or_else(|| empty(0));
            let sub = if xg.sub.is_none() && yg.sub.is_none() {
                None
            } else {
                Some(xg.sub_matrix(ring).block_diag(&yg.sub_matrix(ring)))
            };
            let rel = if xg.rel.is_none() && yg.rel.is_none() {
                None
            } else {
                Some(xg.rel_matrix(ring).block_diag(&yg.rel_matrix(ring)))
            };
            let mut labels = xs;
            labels.extend(ys);
            groups.insert(at, ChainGroup { labels, sub, rel });

            // differential out of `at` into `at.below()`
            let dx = self.source.differential(at.below()).neg();
            let f = self.component(at.below());
            let dy = self.target.differential(at);
            let top = dx.hcat(&Matrix::zeros(ring, dx.rows(), dy.cols()));
            let bottom = f.hcat(&dy);
            differentials.insert(at, top.vcat(&bottom));
        }
        let extent = Extent {
            max_degree: min_opt(
                self.source.extent().max_degree,
                self.target.extent().max_degree,
            ),
            max_dimension: min_opt(
                self.source.extent().max_dimension.map(|m| m + 1),
                self.target.extent().max_dimension,
            ),
        };
        BigradedChainComplex::from_parts(ring, groups, differentials, extent)
            .expect("cone of a valid chain map")
    }

    /// Whether the map induces isomorphisms in homology on `window`,
    /// decided by acyclicity of the cone. Returns the first bidegree where
    /// the cone has homology.
    pub fn quasi_iso_failure(&self, window: &Window) -> Result<Option<BiDegree>, ComplexError> {
        let cone = self.cone();
        // H_m(f) iso for m in window  <=  H(cone) vanishes at m and m + 1
        let wider = Window::new(
            window.degrees.clone(),
            *window.dimensions.start()..=*window.dimensions.end() + 1,
        );
        let h = cone.homology(&wider)?;
        Ok(h.support().first().copied())
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}
