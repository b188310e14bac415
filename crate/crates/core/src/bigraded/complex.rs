use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{BiDegree, ComplexError};
use crate::coeffs::{kernel_generators, span_includes, FMatrix, Matrix, Prime, Ring};

/// Free bigraded module: a list of labelled basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeBigradedModule {
    ring: Ring,
    basis: Vec<(String, BiDegree)>,
}

impl FreeBigradedModule {
    pub fn new(ring: Ring) -> Self {
        FreeBigradedModule {
            ring,
            basis: Vec::new(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn add(&mut self, label: impl Into<String>, at: BiDegree) -> Result<(), ComplexError> {
        let label = label.into();
        if self.basis.iter().any(|(l, _)| *l == label) {
            return Err(ComplexError::DuplicateLabel(label));
        }
        self.basis.push((label, at));
        Ok(())
    }

    pub fn basis(&self) -> &[(String, BiDegree)] {
        &self.basis
    }

    /// Labels in the given bidegree, in insertion order.
    pub fn labels_at(&self, at: BiDegree) -> Vec<String> {
        self.basis
            .iter()
            .filter(|(_, b)| *b == at)
            .map(|(l, _)| l.clone())
            .collect()
    }
}

/// The chain group in one bidegree: `sub / rel` inside the free module on
/// `labels`. `sub = None` means the whole free module, `rel = None` means no
/// relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainGroup {
    pub labels: Vec<String>,
    pub sub: Option<Matrix>,
    pub rel: Option<Matrix>,
}

impl ChainGroup {
    pub fn free(labels: Vec<String>) -> Self {
        ChainGroup {
            labels,
            sub: None,
            rel: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn is_free(&self) -> bool {
        self.sub.is_none() && self.rel.is_none()
    }

    pub fn sub_matrix(&self, ring: Ring) -> Matrix {
        self.sub
            .clone()
            .unwrap_or_else(|| Matrix::identity(ring, self.rank()))
    }

    pub fn rel_matrix(&self, ring: Ring) -> Matrix {
        self.rel
            .clone()
            .unwrap_or_else(|| Matrix::zeros(ring, self.rank(), 0))
    }
}

/// How far a complex is known to be complete. Groups outside this region may
/// be missing because they were never computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Extent {
    pub max_degree: Option<i64>,
    pub max_dimension: Option<i64>,
}

impl Extent {
    pub fn complete() -> Self {
        Extent::default()
    }

    pub fn bounded(max: BiDegree) -> Self {
        Extent {
            max_degree: Some(max.degree),
            max_dimension: Some(max.dimension),
        }
    }

    pub fn covers(&self, b: BiDegree) -> bool {
        self.max_degree.is_none_or(|d| b.degree <= d)
            && self.max_dimension.is_none_or(|m| b.dimension <= m)
    }
}

/// A bigraded chain complex with differential `d: (n, m) → (n, m − 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedChainComplex {
    ring: Ring,
    groups: BTreeMap<BiDegree, ChainGroup>,
    /// Keyed by source bidegree; `rows × cols = rank(target) × rank(source)`.
    differentials: BTreeMap<BiDegree, Matrix>,
    extent: Extent,
}

impl BigradedChainComplex {
    /// Complex on a free module. Missing differentials are zero.
    pub fn new(
        module: &FreeBigradedModule,
        differentials: BTreeMap<BiDegree, Matrix>,
    ) -> Result<Self, ComplexError> {
        let mut groups: BTreeMap<BiDegree, ChainGroup> = BTreeMap::new();
        let mut seen = HashSet::new();
        for (label, at) in module.basis() {
            if !seen.insert(label.clone()) {
                return Err(ComplexError::DuplicateLabel(label.clone()));
            }
            groups
                .entry(*at)
                .or_insert_with(|| ChainGroup::free(Vec::new()))
                .labels
                .push(label.clone());
        }
        Self::from_parts(module.ring(), groups, differentials, Extent::complete())
    }

    /// Assemble and validate a complex from chain groups and differentials.
    pub fn from_parts(
        ring: Ring,
        groups: BTreeMap<BiDegree, ChainGroup>,
        differentials: BTreeMap<BiDegree, Matrix>,
        extent: Extent,
    ) -> Result<Self, ComplexError> {
        let groups: BTreeMap<_, _> = groups.into_iter().filter(|(_, g)| g.rank() > 0).collect();
        let differentials: BTreeMap<_, _> = differentials
            .into_iter()
            .filter(|(_, d)| !d.is_zero())
            .collect();
        let c = BigradedChainComplex {
            ring,
            groups,
            differentials,
            extent,
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), ComplexError> {
        let ring = self.ring;
        for (at, g) in &self.groups {
            if let Some(s) = &g.sub {
                if s.ring() != ring || s.rows() != g.rank() {
                    return Err(ComplexError::IllDefined(*at));
                }
            }
            if let Some(r) = &g.rel {
                if r.ring() != ring || r.rows() != g.rank() {
                    return Err(ComplexError::IllDefined(*at));
                }
                if !span_includes(&g.sub_matrix(ring), r) {
                    return Err(ComplexError::IllDefined(*at));
                }
            }
        }
        for (&at, d) in &self.differentials {
            if d.ring() != ring {
                return Err(ComplexError::RingMismatch);
            }
            let src = self.groups.get(&at).map_or(0, ChainGroup::rank);
            let Some(tgt) = self.groups.get(&at.below()) else {
                return Err(ComplexError::MissingTarget(at));
            };
            if (d.rows(), d.cols()) != (tgt.rank(), src) {
                return Err(ComplexError::Shape {
                    at,
                    expected: (tgt.rank(), src),
                    found: (d.rows(), d.cols()),
                });
            }
            let g = &self.groups[&at];
            // d(sub) ⊆ sub, d(rel) ⊆ rel
            let image = d.mul(&g.sub_matrix(ring));
            if tgt.sub.is_some() && !span_includes(&tgt.sub_matrix(ring), &image) {
                return Err(ComplexError::IllDefined(at));
            }
            if !span_includes(&tgt.rel_matrix(ring), &d.mul(&g.rel_matrix(ring))) {
                return Err(ComplexError::IllDefined(at));
            }
            // d∘d(sub) ⊆ rel
            if let Some(d2) = self.differentials.get(&at.below()) {
                let twice = d2.mul(&image);
                let rel = self.group(at.below().below()).map(|g| g.rel_matrix(ring));
                let ok = match rel {
                    Some(rel) => span_includes(&rel, &twice),
                    None => twice.is_zero(),
                };
                if !ok {
                    return Err(ComplexError::NotAComplex(at));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn extent(&self) -> Extent {
        self.extent
    }

    pub fn with_extent(mut self, extent: Extent) -> Self {
        self.extent = extent;
        self
    }

    pub fn group(&self, at: BiDegree) -> Option<&ChainGroup> {
        self.groups.get(&at)
    }

    pub fn groups(&self) -> impl Iterator<Item = (BiDegree, &ChainGroup)> {
        self.groups.iter().map(|(b, g)| (*b, g))
    }

    pub fn rank_at(&self, at: BiDegree) -> usize {
        self.groups.get(&at).map_or(0, ChainGroup::rank)
    }

    /// Differential out of `at`, as a full matrix (zero when absent).
    pub fn differential(&self, at: BiDegree) -> Matrix {
        self.differentials
            .get(&at)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.ring, self.rank_at(at.below()), self.rank_at(at)))
    }

    /// Degrees that carry at least one basis element.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.groups.keys().map(|b| b.degree).collect();
        d.dedup();
        d
    }

    /// Dimensions present in degree `n`, ascending.
    pub fn dimensions(&self, n: i64) -> Vec<i64> {
        self.groups
            .keys()
            .filter(|b| b.degree == n)
            .map(|b| b.dimension)
            .collect()
    }

    /// `Σ_s^r`: shift every bidegree by `(r, s)` and multiply the
    /// differential by `(−1)^s`.
    pub fn suspend(&self, r: i64, s: i64) -> BigradedChainComplex {
        let shift = BiDegree::new(r, s);
        let sign = self.ring.sign(s);
        let groups = self
            .groups
            .iter()
            .map(|(b, g)| (*b + shift, g.clone()))
            .collect();
        let differentials = self
            .differentials
            .iter()
            .map(|(b, d)| (*b + shift, d.scale(sign)))
            .collect();
        let extent = Extent {
            max_degree: self.extent.max_degree.map(|d| d + r),
            max_dimension: self.extent.max_dimension.map(|m| m + s),
        };
        BigradedChainComplex {
            ring: self.ring,
            groups,
            differentials,
            extent,
        }
    }

    /// `tr_m`: replace dimension `m` by `cok d_{m+1}` and drop everything above.
    ///
    /// Over a field a free chain group keeps the labels complementary to the
    /// pivots of `d_{m+1}`; otherwise the image becomes part of the relations.
    pub fn truncate(&self, m: i64) -> BigradedChainComplex {
        self.truncate_with(m, true)
    }

    /// `tr_m` that always keeps the ambient basis and records the image of
    /// `d_{m+1}` as relations, so maps given on labels stay valid.
    pub fn truncate_presented(&self, m: i64) -> BigradedChainComplex {
        self.truncate_with(m, false)
    }

    fn truncate_with(&self, m: i64, drop_labels: bool) -> BigradedChainComplex {
        let ring = self.ring;
        let mut groups = BTreeMap::new();
        let mut differentials = BTreeMap::new();
        for (&at, g) in &self.groups {
            if at.dimension > m {
                continue;
            }
            if at.dimension < m {
                groups.insert(at, g.clone());
                if let Some(d) = self.differentials.get(&at) {
                    differentials.insert(at, d.clone());
                }
                continue;
            }
            let incoming = self.differential(at.above());
            let upper_sub = self.group(at.above()).map(|u| u.sub_matrix(ring));
            let image = match upper_sub {
                Some(s) => incoming.mul(&s),
                None => Matrix::zeros(ring, g.rank(), 0),
            };
            let d_out = self.differential(at);
            if drop_labels && ring.is_field() && g.is_free() {
                let pivots = FMatrix::from_matrix(&image.transpose()).rref().1;
                let keep: Vec<usize> = (0..g.rank()).filter(|j| !pivots.contains(j)).collect();
                let labels = keep.iter().map(|&j| g.labels[j].clone()).collect();
                groups.insert(at, ChainGroup::free(labels));
                differentials.insert(at, d_out.select_columns(&keep));
            } else {
                let rel = g.rel_matrix(ring).hcat(&image);
                groups.insert(
                    at,
                    ChainGroup {
                        labels: g.labels.clone(),
                        sub: g.sub.clone(),
                        rel: Some(rel),
                    },
                );
                differentials.insert(at, d_out);
            }
        }
        let extent = Extent {
            max_degree: self.extent.max_degree,
            max_dimension: match self.extent.max_dimension {
                Some(top) if top < m + 1 => Some(if top >= m { m - 1 } else { top }),
                _ => None,
            },
        };
        BigradedChainComplex::from_parts(ring, groups, differentials, extent)
            .expect("truncation of a valid complex")
    }

    /// `cotr_m`: replace dimension `m` by `ker d_m` and drop everything below.
    pub fn cotruncate(&self, m: i64) -> BigradedChainComplex {
        let ring = self.ring;
        let mut groups = BTreeMap::new();
        let mut differentials = BTreeMap::new();
        for (&at, g) in &self.groups {
            if at.dimension < m {
                continue;
            }
            if at.dimension > m {
                groups.insert(at, g.clone());
                if let Some(d) = self.differentials.get(&at) {
                    differentials.insert(at, d.clone());
                }
                continue;
            }
            let cycles = self.cycle_generators(at);
            groups.insert(
                at,
                ChainGroup {
                    labels: g.labels.clone(),
                    sub: Some(cycles),
                    rel: g.rel.clone(),
                },
            );
        }
        BigradedChainComplex::from_parts(ring, groups, differentials, self.extent)
            .expect("cotruncation of a valid complex")
    }

    /// Generators (columns, ambient coordinates) of the cycles at `at`:
    /// elements of `sub` whose boundary lies in the relations below.
    pub fn cycle_generators(&self, at: BiDegree) -> Matrix {
        let ring = self.ring;
        let Some(g) = self.group(at) else {
            return Matrix::zeros(ring, 0, 0);
        };
        let s = g.sub_matrix(ring);
        let ds = self.differential(at).mul(&s);
        let below_rel = self
            .group(at.below())
            .map(|b| b.rel_matrix(ring))
            .unwrap_or_else(|| Matrix::zeros(ring, 0, 0));
        let system = ds.hcat(&below_rel);
        let k = kernel_generators(&system);
        let top: Vec<usize> = (0..s.cols()).collect();
        s.mul(&k.select_rows(&top))
    }

    /// Generators of the boundaries plus relations at `at`.
    pub fn boundary_generators(&self, at: BiDegree) -> Matrix {
        let ring = self.ring;
        let rank = self.rank_at(at);
        let rel = self
            .group(at)
            .map(|g| g.rel_matrix(ring))
            .unwrap_or_else(|| Matrix::zeros(ring, rank, 0));
        match self.group(at.above()) {
            Some(upper) => self
                .differential(at.above())
                .mul(&upper.sub_matrix(ring))
                .hcat(&rel),
            None => rel,
        }
    }

    pub fn to_document(&self) -> ComplexDocument {
        let (p, over) = ring_tag(self.ring);
        let mut cells = Vec::new();
        let mut groups = Vec::new();
        for (at, g) in &self.groups {
            for l in &g.labels {
                cells.push(CellDoc {
                    label: l.clone(),
                    degree: at.degree,
                    dimension: at.dimension,
                });
            }
            if !g.is_free() {
                groups.push(GroupDoc {
                    degree: at.degree,
                    dimension: at.dimension,
                    sub: g.sub.as_ref().map(matrix_rows),
                    rel: g.rel.as_ref().map(matrix_rows),
                });
            }
        }
        let differentials = self
            .differentials
            .iter()
            .map(|(at, d)| DifferentialDoc {
                degree: at.degree,
                dimension: at.dimension,
                matrix: matrix_rows(d),
            })
            .collect();
        ComplexDocument {
            schema: 1,
            ring: RingDoc { p, over },
            cells,
            groups,
            differentials,
        }
    }

    pub fn from_document(doc: &ComplexDocument) -> Result<Self, ComplexError> {
        if doc.schema != 1 {
            return Err(ComplexError::Document(format!(
                "unsupported schema {}",
                doc.schema
            )));
        }
        let prime = Prime::new(doc.ring.p).map_err(|e| ComplexError::Document(e.to_string()))?;
        let ring = match doc.ring.over.as_str() {
            "F" => Ring::field(prime),
            "G" => Ring::local(prime),
            other => return Err(ComplexError::Document(format!("unknown ring {other:?}"))),
        };
        let mut module = FreeBigradedModule::new(ring);
        for c in &doc.cells {
            module.add(c.label.clone(), BiDegree::new(c.degree, c.dimension))?;
        }
        let mut groups: BTreeMap<BiDegree, ChainGroup> = BTreeMap::new();
        for (label, at) in module.basis() {
            groups
                .entry(*at)
                .or_insert_with(|| ChainGroup::free(Vec::new()))
                .labels
                .push(label.clone());
        }
        let to_matrix =
            |rows: &Vec<Vec<i64>>, expect_rows: usize| -> Result<Matrix, ComplexError> {
                if rows.len() != expect_rows || rows.windows(2).any(|w| w[0].len() != w[1].len()) {
                    return Err(ComplexError::Document("malformed matrix".into()));
                }
                Ok(Matrix::from_rows(ring, rows))
            };
        for gd in &doc.groups {
            let at = BiDegree::new(gd.degree, gd.dimension);
            let g = groups.get_mut(&at).ok_or_else(|| {
                ComplexError::Document(format!("presentation for empty group {at}"))
            })?;
            let rank = g.rank();
            g.sub = gd.sub.as_ref().map(|r| to_matrix(r, rank)).transpose()?;
            g.rel = gd.rel.as_ref().map(|r| to_matrix(r, rank)).transpose()?;
        }
        let mut differentials = BTreeMap::new();
        for dd in &doc.differentials {
            let at = BiDegree::new(dd.degree, dd.dimension);
            let rows = groups.get(&at.below()).map_or(0, ChainGroup::rank);
            differentials.insert(at, to_matrix(&dd.matrix, rows)?);
        }
        Self::from_parts(ring, groups, differentials, Extent::complete())
    }
}

fn ring_tag(ring: Ring) -> (u32, String) {
    match ring {
        Ring::Field(p) => (p.get(), "F".into()),
        Ring::Local(p) => (p.get(), "G".into()),
    }
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&x| x as i64).collect())
        .collect()
}

/// JSON form of a [`BigradedChainComplex`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub schema: u32,
    pub ring: RingDoc,
    pub cells: Vec<CellDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<GroupDoc>,
    pub differentials: Vec<DifferentialDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    pub p: u32,
    /// `"F"` for ℤ/p, `"G"` for ℤ/p².
    pub over: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub label: String,
    pub degree: i64,
    pub dimension: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub degree: i64,
    pub dimension: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialDoc {
    /// Source bidegree.
    pub degree: i64,
    pub dimension: i64,
    pub matrix: Vec<Vec<i64>>,
}
