//! Minimal free resolutions over the mod-2 Steenrod algebra and Ext charts.

mod bar;
mod chart;
mod table;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeffs::{F2Echelon, F2Vector, FMatrix};
use crate::steenrod::{steenrod_multiply, AdmissibleMonomial, SteenrodElement};

pub use bar::{bar_oracle, bar_oracle_with_limit, BAR_LIMIT};
pub use chart::{chart_render, ChartClass, ChartDocument, ChartFormat, ExtChart, ExtDims};
pub use table::{DegreeBasis, ProductTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("duplicate generator label {0:?}")]
    DuplicateLabel(String),
    #[error("relation {0} mentions unknown generator {1}")]
    UnknownGenerator(usize, usize),
    #[error("relation {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("bar complex at (s, t) = ({s}, {t}) has {size} cells, over the limit of {limit}")]
    BarBoundExceeded {
        s: u32,
        t: u32,
        size: usize,
        limit: usize,
    },
    #[error("unknown chart format {0:?} (expected ascii, svg or json)")]
    UnknownFormat(String),
    #[error("chart document: {0}")]
    Document(String),
}

/// A free graded left `𝒜`-module on labelled generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeAModule {
    generators: Vec<(String, u32)>,
}

impl FreeAModule {
    pub fn new() -> Self {
        FreeAModule::default()
    }

    pub fn push(
        &mut self,
        label: impl Into<String>,
        degree: u32,
    ) -> Result<usize, ResolutionError> {
        let label = label.into();
        if self.generators.iter().any(|(l, _)| *l == label) {
            return Err(ResolutionError::DuplicateLabel(label));
        }
        self.generators.push((label, degree));
        Ok(self.generators.len() - 1)
    }

    pub fn generators(&self) -> &[(String, u32)] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degree(&self, g: usize) -> u32 {
        self.generators[g].1
    }

    pub fn label(&self, g: usize) -> &str {
        &self.generators[g].0
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|(_, d)| *d).collect()
    }

    pub fn count_in_degree(&self, t: u32) -> usize {
        self.generators.iter().filter(|(_, d)| *d == t).count()
    }
}

/// A vector in a free module: coefficient of each generator.
pub type FreeElement = BTreeMap<usize, SteenrodElement>;

fn free_element_degree(x: &FreeElement, degrees: &[u32]) -> Result<Option<u32>, ()> {
    let mut deg = None;
    for (&g, e) in x {
        for m in e.terms() {
            let d = degrees[g] + m.degree();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(()),
                _ => {}
            }
        }
    }
    Ok(deg)
}

/// `F_s` with `d_s : F_s → F_{s−1}`. Stage 0 carries no differential: its
/// generators map to the module's generators of the same index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionStage {
    pub s: u32,
    pub module: FreeAModule,
    pub differential: Vec<FreeElement>,
}

/// A finitely presented graded left `𝒜`-module: generators in the given
/// degrees modulo the submodule spanned by the relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    generators: Vec<u32>,
    relations: Vec<FreeElement>,
}

impl ModulePresentation {
    pub fn new(generators: Vec<u32>, relations: Vec<FreeElement>) -> Result<Self, ResolutionError> {
        for (i, r) in relations.iter().enumerate() {
            if let Some(&g) = r.keys().find(|&&g| g >= generators.len()) {
                return Err(ResolutionError::UnknownGenerator(i, g));
            }
            if free_element_degree(r, &generators).is_err() {
                return Err(ResolutionError::NotHomogeneous(i));
            }
        }
        Ok(ModulePresentation {
            generators,
            relations,
        })
    }

    /// `𝔽₂` in degree 0: `𝒜` modulo the indecomposables `Sq^{2^i}`.
    pub fn trivial() -> Self {
        let relations = (0..16)
            .map(|i| {
                let sq = AdmissibleMonomial::new(vec![1 << i]).expect("single square");
                BTreeMap::from([(0, SteenrodElement::from(sq))])
            })
            .collect();
        ModulePresentation {
            generators: vec![0],
            relations,
        }
    }

    pub fn free(degrees: Vec<u32>) -> Self {
        ModulePresentation {
            generators: degrees,
            relations: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    fn relation_degree(&self, i: usize) -> Option<u32> {
        free_element_degree(&self.relations[i], &self.generators)
            .ok()
            .flatten()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolveOptions {
    pub max_s: u32,
    pub max_t: u32,
    /// Largest admissible dimension of `(F_s)_t` before giving up.
    pub max_basis: Option<usize>,
}

impl ResolveOptions {
    pub fn new(max_s: u32, max_t: u32) -> Self {
        ResolveOptions {
            max_s,
            max_t,
            max_basis: None,
        }
    }
}

/// First `(s, t)` left uncomputed: every stage below `s` is complete and
/// stage `s` is complete below internal degree `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frontier {
    pub s: u32,
    pub t: u32,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub stages: Vec<ResolutionStage>,
    pub max_s: u32,
    pub max_t: u32,
    pub frontier: Option<Frontier>,
    module: ModulePresentation,
    table: ProductTable,
    /// `vectors[s][g]` is `d_s(g)` in `(F_{s−1})_{deg g}`.
    vectors: Vec<Vec<F2Vector>>,
    bases: Vec<Vec<DegreeBasis>>,
}

pub fn resolve(x: &ModulePresentation, max_s: u32, max_t: u32) -> Resolution {
    resolve_with(x, ResolveOptions::new(max_s, max_t))
}

struct Ctx<'a> {
    table: &'a ProductTable,
}

impl Ctx<'_> {
    /// `Sq^I · d(g)` for the `k`-th admissible `Sq^I` of degree `a`.
    fn translate(
        &self,
        degrees: &[u32],
        bases: &[DegreeBasis],
        gdeg: u32,
        v: &F2Vector,
        a: u32,
        k: usize,
    ) -> F2Vector {
        let t = gdeg + a;
        table::act(
            self.table,
            degrees,
            a,
            k,
            v,
            gdeg,
            &bases[gdeg as usize],
            &bases[t as usize],
        )
    }

    /// Columns of a module map at internal degree `t`, in basis order of
    /// the source.
    fn columns(
        &self,
        src_deg: &[u32],
        vecs: &[F2Vector],
        tgt_deg: &[u32],
        tgt_bases: &[DegreeBasis],
        t: u32,
    ) -> Vec<F2Vector> {
        let jobs: Vec<(usize, usize)> = src_deg
            .iter()
            .enumerate()
            .filter(|(_, &d)| d <= t)
            .flat_map(|(g, &d)| (0..self.table.dim(t - d)).map(move |k| (g, k)))
            .collect();
        jobs.par_iter()
            .map(|&(g, k)| {
                self.translate(tgt_deg, tgt_bases, src_deg[g], &vecs[g], t - src_deg[g], k)
            })
            .collect()
    }
}

pub fn resolve_with(x: &ModulePresentation, opts: ResolveOptions) -> Resolution {
    let max_t = opts.max_t;
    let table = ProductTable::new(max_t);
    let ctx = Ctx { table: &table };
    let bases_for = |deg: &[u32]| -> Vec<DegreeBasis> {
        (0..=max_t)
            .map(|t| DegreeBasis::new(deg, t, &table))
            .collect()
    };
    let too_big = |n: usize| opts.max_basis.is_some_and(|b| n > b);

    let mut f0 = FreeAModule::new();
    let mut per_degree: BTreeMap<u32, usize> = BTreeMap::new();
    for &d in &x.generators {
        let i = per_degree.entry(d).or_default();
        f0.push(format!("g0.{d}.{i}"), d).expect("fresh label");
        *i += 1;
    }
    let deg0 = x.generators.clone();
    let bases0 = bases_for(&deg0);
    let relation_vectors: Vec<(u32, F2Vector)> = (0..x.relations.len())
        .filter_map(|i| {
            let d = x.relation_degree(i)?;
            (d <= max_t).then(|| (d, to_vector(&table, &x.relations[i], &bases0[d as usize])))
        })
        .collect();

    let mut stages = vec![ResolutionStage {
        s: 0,
        module: f0,
        differential: vec![FreeElement::new(); deg0.len()],
    }];
    let mut vectors = vec![vec![F2Vector::zeros(0); deg0.len()]];
    let mut bases = vec![bases0];
    let mut degrees = vec![deg0];
    let mut frontier = None;

    'stages: for s in 1..=opts.max_s {
        let su = s as usize;
        let prev_deg = degrees[su - 1].clone();
        let prev_bases = &bases[su - 1];
        let stop = (0..=max_t)
            .find(|&t| too_big(prev_bases[t as usize].len))
            .unwrap_or(max_t + 1);

        // Spanning set of ker(F_{s−1} → F_{s−2}) (or of the relation
        // submodule when s = 1) in each internal degree.
        let kernels: Vec<Vec<F2Vector>> = (0..stop)
            .into_par_iter()
            .map(|t| {
                if s == 1 {
                    relation_vectors
                        .iter()
                        .filter(|(d, _)| *d <= t)
                        .flat_map(|(d, v)| {
                            (0..table.dim(t - d))
                                .map(|k| ctx.translate(&prev_deg, prev_bases, *d, v, t - d, k))
                                .collect::<Vec<_>>()
                        })
                        .collect()
                } else {
                    let rows = bases[su - 2][t as usize].len;
                    let cols = ctx.columns(
                        &prev_deg,
                        &vectors[su - 1],
                        &degrees[su - 2],
                        &bases[su - 2],
                        t,
                    );
                    FMatrix::from_f2_columns(rows, &cols).kernel_f2()
                }
            })
            .collect();

        let mut deg: Vec<u32> = Vec::new();
        let mut vecs: Vec<F2Vector> = Vec::new();
        let mut module = FreeAModule::new();
        for t in 0..=max_t {
            let here = DegreeBasis::new(&deg, t, &table);
            if t >= stop || too_big(here.len) {
                frontier = Some(Frontier { s, t });
                stages.push(stage_from(
                    s, module, &deg, &vecs, &prev_deg, prev_bases, &table,
                ));
                break 'stages;
            }
            let target_len = prev_bases[t as usize].len;
            let mut image = F2Echelon::new(target_len);
            for c in ctx.columns(&deg, &vecs, &prev_deg, prev_bases, t) {
                image.insert(&c);
            }
            let mut i = 0;
            for k in &kernels[t as usize] {
                if image.insert(k) {
                    module
                        .push(format!("g{s}.{t}.{i}"), t)
                        .expect("fresh label");
                    deg.push(t);
                    vecs.push(k.clone());
                    i += 1;
                }
            }
        }
        stages.push(stage_from(
            s, module, &deg, &vecs, &prev_deg, prev_bases, &table,
        ));
        bases.push(bases_for(&deg));
        degrees.push(deg);
        vectors.push(vecs);
    }

    if frontier.is_some() {
        // keep the partial stage's vectors for inspection
        let s = stages.len() - 1;
        let st = &stages[s];
        let prev = &bases[s - 1];
        vectors.push(
            st.differential
                .iter()
                .enumerate()
                .map(|(g, e)| to_vector(&table, e, &prev[st.module.degree(g) as usize]))
                .collect(),
        );
    }

    Resolution {
        stages,
        max_s: opts.max_s,
        max_t,
        frontier,
        module: x.clone(),
        table,
        vectors,
        bases,
    }
}

fn to_vector(table: &ProductTable, x: &FreeElement, basis: &DegreeBasis) -> F2Vector {
    let mut v = F2Vector::zeros(basis.len);
    for (&g, e) in x {
        let off = basis
            .offset(g)
            .expect("generator below the element's degree");
        for m in e.terms() {
            v.flip(off + table.position(m).expect("monomial in table range"));
        }
    }
    v
}

fn stage_from(
    s: u32,
    module: FreeAModule,
    deg: &[u32],
    vecs: &[F2Vector],
    prev_deg: &[u32],
    prev_bases: &[DegreeBasis],
    table: &ProductTable,
) -> ResolutionStage {
    let differential = deg
        .iter()
        .zip(vecs)
        .map(|(&d, v)| {
            let basis = &prev_bases[d as usize];
            let mut x = FreeElement::new();
            for i in v.ones() {
                let (h, j) = basis.locate(i);
                x.entry(h)
                    .or_insert_with(SteenrodElement::zero)
                    .toggle(table.basis(d - prev_deg[h])[j].clone());
            }
            x.retain(|_, e| !e.is_zero());
            x
        })
        .collect();
    ResolutionStage {
        s,
        module,
        differential,
    }
}

impl Resolution {
    pub fn is_complete(&self) -> bool {
        self.frontier.is_none()
    }

    pub fn module(&self) -> &ModulePresentation {
        &self.module
    }

    pub fn table(&self) -> &ProductTable {
        &self.table
    }

    /// Stages computed in every internal degree up to `max_t`.
    pub fn complete_stages(&self) -> usize {
        match self.frontier {
            Some(f) => f.s as usize,
            None => self.stages.len(),
        }
    }

    pub fn dim(&self, s: u32, t: u32) -> usize {
        self.stages
            .get(s as usize)
            .map_or(0, |st| st.module.count_in_degree(t))
    }

    /// `d_s` at internal degree `t` as an 𝔽₂ matrix, rows indexed by the
    /// basis of `(F_{s−1})_t` and columns by that of `(F_s)_t`.
    pub fn matrix(&self, s: u32, t: u32) -> FMatrix {
        assert!(
            s >= 1 && (s as usize) < self.complete_stages(),
            "stage {s} not complete"
        );
        let su = s as usize;
        let deg = self.stages[su].module.degrees();
        let prev = self.stages[su - 1].module.degrees();
        let ctx = Ctx { table: &self.table };
        let cols = ctx.columns(&deg, &self.vectors[su], &prev, &self.bases[su - 1], t);
        FMatrix::from_f2_columns(self.bases[su - 1][t as usize].len, &cols)
    }

    /// The relation submodule of `(F_0)_t`.
    fn relation_span(&self, t: u32) -> F2Echelon {
        let deg0 = self.stages[0].module.degrees();
        let b = &self.bases[0];
        let ctx = Ctx { table: &self.table };
        let mut span = F2Echelon::new(b[t as usize].len);
        for (i, r) in self.module.relations.iter().enumerate() {
            let Some(d) = self.module.relation_degree(i).filter(|&d| d <= t) else {
                continue;
            };
            let v = to_vector(&self.table, r, &b[d as usize]);
            for k in 0..self.table.dim(t - d) {
                span.insert(&ctx.translate(&deg0, b, d, &v, t - d, k));
            }
        }
        span
    }

    /// `(s, t)` where `dim (F_s)_t ≠ rank d_s + rank d_{s+1}`, with the
    /// augmentation in place of `d_0`. Covers stages `s` whose successor is
    /// complete.
    pub fn exactness_failures(&self) -> Vec<(u32, u32)> {
        let top = self.complete_stages();
        let mut out = Vec::new();
        for s in 0..top.saturating_sub(1) as u32 {
            for t in 0..=self.max_t {
                let dim = self.bases[s as usize][t as usize].len;
                let next = self.matrix(s + 1, t).rank();
                let ok = if s == 0 {
                    next == self.relation_span(t).dim()
                } else {
                    dim == self.matrix(s, t).rank() + next
                };
                if !ok {
                    out.push((s, t));
                }
            }
        }
        out
    }

    /// Generators `(s, g)` with a unit entry in `d_s(g)`.
    pub fn minimality_failures(&self) -> Vec<(u32, usize)> {
        let unit = AdmissibleMonomial::unit();
        let mut out = Vec::new();
        for st in self.stages.iter().skip(1) {
            for (g, x) in st.differential.iter().enumerate() {
                if x.values().any(|e| e.contains(&unit)) {
                    out.push((st.s, g));
                }
            }
        }
        out
    }

    /// Generators `(s, g)` with `d_{s−1}(d_s(g)) ≠ 0`, multiplying matrix
    /// entries with [`steenrod_multiply`].
    pub fn d_squared_failures(&self) -> Vec<(u32, usize)> {
        let mut out = Vec::new();
        for s in 2..self.stages.len() {
            let prev = &self.stages[s - 1].differential;
            for (g, x) in self.stages[s].differential.iter().enumerate() {
                let mut total: BTreeMap<usize, SteenrodElement> = BTreeMap::new();
                for (&h, a) in x {
                    for (&k, b) in &prev[h] {
                        let e = total.entry(k).or_insert_with(SteenrodElement::zero);
                        *e = e.add(&steenrod_multiply(a, b));
                    }
                }
                if total.values().any(|e| !e.is_zero()) {
                    out.push((s as u32, g));
                }
            }
        }
        out
    }

    /// Stage-1 generators whose image misses the relation submodule.
    pub fn augmentation_failures(&self) -> Vec<usize> {
        let Some(st) = self.stages.get(1) else {
            return Vec::new();
        };
        let b = &self.bases[0];
        (0..st.differential.len())
            .filter(|&g| {
                let t = st.module.degree(g);
                !self.relation_span(t).contains(&to_vector(
                    &self.table,
                    &st.differential[g],
                    &b[t as usize],
                ))
            })
            .collect()
    }

    pub fn dump(&self) -> ResolutionDump {
        let stages = self
            .stages
            .iter()
            .map(|st| DumpStage {
                s: st.s,
                generators: st
                    .module
                    .generators()
                    .iter()
                    .zip(&st.differential)
                    .map(|((label, degree), x)| DumpGenerator {
                        label: label.clone(),
                        degree: *degree,
                        d: x.iter()
                            .map(|(&h, e)| DumpEntry {
                                target: self.stages[st.s as usize - 1].module.label(h).to_string(),
                                terms: e.terms().map(|m| m.exponents().to_vec()).collect(),
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect();
        ResolutionDump {
            schema: 1,
            prime: 2,
            max_s: self.max_s,
            max_t: self.max_t,
            frontier: self.frontier,
            stages,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionDump {
    pub schema: u32,
    pub prime: u32,
    pub max_s: u32,
    pub max_t: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frontier: Option<Frontier>,
    pub stages: Vec<DumpStage>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DumpStage {
    pub s: u32,
    pub generators: Vec<DumpGenerator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DumpGenerator {
    pub label: String,
    pub degree: u32,
    pub d: Vec<DumpEntry>,
}

/// One matrix entry: the coefficient of `target`, as admissible exponent
/// sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DumpEntry {
    pub target: String,
    pub terms: Vec<Vec<u32>>,
}

pub fn ext_chart(res: &Resolution) -> ExtChart {
    let mut classes = Vec::new();
    for st in &res.stages {
        let mut count: BTreeMap<u32, u32> = BTreeMap::new();
        for &(_, t) in st.module.generators() {
            if t > res.max_t {
                continue;
            }
            let index = count.entry(t).or_default();
            classes.push(ChartClass {
                s: st.s,
                t,
                index: *index,
            });
            *index += 1;
        }
    }
    classes.sort();
    ExtChart {
        prime: 2,
        max_s: res.max_s,
        max_t: res.max_t,
        classes,
    }
}

#[cfg(test)]
mod tests;
