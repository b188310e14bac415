use std::collections::HashMap;

use rayon::prelude::*;

use crate::coeffs::F2Vector;
use crate::steenrod::{adem_normalize, admissible_basis, AdmissibleMonomial, SteenrodElement};

/// Admissible bases of `𝒜` in degrees `0..=max` and the products
/// `basis(a) × basis(b) → 𝒜_{a+b}` for `a + b ≤ max`.
#[derive(Clone, Debug)]
pub struct ProductTable {
    max: u32,
    bases: Vec<Vec<AdmissibleMonomial>>,
    index: Vec<HashMap<AdmissibleMonomial, usize>>,
    /// `products[a][b][i * dim(b) + j]`.
    products: Vec<Vec<Vec<F2Vector>>>,
}

impl ProductTable {
    pub fn new(max: u32) -> Self {
        let bases: Vec<Vec<AdmissibleMonomial>> = (0..=max).map(admissible_basis).collect();
        let index: Vec<HashMap<AdmissibleMonomial, usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        let mut table = ProductTable {
            max,
            bases,
            index,
            products: Vec::new(),
        };
        let products = (0..=max)
            .into_par_iter()
            .map(|a| {
                (0..=max - a)
                    .map(|b| {
                        let mut cell = Vec::with_capacity(table.dim(a) * table.dim(b));
                        for x in &table.bases[a as usize] {
                            for y in &table.bases[b as usize] {
                                let mut w = x.exponents().to_vec();
                                w.extend_from_slice(y.exponents());
                                cell.push(table.to_vector(a + b, &adem_normalize(&w)));
                            }
                        }
                        cell
                    })
                    .collect()
            })
            .collect();
        table.products = products;
        table
    }

    pub fn max_degree(&self) -> u32 {
        self.max
    }

    pub fn dim(&self, n: u32) -> usize {
        self.bases.get(n as usize).map_or(0, Vec::len)
    }

    pub fn basis(&self, n: u32) -> &[AdmissibleMonomial] {
        &self.bases[n as usize]
    }

    pub fn position(&self, m: &AdmissibleMonomial) -> Option<usize> {
        self.index.get(m.degree() as usize)?.get(m).copied()
    }

    pub fn to_vector(&self, n: u32, x: &SteenrodElement) -> F2Vector {
        let mut v = F2Vector::zeros(self.dim(n));
        for m in x.terms() {
            v.flip(self.index[n as usize][m]);
        }
        v
    }

    pub fn to_element(&self, n: u32, v: &F2Vector) -> SteenrodElement {
        let mut e = SteenrodElement::zero();
        for i in v.ones() {
            e.toggle(self.bases[n as usize][i].clone());
        }
        e
    }

    /// Product of the `i`-th basis monomial of degree `a` and the `j`-th of
    /// degree `b`.
    pub fn product(&self, a: u32, i: usize, b: u32, j: usize) -> &F2Vector {
        &self.products[a as usize][b as usize][i * self.dim(b) + j]
    }
}

/// Degree-`t` basis of a free `𝒜`-module: pairs (generator, admissible
/// monomial) in lexicographic order.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    /// `(generator, offset)` for generators of degree `≤ t`.
    pub blocks: Vec<(usize, usize)>,
    pub len: usize,
}

impl DegreeBasis {
    pub fn new(degrees: &[u32], t: u32, table: &ProductTable) -> Self {
        let mut blocks = Vec::new();
        let mut len = 0;
        for (g, &d) in degrees.iter().enumerate() {
            if d <= t {
                blocks.push((g, len));
                len += table.dim(t - d);
            }
        }
        DegreeBasis { blocks, len }
    }

    pub fn offset(&self, g: usize) -> Option<usize> {
        self.blocks.iter().find(|(h, _)| *h == g).map(|(_, o)| *o)
    }

    /// `(generator, monomial index)` of a coordinate.
    pub fn locate(&self, i: usize) -> (usize, usize) {
        let k = self.blocks.partition_point(|&(_, o)| o <= i) - 1;
        let (g, o) = self.blocks[k];
        (g, i - o)
    }
}

/// Multiply an element `x` of degree `t` (coordinates in `src`) on the left
/// by the `k`-th admissible monomial of degree `a`, giving coordinates in
/// `dst` (degree `t + a`).
#[allow(clippy::too_many_arguments)]
pub fn act(
    table: &ProductTable,
    degrees: &[u32],
    a: u32,
    k: usize,
    x: &F2Vector,
    t: u32,
    src: &DegreeBasis,
    dst: &DegreeBasis,
) -> F2Vector {
    let mut out = F2Vector::zeros(dst.len);
    for i in x.ones() {
        let (g, j) = src.locate(i);
        let b = t - degrees[g];
        let prod = table.product(a, k, b, j);
        let off = dst.offset(g).expect("generator present in higher degree");
        out.xor_at(off, prod);
    }
    out
}
