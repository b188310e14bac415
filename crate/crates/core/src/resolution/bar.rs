use std::collections::HashMap;

use rayon::prelude::*;

use super::{ExtDims, ResolutionError};
use crate::coeffs::{F2Vector, FMatrix};
use crate::steenrod::{admissible_basis, steenrod_multiply, AdmissibleMonomial, SteenrodElement};

/// Default cap on the number of bar cells in a single bidegree.
pub const BAR_LIMIT: usize = 250_000;

pub fn bar_oracle(max_s: u32, max_t: u32) -> Result<ExtDims, ResolutionError> {
    bar_oracle_with_limit(max_s, max_t, BAR_LIMIT)
}

/// `dim Ext^{s,t}(𝔽₂, 𝔽₂)` from the reduced bar complex
/// `B_s = (𝒜₊)^{⊗s}`, `d[a₁|…|a_s] = Σ [a₁|…|a_i a_{i+1}|…|a_s]`:
/// `dim B_{s,t} − rank d_s − rank d_{s+1}`.
pub fn bar_oracle_with_limit(
    max_s: u32,
    max_t: u32,
    limit: usize,
) -> Result<ExtDims, ResolutionError> {
    let bases: Vec<Vec<AdmissibleMonomial>> = (0..=max_t).map(admissible_basis).collect();
    let columns: Vec<Vec<usize>> = (0..=max_t)
        .into_par_iter()
        .map(|t| {
            let cells: Vec<Vec<Vec<AdmissibleMonomial>>> = (0..=max_s + 1)
                .map(|s| {
                    let mut out = Vec::new();
                    tensors(&bases, s, t, &mut Vec::new(), &mut out);
                    out
                })
                .collect();
            for (s, c) in cells.iter().enumerate() {
                if c.len() > limit {
                    return Err(ResolutionError::BarBoundExceeded {
                        s: s as u32,
                        t,
                        size: c.len(),
                        limit,
                    });
                }
            }
            // rank of d_s : B_s → B_{s−1}
            let mut ranks = vec![0usize; cells.len() + 1];
            for s in 2..cells.len() {
                ranks[s] = bar_differential(&cells[s], &cells[s - 1]).rank();
            }
            Ok((0..=max_s as usize)
                .map(|s| cells[s].len() - ranks[s] - ranks[s + 1])
                .collect())
        })
        .collect::<Result<_, _>>()?;
    let dims = (0..=max_s as usize)
        .map(|s| columns.iter().map(|c| c[s]).collect())
        .collect();
    Ok(ExtDims::from_rows(max_s, max_t, dims))
}

/// All `[a₁|…|a_s]` with positive-degree admissible factors of total
/// degree `t`.
fn tensors(
    bases: &[Vec<AdmissibleMonomial>],
    s: u32,
    t: u32,
    prefix: &mut Vec<AdmissibleMonomial>,
    out: &mut Vec<Vec<AdmissibleMonomial>>,
) {
    if s == 0 {
        if t == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    // each remaining factor needs degree ≥ 1
    for d in 1..=t.saturating_sub(s - 1) {
        for m in &bases[d as usize] {
            prefix.push(m.clone());
            tensors(bases, s - 1, t - d, prefix, out);
            prefix.pop();
        }
    }
}

fn bar_differential(src: &[Vec<AdmissibleMonomial>], tgt: &[Vec<AdmissibleMonomial>]) -> FMatrix {
    let index: HashMap<&[AdmissibleMonomial], usize> = tgt
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i))
        .collect();
    let mut products: HashMap<(&AdmissibleMonomial, &AdmissibleMonomial), SteenrodElement> =
        HashMap::new();
    let mut cols = Vec::with_capacity(src.len());
    for cell in src {
        let mut v = F2Vector::zeros(tgt.len());
        for i in 0..cell.len() - 1 {
            let prod = products.entry((&cell[i], &cell[i + 1])).or_insert_with(|| {
                steenrod_multiply(&cell[i].clone().into(), &cell[i + 1].clone().into())
            });
            let mut merged: Vec<AdmissibleMonomial> = Vec::with_capacity(cell.len() - 1);
            merged.extend_from_slice(&cell[..i]);
            merged.push(AdmissibleMonomial::unit());
            merged.extend_from_slice(&cell[i + 2..]);
            for m in prod.terms() {
                merged[i] = m.clone();
                v.flip(index[merged.as_slice()]);
            }
        }
        cols.push(v);
    }
    FMatrix::from_f2_columns(tgt.len(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees() {
        let e = bar_oracle(2, 8).unwrap();
        assert_eq!(e.get(0, 0), 1);
        for t in 1..=8 {
            assert_eq!(e.get(0, t), 0);
        }
        let h: Vec<u32> = (0..=8).filter(|&t| e.get(1, t) == 1).collect();
        assert_eq!(h, vec![1, 2, 4, 8]);
        // h0², h1², h0h2
        assert_eq!(e.get(2, 2), 1);
        assert_eq!(e.get(2, 3), 0);
        assert_eq!(e.get(2, 4), 1);
        assert_eq!(e.get(2, 5), 1);
    }

    #[test]
    fn limit_reported() {
        let err = bar_oracle_with_limit(3, 6, 5).unwrap_err();
        assert!(matches!(err, ResolutionError::BarBoundExceeded { .. }));
    }
}
