use e2_core::resolution::{bar_oracle, ext_chart, resolve, ModulePresentation};

#[test]
fn resolution_matches_bar_complex_through_t13() {
    let chart = ext_chart(&resolve(&ModulePresentation::trivial(), 5, 13));
    let bar = bar_oracle(5, 13).unwrap();
    assert_eq!(chart.dims().mismatches(&bar), vec![]);
}

#[test]
fn first_line_is_h_i() {
    let bar = bar_oracle(1, 13).unwrap();
    let ts: Vec<u32> = (0..=13).filter(|&t| bar.get(1, t) > 0).collect();
    assert_eq!(ts, vec![1, 2, 4, 8]);
    assert!((0..=13).all(|t| bar.get(1, t) <= 1));
}

/// Decomposables fill `𝒜_n` except for one missing class when `n` is a
/// power of 2.
#[test]
fn indecomposables_are_powers_of_two() {
    use e2_core::coeffs::{F2Echelon, F2Vector};
    use e2_core::steenrod::{admissible_basis, steenrod_multiply};
    for n in 1..=13u32 {
        let basis = admissible_basis(n);
        let mut span = F2Echelon::new(basis.len());
        for a in 1..n {
            for x in admissible_basis(a) {
                for y in admissible_basis(n - a) {
                    let prod = steenrod_multiply(&x.clone().into(), &y.into());
                    let mut v = F2Vector::zeros(basis.len());
                    for m in prod.terms() {
                        v.flip(basis.iter().position(|b| b == m).unwrap());
                    }
                    span.insert(&v);
                }
            }
        }
        let missing = basis.len() - span.dim();
        assert_eq!(missing, usize::from(n.is_power_of_two()), "degree {n}");
    }
}
