use super::*;

fn sq(i: u32) -> SteenrodElement {
    AdmissibleMonomial::new(vec![i]).unwrap().into()
}

#[test]
fn stage_zero_is_one_generator() {
    let r = resolve(&ModulePresentation::trivial(), 0, 5);
    assert_eq!(r.stages.len(), 1);
    assert_eq!(r.stages[0].module.degrees(), vec![0]);
    let c = ext_chart(&r);
    assert_eq!(
        c.classes,
        vec![ChartClass {
            s: 0,
            t: 0,
            index: 0
        }]
    );
}

#[test]
fn first_stage_is_the_indecomposables() {
    let r = resolve(&ModulePresentation::trivial(), 1, 13);
    assert_eq!(r.stages[1].module.degrees(), vec![1, 2, 4, 8]);
    for (g, x) in r.stages[1].differential.iter().enumerate() {
        let t = r.stages[1].module.degree(g);
        assert_eq!(x.get(&0), Some(&sq(t)));
    }
}

#[test]
fn h0_tower() {
    let r = resolve(&ModulePresentation::trivial(), 8, 9);
    for s in 0..=8 {
        assert_eq!(r.dim(s, s), 1, "Ext^({s},{s})");
    }
    // the tower is carried by Sq¹ on the previous tower generator
    for s in 1..=8usize {
        let st = &r.stages[s];
        let g = (0..st.module.len())
            .find(|&g| st.module.degree(g) == s as u32)
            .unwrap();
        let prev = &r.stages[s - 1];
        let h = (0..prev.module.len())
            .find(|&h| prev.module.degree(h) == s as u32 - 1)
            .unwrap();
        assert_eq!(st.differential[g].get(&h), Some(&sq(1)));
    }
}

#[test]
fn structural_checks_pass() {
    let r = resolve(&ModulePresentation::trivial(), 4, 11);
    assert!(r.is_complete());
    assert!(r.d_squared_failures().is_empty());
    assert!(r.minimality_failures().is_empty());
    assert!(r.exactness_failures().is_empty());
    assert!(r.augmentation_failures().is_empty());
}

#[test]
fn low_stems() {
    let c = ext_chart(&resolve(&ModulePresentation::trivial(), 5, 13));
    let at_stem = |n: i64| -> Vec<u32> {
        c.classes
            .iter()
            .filter(|x| x.stem() == n)
            .map(|x| x.s)
            .collect()
    };
    assert_eq!(at_stem(1), vec![1]);
    assert_eq!(at_stem(2), vec![2]);
    assert_eq!(at_stem(3), vec![1, 2, 3]);
    assert!(at_stem(4).is_empty() && at_stem(5).is_empty());
}

#[test]
fn agrees_with_bar_complex_small() {
    let r = ext_chart(&resolve(&ModulePresentation::trivial(), 3, 9));
    let b = bar_oracle(3, 9).unwrap();
    assert_eq!(r.dims().mismatches(&b), vec![]);
}

#[test]
fn cyclic_on_sq1_gives_a_single_tower() {
    // 𝒜/𝒜Sq¹: Ext is that of the exterior algebra on Sq¹
    let x = ModulePresentation::new(vec![0], vec![BTreeMap::from([(0, sq(1))])]).unwrap();
    let c = ext_chart(&resolve(&x, 5, 10));
    assert_eq!(c.classes.len(), 6);
    assert!(c.classes.iter().all(|k| k.s == k.t));
}

#[test]
fn free_module_has_no_higher_ext() {
    let c = ext_chart(&resolve(&ModulePresentation::free(vec![0, 3]), 3, 8));
    assert_eq!(
        c.classes,
        vec![
            ChartClass {
                s: 0,
                t: 0,
                index: 0
            },
            ChartClass {
                s: 0,
                t: 3,
                index: 0
            }
        ]
    );
}

#[test]
fn presentation_validation() {
    let bad = BTreeMap::from([(0, sq(1)), (1, sq(1))]);
    assert_eq!(
        ModulePresentation::new(vec![0, 1], vec![bad]),
        Err(ResolutionError::NotHomogeneous(0))
    );
    let dangling = BTreeMap::from([(2, sq(1))]);
    assert_eq!(
        ModulePresentation::new(vec![0], vec![dangling]),
        Err(ResolutionError::UnknownGenerator(0, 2))
    );
}

#[test]
fn resource_bound_gives_frontier() {
    let mut opts = ResolveOptions::new(4, 12);
    opts.max_basis = Some(8);
    let r = resolve_with(&ModulePresentation::trivial(), opts);
    let f = r.frontier.expect("bound hit");
    assert!(!r.is_complete());
    // everything before the frontier matches an unbounded run
    let full = resolve(&ModulePresentation::trivial(), 4, 12);
    for s in 0..=f.s {
        let limit = if s == f.s { f.t } else { 13 };
        for t in 0..limit {
            assert_eq!(r.dim(s, t), full.dim(s, t));
        }
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| resolve(&ModulePresentation::trivial(), 4, 11).dump())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn dump_lists_entries_as_exponents() {
    let d = resolve(&ModulePresentation::trivial(), 2, 4).dump();
    let g = &d.stages[1].generators[1];
    assert_eq!((g.label.as_str(), g.degree), ("g1.2.0", 2));
    assert_eq!(g.d[0].terms, vec![vec![2]]);
    let json = serde_json::to_string(&d).unwrap();
    assert_eq!(serde_json::from_str::<ResolutionDump>(&json).unwrap(), d);
}
