//! Random inputs and brute-force oracles shared by the property tests and
//! the acceptance suite.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use e2_core::algebra::{
    leibniz_extend, mon_enumerate, AlgebraElement, BigradedSet, DifferentialSpec, Word,
};
use e2_core::bigraded::{BiDegree, BigradedChainComplex, FreeBigradedModule};
use e2_core::coeffs::{kernel_generators, Matrix, Ring};
use e2_core::gstar::{BStarSkeleton, SkeletonGenerator, SkeletonRelation};
use rand::rngs::StdRng;
use rand::Rng;

/// A random complex in degrees 0 and 1, dimensions `0..=max_dim`, with up
/// to three cells per bidegree. Each `d_m` is a random combination of
/// generators of `ker d_{m−1}`, so `d∘d = 0` over ℤ/p² as well.
pub fn random_complex(rng: &mut StdRng, ring: Ring, max_dim: i64) -> BigradedChainComplex {
    let mut module = FreeBigradedModule::new(ring);
    let mut ds = BTreeMap::new();
    for n in 0..=1 {
        let ranks: Vec<usize> = (0..=max_dim).map(|_| rng.gen_range(0..=3)).collect();
        for (m, &r) in ranks.iter().enumerate() {
            for i in 0..r {
                module
                    .add(format!("c{n}_{m}_{i}"), BiDegree::new(n, m as i64))
                    .unwrap();
            }
        }
        let mut prev = Matrix::zeros(ring, 0, ranks[0]);
        for (m, &r) in ranks.iter().enumerate().skip(1) {
            let kernel = kernel_generators(&prev);
            let mut coeffs = Matrix::zeros(ring, kernel.cols(), r);
            for i in 0..kernel.cols() {
                for j in 0..r {
                    coeffs.set(i, j, ring.reduce(rng.gen_range(0..ring.modulus() as i64)));
                }
            }
            let d = kernel.mul(&coeffs);
            ds.insert(BiDegree::new(n, m as i64), d.clone());
            prev = d;
        }
    }
    BigradedChainComplex::new(&module, ds).unwrap()
}

fn all_vectors(modulus: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..modulus).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// `(#ℤ/p, #ℤ/p²)` summands of `H` at `at` for a free complex, by listing
/// every chain: `|H| = p^{a+2b}` and `|H[p]| = p^{a+b}`.
pub fn brute_homology(c: &BigradedChainComplex, at: BiDegree) -> (usize, usize) {
    let ring = c.ring();
    let q = ring.modulus();
    let p = ring.prime().get();
    let n = c.rank_at(at);
    let d_out = c.differential(at);
    let d_in = c.differential(at.above());
    let image: HashSet<Vec<u32>> = all_vectors(q, c.rank_at(at.above()))
        .iter()
        .map(|v| d_in.mul_vec(v))
        .collect();
    let cycles: Vec<Vec<u32>> = all_vectors(q, n)
        .into_iter()
        .filter(|v| d_out.mul_vec(v).iter().all(|&x| x == 0))
        .collect();
    let killed_by_p = cycles
        .iter()
        .filter(|v| image.contains(&v.iter().map(|&x| ring.mul(x, p)).collect::<Vec<_>>()))
        .count();
    let log = |x: usize| -> usize {
        let mut k = 0;
        let mut y = 1usize;
        while y < x {
            y *= p as usize;
            k += 1;
        }
        assert_eq!(y, x, "not a power of p");
        k
    };
    let total = log(cycles.len()) - log(image.len());
    let torsion = log(killed_by_p) - log(image.len());
    (2 * torsion - total, total - torsion)
}

/// Random generator set with a differential whose square vanishes on
/// generators. Values of `d` are random combinations of cycles and of
/// boundaries of earlier generators.
pub fn random_spec(rng: &mut StdRng, ring: Ring) -> (BigradedSet, DifferentialSpec) {
    let mut degrees: Vec<BiDegree> = (0..rng.gen_range(2..=5))
        .map(|_| BiDegree::new(rng.gen_range(0..=2), rng.gen_range(0..=3)))
        .filter(|b| *b != BiDegree::ZERO)
        .collect();
    degrees.sort_by_key(|b| b.dimension);
    let set = BigradedSet::from_pairs(
        degrees
            .iter()
            .enumerate()
            .map(|(i, b)| (format!("x{i}"), *b)),
    )
    .unwrap();
    let mut values: Vec<(u32, AlgebraElement)> = Vec::new();
    let coeff = |rng: &mut StdRng| ring.reduce(rng.gen_range(1..ring.modulus() as i64));
    for id in 0..set.len() as u32 {
        let b = set.bidegree(id);
        if b.dimension == 0 {
            continue;
        }
        let prefix =
            BigradedSet::from_pairs((0..id).map(|i| (format!("x{i}"), set.bidegree(i)))).unwrap();
        let so_far = DifferentialSpec::with_values(ring, &set, values.clone()).unwrap();
        let mut v = AlgebraElement::zero(ring);
        for w in mon_enumerate(&prefix, b.below()).into_iter().take(12) {
            let x = AlgebraElement::monomial(ring, w.clone(), 1);
            if leibniz_extend(&so_far, &set, &x).is_zero() && rng.gen_bool(0.5) {
                v.add_term(w, coeff(rng));
            }
        }
        for u in mon_enumerate(&prefix, b).into_iter().take(12) {
            if rng.gen_bool(0.5) {
                let du = leibniz_extend(&so_far, &set, &AlgebraElement::monomial(ring, u, 1));
                v = v.add(&du.scale(coeff(rng)));
            }
        }
        values.push((id, v));
    }
    let spec = DifferentialSpec::new(ring, &set, values).expect("d² vanishes on generators");
    (set, spec)
}

pub fn random_word(rng: &mut StdRng, set: &BigradedSet, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| rng.gen_range(0..set.len() as u32))
            .collect(),
    )
}

pub fn random_element(
    rng: &mut StdRng,
    ring: Ring,
    set: &BigradedSet,
    terms: usize,
    max_len: usize,
) -> AlgebraElement {
    let mut x = AlgebraElement::zero(ring);
    for _ in 0..terms {
        x.add_term(
            random_word(rng, set, max_len),
            ring.reduce(rng.gen_range(1..ring.modulus() as i64)),
        );
    }
    x
}

/// Exponent sequence `Sq^{i₁}⋯Sq^{i_k}` with `Σ i_j ≤ max_degree`.
pub fn random_adem_word(rng: &mut StdRng, max_degree: u32) -> Vec<u32> {
    let mut left = rng.gen_range(0..=max_degree);
    let mut w = Vec::new();
    while left > 0 {
        let i = rng.gen_range(1..=left.min(8));
        w.push(i);
        left -= i;
    }
    w
}

/// E₀ = {a (degree 1), b (degree 2)}, E₁ = {r (degree 3)}.
pub fn three_generator_skeleton() -> BStarSkeleton {
    BStarSkeleton {
        schema: 1,
        p: 2,
        e0: vec![
            SkeletonGenerator {
                label: "a".into(),
                degree: 1,
            },
            SkeletonGenerator {
                label: "b".into(),
                degree: 2,
            },
        ],
        e1: vec![SkeletonRelation {
            label: "r".into(),
            degree: 3,
            boundary: vec![],
        }],
        e2: vec![],
    }
}

/// Count of `B∗` basis words in bidegree `b`: every sequence of letters
/// from `E`, `[1]` and `[p]_s` with total bidegree `b` in which each
/// maximal run of 𝔾∗ letters has the form `[1]^r` or `[1]^r[p]_s`.
pub fn brute_bstar_count(skel: &BStarSkeleton, b: BiDegree) -> usize {
    #[derive(Clone, Copy, PartialEq)]
    enum Letter {
        One,
        P,
        E,
    }
    let mut letters: Vec<(Letter, BiDegree)> = vec![(Letter::One, BiDegree::new(1, 1))];
    for s in 1..=b.dimension {
        letters.push((Letter::P, BiDegree::new(0, s)));
    }
    for g in &skel.e0 {
        letters.push((Letter::E, BiDegree::new(g.degree, 0)));
    }
    for g in &skel.e1 {
        letters.push((Letter::E, BiDegree::new(g.degree, 1)));
    }
    for g in &skel.e2 {
        letters.push((Letter::E, BiDegree::new(g.degree, 2)));
    }

    // `last`: the previous letter, if it belongs to a 𝔾∗ run.
    fn count(letters: &[(Letter, BiDegree)], left: BiDegree, last: Option<Letter>) -> usize {
        let mut total = usize::from(left == BiDegree::ZERO);
        for &(l, d) in letters {
            if !d.le(left) {
                continue;
            }
            if !matches!((last, l), (Some(Letter::P), Letter::One | Letter::P)) {
                let next = if l == Letter::E { None } else { Some(l) };
                total += count(letters, left - d, next);
            }
        }
        total
    }
    count(&letters, b, None)
}

/// Pascal's triangle mod 2 up to row `n`.
pub fn binom_table(n: usize) -> Vec<Vec<bool>> {
    let mut t = vec![vec![false; n + 1]; n + 1];
    for i in 0..=n {
        t[i][0] = true;
        for j in 1..=i {
            t[i][j] = t[i - 1][j - 1] ^ (j < i && t[i - 1][j]);
        }
    }
    t
}

/// Admissible form by always rewriting the rightmost inadmissible pair.
pub fn adem_rightmost(w: &[u32], pascal: &[Vec<bool>]) -> BTreeSet<Vec<u32>> {
    let w: Vec<u32> = w.iter().copied().filter(|&e| e > 0).collect();
    let Some(i) = (0..w.len().saturating_sub(1))
        .rev()
        .find(|&i| w[i] < 2 * w[i + 1])
    else {
        return BTreeSet::from([w]);
    };
    let (a, b) = (w[i] as i64, w[i + 1] as i64);
    let mut out = BTreeSet::new();
    for c in 0..=a / 2 {
        let (n, k) = (b - 1 - c, a - 2 * c);
        if n < 0 || k > n || !pascal[n as usize][k as usize] {
            continue;
        }
        let mut v = w[..i].to_vec();
        v.push((a + b - c) as u32);
        v.push(c as u32);
        v.extend_from_slice(&w[i + 2..]);
        for t in adem_rightmost(&v, pascal) {
            if !out.remove(&t) {
                out.insert(t);
            }
        }
    }
    out
}
