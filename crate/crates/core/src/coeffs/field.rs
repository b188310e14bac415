use std::fmt;

use super::{CoeffError, Prime, Ring};

/// Bit-packed vector over 𝔽₂.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[u32]) -> Self {
        let mut v = F2Vector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &F2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// XOR `other` into the bits starting at `offset`.
    pub fn xor_at(&mut self, offset: usize, other: &F2Vector) {
        debug_assert!(offset + other.len <= self.len);
        for i in other.ones() {
            self.flip(offset + i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u32> {
        (0..self.len).map(|i| self.get(i) as u32).collect()
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "[{s}]")
    }
}

/// Incrementally built echelon basis of a subspace of 𝔽₂ⁿ.
///
/// Each stored vector has a distinct leading bit.
#[derive(Clone, Debug)]
pub struct F2Echelon {
    len: usize,
    by_pivot: Vec<Option<usize>>,
    rows: Vec<F2Vector>,
}

impl F2Echelon {
    pub fn new(len: usize) -> Self {
        F2Echelon {
            len,
            by_pivot: vec![None; len],
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &mut F2Vector) {
        debug_assert_eq!(v.len(), self.len);
        while let Some(c) = v.first_one() {
            match self.by_pivot[c] {
                Some(r) => v.xor_assign(&self.rows[r]),
                None => return,
            }
        }
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Add `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &F2Vector) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        match w.first_one() {
            Some(c) => {
                self.by_pivot[c] = Some(self.rows.len());
                self.rows.push(w);
                true
            }
            None => false,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
enum Storage {
    /// p = 2: each row is `stride` machine words.
    Packed { stride: usize, words: Vec<u64> },
    /// odd p: one residue per entry.
    Dense(Vec<u32>),
}

/// Matrix over the prime field 𝔽_p, bit-packed when p = 2.
#[derive(Clone, PartialEq, Eq)]
pub struct FMatrix {
    prime: Prime,
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl FMatrix {
    pub fn zeros(prime: Prime, rows: usize, cols: usize) -> Self {
        let storage = if prime.get() == 2 {
            let stride = cols.div_ceil(64);
            Storage::Packed {
                stride,
                words: vec![0; stride * rows],
            }
        } else {
            Storage::Dense(vec![0; rows * cols])
        };
        FMatrix {
            prime,
            rows,
            cols,
            storage,
        }
    }

    pub fn identity(prime: Prime, n: usize) -> Self {
        let mut m = FMatrix::zeros(prime, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows<R: AsRef<[u32]>>(prime: Prime, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = FMatrix::zeros(prime, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix rows");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x % prime.get());
            }
        }
        m
    }

    /// Convert a dense matrix over 𝔽 (or reduce one over 𝔾 mod p).
    pub fn from_matrix(m: &super::Matrix) -> Self {
        let ring = m.ring();
        let mut f = FMatrix::zeros(ring.prime(), m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                f.set(i, j, ring.to_field(m.get(i, j)));
            }
        }
        f
    }

    /// Matrix with the given packed vectors as columns (p = 2 only).
    pub fn from_f2_columns(rows: usize, columns: &[F2Vector]) -> Self {
        let mut m = FMatrix::zeros(Prime::TWO, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.set(i, j, 1);
            }
        }
        m
    }

    pub fn to_matrix(&self) -> super::Matrix {
        let mut m = super::Matrix::zeros(Ring::field(self.prime), self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        match &self.storage {
            Storage::Packed { stride, words } => {
                ((words[i * stride + j / 64] >> (j % 64)) & 1) as u32
            }
            Storage::Dense(data) => data[i * self.cols + j],
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        let cols = self.cols;
        match &mut self.storage {
            Storage::Packed { stride, words } => {
                let w = &mut words[i * *stride + j / 64];
                let mask = 1u64 << (j % 64);
                if x & 1 == 1 {
                    *w |= mask;
                } else {
                    *w &= !mask;
                }
            }
            Storage::Dense(data) => data[i * cols + j] = x,
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in product");
        let p = self.prime.get() as u64;
        (0..self.rows)
            .map(|i| {
                let s = (0..self.cols).fold(0u64, |acc, j| {
                    (acc + self.get(i, j) as u64 * v[j] as u64) % p
                });
                s as u32
            })
            .collect()
    }

    pub fn transpose(&self) -> FMatrix {
        let mut t = FMatrix::zeros(self.prime, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if x != 0 {
                    t.set(j, i, x);
                }
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        match &mut self.storage {
            Storage::Packed { stride, words } => {
                for k in 0..*stride {
                    words.swap(a * *stride + k, b * *stride + k);
                }
            }
            Storage::Dense(data) => {
                for j in 0..self.cols {
                    data.swap(a * self.cols + j, b * self.cols + j);
                }
            }
        }
    }

    /// row[target] -= f * row[source], entries from column `from` on.
    fn axpy_row(&mut self, target: usize, source: usize, f: u32, from: usize) {
        let p = self.prime.get();
        let cols = self.cols;
        match &mut self.storage {
            Storage::Packed { stride, words } => {
                if f & 1 == 0 {
                    return;
                }
                let s = *stride;
                for k in from / 64..s {
                    let w = words[source * s + k];
                    words[target * s + k] ^= w;
                }
            }
            Storage::Dense(data) => {
                for j in from..cols {
                    let x = data[source * cols + j];
                    if x != 0 {
                        let t = &mut data[target * cols + j];
                        *t = (*t + p - (f * x) % p) % p;
                    }
                }
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: u32) {
        let p = self.prime.get();
        let cols = self.cols;
        if let Storage::Dense(data) = &mut self.storage {
            for x in &mut data[r * cols..(r + 1) * cols] {
                *x = (*x * c) % p;
            }
        }
    }

    /// Reduced row echelon form and its pivot columns.
    ///
    /// Pivots are taken in the leftmost available column, using the topmost
    /// candidate row.
    pub fn rref(&self) -> (FMatrix, Vec<usize>) {
        let ring = Ring::field(self.prime);
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            a.swap_rows(r, pr);
            let inv = ring.inv(a.get(r, c)).expect("nonzero is a unit in a field");
            a.scale_row(r, inv);
            for i in 0..self.rows {
                if i != r {
                    let f = a.get(i, c);
                    if f != 0 {
                        a.axpy_row(i, r, f, c);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank and a kernel basis read off the reduced row echelon form: one
    /// vector per free column, with a 1 in that column.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<u32>>) {
        let p = self.prime.get();
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let kernel = (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (row, &c) in pivots.iter().enumerate() {
                    let x = r.get(row, free);
                    v[c] = (p - x) % p;
                }
                v
            })
            .collect();
        (pivots.len(), kernel)
    }

    /// Kernel basis as packed vectors (p = 2).
    pub fn kernel_f2(&self) -> Vec<F2Vector> {
        assert_eq!(self.prime.get(), 2, "packed kernel needs p = 2");
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = F2Vector::zeros(self.cols);
                v.set(free, true);
                for (row, &c) in pivots.iter().enumerate() {
                    if r.get(row, free) == 1 {
                        v.set(c, true);
                    }
                }
                v
            })
            .collect()
    }

    /// A solution of `M x = b`, with free variables set to zero, or `None`.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>, CoeffError> {
        if b.len() != self.rows {
            return Err(CoeffError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let p = self.prime.get();
        let mut aug = FMatrix::zeros(self.prime, self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi % p);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.get(row, self.cols);
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FMatrix[F_{}; {}x{}]", self.prime, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<u32> = (0..self.cols).map(|j| self.get(i, j)).collect();
            write!(f, "\n  {row:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2: Prime = Prime::TWO;

    #[test]
    fn zero_one_by_one() {
        let (rank, kernel) = FMatrix::from_rows(P2, &[[0]]).rank_kernel();
        assert_eq!(rank, 0);
        assert_eq!(kernel, vec![vec![1]]);
    }

    #[test]
    fn identity_has_no_kernel() {
        let (rank, kernel) = FMatrix::identity(P2, 3).rank_kernel();
        assert_eq!(rank, 3);
        assert!(kernel.is_empty());
    }

    #[test]
    fn two_by_three() {
        let (rank, kernel) = FMatrix::from_rows(P2, &[[1, 1, 0], [0, 1, 1]]).rank_kernel();
        assert_eq!(rank, 2);
        assert_eq!(kernel, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let id = FMatrix::identity(P2, 2);
        assert_eq!(id.solve(&[1, 0]).unwrap(), Some(vec![1, 0]));
        let z = FMatrix::from_rows(P2, &[[0]]);
        assert_eq!(z.solve(&[1]).unwrap(), None);
        let m = FMatrix::from_rows(P2, &[[1, 1], [1, 1]]);
        assert_eq!(m.solve(&[1, 1]).unwrap(), Some(vec![1, 0]));
        assert!(matches!(
            m.solve(&[1]),
            Err(CoeffError::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn odd_prime_kernel() {
        let p = Prime::new(5).unwrap();
        let m = FMatrix::from_rows(p, &[[1, 2, 3], [2, 4, 2]]);
        let (rank, kernel) = m.rank_kernel();
        assert_eq!(rank, 2);
        for k in &kernel {
            assert!(m.mul_vec(k).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn wide_packed_rows() {
        // crosses a word boundary
        let mut m = FMatrix::zeros(P2, 2, 130);
        m.set(0, 0, 1);
        m.set(0, 129, 1);
        m.set(1, 129, 1);
        let (rank, kernel) = m.rank_kernel();
        assert_eq!(rank, 2);
        assert_eq!(kernel.len(), 128);
        assert_eq!(m.kernel_f2().len(), 128);
    }

    #[test]
    fn echelon_span() {
        let mut e = F2Echelon::new(4);
        assert!(e.insert(&F2Vector::from_bits(&[1, 1, 0, 0])));
        assert!(e.insert(&F2Vector::from_bits(&[0, 1, 1, 0])));
        assert!(!e.insert(&F2Vector::from_bits(&[1, 0, 1, 0])));
        assert!(e.contains(&F2Vector::from_bits(&[1, 0, 1, 0])));
        assert!(!e.contains(&F2Vector::from_bits(&[0, 0, 0, 1])));
        assert_eq!(e.dim(), 2);
    }
}
