use std::fmt;

use super::Ring;

/// Dense row-major matrix over 𝔽 or 𝔾.
///
/// Matrices act on column vectors: a map from a free module of rank `cols`
/// to one of rank `rows`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix {
            ring,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from integer rows, reducing each entry into the ring.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(ring: Ring, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Matrix::zeros(ring, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, ring.reduce(x));
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(ring: Ring, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x % ring.modulus());
            }
        }
        m
    }

    pub fn diagonal(ring: Ring, rows: usize, cols: usize, diag: &[u32]) -> Self {
        let mut m = Matrix::zeros(ring, rows, cols);
        for (i, &x) in diag.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: u32) {
        let v = self.ring.add(self.get(i, j), x);
        self.set(i, j, v);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let q = self.ring.modulus() as u64;
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, j) as u64) % q;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.set(i, j, v as u32);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in product");
        let q = self.ring.modulus() as u64;
        (0..self.rows)
            .map(|i| {
                let s = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % q);
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in sum"
        );
        let ring = self.ring;
        Matrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| ring.add(a, b))
                .collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let ring = self.ring;
        Matrix {
            data: self.data.iter().map(|&x| ring.mul(x, c)).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.ring.neg(1))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hcat");
        let mut m = Matrix::zeros(self.ring, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vcat");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            ring: self.ring,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.ring, self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j));
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.ring, rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                m.set(k, j, self.get(i, j));
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_row(&mut self, r: usize, c: u32) {
        let ring = self.ring;
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = ring.mul(*x, c);
        }
    }

    /// row[target] -= f * row[source]
    fn axpy_row(&mut self, target: usize, source: usize, f: u32) {
        if f == 0 {
            return;
        }
        let ring = self.ring;
        for j in 0..self.cols {
            let v = ring.sub(self.get(target, j), ring.mul(f, self.get(source, j)));
            self.set(target, j, v);
        }
    }

    /// col[target] -= f * col[source]
    fn axpy_col(&mut self, target: usize, source: usize, f: u32) {
        if f == 0 {
            return;
        }
        let ring = self.ring;
        for i in 0..self.rows {
            let v = ring.sub(self.get(i, target), ring.mul(f, self.get(i, source)));
            self.set(i, target, v);
        }
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let diag = g_diagonalize(self);
        if diag.units != self.rows {
            return None;
        }
        // U M V = I  =>  M^{-1} = V U
        Some(diag.v.mul(&diag.u))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}; {}x{}]", self.ring, self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "\n  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// `U · M · V = D` with `U`, `V` invertible and `D` diagonal.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub d: Matrix,
    pub u: Matrix,
    pub v: Matrix,
    /// Number of leading diagonal entries equal to 1.
    pub units: usize,
    /// Number of diagonal entries equal to p following the units.
    pub p_entries: usize,
}

impl Diagonalization {
    pub fn rank(&self) -> usize {
        self.units + self.p_entries
    }

    /// Diagonal entries in order (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<u32> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .collect()
    }
}

/// Diagonalize a matrix over ℤ/p² (or ℤ/p).
///
/// Pivots on a unit when one is left in the unreduced block, otherwise on an
/// entry of valuation one. Searches columns left to right and rows top to
/// bottom, so the result is a function of the input alone. The diagonal of
/// `D` reads `1, …, 1, p, …, p, 0, …, 0`.
pub fn g_diagonalize(m: &Matrix) -> Diagonalization {
    let ring = m.ring();
    let p = ring.prime().get();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = Matrix::identity(ring, rows);
    let mut v = Matrix::identity(ring, cols);
    let mut units = 0;
    let mut p_entries = 0;

    let find = |a: &Matrix, r: usize, want_unit: bool| -> Option<(usize, usize)> {
        for j in r..a.cols() {
            for i in r..a.rows() {
                let x = a.get(i, j);
                if x != 0 && ring.is_unit(x) == want_unit {
                    return Some((i, j));
                }
            }
        }
        None
    };

    let mut r = 0;
    while r < rows.min(cols) {
        let (pi, pj, is_unit) = match find(&a, r, true) {
            Some((i, j)) => (i, j, true),
            None => match find(&a, r, false) {
                Some((i, j)) => (i, j, false),
                None => break,
            },
        };
        a.swap_rows(r, pi);
        u.swap_rows(r, pi);
        a.swap_cols(r, pj);
        v.swap_cols(r, pj);

        // normalize the pivot to 1 or p
        let x = a.get(r, r);
        let unit_part = if is_unit { x } else { x / p };
        let inv = ring.inv(unit_part).expect("unit part is invertible");
        a.scale_row(r, inv);
        u.scale_row(r, inv);
        let pivot = a.get(r, r);
        debug_assert!(pivot == 1 || pivot == p);

        for i in r + 1..rows {
            let f = a.get(i, r) / pivot;
            if f != 0 {
                a.axpy_row(i, r, f);
                u.axpy_row(i, r, f);
            }
        }
        for j in r + 1..cols {
            let f = a.get(r, j) / pivot;
            if f != 0 {
                a.axpy_col(j, r, f);
                v.axpy_col(j, r, f);
            }
        }
        if is_unit {
            units += 1;
        } else {
            p_entries += 1;
        }
        r += 1;
    }

    Diagonalization {
        d: a,
        u,
        v,
        units,
        p_entries,
    }
}

/// log_p of the order of the submodule spanned by the columns of `m`.
pub fn span_log_order(m: &Matrix) -> usize {
    let d = g_diagonalize(m);
    match m.ring() {
        Ring::Field(_) => d.units,
        Ring::Local(_) => 2 * d.units + d.p_entries,
    }
}

/// Generators (as columns) of the kernel of `m`, a submodule of the source.
pub fn kernel_generators(m: &Matrix) -> Matrix {
    let ring = m.ring();
    let d = g_diagonalize(m);
    let p = ring.prime().get();
    let mut cols = Vec::new();
    for r in d.units..d.rank() {
        // D_rr = p: p·e_r is annihilated
        let c: Vec<u32> = d.v.column(r).into_iter().map(|x| ring.mul(x, p)).collect();
        cols.push(c);
    }
    for r in d.rank()..m.cols() {
        cols.push(d.v.column(r));
    }
    Matrix::from_columns(ring, m.cols(), &cols)
}

/// Whether `vector` lies in the span of the columns of `m`.
pub fn span_contains(m: &Matrix, vector: &[u32]) -> bool {
    let ring = m.ring();
    assert_eq!(vector.len(), m.rows(), "dimension mismatch");
    let d = g_diagonalize(m);
    let w = d.u.mul_vec(vector);
    let p = ring.prime().get();
    w.iter().enumerate().all(|(i, &x)| {
        if i < d.units {
            true
        } else if i < d.rank() {
            x % p == 0
        } else {
            x == 0
        }
    })
}

/// Whether every column of `sub` lies in the span of the columns of `m`.
pub fn span_includes(m: &Matrix, sub: &Matrix) -> bool {
    let ring = m.ring();
    assert_eq!(sub.rows(), m.rows(), "dimension mismatch");
    if sub.cols() == 0 {
        return true;
    }
    let d = g_diagonalize(m);
    let w = d.u.mul(sub);
    let p = ring.prime().get();
    (0..w.rows()).all(|i| {
        w.row(i).iter().all(|&x| {
            if i < d.units {
                true
            } else if i < d.rank() {
                x % p == 0
            } else {
                x == 0
            }
        })
    })
}
