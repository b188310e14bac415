use std::fmt;

use serde::{Deserialize, Serialize};

use super::CoeffError;

/// A prime number below 2^16, so that residues mod p² fit in a `u32` and
/// products of two residues fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub const TWO: Prime = Prime(2);
    pub const THREE: Prime = Prime(3);

    pub fn new(p: u32) -> Result<Self, CoeffError> {
        if p >= 1 << 16 || !is_prime(p) {
            return Err(CoeffError::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for Prime {
    type Error = CoeffError;

    fn try_from(value: u32) -> Result<Self, Self::Error> {
        Prime::new(value)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The two coefficient rings: the prime field 𝔽 = ℤ/p and the local ring
/// 𝔾 = ℤ/p².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Field(Prime),
    Local(Prime),
}

impl Ring {
    pub fn field(p: Prime) -> Self {
        Ring::Field(p)
    }

    pub fn local(p: Prime) -> Self {
        Ring::Local(p)
    }

    #[inline]
    pub fn prime(self) -> Prime {
        match self {
            Ring::Field(p) | Ring::Local(p) => p,
        }
    }

    /// Exponent `k` with modulus `p^k`.
    #[inline]
    pub fn length(self) -> u32 {
        match self {
            Ring::Field(_) => 1,
            Ring::Local(_) => 2,
        }
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        let p = self.prime().get();
        match self {
            Ring::Field(_) => p,
            Ring::Local(_) => p * p,
        }
    }

    pub fn is_field(self) -> bool {
        matches!(self, Ring::Field(_))
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.modulus() as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let q = self.modulus();
        let s = a + b;
        if s >= q {
            s - q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.modulus() - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.modulus() - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.modulus() as u64) as u32
    }

    /// `(-1)^k` as a residue.
    #[inline]
    pub fn sign(self, k: i64) -> u32 {
        if k.rem_euclid(2) == 0 {
            1
        } else {
            self.modulus() - 1
        }
    }

    #[inline]
    pub fn is_unit(self, a: u32) -> bool {
        !a.is_multiple_of(self.prime().get())
    }

    /// p-adic valuation of a residue; `None` for zero.
    pub fn valuation(self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let p = self.prime().get();
        let mut v = 0;
        let mut x = a;
        while x.is_multiple_of(p) {
            x /= p;
            v += 1;
        }
        Some(v)
    }

    pub fn inv(self, a: u32) -> Option<u32> {
        if !self.is_unit(a) {
            return None;
        }
        let q = self.modulus() as i64;
        let (mut r0, mut r1) = (q, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        Some(t0.rem_euclid(q) as u32)
    }

    /// Ring map 𝔾 → 𝔽 (identity on 𝔽).
    pub fn to_field(self, a: u32) -> u32 {
        a % self.prime().get()
    }

    /// Residue as a symmetric representative, for printing.
    pub fn signed(self, a: u32) -> i64 {
        let q = self.modulus() as i64;
        let a = a as i64;
        if 2 * a > q {
            a - q
        } else {
            a
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Field(p) => write!(f, "Z/{p}"),
            Ring::Local(p) => write!(f, "Z/{}", p.get() * p.get()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(65521).is_ok());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(65537).is_err());
    }

    #[test]
    fn local_ring_units() {
        let g = Ring::local(Prime::THREE);
        assert_eq!(g.modulus(), 9);
        for a in 0..9 {
            assert_eq!(g.is_unit(a), a % 3 != 0);
            if let Some(b) = g.inv(a) {
                assert_eq!(g.mul(a, b), 1);
            }
        }
        assert_eq!(g.valuation(6), Some(1));
        assert_eq!(g.valuation(0), None);
        assert_eq!(g.sign(3), 8);
    }
}
