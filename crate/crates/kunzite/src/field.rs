//! Arithmetic in the prime field GF(p) and Frobenius exponents q = p^e.
//!
//! Elements are plain `u64` values kept in `[0, p)`; the field itself is a
//! small copyable handle. p is restricted to machine-word primes below
//! 2^31 so that products fit in `u128` without reduction tricks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_CHARACTERISTIC: u64 = (1 << 31) - 1;

/// The coefficient field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_CHARACTERISTIC || !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn normalize(&self, a: i64) -> u64 {
        let r = a.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    /// Square-and-multiply exponentiation; `0^0 = 1`.
    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a % self.p == 0 {
            return Err(Error::DivisionByZero { p: self.p });
        }
        // Fermat: a^(p-2) since p is prime.
        Ok(self.pow(a, self.p - 2))
    }
}

/// A power q = p^e of the field characteristic, overflow-checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobeniusExponent {
    e: u32,
    q: u64,
}

impl FrobeniusExponent {
    pub fn new(field: PrimeField, e: u32) -> Result<Self> {
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q
                .checked_mul(field.characteristic())
                .ok_or(Error::ExponentOverflow)?;
            if q > u32::MAX as u64 {
                return Err(Error::ExponentOverflow);
            }
        }
        Ok(FrobeniusExponent { e, q })
    }

    /// Validates that `q` is a power of the characteristic.
    pub fn from_q(field: PrimeField, q: u64) -> Result<Self> {
        let p = field.characteristic();
        let mut cur = 1u64;
        let mut e = 0u32;
        while cur < q {
            cur = cur.checked_mul(p).ok_or(Error::ExponentOverflow)?;
            e += 1;
        }
        if cur != q || q > u32::MAX as u64 {
            return Err(Error::InvalidFrobeniusExponent { q, p });
        }
        Ok(FrobeniusExponent { e, q })
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}
