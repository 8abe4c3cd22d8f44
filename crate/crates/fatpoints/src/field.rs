//! Arithmetic in the prime field `F_p`.
//!
//! Residues are stored as `u64` values in `0..p`. The modulus is capped at
//! `2^31 - 1` so that a product of two residues never overflows `u64`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest accepted modulus.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// A prime field `F_p`, `3 <= p <= MAX_PRIME`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Builds the field, rejecting composite or out-of-range moduli.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 {
            return Err(Error::PrimeTooSmall(p));
        }
        if p > MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces a signed integer into `0..p`.
    pub fn reduce_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
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
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    ///
    /// Panics on zero; callers pivot on nonzero entries only.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Table of powers `base^0 .. base^max`.
    pub fn power_table(&self, base: u64, max: usize) -> Vec<u64> {
        let mut t = Vec::with_capacity(max + 1);
        let mut acc = 1;
        t.push(acc);
        for _ in 0..max {
            acc = self.mul(acc, base);
            t.push(acc);
        }
        t
    }
}

/// Pascal's triangle modulo p: `table[i][j] = C(i, j) mod p` for `i <= max`.
///
/// Binomials are built by the additive recurrence, so the table is valid in
/// any characteristic (no factorial inversions).
pub fn pascal_table_mod(field: &PrimeField, max: usize) -> Vec<Vec<u64>> {
    let mut table: Vec<Vec<u64>> = Vec::with_capacity(max + 1);
    for i in 0..=max {
        let mut row = vec![0u64; i + 1];
        row[0] = 1;
        row[i] = 1;
        for j in 1..i {
            row[j] = field.add(table[i - 1][j - 1], table[i - 1][j]);
        }
        table.push(row);
    }
    table
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test, exact for all `u64` inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    // This base set decides primality for every n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
