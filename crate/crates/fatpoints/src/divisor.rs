//! Divisor and curve classes on the blow-up of projective space at general
//! points, with exact integer invariants.
//!
//! A class `dH - m1 E1 - ... - mr Er` lives on the blow-up of `P^n` at `r`
//! points. Its virtual dimension is
//! `C(d+n, n) - sum_i C(n + m_i - 1, n) - 1`, where a term with `m_i <= 0`
//! contributes nothing (non-positive multiplicities impose no conditions).
//! All binomials are computed in arbitrary-precision integers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient `C(top, k)` with the combinatorial convention:
/// zero whenever `top < k` (in particular for negative `top`).
pub fn binomial(top: i128, k: u32) -> BigInt {
    if top < k as i128 {
        return BigInt::zero();
    }
    // use the smaller symmetric index when it helps
    let kk = if (top - k as i128) < k as i128 {
        (top - k as i128) as u32
    } else {
        k
    };
    let mut acc = BigInt::one();
    for i in 0..kk as i128 {
        acc *= BigInt::from(top - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// A divisor class `dH - m1 E1 - ... - mr Er` on the blow-up of `P^n`.
///
/// Negative degrees and multiplicities are representable (they arise
/// transiently inside Cremona steps); operations that require the
/// effective form (`d >= 0`, all `m_i >= 0`) check for it explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    n: u32,
    d: i64,
    mults: Vec<i64>,
}

impl DivisorClass {
    pub fn new(n: u32, d: i64, mults: Vec<i64>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidAmbientDimension(n));
        }
        Ok(DivisorClass { n, d, mults })
    }

    /// Class with `r` copies of the same multiplicity.
    pub fn uniform(n: u32, d: i64, m: i64, r: usize) -> Result<Self> {
        Self::new(n, d, alloc::vec![m; r])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    pub fn r(&self) -> usize {
        self.mults.len()
    }

    pub fn is_effective_form(&self) -> bool {
        self.d >= 0 && self.mults.iter().all(|&m| m >= 0)
    }

    /// `C(d+n, n) - sum_i C(n + m_i - 1, n) - 1`, exactly.
    pub fn virtual_dimension(&self) -> BigInt {
        let n = self.n;
        let mut v = binomial(self.d as i128 + n as i128, n);
        for &m in &self.mults {
            // C(n+m-1, n) vanishes for m <= 0 since the top drops below n
            v -= binomial(n as i128 + m as i128 - 1, n);
        }
        v - 1
    }

    /// `max(-1, v(D))`.
    pub fn expected_dimension(&self) -> BigInt {
        let v = self.virtual_dimension();
        let minus_one = BigInt::from(-1);
        if v < minus_one {
            minus_one
        } else {
            v
        }
    }

    /// Speciality of the class given the actual dimension of its linear
    /// system: `actual_dim - v(D)`.
    pub fn speciality(&self, actual_dim: i64) -> BigInt {
        BigInt::from(actual_dim) - self.virtual_dimension()
    }

    /// Intersection number with a curve class: `d*delta - sum_i m_i e_i`.
    pub fn intersect(&self, curve: &CurveClass) -> Result<BigInt> {
        if curve.e.len() != self.mults.len() {
            return Err(Error::LengthMismatch {
                left: self.mults.len(),
                right: curve.e.len(),
            });
        }
        let mut acc = BigInt::from(self.d) * BigInt::from(curve.delta);
        for (&m, &e) in self.mults.iter().zip(&curve.e) {
            acc -= BigInt::from(m) * BigInt::from(e);
        }
        Ok(acc)
    }

    /// Top self-intersection `d^n - sum_i m_i^n`.
    pub fn self_intersection(&self) -> BigInt {
        let mut acc = BigInt::from(self.d).pow(self.n);
        for &m in &self.mults {
            acc -= BigInt::from(m).pow(self.n);
        }
        acc
    }
}

impl core::fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}H", self.d)?;
        let mut i = 0;
        while i < self.mults.len() {
            let m = self.mults[i];
            let mut j = i;
            while j + 1 < self.mults.len() && self.mults[j + 1] == m {
                j += 1;
            }
            if m != 0 {
                let sign = if m < 0 { "+" } else { "-" };
                let mag = m.unsigned_abs();
                let coeff = if mag == 1 {
                    alloc::string::String::new()
                } else {
                    alloc::format!("{mag}")
                };
                if i == j {
                    write!(f, " {sign} {coeff}E{}", i + 1)?;
                } else {
                    write!(f, " {sign} {coeff}E[{}..{}]", i + 1, j + 1)?;
                }
            }
            i = j + 1;
        }
        Ok(())
    }
}

/// Family tag for the rational curves used in speciality predictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveFamily {
    Line,
    Conic,
    RationalNormalCurve,
}

/// A rational curve class: degree `delta` and multiplicity `e_i` at each
/// blown-up point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveClass {
    delta: i64,
    e: Vec<i64>,
    family: CurveFamily,
}

impl CurveClass {
    /// The line through points `i` and `j`.
    pub fn line(r: usize, i: usize, j: usize) -> Result<Self> {
        Self::through(CurveFamily::Line, 1, r, &[i, j])
    }

    /// The conic through five points of the plane.
    pub fn conic(r: usize, through: &[usize]) -> Result<Self> {
        if through.len() != 5 {
            return Err(Error::BaseSizeMismatch {
                expected: 5,
                got: through.len(),
            });
        }
        Self::through(CurveFamily::Conic, 2, r, through)
    }

    /// The degree-`n` rational normal curve of `P^n` through `n+3` points.
    pub fn rational_normal_curve(n: u32, r: usize, through: &[usize]) -> Result<Self> {
        let want = n as usize + 3;
        if through.len() != want {
            return Err(Error::BaseSizeMismatch {
                expected: want,
                got: through.len(),
            });
        }
        if r < want {
            return Err(Error::IndexOutOfRange {
                index: want - 1,
                r,
            });
        }
        Self::through(CurveFamily::RationalNormalCurve, n as i64, r, through)
    }

    fn through(family: CurveFamily, delta: i64, r: usize, idxs: &[usize]) -> Result<Self> {
        let mut e = alloc::vec![0i64; r];
        for &i in idxs {
            if i >= r {
                return Err(Error::IndexOutOfRange { index: i, r });
            }
            if e[i] != 0 {
                return Err(Error::DuplicateIndex(i));
            }
            e[i] = 1;
        }
        Ok(CurveClass { delta, e, family })
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn multiplicities(&self) -> &[i64] {
        &self.e
    }

    pub fn family(&self) -> CurveFamily {
        self.family
    }

    /// Indices of the points the curve passes through, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.e
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// The classification row a double-point system `dH - 2(E1+...+Er)` falls
/// into, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AhFamily {
    /// `d = 2`, `2 <= r <= n`.
    Quadrics,
    /// `(d, n, r) = (3, 4, 7)`.
    CubicP4,
    /// `(d, n, r) = (4, 2, 5)`.
    QuarticP2,
    /// `(d, n, r) = (4, 3, 9)`.
    QuarticP3,
    /// `(d, n, r) = (4, 4, 14)`.
    QuarticP4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AhCase {
    SpecialListed(AhFamily),
    NotListed,
}

/// Looks up a double-point system `dH - 2(E1+...+Er)` on `P^n` in the
/// catalog of the special ones.
pub fn classify_ah(n: u32, d: i64, r: usize) -> AhCase {
    let case = match (d, n, r) {
        (2, n, r) if n >= 2 && 2 <= r && r <= n as usize => AhFamily::Quadrics,
        (3, 4, 7) => AhFamily::CubicP4,
        (4, 2, 5) => AhFamily::QuarticP2,
        (4, 3, 9) => AhFamily::QuarticP3,
        (4, 4, 14) => AhFamily::QuarticP4,
        _ => return AhCase::NotListed,
    };
    AhCase::SpecialListed(case)
}

/// Dimension data of the `(r-1)`-secant variety of the `d`-uple embedding of
/// `P^n`, derived from the section count `h0` of the associated double-point
/// system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecantDimension {
    /// `N - h0`, where `N = C(n+d, n) - 1` is the dimension of the target
    /// projective space.
    pub dimension: BigInt,
    /// `min(N, r(n+1) - 1)`, the dimension a parameter count predicts.
    pub expected: BigInt,
    /// `expected - dimension` (non-negative for genuine inputs).
    pub defect: BigInt,
}

/// Computes the secant-variety dimension record for `r` double points.
///
/// `h0` must be the section count of `dH - 2(E1 + ... + Er)` on `P^n`.
pub fn secant_dimension(n: u32, d: i64, r: usize, h0: u64) -> SecantDimension {
    let big_n = binomial(d as i128 + n as i128, n) - 1;
    let dimension = &big_n - BigInt::from(h0);
    let param = BigInt::from(r) * BigInt::from(n as u64 + 1) - 1;
    let expected = if param < big_n { param } else { big_n };
    let defect = &expected - &dimension;
    SecantDimension {
        dimension,
        expected,
        defect,
    }
}

/// True when the actual dimension strictly exceeds the expected one, i.e.
/// the class is special.
pub fn is_special(actual_dim: i64, d: &DivisorClass) -> bool {
    BigInt::from(actual_dim) > d.expected_dimension()
}
