//! Speciality predicted by rational curves of negative intersection.
//!
//! A smooth rational curve `C` with normal bundle a direct sum of copies of
//! `O(-1)` and `D . C = -t <= -2` forces `h1(X, D) > 0`; the induced
//! speciality contribution is `C(t + n - 2, t - 2)`. Summing the
//! contribution over a catalog of candidate curves (lines through point
//! pairs, the plane conic through five points, rational normal curves
//! through `n+3` points) yields a heuristic lower-bound prediction. It is
//! not a classification: overlap effects between curves and any further
//! cohomology are absorbed by the `residual` field when a measured value is
//! available, and the residual may have either sign.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::divisor::{binomial, CurveClass, DivisorClass};
use crate::error::{Error, Result};

/// Speciality contribution of a single curve with `D . C = -t`:
/// `C(t + n - 2, t - 2)` for `t >= 2`, zero below the threshold.
pub fn correction_term(t: i64, n: u32) -> BigInt {
    if t < 2 {
        return BigInt::zero();
    }
    // C(t+n-2, t-2) = C(t+n-2, n): the symmetric form stays cheap for large t
    binomial(t as i128 + n as i128 - 2, n)
}

/// One Kunneth summand of the correction term:
/// `(t - r - 1) * C(n - 2 + r, r)` for `r < t - 1`, zero otherwise.
pub fn kunneth_h1(r_idx: u32, t: i64, n: u32) -> BigInt {
    let r = r_idx as i64;
    if r >= t - 1 {
        return BigInt::zero();
    }
    BigInt::from(t - r - 1) * binomial(n as i128 - 2 + r as i128, r_idx)
}

/// All catalog curves for `r` points of `P^n`: lines through pairs, conics
/// through 5-subsets (plane only), rational normal curves through
/// `(n+3)`-subsets (`n >= 3` only; in the plane they coincide with conics).
///
/// Output order is deterministic: lines, then conics or rational normal
/// curves, each family in ascending lexicographic order of its index set.
pub fn curve_catalog(n: u32, r: usize) -> Vec<CurveClass> {
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            out.push(CurveClass::line(r, i, j).expect("valid line indices"));
        }
    }
    if n == 2 && r >= 5 {
        for subset in k_subsets(r, 5) {
            out.push(CurveClass::conic(r, &subset).expect("valid conic indices"));
        }
    }
    if n >= 3 && r >= n as usize + 3 {
        for subset in k_subsets(r, n as usize + 3) {
            out.push(
                CurveClass::rational_normal_curve(n, r, &subset)
                    .expect("valid rational normal curve indices"),
            );
        }
    }
    out
}

/// All `k`-element subsets of `0..r` in ascending lexicographic order.
fn k_subsets(r: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > r {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // advance to the next subset
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + r - k {
                break;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// One catalog curve meeting the class negatively enough to contribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveContribution {
    pub curve: CurveClass,
    /// `t = -(D . C) >= 2`.
    pub t: i64,
    pub correction: BigInt,
}

/// The total predicted speciality and its breakdown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialityPrediction {
    pub contributions: Vec<CurveContribution>,
    pub total: BigInt,
    /// `actual - total` when a measured speciality was supplied; can be
    /// negative, zero, or positive.
    pub residual: Option<BigInt>,
}

/// Sums the correction terms of every catalog curve with `D . C <= -2`.
pub fn predicted_speciality(
    class: &DivisorClass,
    actual: Option<i64>,
) -> Result<SpecialityPrediction> {
    if !class.is_effective_form() {
        return Err(Error::NotEffectiveForm);
    }
    let n = class.n();
    let mut contributions = Vec::new();
    let mut total = BigInt::zero();
    for curve in curve_catalog(n, class.r()) {
        let t_big = -class.intersect(&curve)?;
        if t_big < BigInt::from(2) {
            continue;
        }
        let t = i64::try_from(t_big).map_err(|_| Error::ValueOutOfRange)?;
        let correction = correction_term(t, n);
        total += &correction;
        contributions.push(CurveContribution {
            curve,
            t,
            correction,
        });
    }
    let residual = actual.map(|a| BigInt::from(a) - &total);
    Ok(SpecialityPrediction {
        contributions,
        total,
        residual,
    })
}
