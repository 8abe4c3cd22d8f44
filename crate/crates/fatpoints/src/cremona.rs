//! The standard Cremona involution's action on divisor classes, the induced
//! involution on monomial exponent sets, and a terminating reduction loop.
//!
//! The standard Cremona transformation of `P^n` based at `n+1` general
//! points acts on a class `dH - sum m_i E_i` by
//!
//! ```text
//! D  ->  D + k (H - E_{s_0} - ... - E_{s_n}),    k = (n-1) d - sum_{i in S} m_i.
//! ```
//!
//! For `n = 2` this is the classical quadratic transformation (new degree
//! `2d - m1 - m2 - m3`). Applying the same base set twice is the identity.
//! Section counts are preserved by each step, which the interpolation tests
//! verify on random classes.

use alloc::vec::Vec;

use crate::divisor::DivisorClass;
use crate::error::{Error, Result};

/// One step of the reduction loop.
///
/// `after` is the raw image of `before` under the transformation and may
/// carry negative multiplicities; `clamped` lists the positions that were
/// then raised to zero before the next step (a non-positive multiplicity
/// imposes no conditions, so clamping preserves the section count).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    /// The `n+1` base point indices used, ascending, as indices into
    /// `before`'s multiplicity list.
    pub base_indices: Vec<usize>,
    pub k: i64,
    pub before: DivisorClass,
    pub after: DivisorClass,
    pub clamped: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionOutcome {
    /// No further degree-decreasing step exists among the assigned points.
    Reduced,
    /// The degree went negative: the system is empty.
    Empty,
}

/// The full record of a reduction run.
///
/// Zero multiplicities are discarded (with relabeling) after every step, so
/// `final_class` mentions only points that still carry conditions. When
/// fewer than `n+1` points remain, no base set can be formed and the class
/// is reduced by convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub final_class: DivisorClass,
    pub outcome: ReductionOutcome,
}

/// Applies the standard Cremona transformation based at the `n+1` points
/// `base` to a divisor class. Returns the raw image; no clamping.
pub fn cremona_transform(class: &DivisorClass, base: &[usize]) -> Result<DivisorClass> {
    let n = class.n();
    let want = n as usize + 1;
    if base.len() != want {
        return Err(Error::BaseSizeMismatch {
            expected: want,
            got: base.len(),
        });
    }
    let r = class.r();
    let mut seen = alloc::vec![false; r];
    for &i in base {
        if i >= r {
            return Err(Error::IndexOutOfRange { index: i, r });
        }
        if seen[i] {
            return Err(Error::DuplicateIndex(i));
        }
        seen[i] = true;
    }
    let d = class.degree() as i128;
    let mut k = (n as i128 - 1) * d;
    for &i in base {
        k -= class.mults()[i] as i128;
    }
    let k = i64::try_from(k).map_err(|_| Error::Overflow)?;
    let new_d = class.degree().checked_add(k).ok_or(Error::Overflow)?;
    let mut mults = class.mults().to_vec();
    for &i in base {
        mults[i] = mults[i].checked_add(k).ok_or(Error::Overflow)?;
    }
    DivisorClass::new(n, new_d, mults)
}

/// The exponent set `T` of the degree-`d` monomials in `mults.len()`
/// variables compatible with multiplicities `mults` at the coordinate
/// points: all tuples with `0 <= a_i <= d - m_i` and `sum a_i = d`.
///
/// Tuples are listed in ascending lexicographic order. A negative `d`
/// yields the empty set.
pub fn enumerate_t(d: i64, mults: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let mut current = alloc::vec![0i64; mults.len()];
    enumerate_rec(d, d, mults, 0, &mut current, &mut out);
    out
}

fn enumerate_rec(
    d: i64,
    remaining: i64,
    mults: &[i64],
    pos: usize,
    current: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if pos == mults.len() {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    // a_pos <= d - m_pos, with d the total degree, and at most `remaining`
    let cap = (d - mults[pos]).min(remaining);
    if cap < 0 {
        return;
    }
    for a in 0..=cap {
        current[pos] = a;
        enumerate_rec(d, remaining - a, mults, pos + 1, current, out);
    }
    current[pos] = 0;
}

/// The involution on exponent tuples induced by the Cremona inversion:
/// `a_i -> d - a_i - m_i`.
///
/// Requires `a` to be a member of `enumerate_t(d, mults)`; the image lies
/// in the exponent set of degree `d + k` with multiplicities `m_i + k`.
pub fn sigma_exponents(a: &[i64], d: i64, mults: &[i64]) -> Result<Vec<i64>> {
    if a.len() != mults.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: mults.len(),
        });
    }
    let sum: i64 = a.iter().sum();
    let in_set = sum == d && a.iter().zip(mults).all(|(&ai, &mi)| 0 <= ai && ai <= d - mi);
    if !in_set {
        return Err(Error::NotInExponentSet);
    }
    Ok(a.iter().zip(mults).map(|(&ai, &mi)| d - ai - mi).collect())
}

/// The shift `k = (w - 2) d - sum(mults)` for a `w`-variable exponent set,
/// i.e. `(n-1) d - sum m_i` with `w = n + 1`.
pub fn exponent_shift(d: i64, mults: &[i64]) -> i64 {
    (mults.len() as i64 - 2) * d - mults.iter().sum::<i64>()
}

/// Reduces an effective-form class by repeated Cremona transformations.
///
/// Each round: zero multiplicities are discarded; if fewer than `n+1`
/// points remain the class is reduced; otherwise the `n+1` largest
/// multiplicities (ties broken by lower index) form the base set and the
/// step is applied only when its `k` is negative, so the degree strictly
/// decreases and the loop terminates. Negative multiplicities produced by a
/// step are clamped to zero and recorded. A negative degree means the
/// system is empty.
pub fn cremona_reduce(class: &DivisorClass) -> Result<ReductionTrace> {
    if !class.is_effective_form() {
        return Err(Error::NotEffectiveForm);
    }
    let n = class.n();
    let base_size = n as usize + 1;

    let mut working = drop_zeros(class)?;
    let mut steps = Vec::new();

    loop {
        if working.degree() < 0 {
            return Ok(ReductionTrace {
                steps,
                final_class: working,
                outcome: ReductionOutcome::Empty,
            });
        }
        if working.r() < base_size {
            return Ok(ReductionTrace {
                steps,
                final_class: working,
                outcome: ReductionOutcome::Reduced,
            });
        }
        let base = largest_indices(working.mults(), base_size);
        let k = (n as i64 - 1) * working.degree() - base.iter().map(|&i| working.mults()[i]).sum::<i64>();
        if k >= 0 {
            return Ok(ReductionTrace {
                steps,
                final_class: working,
                outcome: ReductionOutcome::Reduced,
            });
        }
        let after = cremona_transform(&working, &base)?;
        let clamped: Vec<usize> = after
            .mults()
            .iter()
            .enumerate()
            .filter(|(_, &m)| m < 0)
            .map(|(i, _)| i)
            .collect();
        let next_mults: Vec<i64> = after.mults().iter().map(|&m| m.max(0)).collect();
        let next = DivisorClass::new(n, after.degree(), next_mults)?;
        steps.push(ReductionStep {
            base_indices: base,
            k,
            before: working,
            after,
            clamped,
        });
        working = drop_zeros(&next)?;
    }
}

fn drop_zeros(class: &DivisorClass) -> Result<DivisorClass> {
    let mults: Vec<i64> = class.mults().iter().copied().filter(|&m| m != 0).collect();
    DivisorClass::new(class.n(), class.degree(), mults)
}

/// Indices of the `count` largest values, ties broken by lower index,
/// returned in ascending order.
fn largest_indices(values: &[i64], count: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].cmp(&values[a]).then(a.cmp(&b)));
    let mut chosen: Vec<usize> = order[..count].to_vec();
    chosen.sort_unstable();
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn class(n: u32, d: i64, mults: &[i64]) -> DivisorClass {
        DivisorClass::new(n, d, mults.to_vec()).unwrap()
    }

    #[test]
    fn transform_first_chain_step() {
        let d = class(4, 3, &[2; 7]);
        let out = cremona_transform(&d, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(out, class(4, 2, &[1, 1, 1, 1, 1, 2, 2]));
    }

    #[test]
    fn transform_second_chain_step() {
        let d = class(4, 2, &[1, 1, 1, 1, 1, 2, 2]);
        let out = cremona_transform(&d, &[2, 3, 4, 5, 6]).unwrap();
        assert_eq!(out, class(4, 1, &[1, 1, 0, 0, 0, 1, 1]));
    }

    #[test]
    fn transform_fixed_point() {
        let d = class(2, 3, &[1, 1, 1]);
        let out = cremona_transform(&d, &[0, 1, 2]).unwrap();
        assert_eq!(out, d);
    }

    #[test]
    fn transform_is_involution_on_samples() {
        let samples = [
            class(2, 5, &[3, 1, 0, 2]),
            class(3, 4, &[2, 2, 1, 1, 3]),
            class(4, 7, &[2, 0, 1, 5, 3, 2, 2]),
        ];
        for d in samples {
            let base: Vec<usize> = (0..d.n() as usize + 1).collect();
            let once = cremona_transform(&d, &base).unwrap();
            let twice = cremona_transform(&once, &base).unwrap();
            assert_eq!(twice, d);
        }
    }

    #[test]
    fn transform_validates_base() {
        let d = class(4, 3, &[2; 7]);
        assert!(matches!(
            cremona_transform(&d, &[0, 1, 2]),
            Err(Error::BaseSizeMismatch { .. })
        ));
        assert!(matches!(
            cremona_transform(&d, &[0, 1, 2, 3, 3]),
            Err(Error::DuplicateIndex(3))
        ));
        assert!(matches!(
            cremona_transform(&d, &[0, 1, 2, 3, 9]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    /// Brute-force oracle: filter the full degree-d exponent grid.
    fn enumerate_oracle(d: i64, mults: &[i64]) -> Vec<Vec<i64>> {
        fn grid(w: usize, d: i64) -> Vec<Vec<i64>> {
            if w == 0 {
                return if d == 0 { vec![vec![]] } else { vec![] };
            }
            let mut out = Vec::new();
            for a in 0..=d {
                for mut tail in grid(w - 1, d - a) {
                    let mut t = vec![a];
                    t.append(&mut tail);
                    out.push(t);
                }
            }
            out
        }
        if d < 0 {
            return vec![];
        }
        grid(mults.len(), d)
            .into_iter()
            .filter(|a| a.iter().zip(mults).all(|(&ai, &mi)| ai <= d - mi))
            .collect()
    }

    #[test]
    fn exponent_set_examples() {
        // frozen from the oracle: 15 degree-2 monomials minus the two with
        // a0 = 2 or a1 = 2
        let t = enumerate_t(2, &[1, 1, 0, 0, 0]);
        assert_eq!(t.len(), 13);
        let mut oracle = enumerate_oracle(2, &[1, 1, 0, 0, 0]);
        oracle.sort();
        assert_eq!(t, oracle);

        assert_eq!(enumerate_t(0, &[0, 0, 0]), vec![vec![0, 0, 0]]);

        // a multiplicity above the degree makes the bound on its index
        // negative, so no exponent tuple exists at all
        let t = enumerate_t(1, &[2, 0, 0, 0, 0]);
        assert!(t.is_empty());
        assert_eq!(enumerate_oracle(1, &[2, 0, 0, 0, 0]), t);
    }

    #[test]
    fn sigma_example() {
        let d = 2;
        let m = [1, 1, 0, 0, 0];
        let img = sigma_exponents(&[1, 1, 0, 0, 0], d, &m).unwrap();
        assert_eq!(img, vec![0, 0, 2, 2, 2]);
        let k = exponent_shift(d, &m);
        assert_eq!(k, 4);
        assert_eq!(img.iter().sum::<i64>(), d + k);
    }

    #[test]
    fn sigma_rejects_non_members() {
        assert!(matches!(
            sigma_exponents(&[2, 0, 0, 0, 0], 2, &[1, 1, 0, 0, 0]),
            Err(Error::NotInExponentSet)
        ));
    }

    #[test]
    fn sigma_is_involution_and_bijection_small_degrees() {
        // exhaustive over d <= 6 and a fixed family of multiplicity vectors
        let mult_vectors: Vec<Vec<i64>> = vec![
            vec![0, 0, 0, 0, 0],
            vec![1, 1, 0, 0, 0],
            vec![2, 1, 1, 0, 0],
            vec![2, 2, 2, 1, 1],
            vec![1, 1, 1, 1],
            vec![2, 0, 1],
        ];
        for m in &mult_vectors {
            for d in 0..=6i64 {
                let t = enumerate_t(d, m);
                let k = exponent_shift(d, m);
                let shifted_m: Vec<i64> = m.iter().map(|&mi| mi + k).collect();
                let t_shifted = enumerate_t(d + k, &shifted_m);
                assert_eq!(t.len(), t_shifted.len(), "d={d}, m={m:?}");
                let mut images: Vec<Vec<i64>> = t
                    .iter()
                    .map(|a| sigma_exponents(a, d, m).unwrap())
                    .collect();
                for (a, img) in t.iter().zip(&images) {
                    let back = sigma_exponents(img, d + k, &shifted_m).unwrap();
                    assert_eq!(&back, a);
                }
                images.sort();
                assert_eq!(images, t_shifted);
            }
        }
    }

    #[test]
    fn reduce_chain_two_steps() {
        let d = class(4, 3, &[2; 7]);
        let trace = cremona_reduce(&d).unwrap();
        assert_eq!(trace.outcome, ReductionOutcome::Reduced);
        assert_eq!(trace.steps.len(), 2);
        assert_eq!(trace.steps[0].k, -1);
        assert_eq!(trace.steps[0].after, class(4, 2, &[1, 1, 1, 1, 1, 2, 2]));
        assert_eq!(trace.steps[1].k, -1);
        assert_eq!(trace.steps[1].before, class(4, 2, &[1, 1, 1, 1, 1, 2, 2]));
        assert_eq!(trace.final_class, class(4, 1, &[1, 1, 1, 1]));
        assert!(trace.steps.iter().all(|s| s.clamped.is_empty()));
    }

    #[test]
    fn reduce_stops_when_too_few_points_remain() {
        // the double conic: one step lands on 2H - 2E1 - 2E2, and with only
        // two points left no quadratic transformation can be based
        let d = class(2, 4, &[2; 5]);
        let trace = cremona_reduce(&d).unwrap();
        assert_eq!(trace.outcome, ReductionOutcome::Reduced);
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.final_class, class(2, 2, &[2, 2]));
    }

    #[test]
    fn reduce_zero_steps_when_first_shift_nonnegative() {
        let d = class(3, 2, &[1; 9]);
        let trace = cremona_reduce(&d).unwrap();
        assert_eq!(trace.outcome, ReductionOutcome::Reduced);
        assert!(trace.steps.is_empty());
        assert_eq!(trace.final_class, d);
    }

    #[test]
    fn reduce_detects_empty_system() {
        // lines of P^2 through three general points
        let d = class(2, 1, &[1, 1, 1]);
        let trace = cremona_reduce(&d).unwrap();
        assert_eq!(trace.outcome, ReductionOutcome::Empty);
        assert!(trace.final_class.degree() < 0);
    }

    #[test]
    fn reduce_keeps_class_with_too_few_positive_multiplicities() {
        // only one point carries a condition: no quadratic transformation
        // can be based, even though the system is plainly empty
        let d = class(2, 1, &[5, 0, 0]);
        let trace = cremona_reduce(&d).unwrap();
        assert_eq!(trace.outcome, ReductionOutcome::Reduced);
        assert_eq!(trace.final_class, class(2, 1, &[5]));
    }

    #[test]
    fn reduce_records_clamps() {
        let d = class(2, 2, &[2, 2, 1]);
        let trace = cremona_reduce(&d).unwrap();
        // k = 2 - 5 = -3: degree -1, so the system is empty
        assert_eq!(trace.outcome, ReductionOutcome::Empty);
        assert_eq!(trace.steps.len(), 1);
        assert!(!trace.steps[0].clamped.is_empty());
    }

    #[test]
    fn reduce_rejects_non_effective() {
        let d = class(2, -1, &[1, 1, 1]);
        assert_eq!(cremona_reduce(&d), Err(Error::NotEffectiveForm));
        let d = class(2, 3, &[-1, 1, 1]);
        assert_eq!(cremona_reduce(&d), Err(Error::NotEffectiveForm));
    }

    #[test]
    fn reduce_input_with_too_few_points_is_unchanged() {
        let d = class(4, 5, &[3, 2]);
        let trace = cremona_reduce(&d).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(trace.final_class, d);
    }

    #[test]
    fn reduce_degree_strictly_decreases() {
        let samples = [
            class(2, 6, &[4, 3, 3, 2, 1]),
            class(3, 5, &[3, 3, 3, 3, 2, 2]),
            class(4, 6, &[4, 4, 3, 3, 3, 2, 2, 1]),
        ];
        for d in samples {
            let trace = cremona_reduce(&d).unwrap();
            for s in &trace.steps {
                assert!(s.after.degree() < s.before.degree());
                assert!(s.k < 0);
                assert_eq!(s.after.degree(), s.before.degree() + s.k);
            }
        }
    }
}
