//! Exact section counts of a divisor class by interpolation at points over a
//! prime field.
//!
//! For a class `dH - sum m_i E_i` with points `q_1, ..., q_r` of `P^n(F_p)`,
//! the degree-`d` forms vanishing to order `m_i` at `q_i` are the kernel of
//! the fat-point conditions matrix. Each point contributes one row per
//! multi-index `alpha` with `|alpha| < m_i` in the affine chart where the
//! point's pivot coordinate is 1; the row entries are Hasse-derivative
//! (Taylor) coefficients, so the conditions are correct in any
//! characteristic, including `m > p`.
//!
//! # Certification semantics
//!
//! Specializing to random points in finite characteristic can only raise
//! `h0` above its generic characteristic-zero value, never lower it. A trial
//! that attains the lower bound `max(v+1, 0)` therefore *certifies* the
//! class nonspecial; a persistent excess across trials is *evidence* of
//! speciality, not a proof. Every report carries this statement.

use alloc::string::String;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::divisor::DivisorClass;
use crate::error::{Error, Result};
use crate::field::{pascal_table_mod, PrimeField};
use crate::linalg::MatrixFp;
use crate::poly::{basis_size, monomial_basis, monomials_up_to, sparse_from_dense, sparse_pow};
use crate::Exec;

/// Hard cap on `rows * cols` of a conditions matrix.
pub const MATRIX_ENTRY_CAP: usize = 50_000_000;

/// The one-sided certificate statement embedded in every report.
pub const CERTIFICATE_SEMANTICS: &str =
    "h0 at random points over F_p upper-bounds the generic characteristic-zero h0; \
     h0 = max(v+1, 0) in some trial certifies the class nonspecial, while an excess \
     in every trial is evidence of speciality, not a certificate";

/// `r` points of `P^n(F_p)`, pairwise distinct, each normalized so its
/// first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    field: PrimeField,
    n: u32,
    coords: Vec<Vec<u64>>,
    seed: Option<u64>,
}

impl PointSet {
    /// Draws `r` distinct random points, reproducibly from `seed`.
    ///
    /// Coordinates are uniform residues; zero vectors and projective
    /// duplicates are rejected and redrawn.
    pub fn random(field: PrimeField, n: u32, r: usize, seed: u64) -> Result<Self> {
        let p = field.modulus() as u128;
        let space: u128 = (0..=n).map(|i| p.pow(i)).sum();
        if r as u128 > space {
            return Err(Error::TooManyPoints { requested: r });
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut coords: Vec<Vec<u64>> = Vec::with_capacity(r);
        let mut attempts = 0usize;
        let max_attempts = 1000 * (r + 1);
        while coords.len() < r {
            attempts += 1;
            if attempts > max_attempts {
                return Err(Error::SamplingFailed {
                    wanted: r,
                    got: coords.len(),
                });
            }
            let raw: Vec<u64> = (0..=n).map(|_| rng.next_u64() % field.modulus()).collect();
            let Some(q) = normalize(&field, &raw) else {
                continue;
            };
            if coords.iter().any(|c| c == &q) {
                continue;
            }
            coords.push(q);
        }
        Ok(PointSet {
            field,
            n,
            coords,
            seed: Some(seed),
        })
    }

    /// Builds a point set from user-supplied integer rows, reduced mod p.
    pub fn from_rows(field: PrimeField, n: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let mut coords = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != n as usize + 1 {
                return Err(Error::AmbientMismatch {
                    point_len: row.len(),
                    expected: n as usize + 1,
                });
            }
            let raw: Vec<u64> = row.iter().map(|&x| field.reduce_i64(x)).collect();
            let q = normalize(&field, &raw).ok_or(Error::ZeroPoint)?;
            coords.push(q);
        }
        for i in 0..coords.len() {
            for j in i + 1..coords.len() {
                if coords[i] == coords[j] {
                    return Err(Error::DuplicatePoint {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(PointSet {
            field,
            n,
            coords,
            seed: None,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn points(&self) -> &[Vec<u64>] {
        &self.coords
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }
}

fn normalize(field: &PrimeField, raw: &[u64]) -> Option<Vec<u64>> {
    let reduced: Vec<u64> = raw.iter().map(|&x| x % field.modulus()).collect();
    let pivot = reduced.iter().position(|&x| x != 0)?;
    let inv = field.inv(reduced[pivot]);
    Some(reduced.iter().map(|&x| field.mul(x, inv)).collect())
}

/// Certification status of a system report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertStatus {
    /// Some trial attained `h0 = max(v+1, 0)`.
    CertifiedNonspecial,
    /// Every trial exceeded the bound; the reported `h0` is the minimum
    /// observed.
    SpecialEvidence,
    /// Trials disagreed in a way the one-sided bound forbids; indicates
    /// misuse (should be unreachable).
    Inconclusive,
}

/// The full verdict for one linear system at one or more point sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemReport {
    /// Number of degree-`d` monomials (matrix columns).
    pub monomial_count: usize,
    /// Rank of the conditions matrix.
    pub rank: usize,
    /// `monomial_count - rank`.
    pub h0: usize,
    /// Virtual dimension of the class.
    pub v: i64,
    /// `max(-1, v)`.
    pub e: i64,
    /// `h0 - 1`.
    pub dim: i64,
    /// `dim - v`.
    pub speciality: i64,
    pub status: CertStatus,
    /// Modulus the reported numbers were computed at.
    pub p: u64,
    /// Seed of the point set (absent for user-supplied points).
    pub seed: Option<u64>,
    /// Number of trials this report aggregates.
    pub trials: u32,
    /// One-sided certificate statement.
    pub semantics: &'static str,
}

/// Aggregated result of [`check_speciality`]: the headline report plus the
/// individual runs it summarizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialityCheck {
    pub aggregate: SystemReport,
    pub runs: Vec<SystemReport>,
}

/// Condition rows of one fat point in the chart of its first nonzero
/// coordinate: one row per multi-index of order `< m`, entries indexed by
/// `monomial_basis(n+1, d)`.
pub fn condition_rows(
    q: &[u64],
    m: i64,
    n: u32,
    d: u32,
    field: &PrimeField,
) -> Result<Vec<Vec<u64>>> {
    let chart = q
        .iter()
        .position(|&x| x % field.modulus() != 0)
        .ok_or(Error::ZeroPoint)?;
    condition_rows_in_chart(q, m, n, d, field, chart)
}

/// Same as [`condition_rows`] with an explicit dehomogenization chart.
///
/// The chart coordinate must be nonzero at the point. The row span, and
/// hence every rank computed from it, does not depend on the chart; the
/// individual rows do.
pub fn condition_rows_in_chart(
    q: &[u64],
    m: i64,
    n: u32,
    d: u32,
    field: &PrimeField,
    chart: usize,
) -> Result<Vec<Vec<u64>>> {
    if m < 1 {
        return Err(Error::InvalidMultiplicity(m));
    }
    if q.len() != n as usize + 1 {
        return Err(Error::AmbientMismatch {
            point_len: q.len(),
            expected: n as usize + 1,
        });
    }
    if chart > n as usize || q[chart] % field.modulus() == 0 {
        return Err(Error::NonInvertibleChart { index: chart });
    }
    // scale so the chart coordinate is 1
    let inv = field.inv(q[chart] % field.modulus());
    let q: Vec<u64> = q
        .iter()
        .map(|&x| field.mul(x % field.modulus(), inv))
        .collect();

    let basis = monomial_basis(n as usize + 1, d);
    let pascal = pascal_table_mod(field, d as usize);
    let powers: Vec<Vec<u64>> = q
        .iter()
        .map(|&x| field.power_table(x, d as usize))
        .collect();
    // chart variables in ascending coordinate order, pivot excluded; the
    // pivot coordinate contributes the factor 1^(beta_pivot) = 1
    let chart_vars: Vec<usize> = (0..=n as usize).filter(|&j| j != chart).collect();
    let alphas = monomials_up_to(n as usize, (m - 1) as u32);

    let mut rows = Vec::with_capacity(alphas.len());
    for alpha in &alphas {
        let mut row = Vec::with_capacity(basis.len());
        for beta in &basis {
            let mut entry = 1u64;
            for (&ai, &j) in alpha.iter().zip(&chart_vars) {
                let bj = beta[j];
                if ai > bj {
                    entry = 0;
                    break;
                }
                // Hasse derivative: C(beta_j, alpha_j) * q_j^(beta_j - alpha_j)
                entry = field.mul(entry, pascal[bj as usize][ai as usize]);
                entry = field.mul(entry, powers[j][(bj - ai) as usize]);
            }
            row.push(entry);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Builds the fat-point conditions matrix of `class` at `pts`.
pub fn conditions_matrix(class: &DivisorClass, pts: &PointSet) -> Result<MatrixFp> {
    if !class.is_effective_form() {
        return Err(Error::NotEffectiveForm);
    }
    if pts.len() != class.r() {
        return Err(Error::LengthMismatch {
            left: pts.len(),
            right: class.r(),
        });
    }
    if pts.n() != class.n() {
        return Err(Error::AmbientMismatch {
            point_len: pts.n() as usize + 1,
            expected: class.n() as usize + 1,
        });
    }
    let n = class.n();
    let d = class.degree() as u32;
    let field = pts.field();
    let cols = basis_size(n as usize + 1, d).ok_or(Error::MatrixTooLarge {
        rows: 0,
        cols: usize::MAX,
    })?;
    let mut row_count = 0usize;
    for &m in class.mults() {
        let c = count_conditions(n, m).ok_or(Error::MatrixTooLarge {
            rows: usize::MAX,
            cols,
        })?;
        row_count = row_count.checked_add(c).ok_or(Error::MatrixTooLarge {
            rows: usize::MAX,
            cols,
        })?;
    }
    if row_count.saturating_mul(cols) > MATRIX_ENTRY_CAP {
        return Err(Error::MatrixTooLarge {
            rows: row_count,
            cols,
        });
    }
    let mut rows = Vec::with_capacity(row_count);
    for (q, &m) in pts.points().iter().zip(class.mults()) {
        if m > 0 {
            rows.extend(condition_rows(q, m, n, d, &field)?);
        }
    }
    debug_assert_eq!(rows.len(), row_count);
    if rows.is_empty() {
        return Ok(MatrixFp::zeros(field, 0, cols));
    }
    Ok(MatrixFp::from_rows(field, rows))
}

/// `C(n + m - 1, n)`: the number of conditions a point of multiplicity `m`
/// imposes (zero for `m <= 0`).
fn count_conditions(n: u32, m: i64) -> Option<usize> {
    if m <= 0 {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 1..=n as u128 {
        acc = acc.checked_mul(m as u128 - 1 + i)?;
        acc /= i;
    }
    usize::try_from(acc).ok()
}

fn single_run_status(h0: usize, v: i64) -> CertStatus {
    let bound = usize::try_from((v + 1).max(0)).unwrap_or(usize::MAX);
    if h0 == bound {
        CertStatus::CertifiedNonspecial
    } else if h0 > bound {
        CertStatus::SpecialEvidence
    } else {
        // impossible for a genuine conditions matrix
        CertStatus::Inconclusive
    }
}

/// Computes `h0` of the class at the given points and assembles the report.
pub fn h0(class: &DivisorClass, pts: &PointSet, exec: Exec) -> Result<SystemReport> {
    let mut matrix = conditions_matrix(class, pts)?;
    let cols = matrix.ncols();
    let rows = matrix.nrows();
    let ech = matrix.rref(exec);
    let h0 = cols - ech.rank;
    let v = i64::try_from(cols as i128 - rows as i128 - 1).map_err(|_| Error::ValueOutOfRange)?;
    debug_assert_eq!(
        num_bigint::BigInt::from(v),
        class.virtual_dimension(),
        "matrix shape must match the virtual dimension"
    );
    let dim = h0 as i64 - 1;
    Ok(SystemReport {
        monomial_count: cols,
        rank: ech.rank,
        h0,
        v,
        e: v.max(-1),
        dim,
        speciality: dim - v,
        status: single_run_status(h0, v),
        p: pts.field().modulus(),
        seed: pts.seed(),
        trials: 1,
        semantics: CERTIFICATE_SEMANTICS,
    })
}

/// Basis of the degree-`d` part of the fat-point ideal: `h0` coefficient
/// vectors over `monomial_basis(n+1, d)`, canonically ordered.
pub fn kernel_basis(class: &DivisorClass, pts: &PointSet, exec: Exec) -> Result<Vec<Vec<u64>>> {
    let mut matrix = conditions_matrix(class, pts)?;
    Ok(matrix.kernel_basis(exec))
}

/// Whether `q^a` lies in the span of the degree-`d` kernel of `class` at
/// `pts`, where `q` has degree `q_degree` and `a * q_degree = d`.
pub fn power_membership(
    class: &DivisorClass,
    pts: &PointSet,
    q: &[u64],
    q_degree: u32,
    a: u32,
) -> Result<bool> {
    if a == 0 || (a as i64) * (q_degree as i64) != class.degree() {
        return Err(Error::DegreeMismatch {
            have: a as i64 * q_degree as i64,
            want: class.degree(),
        });
    }
    let field = pts.field();
    let nvars = class.n() as usize + 1;
    let q_basis_len = basis_size(nvars, q_degree).ok_or(Error::ValueOutOfRange)?;
    if q.len() != q_basis_len {
        return Err(Error::LengthMismatch {
            left: q.len(),
            right: q_basis_len,
        });
    }
    let q_basis = monomial_basis(nvars, q_degree);
    let sparse = sparse_from_dense(&q_basis, q);
    let power = sparse_pow(&field, &sparse, a);
    let target = crate::poly::dense_from_sparse(&field, nvars, class.degree() as u32, &power);

    let kernel = kernel_basis(class, pts, Exec::Sequential)?;
    if kernel.is_empty() {
        return Ok(target.iter().all(|&c| c == 0));
    }
    let mut span = MatrixFp::from_rows(field, kernel);
    let ech = span.rref(Exec::Sequential);
    Ok(span.row_span_contains(&ech, &target))
}

/// Runs [`h0`] over independent random point sets, one per `(prime, seed)`
/// pair, and aggregates the outcome.
///
/// The aggregate is the first run that certifies nonspeciality, or else the
/// run attaining the minimum `h0`; its `trials` field counts all runs.
pub fn check_speciality(
    class: &DivisorClass,
    seeds: &[u64],
    primes: &[u64],
    exec: Exec,
) -> Result<SpecialityCheck> {
    if seeds.is_empty() || primes.is_empty() {
        return Err(Error::EmptyTrials);
    }
    let mut runs = Vec::with_capacity(seeds.len() * primes.len());
    for &p in primes {
        let field = PrimeField::new(p)?;
        for &seed in seeds {
            let pts = PointSet::random(field, class.n(), class.r(), seed)?;
            runs.push(h0(class, &pts, exec)?);
        }
    }
    let bound = usize::try_from((runs[0].v + 1).max(0)).unwrap_or(usize::MAX);
    let mut aggregate = if let Some(win) = runs.iter().find(|r| r.h0 == bound) {
        win.clone()
    } else {
        runs.iter()
            .min_by_key(|r| r.h0)
            .expect("at least one run")
            .clone()
    };
    if runs.iter().any(|r| r.h0 < bound) {
        aggregate.status = CertStatus::Inconclusive;
    }
    aggregate.trials = runs.len() as u32;
    Ok(SpecialityCheck { aggregate, runs })
}

/// Renders a point as `(a : b : ... : c)`.
pub fn format_point(q: &[u64]) -> String {
    let mut s = String::from("(");
    for (i, x) in q.iter().enumerate() {
        if i > 0 {
            s.push_str(" : ");
        }
        s.push_str(&alloc::format!("{x}"));
    }
    s.push(')');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::eval;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn class(n: u32, d: i64, mults: &[i64]) -> DivisorClass {
        DivisorClass::new(n, d, mults.to_vec()).unwrap()
    }

    #[test]
    fn random_points_are_normalized_distinct_and_reproducible() {
        let pts = PointSet::random(f101(), 3, 20, 42).unwrap();
        assert_eq!(pts.len(), 20);
        for q in pts.points() {
            let pivot = q.iter().position(|&x| x != 0).unwrap();
            assert_eq!(q[pivot], 1);
        }
        for i in 0..20 {
            for j in i + 1..20 {
                assert_ne!(pts.points()[i], pts.points()[j]);
            }
        }
        let again = PointSet::random(f101(), 3, 20, 42).unwrap();
        assert_eq!(pts, again);
        let other = PointSet::random(f101(), 3, 20, 43).unwrap();
        assert_ne!(pts, other);
    }

    #[test]
    fn too_many_points_rejected() {
        let f = PrimeField::new(3).unwrap();
        // P^1(F_3) has 4 points
        assert!(PointSet::random(f, 1, 4, 0).is_ok());
        assert_eq!(
            PointSet::random(f, 1, 5, 0),
            Err(Error::TooManyPoints { requested: 5 })
        );
    }

    #[test]
    fn user_rows_validate() {
        let f = f101();
        let rows = vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]];
        let pts = PointSet::from_rows(f, 3, &rows).unwrap();
        assert_eq!(pts.seed(), None);
        // scalar multiples coincide projectively
        let rows = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8]];
        assert!(matches!(
            PointSet::from_rows(f, 3, &rows),
            Err(Error::DuplicatePoint { .. })
        ));
        let rows = vec![vec![0, 0, 0, 0]];
        assert_eq!(PointSet::from_rows(f, 3, &rows), Err(Error::ZeroPoint));
        let rows = vec![vec![1, 2]];
        assert!(matches!(
            PointSet::from_rows(f, 3, &rows),
            Err(Error::AmbientMismatch { .. })
        ));
        // negative entries wrap mod p
        let pts = PointSet::from_rows(f, 1, &[vec![1, -1]]).unwrap();
        assert_eq!(pts.points()[0], vec![1, 100]);
    }

    #[test]
    fn condition_rows_at_coordinate_point() {
        let f = f101();
        // simple point at (1:0:0), conics: a single evaluation row hitting x0^2
        let rows = condition_rows(&[1, 0, 0], 1, 2, 2, &f).unwrap();
        assert_eq!(rows, vec![vec![1, 0, 0, 0, 0, 0]]);
        // double point: rows select the coefficients of x0^2, x0 x1, x0 x2
        let rows = condition_rows(&[1, 0, 0], 2, 2, 2, &f).unwrap();
        assert_eq!(rows.len(), 3);
        let basis = monomial_basis(3, 2);
        let idx = |target: &[u32]| basis.iter().position(|b| b == target).unwrap();
        let mut want = vec![vec![0u64; 6]; 3];
        want[0][idx(&[2, 0, 0])] = 1;
        want[1][idx(&[1, 1, 0])] = 1;
        want[2][idx(&[1, 0, 1])] = 1;
        assert_eq!(rows, want);
    }

    #[test]
    fn condition_rows_validate() {
        let f = f101();
        assert_eq!(
            condition_rows(&[1, 0, 0], 0, 2, 2, &f),
            Err(Error::InvalidMultiplicity(0))
        );
        assert_eq!(condition_rows(&[0, 0, 0], 1, 2, 2, &f), Err(Error::ZeroPoint));
        assert_eq!(
            condition_rows_in_chart(&[1, 0, 0], 1, 2, 2, &f, 1),
            Err(Error::NonInvertibleChart { index: 1 })
        );
    }

    #[test]
    fn order_zero_row_is_monomial_evaluation() {
        let f = f101();
        let basis = monomial_basis(4, 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let mut checked = 0;
        while checked < 100 {
            let raw: Vec<u64> = (0..4).map(|_| rng.next_u64() % 101).collect();
            let Some(q) = normalize(&f, &raw) else {
                continue;
            };
            checked += 1;
            let rows = condition_rows(&q, 2, 3, 2, &f).unwrap();
            // row 0 is alpha = 0: plain evaluation of each monomial at q
            for (pos, entry) in rows[0].iter().enumerate() {
                let mut coeffs = vec![0u64; basis.len()];
                coeffs[pos] = 1;
                assert_eq!(*entry, eval(&f, &coeffs, &basis, &q));
            }
        }
    }

    #[test]
    fn row_count_matches_condition_count() {
        let f = f101();
        let pts = PointSet::random(f, 3, 4, 5).unwrap();
        let d = class(3, 5, &[3, 2, 1, 4]);
        let m = conditions_matrix(&d, &pts).unwrap();
        // sum of C(n + m - 1, n): C(5,3) + C(4,3) + C(3,3) + C(6,3)
        assert_eq!(m.nrows(), 10 + 4 + 1 + 20);
        assert_eq!(m.ncols(), basis_size(4, 5).unwrap());
    }

    #[test]
    fn h0_no_points_is_full_space() {
        let f = f101();
        let pts = PointSet::random(f, 3, 0, 0).unwrap();
        let d = class(3, 2, &[]);
        let rep = h0(&d, &pts, Exec::Sequential).unwrap();
        assert_eq!(rep.h0, 10);
        assert_eq!(rep.v, 9);
        assert_eq!(rep.status, CertStatus::CertifiedNonspecial);
    }

    #[test]
    fn h0_conics_through_three_points() {
        let f = f101();
        let pts = PointSet::random(f, 2, 3, 11).unwrap();
        let d = class(2, 2, &[1, 1, 1]);
        let rep = h0(&d, &pts, Exec::Sequential).unwrap();
        assert_eq!(rep.h0, 3);
        assert_eq!(rep.status, CertStatus::CertifiedNonspecial);
        assert_eq!(rep.h0 + rep.rank, rep.monomial_count);
    }

    #[test]
    fn h0_plane_quartic_with_five_double_points() {
        let f = f101();
        let pts = PointSet::random(f, 2, 5, 3).unwrap();
        let d = class(2, 4, &[2; 5]);
        let rep = h0(&d, &pts, Exec::Sequential).unwrap();
        assert_eq!(rep.h0, 1);
        assert_eq!(rep.v, -1);
        assert_eq!(rep.speciality, 1);
        assert_eq!(rep.status, CertStatus::SpecialEvidence);
    }

    #[test]
    fn h0_matches_binary_form_closed_form() {
        // for n = 1 the count is exactly max(d + 1 - sum m_i, 0) at
        // distinct points; exhaustive over d <= 10, r <= 5, m_i <= 5
        let f = f101();
        for r in 0usize..=5 {
            let pts = PointSet::random(f, 1, r, 7 + r as u64).unwrap();
            let mut mult_sets: Vec<Vec<i64>> = vec![vec![]];
            for _ in 0..r {
                let mut next = Vec::new();
                for m in &mult_sets {
                    for mi in 1i64..=5 {
                        let mut v = m.clone();
                        v.push(mi);
                        next.push(v);
                    }
                }
                mult_sets = next;
            }
            for mults in mult_sets {
                for d in 0i64..=10 {
                    let dc = class(1, d, &mults);
                    let rep = h0(&dc, &pts, Exec::Sequential).unwrap();
                    let want = (d + 1 - mults.iter().sum::<i64>()).max(0) as usize;
                    assert_eq!(rep.h0, want, "d={d}, m={mults:?}");
                }
            }
        }
    }

    #[test]
    fn h0_independent_of_chart() {
        let f = f101();
        let pts = PointSet::random(f, 2, 4, 21).unwrap();
        let d = 3u32;
        let mults = [2i64, 1, 2, 1];
        // charts: default (first nonzero) vs the last nonzero coordinate
        let mut default_rows = Vec::new();
        let mut alt_rows = Vec::new();
        for (q, &m) in pts.points().iter().zip(&mults) {
            default_rows.extend(condition_rows(q, m, 2, d, &f).unwrap());
            let alt = q.iter().rposition(|&x| x != 0).unwrap();
            alt_rows.extend(condition_rows_in_chart(q, m, 2, d, &f, alt).unwrap());
        }
        let mut a = MatrixFp::from_rows(f, default_rows);
        let mut b = MatrixFp::from_rows(f, alt_rows);
        assert_eq!(a.rref(Exec::Sequential).rank, b.rref(Exec::Sequential).rank);
    }

    #[test]
    fn kernel_size_matches_h0() {
        let f = f101();
        let pts = PointSet::random(f, 3, 9, 13).unwrap();
        let d = class(3, 2, &[1; 9]);
        let rep = h0(&d, &pts, Exec::Sequential).unwrap();
        let kernel = kernel_basis(&d, &pts, Exec::Sequential).unwrap();
        assert_eq!(rep.h0, 1);
        assert_eq!(kernel.len(), 1);
        // the kernel vector is a quadric through all nine points
        let basis = monomial_basis(4, 2);
        for q in pts.points() {
            assert_eq!(eval(&f, &kernel[0], &basis, q), 0);
        }
    }

    #[test]
    fn empty_system_has_empty_kernel() {
        let f = f101();
        let pts = PointSet::random(f, 2, 3, 2).unwrap();
        let d = class(2, 1, &[1, 1, 1]);
        let kernel = kernel_basis(&d, &pts, Exec::Sequential).unwrap();
        assert!(kernel.is_empty());
    }

    #[test]
    fn membership_of_quadric_powers() {
        let f = f101();
        let pts = PointSet::random(f, 3, 9, 17).unwrap();
        let quadric = kernel_basis(&class(3, 2, &[1; 9]), &pts, Exec::Sequential)
            .unwrap()
            .remove(0);
        for a in 1u32..=2 {
            let d = class(3, 2 * a as i64, &vec![a as i64; 9]);
            assert!(power_membership(&d, &pts, &quadric, 2, a).unwrap(), "a={a}");
        }
        // a quadric missing the points is not a member
        let basis = monomial_basis(4, 2);
        let mut off = vec![0u64; basis.len()];
        off[0] = 1; // x0^2
        assert!(pts.points().iter().any(|q| eval(&f, &off, &basis, q) != 0));
        let d = class(3, 2, &[1; 9]);
        assert!(!power_membership(&d, &pts, &off, 2, 1).unwrap());
    }

    #[test]
    fn membership_rejects_degree_mismatch() {
        let f = f101();
        let pts = PointSet::random(f, 3, 9, 17).unwrap();
        let d = class(3, 5, &[2; 9]);
        let q = vec![0u64; basis_size(4, 2).unwrap()];
        assert!(matches!(
            power_membership(&d, &pts, &q, 2, 2),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn check_speciality_aggregates() {
        let d = class(2, 2, &[1, 1, 1]);
        let out = check_speciality(&d, &[1, 2, 3], &[101], Exec::Sequential).unwrap();
        assert_eq!(out.aggregate.status, CertStatus::CertifiedNonspecial);
        assert_eq!(out.aggregate.h0, 3);
        assert_eq!(out.aggregate.trials, 3);
        assert_eq!(out.runs.len(), 3);

        let d = class(2, 4, &[2; 5]);
        let out = check_speciality(&d, &[1, 2], &[101, 32003], Exec::Sequential).unwrap();
        assert_eq!(out.aggregate.status, CertStatus::SpecialEvidence);
        assert_eq!(out.aggregate.h0, 1);
        assert_eq!(out.aggregate.trials, 4);
    }

    #[test]
    fn check_speciality_rejects_empty_inputs() {
        let d = class(2, 2, &[1]);
        assert_eq!(
            check_speciality(&d, &[], &[101], Exec::Sequential),
            Err(Error::EmptyTrials)
        );
        assert_eq!(
            check_speciality(&d, &[1], &[], Exec::Sequential),
            Err(Error::EmptyTrials)
        );
    }

    #[test]
    fn h0_mismatched_points_rejected() {
        let f = f101();
        let pts = PointSet::random(f, 3, 5, 1).unwrap();
        let d = class(3, 2, &[1; 4]);
        assert!(matches!(
            h0(&d, &pts, Exec::Sequential),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn parallel_h0_is_identical() {
        let f = f101();
        let pts = PointSet::random(f, 3, 9, 23).unwrap();
        let d = class(3, 4, &[2; 9]);
        let a = h0(&d, &pts, Exec::Sequential).unwrap();
        let b = h0(&d, &pts, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
