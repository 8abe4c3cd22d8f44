//! Monte Carlo probes for the dimension of the base locus of a computed
//! linear system.
//!
//! A random `k`-plane of `P^n` generically meets every closed subset of
//! dimension `>= n - k` and generically misses one of dimension
//! `<= n - k - 1`. Restricting the kernel polynomials to random `k`-planes
//! and counting common rational zeros by brute force therefore probes the
//! question "is the base locus at least `(n-k)`-dimensional?".
//!
//! Verdicts are evidence, never certificates: a positive-dimensional
//! component with no `F_p`-rational point can evade detection, and a
//! zero-dimensional locus can still meet an unlucky section. Rerunning at a
//! second prime and with more trials shrinks both failure modes.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::divisor::DivisorClass;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::interpolation::{kernel_basis, PointSet};
use crate::linalg::MatrixFp;
use crate::poly::{basis_size, monomial_basis, substitute_linear};
use crate::Exec;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Largest section dimension the brute-force enumeration accepts.
pub const MAX_SECTION_DIM: u32 = 3;

/// Default cap on the number of grid points a single enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

const CHUNK: u64 = 1 << 14;

/// A rank-`(k+1)` linear parametrization `P^k -> P^n`, rows are the images
/// of the coordinate points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionMap {
    k: u32,
    n: u32,
    rows: Vec<Vec<u64>>,
}

impl SectionMap {
    /// The identity parametrization (`k = n`); useful for tests.
    pub fn identity(n: u32) -> Self {
        let rows = (0..=n as usize)
            .map(|i| {
                (0..=n as usize)
                    .map(|j| u64::from(i == j))
                    .collect::<Vec<u64>>()
            })
            .collect();
        SectionMap { k: n, n, rows }
    }

    /// Draws a uniformly random parametrization of full rank `k+1`;
    /// rank-deficient draws are discarded and redrawn.
    pub fn random(
        n: u32,
        k: u32,
        field: PrimeField,
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidSectionDim { k, n });
        }
        for _ in 0..10_000 {
            let rows: Vec<Vec<u64>> = (0..=k as usize)
                .map(|_| {
                    (0..=n as usize)
                        .map(|_| rng.next_u64() % field.modulus())
                        .collect()
                })
                .collect();
            let mut m = MatrixFp::from_rows(field, rows.clone());
            if m.rref(Exec::Sequential).rank == k as usize + 1 {
                return Ok(SectionMap { k, n, rows });
            }
        }
        Err(Error::SamplingFailed {
            wanted: k as usize + 1,
            got: 0,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Rows of the parametrization matrix.
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// The linear form each ambient coordinate pulls back to: column `j` of
    /// the matrix, as a vector of length `k+1`.
    fn coordinate_forms(&self) -> Vec<Vec<u64>> {
        (0..=self.n as usize)
            .map(|j| self.rows.iter().map(|row| row[j]).collect())
            .collect()
    }
}

/// Restricts dense degree-`d` polynomials in `n+1` variables along a
/// parametrization, yielding degree-`d` polynomials in `k+1` variables.
pub fn restrict_with_map(
    field: &PrimeField,
    polys: &[Vec<u64>],
    n: u32,
    d: u32,
    map: &SectionMap,
) -> Result<Vec<Vec<u64>>> {
    if map.n != n {
        return Err(Error::AmbientMismatch {
            point_len: map.n as usize + 1,
            expected: n as usize + 1,
        });
    }
    substitute_linear(field, polys, n as usize + 1, d, &map.coordinate_forms())
}

/// Draws a seeded random `k`-plane and restricts the polynomials to it.
pub fn restrict_to_subspace(
    field: &PrimeField,
    polys: &[Vec<u64>],
    n: u32,
    d: u32,
    k: u32,
    seed: u64,
) -> Result<(Vec<Vec<u64>>, SectionMap)> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let map = SectionMap::random(n, k, *field, &mut rng)?;
    let restricted = restrict_with_map(field, polys, n, d, &map)?;
    Ok((restricted, map))
}

/// Number of points of `P^k(F_p)`: `(p^(k+1) - 1) / (p - 1)`.
pub fn projective_point_count(p: u64, k: u32) -> u128 {
    (0..=k).map(|i| (p as u128).pow(i)).sum()
}

/// Result of a brute-force common-zero search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationOutcome {
    pub count: u64,
    /// The zeros themselves, normalized, when collection was requested.
    pub zeros: Option<Vec<Vec<u64>>>,
}

/// Enumerates every normalized point of `P^k(F_p)` and counts the common
/// zeros of the given dense degree-`d` polynomials in `k+1` variables.
///
/// The grid is processed in fixed-size chunks whose results are merged in
/// chunk order, so the outcome does not depend on the execution mode.
pub fn enumerate_common_zeros(
    field: &PrimeField,
    polys: &[Vec<u64>],
    k: u32,
    d: u32,
    budget: u64,
    collect: bool,
    exec: Exec,
) -> Result<EnumerationOutcome> {
    if polys.is_empty() {
        return Err(Error::EmptyPolyList);
    }
    if k > MAX_SECTION_DIM {
        return Err(Error::SectionTooLarge {
            k,
            max: MAX_SECTION_DIM,
        });
    }
    let expected_len = basis_size(k as usize + 1, d).ok_or(Error::ValueOutOfRange)?;
    for p in polys {
        if p.len() != expected_len {
            return Err(Error::LengthMismatch {
                left: p.len(),
                right: expected_len,
            });
        }
    }
    let total = projective_point_count(field.modulus(), k);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            points: total,
            budget,
        });
    }
    let total = total as u64;

    // sparse term lists, cheap to scan per point
    let basis = monomial_basis(k as usize + 1, d);
    let terms: Vec<Vec<(u64, Vec<u32>)>> = polys
        .iter()
        .map(|p| {
            p.iter()
                .zip(&basis)
                .filter(|(&c, _)| c != 0)
                .map(|(&c, e)| (c, e.clone()))
                .collect()
        })
        .collect();

    let chunk_count = total.div_ceil(CHUNK);
    let scan_chunk = |chunk_idx: u64| -> (u64, Vec<Vec<u64>>) {
        let start = chunk_idx * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut count = 0;
        let mut zeros = Vec::new();
        let mut point = vec![0u64; k as usize + 1];
        let mut powers: Vec<Vec<u64>> =
            vec![vec![0u64; d as usize + 1]; k as usize + 1];
        for idx in start..end {
            decode_point(field.modulus(), k, idx, &mut point);
            for (var, &x) in point.iter().enumerate() {
                let table = &mut powers[var];
                table[0] = 1;
                let mut acc = 1;
                for e in 1..=d as usize {
                    acc = field.mul(acc, x);
                    table[e] = acc;
                }
            }
            let mut all_zero = true;
            'polys: for term_list in &terms {
                let mut val = 0u64;
                for (c, exps) in term_list {
                    let mut t = *c;
                    for (var, &e) in exps.iter().enumerate() {
                        if e > 0 {
                            t = field.mul(t, powers[var][e as usize]);
                        }
                    }
                    val = field.add(val, t);
                }
                if val != 0 {
                    all_zero = false;
                    break 'polys;
                }
            }
            if all_zero {
                count += 1;
                if collect {
                    zeros.push(point.clone());
                }
            }
        }
        (count, zeros)
    };

    let partials: Vec<(u64, Vec<Vec<u64>>)> = match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..chunk_count)
            .into_par_iter()
            .map(scan_chunk)
            .collect(),
        #[cfg(not(feature = "parallel"))]
        Exec::Parallel => (0..chunk_count).map(scan_chunk).collect(),
        Exec::Sequential => (0..chunk_count).map(scan_chunk).collect(),
    };

    let mut count = 0;
    let mut zeros = collect.then(Vec::new);
    for (c, z) in partials {
        count += c;
        if let Some(all) = zeros.as_mut() {
            all.extend(z);
        }
    }
    Ok(EnumerationOutcome { count, zeros })
}

/// Writes the `idx`-th normalized point of `P^k(F_p)` into `out`.
///
/// Points are blocked by pivot position: block `i` holds the points whose
/// first nonzero coordinate is `i` (normalized to 1), with the remaining
/// coordinates running through base-`p` digits, most significant first.
fn decode_point(p: u64, k: u32, idx: u64, out: &mut [u64]) {
    let mut idx = idx as u128;
    let mut pivot = 0usize;
    loop {
        let block = (p as u128).pow(k - pivot as u32);
        if idx < block {
            break;
        }
        idx -= block;
        pivot += 1;
    }
    for x in out.iter_mut().take(pivot) {
        *x = 0;
    }
    out[pivot] = 1;
    for j in (pivot + 1..=k as usize).rev() {
        out[j] = (idx % p as u128) as u64;
        idx /= p as u128;
    }
}

/// Verdict of a section probe at one section dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// No common rational zero in most trials: consistent with the base
    /// locus having at most this dimension.
    ConsistentWithDimAtMost(i64),
    /// A strict majority of trials met the base locus: evidence that its
    /// dimension is at least this value.
    EvidenceOfDimAtLeast(i64),
}

/// Outcome of all trials at one section dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionProbeReport {
    pub section_dim: u32,
    pub trials: u32,
    /// Common-zero count per trial, in trial order.
    pub zero_counts: Vec<u64>,
    pub verdict: ProbeVerdict,
    /// The section parametrization of each trial, for audit.
    pub sections: Vec<SectionMap>,
    /// Per-trial zero points, when collection was requested.
    pub zeros: Option<Vec<Vec<Vec<u64>>>>,
}

/// Configuration of [`probe_dimension`].
#[derive(Debug, Clone)]
pub struct ProbeConfig {
    pub section_dims: Vec<u32>,
    pub trials: u32,
    pub seed: u64,
    pub budget: u64,
    pub collect_zeros: bool,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            section_dims: vec![],
            trials: 5,
            seed: 0,
            budget: DEFAULT_BUDGET,
            collect_zeros: false,
        }
    }
}

/// Probes the dimension of the base locus of the linear system of `class`
/// at `pts` by restricting its kernel to random sections.
///
/// All sections are drawn up front from the seed, so the reports do not
/// depend on the execution mode of the grid scans.
pub fn probe_dimension(
    class: &DivisorClass,
    pts: &PointSet,
    cfg: &ProbeConfig,
    exec: Exec,
) -> Result<Vec<SectionProbeReport>> {
    if cfg.trials == 0 {
        return Err(Error::EmptyTrials);
    }
    let n = class.n();
    let field = pts.field();
    for &k in &cfg.section_dims {
        if k >= n {
            return Err(Error::InvalidSectionDim { k, n });
        }
        if k > MAX_SECTION_DIM {
            return Err(Error::SectionTooLarge {
                k,
                max: MAX_SECTION_DIM,
            });
        }
    }
    let kernel = kernel_basis(class, pts, exec)?;
    if kernel.is_empty() {
        return Err(Error::EmptySystem);
    }
    let d = class.degree() as u32;

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut sections_per_dim: Vec<Vec<SectionMap>> = Vec::with_capacity(cfg.section_dims.len());
    for &k in &cfg.section_dims {
        let mut sections = Vec::with_capacity(cfg.trials as usize);
        for _ in 0..cfg.trials {
            sections.push(SectionMap::random(n, k, field, &mut rng)?);
        }
        sections_per_dim.push(sections);
    }

    let mut reports = Vec::with_capacity(cfg.section_dims.len());
    for (&k, sections) in cfg.section_dims.iter().zip(sections_per_dim) {
        let mut zero_counts = Vec::with_capacity(cfg.trials as usize);
        let mut zeros = cfg.collect_zeros.then(Vec::new);
        for map in &sections {
            let restricted = restrict_with_map(&field, &kernel, n, d, map)?;
            let outcome = enumerate_common_zeros(
                &field,
                &restricted,
                k,
                d,
                cfg.budget,
                cfg.collect_zeros,
                exec,
            )?;
            zero_counts.push(outcome.count);
            if let Some(all) = zeros.as_mut() {
                all.push(outcome.zeros.unwrap_or_default());
            }
        }
        let successes = zero_counts.iter().filter(|&&c| c > 0).count() as u32;
        let verdict = if 2 * successes > cfg.trials {
            ProbeVerdict::EvidenceOfDimAtLeast(n as i64 - k as i64)
        } else {
            ProbeVerdict::ConsistentWithDimAtMost(n as i64 - k as i64 - 1)
        };
        reports.push(SectionProbeReport {
            section_dim: k,
            trials: cfg.trials,
            zero_counts,
            verdict,
            sections,
            zeros,
        });
    }
    Ok(reports)
}

/// The unique quadric through the points, as a coefficient vector over
/// `monomial_basis(n+1, 2)`.
///
/// Fails unless the simple-point conditions at degree 2 leave exactly a
/// one-dimensional kernel.
pub fn quadric_through_points(pts: &PointSet) -> Result<Vec<u64>> {
    let class = DivisorClass::uniform(pts.n(), 2, 1, pts.len())?;
    let mut kernel = kernel_basis(&class, pts, Exec::Sequential)?;
    if kernel.len() != 1 {
        return Err(Error::KernelDimension {
            expected: 1,
            got: kernel.len(),
        });
    }
    Ok(kernel.remove(0))
}
