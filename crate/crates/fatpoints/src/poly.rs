//! Homogeneous multivariate polynomials over `F_p`.
//!
//! A polynomial of degree `d` in `nvars` variables is stored densely as a
//! coefficient vector indexed by [`monomial_basis`]`(nvars, d)`. The basis is
//! ordered degree-lexicographically: within the fixed degree, exponent
//! vectors descend lexicographically, so `x0^d` comes first and `x_{n}^d`
//! last.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Number of degree-`d` monomials in `nvars` variables,
/// `C(d + nvars - 1, nvars - 1)`, or `None` on overflow.
pub fn basis_size(nvars: usize, d: u32) -> Option<usize> {
    if nvars == 0 {
        return Some(if d == 0 { 1 } else { 0 });
    }
    let mut acc: u128 = 1;
    let k = (nvars - 1) as u128;
    for i in 0..k {
        acc = acc.checked_mul(d as u128 + k - i)?;
        acc /= i + 1;
    }
    usize::try_from(acc).ok()
}

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// descending lexicographic order.
pub fn monomial_basis(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill(&mut out, &mut current, 0, d);
    out
}

fn fill(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

/// All exponent vectors of total degree at most `max_deg`, ordered by degree
/// and then descending lexicographically within each degree.
pub fn monomials_up_to(nvars: usize, max_deg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..=max_deg {
        out.extend(monomial_basis(nvars, d));
    }
    out
}

/// Lookup table from exponent vector to its index in `monomial_basis`.
pub struct MonomialIndex {
    map: BTreeMap<Vec<u32>, usize>,
}

impl MonomialIndex {
    pub fn new(basis: &[Vec<u32>]) -> Self {
        let map = basis
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialIndex { map }
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.map.get(exps).copied()
    }
}

/// Sparse homogeneous polynomial: exponent vector -> nonzero coefficient.
pub type Sparse = BTreeMap<Vec<u32>, u64>;

pub fn sparse_from_dense(basis: &[Vec<u32>], coeffs: &[u64]) -> Sparse {
    basis
        .iter()
        .zip(coeffs)
        .filter(|(_, &c)| c != 0)
        .map(|(e, &c)| (e.clone(), c))
        .collect()
}

pub fn dense_from_sparse(field: &PrimeField, nvars: usize, d: u32, s: &Sparse) -> Vec<u64> {
    let basis = monomial_basis(nvars, d);
    let index = MonomialIndex::new(&basis);
    let mut out = vec![0u64; basis.len()];
    for (e, &c) in s {
        let i = index
            .index_of(e)
            .expect("sparse polynomial exponent of unexpected degree");
        out[i] = field.add(out[i], c % field.modulus());
    }
    out
}

pub fn sparse_mul(field: &PrimeField, a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ea, &ca) in a {
        for (eb, &cb) in b {
            let prod = field.mul(ca, cb);
            if prod == 0 {
                continue;
            }
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let entry = out.entry(e).or_insert(0);
            *entry = field.add(*entry, prod);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn sparse_pow(field: &PrimeField, base: &Sparse, exp: u32) -> Sparse {
    let mut acc = Sparse::new();
    acc.insert(Vec::from_iter(core::iter::repeat(0).take(
        base.keys().next().map_or(0, Vec::len),
    )), 1);
    for _ in 0..exp {
        acc = sparse_mul(field, &acc, base);
    }
    acc
}

/// Evaluates a dense polynomial at a point using a precomputed power table
/// `powers[var][e] = point[var]^e`.
pub fn eval_with_powers(
    field: &PrimeField,
    coeffs: &[u64],
    basis: &[Vec<u32>],
    powers: &[Vec<u64>],
) -> u64 {
    let mut acc = 0;
    for (c, exps) in coeffs.iter().zip(basis) {
        if *c == 0 {
            continue;
        }
        let mut term = *c;
        for (var, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = field.mul(term, powers[var][e as usize]);
            }
        }
        acc = field.add(acc, term);
    }
    acc
}

/// Evaluates a dense degree-`d` polynomial at a point.
pub fn eval(field: &PrimeField, coeffs: &[u64], basis: &[Vec<u32>], point: &[u64]) -> u64 {
    let d = basis.first().map_or(0, |e| e.iter().sum::<u32>()) as usize;
    let powers: Vec<Vec<u64>> = point.iter().map(|&x| field.power_table(x, d)).collect();
    eval_with_powers(field, coeffs, basis, &powers)
}

/// Substitutes linear forms for the variables of a collection of dense
/// degree-`d` polynomials in `nvars` variables.
///
/// `forms[j]` is the coefficient vector (length `out_vars`) of the linear
/// form replacing variable `j`. Returns dense degree-`d` polynomials in
/// `out_vars` variables. Powers of each form are cached across monomials and
/// across the whole batch.
pub fn substitute_linear(
    field: &PrimeField,
    polys: &[Vec<u64>],
    nvars: usize,
    d: u32,
    forms: &[Vec<u64>],
) -> Result<Vec<Vec<u64>>> {
    if forms.len() != nvars {
        return Err(Error::LengthMismatch {
            left: forms.len(),
            right: nvars,
        });
    }
    let out_vars = forms.first().map_or(0, Vec::len);
    let in_basis = monomial_basis(nvars, d);
    for p in polys {
        if p.len() != in_basis.len() {
            return Err(Error::LengthMismatch {
                left: p.len(),
                right: in_basis.len(),
            });
        }
    }
    let out_basis = monomial_basis(out_vars, d);
    let out_index = MonomialIndex::new(&out_basis);
    let lin_basis = monomial_basis(out_vars, 1);

    // powers_of[j][e] = forms[j]^e as a sparse polynomial in the out vars
    let one: Sparse = [(vec![0u32; out_vars], 1u64)].into_iter().collect();
    let mut powers_of: Vec<Vec<Sparse>> = Vec::with_capacity(nvars);
    for form in forms {
        let lin = sparse_from_dense(&lin_basis, form);
        powers_of.push(vec![one.clone(), lin]);
    }
    let power = |powers_of: &mut Vec<Vec<Sparse>>, j: usize, e: usize| -> Sparse {
        while powers_of[j].len() <= e {
            let last = powers_of[j].last().unwrap().clone();
            let next = sparse_mul(field, &last, &powers_of[j][1]);
            powers_of[j].push(next);
        }
        powers_of[j][e].clone()
    };

    // image of each input monomial, shared by all polynomials in the batch
    let mut monomial_images: Vec<Option<Vec<u64>>> = vec![None; in_basis.len()];
    let mut results = Vec::with_capacity(polys.len());
    for poly in polys {
        let mut out = vec![0u64; out_basis.len()];
        for (mono, &c) in poly.iter().enumerate().map(|(i, c)| (i, c)) {
            if c == 0 {
                continue;
            }
            if monomial_images[mono].is_none() {
                let exps = &in_basis[mono];
                let mut acc = one.clone();
                for (j, &e) in exps.iter().enumerate() {
                    if e > 0 {
                        let pw = power(&mut powers_of, j, e as usize);
                        acc = sparse_mul(field, &acc, &pw);
                    }
                }
                let mut dense = vec![0u64; out_basis.len()];
                for (e, &cc) in &acc {
                    let i = out_index.index_of(e).expect("degree-d image monomial");
                    dense[i] = cc;
                }
                monomial_images[mono] = Some(dense);
            }
            let image = monomial_images[mono].as_ref().unwrap();
            for (o, &img) in out.iter_mut().zip(image) {
                *o = field.add(*o, field.mul(c, img));
            }
        }
        results.push(out);
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(basis_size(5, 2), Some(15));
        assert_eq!(basis_size(5, 8), Some(495));
        assert_eq!(basis_size(2, 3), Some(4));
        assert_eq!(basis_size(1, 7), Some(1));
        assert_eq!(basis_size(4, 0), Some(1));
    }

    #[test]
    fn basis_order_is_deglex_descending() {
        let b = monomial_basis(3, 2);
        assert_eq!(b.len(), 6);
        assert_eq!(b[0], vec![2, 0, 0]);
        assert_eq!(b[1], vec![1, 1, 0]);
        assert_eq!(b[2], vec![1, 0, 1]);
        assert_eq!(b[3], vec![0, 2, 0]);
        assert_eq!(b[4], vec![0, 1, 1]);
        assert_eq!(b[5], vec![0, 0, 2]);
        assert_eq!(b.len(), basis_size(3, 2).unwrap());
    }

    #[test]
    fn monomials_up_to_counts() {
        // #\{alpha : |alpha| <= 3\} in 2 variables = C(5, 2) = 10
        assert_eq!(monomials_up_to(2, 3).len(), 10);
        assert_eq!(monomials_up_to(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn sparse_product_matches_hand_expansion() {
        let f = f101();
        // (x0 + x1)^2 = x0^2 + 2 x0 x1 + x1^2
        let basis1 = monomial_basis(2, 1);
        let s = sparse_from_dense(&basis1, &[1, 1]);
        let sq = sparse_mul(&f, &s, &s);
        let dense = dense_from_sparse(&f, 2, 2, &sq);
        assert_eq!(dense, vec![1, 2, 1]);
        let cube = sparse_pow(&f, &s, 3);
        let dense3 = dense_from_sparse(&f, 2, 3, &cube);
        assert_eq!(dense3, vec![1, 3, 3, 1]);
    }

    #[test]
    fn eval_simple() {
        let f = f101();
        let basis = monomial_basis(3, 2);
        // x0*x1 + 3*x2^2 at (2, 5, 1): 10 + 3 = 13
        let mut coeffs = vec![0u64; basis.len()];
        coeffs[1] = 1;
        coeffs[5] = 3;
        assert_eq!(eval(&f, &coeffs, &basis, &[2, 5, 1]), 13);
    }

    #[test]
    fn substitution_identity_is_noop() {
        let f = f101();
        let n = 3;
        let basis = monomial_basis(n + 1, 4);
        let mut coeffs = vec![0u64; basis.len()];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = (7 * i as u64 + 3) % 101;
        }
        let forms: Vec<Vec<u64>> = (0..n + 1)
            .map(|j| (0..n + 1).map(|i| u64::from(i == j)).collect())
            .collect();
        let out = substitute_linear(&f, &[coeffs.clone()], n + 1, 4, &forms).unwrap();
        assert_eq!(out[0], coeffs);
    }

    #[test]
    fn substitution_onto_line() {
        let f = f101();
        // x0*x1 restricted to the line spanned by e0, e1: x0 = s, x1 = t, x2 = 0
        let basis = monomial_basis(3, 2);
        let mut coeffs = vec![0u64; basis.len()];
        coeffs[1] = 1; // x0 x1
        let forms = vec![vec![1, 0], vec![0, 1], vec![0, 0]];
        let out = substitute_linear(&f, &[coeffs], 3, 2, &forms).unwrap();
        // basis of degree 2 in (s, t): s^2, s t, t^2
        assert_eq!(out[0], vec![0, 1, 0]);
    }
}
