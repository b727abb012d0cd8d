//! Brute-force quotient dimensions by truncated linear algebra.
//!
//! `dim S/(I + m^D)` is the number of monomials of degree `< D` minus the
//! rank of the span of all truncated products `x^α·g`. This path shares
//! nothing with the standard basis code: it uses its own sparse row
//! echelon elimination over ℚ.
//!
//! The truncated dimension is nondecreasing in `D`. When two consecutive
//! caps give the same value, every monomial of degree `D` lies in
//! `I + m^{D+1}`, so `m^D ⊆ I + m·m^D` and Nakayama's lemma gives
//! `m^D ⊆ I` in the local ring; the stable value is then the true
//! dimension.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{GermError, Result};
use crate::poly::{Exponent, Polynomial, Rational};
use crate::stdbasis::Ideal;

/// Refuse truncations with more monomial columns than this.
pub const DEFAULT_MAX_COLUMNS: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationResult {
    pub degree_cap: u32,
    pub dim_at_cap: usize,
    /// Same value at `degree_cap + 1`.
    pub stable: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleDim {
    Finite(usize),
    /// Hit the column cap without stabilizing; the oracle cannot prove
    /// infiniteness.
    InfiniteSuspected,
}

/// All exponents in `n` variables of total degree `< d`, by degree.
pub fn monomials_below(n: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for total in 0..d {
        let mut current = vec![0u32; n];
        fill(&mut current, 0, total, &mut out);
    }
    out
}

fn fill(current: &mut Vec<u32>, i: usize, remaining: u32, out: &mut Vec<Exponent>) {
    let n = current.len();
    if i + 1 == n {
        current[i] = remaining;
        out.push(Exponent::new(current.clone()));
        return;
    }
    for a in (0..=remaining).rev() {
        current[i] = a;
        fill(current, i + 1, remaining - a, out);
    }
    current[i] = 0;
}

fn binomial(n: u64, k: u64) -> u64 {
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of monomials in `n` variables of degree `< d`.
pub fn monomial_count(n: usize, d: u32) -> u64 {
    if n == 0 {
        return 1;
    }
    binomial(d as u64 + n as u64 - 1, n as u64)
}

type SparseRow = Vec<(usize, Rational)>;

/// Row echelon form kept as pivot column → normalized row.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    fn insert(&mut self, mut row: SparseRow) {
        while let Some((c, lead)) = row.first().cloned() {
            match self.pivots.get(&c) {
                Some(p) => row = axpy(&row, &-lead, p),
                None => {
                    let inv = lead.recip();
                    for (_, v) in row.iter_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(c, row);
                    return;
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// `a + s·b` on column-sorted sparse rows.
fn axpy(a: &SparseRow, s: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, s * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + s * &b[j].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `dim S/(I + m^D)` with the default column cap.
pub fn truncated_dim(ideal: &Ideal, d: u32) -> Result<usize> {
    truncated_dim_capped(ideal, d, DEFAULT_MAX_COLUMNS)
}

pub fn truncated_dim_capped(ideal: &Ideal, d: u32, max_columns: usize) -> Result<usize> {
    if d == 0 {
        return Err(GermError::InvalidInput(
            "degree cap must be at least 1".into(),
        ));
    }
    let n = ideal.n();
    let count = monomial_count(n, d);
    if count > max_columns as u64 {
        return Err(GermError::ResourceLimit(format!(
            "{count} monomials below degree {d} exceed the oracle cap of {max_columns}"
        )));
    }
    let monomials = monomials_below(n, d);
    let index: HashMap<&Exponent, usize> =
        monomials.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut echelon = Echelon::default();
    for g in ideal.gens() {
        let Some(order) = g.order() else { continue };
        if order >= d {
            continue;
        }
        for shift in monomials_below(n, d - order) {
            let mut row: SparseRow = g
                .terms()
                .filter_map(|(e, c)| {
                    let m = e.product(&shift);
                    index.get(&m).map(|&col| (col, c.clone()))
                })
                .collect();
            row.sort_by_key(|x| x.0);
            if !row.is_empty() {
                echelon.insert(row);
            }
        }
    }
    Ok(monomials.len() - echelon.rank())
}

/// Truncated dimension at `d` and `d + 1`.
pub fn truncation(ideal: &Ideal, d: u32) -> Result<TruncationResult> {
    let at = truncated_dim(ideal, d)?;
    let next = truncated_dim(ideal, d + 1)?;
    Ok(TruncationResult {
        degree_cap: d,
        dim_at_cap: at,
        stable: at == next,
    })
}

/// Raises the cap (doubling) until two consecutive caps agree.
pub fn oracle_dim(ideal: &Ideal) -> OracleDim {
    oracle_dim_from(ideal, 1)
}

/// Like [`oracle_dim`] but starting at a known degree bound, e.g. one more
/// than the largest staircase degree reported by the engine.
pub fn oracle_dim_from(ideal: &Ideal, start: u32) -> OracleDim {
    let mut d = start.max(1);
    loop {
        match truncation(ideal, d) {
            Ok(t) if t.stable => return OracleDim::Finite(t.dim_at_cap),
            Ok(_) => d *= 2,
            Err(_) => return OracleDim::InfiniteSuspected,
        }
    }
}

/// Oracle value of `dim S/J_f`.
pub fn oracle_milnor(f: &Polynomial) -> Result<OracleDim> {
    Ok(oracle_dim(&Ideal::jacobian(f)?))
}

/// Oracle value of `dim S/(J_f, f)`.
pub fn oracle_tjurina(f: &Polynomial) -> Result<OracleDim> {
    Ok(oracle_dim(&Ideal::tjurina(f)?))
}
