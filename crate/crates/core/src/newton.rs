//! Newton polyhedra, convenience, and the Newton number.
//!
//! For a coordinate subspace `R^I` the region under the Newton diagram is
//! the union of segments from the origin to the diagram. It is not convex,
//! but inside the box `[0, M]^I` (with `M` one more than the largest
//! support coordinate) its complement is `Γ₊ ∩ [0, M]^I`, which is the
//! convex hull of the support points with any subset of their coordinates
//! raised to `M`. Its volume is exact via [`crate::hull`], and the region's
//! volume is `M^|I|` minus that.
//!
//! The Newton number is
//! `ν = n!·V_n − (n−1)!·V_{n−1} + ⋯ + (−1)^{n−1}·1!·V_1 + (−1)^n`
//! where `V_q` sums the region volumes over all `q`-element coordinate
//! subsets.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{GermError, Result};
use crate::hull::{Point, Polytope};
use crate::poly::{Exponent, Polynomial, Rational};

/// Exponents of the nonzero terms of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSet {
    pub n: usize,
    pub points: Vec<Exponent>,
}

impl SupportSet {
    pub fn of(f: &Polynomial) -> Self {
        SupportSet {
            n: f.n(),
            points: f.exponents().cloned().collect(),
        }
    }

    /// First variable without a pure power in the support, if any.
    pub fn missing_axis(&self) -> Option<usize> {
        (0..self.n).find(|&i| !self.points.iter().any(|p| p.pure_power_var() == Some(i)))
    }

    /// Points supported in the coordinates `subset`, projected to them.
    fn restrict(&self, subset: &[usize]) -> Vec<Vec<u32>> {
        self.points
            .iter()
            .filter(|p| (0..self.n).all(|j| subset.contains(&j) || p[j] == 0) && !p.is_zero())
            .map(|p| subset.iter().map(|&j| p[j]).collect())
            .collect()
    }
}

pub fn is_convenient(supp: &SupportSet) -> bool {
    supp.missing_axis().is_none()
}

/// Drops points that dominate another point coordinatewise; they lie in
/// `Γ₊` of the rest and do not change it.
fn minimal_points(mut pts: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    pts.sort();
    pts.dedup();
    let keep: Vec<bool> = pts
        .iter()
        .map(|p| {
            !pts.iter()
                .any(|q| q != p && q.iter().zip(p).all(|(a, b)| a <= b))
        })
        .collect();
    pts.into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}

/// `|I|!` times the volume of the region under the Newton diagram in the
/// coordinate subspace indexed by `subset`.
pub fn normalized_under_diagram_volume(supp: &SupportSet, subset: &[usize]) -> Result<BigInt> {
    let q = subset.len();
    if q == 0 {
        return Ok(BigInt::one());
    }
    let pts = supp.restrict(subset);
    for (k, &axis) in subset.iter().enumerate() {
        let has_pure = pts
            .iter()
            .any(|p| p[k] > 0 && p.iter().enumerate().all(|(j, &a)| j == k || a == 0));
        if !has_pure {
            return Err(GermError::NotConvenient { axis });
        }
    }
    let pts = minimal_points(pts);
    let big = 1 + pts.iter().flatten().copied().max().unwrap_or(0) as i64;
    let mut candidates: Vec<Point> = Vec::new();
    for p in &pts {
        for mask in 0u32..(1 << q) {
            candidates.push(
                (0..q)
                    .map(|k| if mask >> k & 1 == 1 { big } else { p[k] as i64 })
                    .collect(),
            );
        }
    }
    let hull = Polytope::new(candidates)?.normalized_volume();
    let factorial: BigInt = (1..=q).map(BigInt::from).product();
    let box_volume = factorial * BigInt::from(big).pow(q as u32);
    let v = box_volume - BigInt::from(hull);
    if v.is_negative() {
        return Err(GermError::Internal("negative under-diagram volume".into()));
    }
    Ok(v)
}

/// Exact `|I|`-dimensional volume of the region under the Newton diagram.
pub fn under_diagram_volume(supp: &SupportSet, subset: &[usize]) -> Result<Rational> {
    let scaled = normalized_under_diagram_volume(supp, subset)?;
    let factorial: BigInt = (1..=subset.len()).map(BigInt::from).product();
    Ok(Rational::new(scaled, factorial))
}

fn subsets(n: usize, q: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == q)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// Volumes `V_q` and the Newton number of a convenient support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonData {
    pub convenient: bool,
    /// `q → V_q` for `q = 1 … n`; empty when not convenient.
    pub volumes: BTreeMap<usize, Rational>,
    pub nu: Option<BigInt>,
}

pub fn newton_data(f: &Polynomial) -> Result<NewtonData> {
    let supp = SupportSet::of(f);
    if !is_convenient(&supp) {
        return Ok(NewtonData {
            convenient: false,
            volumes: BTreeMap::new(),
            nu: None,
        });
    }
    let n = supp.n;
    let mut volumes = BTreeMap::new();
    let mut nu = if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    for q in 1..=n {
        let mut scaled_sum = BigInt::zero();
        for subset in subsets(n, q) {
            scaled_sum += normalized_under_diagram_volume(&supp, &subset)?;
        }
        let factorial: BigInt = (1..=q).map(BigInt::from).product();
        volumes.insert(q, Rational::new(scaled_sum.clone(), factorial));
        if (n - q).is_multiple_of(2) {
            nu += scaled_sum;
        } else {
            nu -= scaled_sum;
        }
    }
    Ok(NewtonData {
        convenient: true,
        volumes,
        nu: Some(nu),
    })
}

/// `ν(f)`; requires a convenient support.
pub fn newton_number(f: &Polynomial) -> Result<BigInt> {
    let supp = SupportSet::of(f);
    if let Some(axis) = supp.missing_axis() {
        return Err(GermError::NotConvenient { axis });
    }
    newton_data(f)?
        .nu
        .ok_or_else(|| GermError::Internal("convenient support without nu".into()))
}

/// Comparisons of `ν` with `μ` and `τ`. `mu_eq_nu` is evidence of
/// nondegeneracy, not a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KushnirenkoReport {
    pub nu: i64,
    pub mu_ge_nu: bool,
    pub mu_eq_nu: bool,
    pub tau_ge_nu_over_n: bool,
}

pub fn kushnirenko_report(f: &Polynomial, mu: usize, tau: usize) -> Result<KushnirenkoReport> {
    let nu = newton_number(f)?;
    let n = f.n();
    let nu_i64 = nu
        .to_i64()
        .ok_or_else(|| GermError::ResourceLimit("Newton number out of range".into()))?;
    let mu = BigInt::from(mu);
    Ok(KushnirenkoReport {
        nu: nu_i64,
        mu_ge_nu: mu >= nu,
        mu_eq_nu: mu == nu,
        tau_ge_nu_over_n: BigInt::from(tau) * BigInt::from(n) >= nu,
    })
}
