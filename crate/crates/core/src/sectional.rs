//! Sectional Milnor numbers and the multiplicity bounds.
//!
//! `μⁱ` is the Milnor number of `f` restricted to a generic `i`-plane
//! through the origin. Genericity is approximated by random integer planes.
//! A non-generic plane can only raise the Milnor number of the section
//! (upper semicontinuity), so the minimum over several draws converges to
//! the generic value from above. Nothing here certifies genericity; the
//! probability of missing the generic value shrinks with the number of
//! samples and the coefficient range.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GermError, Result};
use crate::linalg::RatMatrix;
use crate::milnor;
use crate::poly::{Exponent, Polynomial, Rational};
use crate::stdbasis::{self, Ideal};

/// Redraws allowed per sample before giving up.
pub const RETRY_BUDGET: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SectionPlan {
    pub samples: usize,
    pub seed: u64,
    pub coeff_bound: i64,
}

impl Default for SectionPlan {
    fn default() -> Self {
        SectionPlan {
            samples: 3,
            seed: 42,
            coeff_bound: 20,
        }
    }
}

/// RNG stream for one `(dimension, sample)` pair, independent of
/// scheduling.
pub fn sample_rng(seed: u64, i: usize, sample: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((i as u64) << 32) | sample as u64);
    rng
}

/// Substitutes a random `n×i` integer matrix with nonzero entries in
/// `[−bound, bound]`; retries rank-deficient draws.
pub fn generic_section<R: Rng>(
    f: &Polynomial,
    i: usize,
    rng: &mut R,
    coeff_bound: i64,
) -> Result<Polynomial> {
    let n = f.n();
    if i == 0 || i > n {
        return Err(GermError::InvalidInput(format!(
            "section dimension {i} outside 1..={n}"
        )));
    }
    if coeff_bound < 1 {
        return Err(GermError::InvalidInput(
            "coefficient bound must be positive".into(),
        ));
    }
    for _ in 0..RETRY_BUDGET {
        let mut matrix = RatMatrix::zeros(n, i);
        for r in 0..n {
            for c in 0..i {
                let mut v = 0;
                while v == 0 {
                    v = rng.gen_range(-coeff_bound..=coeff_bound);
                }
                matrix.set(r, c, Rational::from_integer(BigInt::from(v)));
            }
        }
        if matrix.rank() < i {
            continue;
        }
        let images: Vec<Polynomial> = (0..n)
            .map(|r| {
                Polynomial::from_terms(
                    i,
                    (0..i).map(|c| (Exponent::unit(i, c), matrix.get(r, c).clone())),
                )
                .expect("same ring")
            })
            .collect();
        return f.compose(&images);
    }
    Err(GermError::SectionFailed(format!(
        "no full-rank plane after {RETRY_BUDGET} draws"
    )))
}

fn sample_milnor(f: &Polynomial, i: usize, plan: &SectionPlan, sample: usize) -> Result<usize> {
    let mut rng = sample_rng(plan.seed, i, sample);
    for _ in 0..RETRY_BUDGET {
        let section = generic_section(f, i, &mut rng, plan.coeff_bound)?;
        match milnor::milnor_number(&section) {
            Ok(mu) => return Ok(mu),
            Err(GermError::Smooth) => return Ok(0),
            Err(GermError::NotIsolated) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(GermError::SectionFailed(format!(
        "every plane of dimension {i} gave a non-isolated section"
    )))
}

/// `μⁱ`, the minimum over `plan.samples` random sections. `μ⁰ = 1` and
/// `μⁿ = μ` need no sampling; `μ¹` is checked against `m − 1`.
pub fn sectional_milnor(f: &Polynomial, i: usize, plan: &SectionPlan) -> Result<usize> {
    let n = f.n();
    if i > n {
        return Err(GermError::InvalidInput(format!(
            "section dimension {i} exceeds {n}"
        )));
    }
    if i == 0 {
        return Ok(1);
    }
    if i == n {
        return milnor::milnor_number(f);
    }
    if plan.samples == 0 {
        return Err(GermError::InvalidInput("need at least one sample".into()));
    }
    let values: Vec<Result<usize>> = (0..plan.samples)
        .into_par_iter()
        .map(|s| sample_milnor(f, i, plan, s))
        .collect();
    let mut best = usize::MAX;
    for v in values {
        best = best.min(v?);
    }
    if i == 1 {
        let m = f.order().ok_or(GermError::ZeroPolynomial)? as usize;
        if best + 1 != m {
            return Err(GermError::SectionFailed(format!(
                "line sections give mu^1 = {best}, expected m - 1 = {}",
                m - 1
            )));
        }
    }
    Ok(best)
}

/// `(μⁱ)² ≤ μ^{i−1}·μ^{i+1}` for all interior `i`.
pub fn log_convexity_check(mu: &[usize]) -> bool {
    mu.windows(3)
        .all(|w| (w[1] as u128) * (w[1] as u128) <= (w[0] as u128) * (w[2] as u128))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionalProfile {
    pub mu_i: Vec<usize>,
    pub log_convex: bool,
    pub m: u32,
}

pub fn sectional_profile(f: &Polynomial, plan: &SectionPlan) -> Result<SectionalProfile> {
    let m = f.order().ok_or(GermError::ZeroPolynomial)?;
    let mu_i = (0..=f.n())
        .map(|i| sectional_milnor(f, i, plan))
        .collect::<Result<Vec<_>>>()?;
    Ok(SectionalProfile {
        log_convex: log_convexity_check(&mu_i),
        mu_i,
        m,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityBounds {
    pub m: u32,
    /// `μ ≥ (m−1)ⁿ`.
    pub mu_ge: bool,
    /// `τ ≥ (m−1)ⁿ/n`.
    pub tau_ge: bool,
    /// `τ > (m−1)ⁿ/n`.
    pub tau_gt: bool,
}

pub fn multiplicity_bounds(f: &Polynomial, mu: usize, tau: usize) -> Result<MultiplicityBounds> {
    let m = f.order().ok_or(GermError::ZeroPolynomial)?;
    if m <= 1 {
        return Err(GermError::Smooth);
    }
    let n = f.n();
    let power = BigInt::from(m - 1).pow(n as u32);
    let n_tau = BigInt::from(tau) * BigInt::from(n);
    Ok(MultiplicityBounds {
        m,
        mu_ge: BigInt::from(mu) >= power,
        tau_ge: n_tau >= power,
        tau_gt: n_tau > power,
    })
}

/// Whether the lowest-degree part `f_m` has an isolated singularity in the
/// given coordinates. When it does, `μ(f) = (m−1)ⁿ` is asserted.
pub fn semi_homogeneous_check(f: &Polynomial) -> Result<bool> {
    let m = f.order().ok_or(GermError::ZeroPolynomial)?;
    if m <= 1 {
        return Err(GermError::Smooth);
    }
    let leading_form = f.homogeneous_part(m);
    let isolated = match Ideal::jacobian(&leading_form) {
        Ok(j) => stdbasis::quotient_dim(&j)?.is_some(),
        Err(_) => false,
    };
    if isolated {
        let mu = milnor::milnor_number(f)?;
        let expected = (m as usize - 1).pow(f.n() as u32);
        if mu != expected {
            return Err(GermError::Internal(format!(
                "semi-homogeneous germ has mu = {mu}, expected (m-1)^n = {expected}"
            )));
        }
    }
    Ok(isolated)
}
