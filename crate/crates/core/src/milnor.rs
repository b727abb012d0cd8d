//! Milnor and Tjurina algebras and the multiplication-by-f operator.
//!
//! `M_f = S/J_f` is represented by its staircase basis under the local
//! degrevlex order. Multiplication by `f` is a nilpotent endomorphism `A`
//! of `M_f` whose cokernel is the Tjurina algebra `T_f`; its kernel
//! therefore has dimension `τ`. The image filtration
//! `M_f ⊃ (f) ⊃ (f²) ⊃ … ⊃ (fⁿ) = 0` has graded pieces of dimension
//! `rank Aⁱ − rank Aⁱ⁺¹`, each bounded by `τ`, which gives `μ ≤ n·τ`.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{GermError, Result};
use crate::linalg::RatMatrix;
use crate::poly::{Exponent, MonomialOrder, Polynomial, Rational};
use crate::stdbasis::{self, Ideal, QuotientReducer, StandardBasis};

const LOCAL: MonomialOrder = MonomialOrder::LocalDegRevLex;

/// Largest `μ` for which the dense operator and its powers are built.
/// Memory grows like `n·μ²` exact rationals.
pub const MAX_OPERATOR_DIM: usize = 1200;

fn check_germ(f: &Polynomial) -> Result<()> {
    if f.is_zero() {
        return Err(GermError::InvalidInput(
            "germ is the zero polynomial".into(),
        ));
    }
    if !f.constant_term().is_zero() {
        return Err(GermError::InvalidInput(
            "germ must vanish at the origin (nonzero constant term)".into(),
        ));
    }
    Ok(())
}

/// `dim S/I` for the local standard basis of `ideal`, with the staircase.
fn local_quotient(ideal: &Ideal) -> Result<(StandardBasis, stdbasis::Staircase)> {
    let sb = stdbasis::standard_basis(ideal, LOCAL);
    let st = stdbasis::staircase(&sb)?;
    Ok((sb, st))
}

/// The Milnor algebra `S/J_f` with its staircase basis.
#[derive(Clone, Debug)]
pub struct MilnorAlgebra {
    f: Polynomial,
    reducer: QuotientReducer,
}

impl MilnorAlgebra {
    /// Fails with [`GermError::NotIsolated`] for infinite `μ` and
    /// [`GermError::Smooth`] for `μ = 0`.
    pub fn new(f: &Polynomial) -> Result<Self> {
        check_germ(f)?;
        let (sb, st) = local_quotient(&Ideal::jacobian(f)?)?;
        if !st.finite {
            return Err(GermError::NotIsolated);
        }
        if st.is_empty() {
            return Err(GermError::Smooth);
        }
        Ok(MilnorAlgebra {
            f: f.clone(),
            reducer: QuotientReducer::new(sb, st)?,
        })
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.f.n()
    }

    pub fn mu(&self) -> usize {
        self.reducer.dim()
    }

    pub fn basis(&self) -> &[Exponent] {
        &self.reducer.staircase().monomials
    }

    pub fn jacobian_basis(&self) -> &StandardBasis {
        self.reducer.standard_basis()
    }

    /// Staircase coordinates of the class of `g` in `M_f`.
    pub fn coordinates(&self, g: &Polynomial) -> Vec<Rational> {
        self.reducer.coordinates(g)
    }

    pub fn contains(&self, g: &Polynomial) -> bool {
        stdbasis::membership(g, self.jacobian_basis())
    }
}

/// `μ = dim S/J_f`.
pub fn milnor_number(f: &Polynomial) -> Result<usize> {
    check_germ(f)?;
    let (_, st) = local_quotient(&Ideal::jacobian(f)?)?;
    match (st.finite, st.len()) {
        (false, _) => Err(GermError::NotIsolated),
        (true, 0) => Err(GermError::Smooth),
        (true, mu) => Ok(mu),
    }
}

/// `dim S/(J_f, f)`, or `None` when infinite; no finiteness cross-check.
pub fn tjurina_dim(f: &Polynomial) -> Result<Option<usize>> {
    check_germ(f)?;
    let (_, st) = local_quotient(&Ideal::tjurina(f)?)?;
    Ok(st.finite.then_some(st.len()))
}

/// `τ = dim S/(J_f, f)`.
///
/// Both quotients are computed and must agree on finiteness.
pub fn tjurina_number(f: &Polynomial) -> Result<usize> {
    check_germ(f)?;
    let (_, jac) = local_quotient(&Ideal::jacobian(f)?)?;
    let tau = tjurina_dim(f)?;
    match (jac.finite, tau) {
        (true, Some(0)) => Err(GermError::Smooth),
        (true, Some(tau)) => Ok(tau),
        (false, None) => Err(GermError::NotIsolated),
        (mu_finite, tau) => Err(GermError::Internal(format!(
            "finiteness mismatch: mu finite = {mu_finite}, tau = {tau:?}"
        ))),
    }
}

/// Matrix of multiplication by `f` on the staircase basis of `M_f`,
/// together with all its powers up to `Aⁿ`.
#[derive(Clone, Debug)]
pub struct MultOperator {
    n: usize,
    powers: Vec<RatMatrix>,
    ranks: Vec<usize>,
}

impl MultOperator {
    pub fn matrix(&self) -> &RatMatrix {
        &self.powers[1]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> usize {
        self.powers[0].rows()
    }

    /// `Aⁱ` for `0 ≤ i ≤ n`.
    pub fn power(&self, i: usize) -> &RatMatrix {
        &self.powers[i]
    }

    /// `rank Aⁱ` for `0 ≤ i ≤ n`.
    pub fn rank_of_power(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn rank(&self) -> usize {
        self.ranks[1]
    }

    pub fn is_zero(&self) -> bool {
        self.ranks[1] == 0
    }

    /// `dim ker A = μ − rank A`.
    pub fn kernel_dim(&self) -> usize {
        self.mu() - self.rank()
    }

    /// `dim(ker A ∩ im Aⁱ)`, computed from explicit subspace bases.
    pub fn kernel_image_intersection(&self, i: usize) -> usize {
        let kernel = self.matrix().nullspace();
        let k = kernel.len();
        let image = self.power(i);
        let joined = RatMatrix::from_columns(self.mu(), &kernel).hstack(image);
        k + self.ranks[i] - joined.rank()
    }
}

/// Builds `A` column by column from strong normal forms of `f·b_j`, and
/// checks `Aⁿ = 0`.
pub fn mult_operator(alg: &MilnorAlgebra) -> Result<MultOperator> {
    let mu = alg.mu();
    let n = alg.n();
    if mu > MAX_OPERATOR_DIM {
        return Err(GermError::ResourceLimit(format!(
            "mu = {mu} exceeds the dense operator limit of {MAX_OPERATOR_DIM}"
        )));
    }
    let columns: Vec<Vec<Rational>> = alg
        .basis()
        .par_iter()
        .map(|b| {
            let fb = alg
                .f()
                .mul_term(&Rational::from_integer(BigInt::from(1)), b);
            alg.coordinates(&fb)
        })
        .collect();
    let a = RatMatrix::from_columns(mu, &columns);
    let mut powers = vec![RatMatrix::identity(mu), a.clone()];
    for _ in 2..=n {
        let next = powers.last().unwrap().mul(&a);
        powers.push(next);
    }
    if n == 0 || !powers[n].is_zero() {
        return Err(GermError::Internal(format!(
            "multiplication by f is not nilpotent of order {n}"
        )));
    }
    let ranks: Vec<usize> = powers.par_iter().map(RatMatrix::rank).collect();
    Ok(MultOperator { n, powers, ranks })
}

/// Dimensions of the graded pieces `(fⁱ)/(fⁱ⁺¹)` for `i = 1 … n−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationProfile {
    pub d: Vec<usize>,
    pub tau: usize,
    pub mu: usize,
}

impl FiltrationProfile {
    pub fn decomposition_holds(&self) -> bool {
        self.mu == self.tau + self.d.iter().sum::<usize>()
    }

    pub fn bounded_by_tau(&self) -> bool {
        self.d.iter().all(|&d| d <= self.tau)
    }

    pub fn nonincreasing(&self) -> bool {
        self.d.windows(2).all(|w| w[0] >= w[1])
    }
}

/// `d_i = rank Aⁱ − rank Aⁱ⁺¹`, cross-checked against
/// `dim(ker A ∩ im Aⁱ)`.
pub fn filtration_profile(op: &MultOperator, tau: usize) -> Result<FiltrationProfile> {
    let n = op.n();
    let d: Vec<usize> = (1..n)
        .map(|i| op.rank_of_power(i) - op.rank_of_power(i + 1))
        .collect();
    let direct: Vec<usize> = (1..n)
        .into_par_iter()
        .map(|i| op.kernel_image_intersection(i))
        .collect();
    if d != direct {
        return Err(GermError::Internal(format!(
            "graded pieces {d:?} disagree with kernel intersections {direct:?}"
        )));
    }
    Ok(FiltrationProfile {
        d,
        tau,
        mu: op.mu(),
    })
}

/// Whether `ker A = im Aⁿ⁻¹`, i.e. `ker(f) = (fⁿ⁻¹)` in `M_f`.
///
/// `im Aⁿ⁻¹ ⊆ ker A` always holds because `Aⁿ = 0`, so equality is a
/// dimension count.
pub fn kernel_is_top_power(op: &MultOperator) -> bool {
    let n = op.n();
    op.matrix().mul(op.power(n - 1)).is_zero() && op.rank_of_power(n - 1) == op.kernel_dim()
}

/// Outcome of checking `μ ≤ n·τ` and the filtration identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub n: usize,
    pub mu: usize,
    pub tau: usize,
    pub ratio: Rational,
    pub profile: FiltrationProfile,
    pub mu_le_n_tau: bool,
    pub kernel_matches_tau: bool,
    /// `ker A = im Aⁿ⁻¹`.
    pub kernel_is_top_power: bool,
    /// `μ = n·τ`.
    pub ratio_is_n: bool,
}

impl TheoremCheck {
    pub fn theorem_ok(&self) -> bool {
        self.mu_le_n_tau
            && self.kernel_matches_tau
            && self.profile.decomposition_holds()
            && self.profile.bounded_by_tau()
            && self.profile.nonincreasing()
    }

    /// The equality criterion: both characterizations agree.
    pub fn equality_case_consistent(&self) -> bool {
        self.kernel_is_top_power == self.ratio_is_n
    }
}

/// Runs every check on already computed data; `tau` comes from the
/// standard basis of the Tjurina ideal.
pub fn check_theorem(op: &MultOperator, tau: usize) -> Result<TheoremCheck> {
    if tau == 0 {
        return Err(GermError::Smooth);
    }
    let n = op.n();
    let mu = op.mu();
    let profile = filtration_profile(op, tau)?;
    Ok(TheoremCheck {
        n,
        mu,
        tau,
        ratio: Rational::new(mu.into(), tau.into()),
        mu_le_n_tau: mu <= n * tau,
        kernel_matches_tau: op.kernel_dim() == tau,
        kernel_is_top_power: kernel_is_top_power(op),
        ratio_is_n: mu == n * tau,
        profile,
    })
}

pub fn verify_theorem(f: &Polynomial) -> Result<TheoremCheck> {
    let alg = MilnorAlgebra::new(f)?;
    let tau = tjurina_number(f)?;
    let op = mult_operator(&alg)?;
    check_theorem(&op, tau)
}

/// Whether `ker(f) = (fⁿ⁻¹)` in `M_f`.
pub fn equality_case(f: &Polynomial) -> Result<bool> {
    let check = verify_theorem(f)?;
    if !check.equality_case_consistent() {
        return Err(GermError::Internal(format!(
            "equality criterion mismatch: ker A = im A^(n-1) is {}, mu = n*tau is {}",
            check.kernel_is_top_power, check.ratio_is_n
        )));
    }
    Ok(check.kernel_is_top_power)
}

/// `f^k ∈ J_f`, decided by the weak normal form.
pub fn power_membership(alg: &MilnorAlgebra, k: u32) -> bool {
    alg.contains(&alg.f().pow(k))
}
