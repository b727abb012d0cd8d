//! Sparse multivariate polynomials over exact rationals.
//!
//! Germs are represented by polynomial representatives. Every invariant
//! computed by this crate (Milnor and Tjurina numbers, multiplicity, Newton
//! number) is determined by a finite jet, so nothing is lost by restricting
//! to polynomials.
//!
//! Coefficients live in ℚ rather than ℂ. All dimensions computed here are
//! ranks of linear systems with rational entries (either implicitly, through
//! a standard basis, or explicitly, through Gaussian elimination). Gaussian
//! elimination performs the same pivot steps over any extension field, so a
//! rank over ℚ equals the rank over ℂ and the quotient dimensions agree.
//!
//! The ring written ℂ{x₁,…,xₙ} is convergent power series while the text
//! around it speaks of formal power series; for ideals of finite colength
//! generated by polynomials both completions give the same quotient, so the
//! distinction plays no role here.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{GermError, Result};

pub type Rational = BigRational;

/// Exponent vector of a monomial `x^e`.
///
/// The derived `Ord` is the global degree reverse lexicographic order,
/// ascending, which gives polynomials a canonical term order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(e: Vec<u32>) -> Self {
        Exponent(e)
    }

    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    /// Exponent of the variable `x_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponent(e)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Exponent) -> Option<Exponent> {
        if !self.divides(other) {
            return None;
        }
        Some(Exponent(
            other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
        ))
    }

    pub fn product(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Index of the variable if this is a pure power `x_i^k` with `k ≥ 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &a) in self.0.iter().enumerate() {
            if a > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl std::ops::Index<usize> for Exponent {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

/// Reverse lexicographic tie-break for monomials of equal total degree:
/// `a > b` iff the last nonzero entry of `a - b` is negative.
fn revlex_tie(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        MonomialOrder::GlobalDegRevLex.cmp(self, other)
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomial orderings. Both share the reverse lexicographic tie-break on
/// equal total degree and differ only in which degree wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Lower total degree is larger; `1` is the largest monomial.
    LocalDegRevLex,
    /// Higher total degree is larger.
    GlobalDegRevLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Exponent, b: &Exponent) -> Ordering {
        let by_degree = a.degree().cmp(&b.degree());
        let by_degree = match self {
            MonomialOrder::LocalDegRevLex => by_degree.reverse(),
            MonomialOrder::GlobalDegRevLex => by_degree,
        };
        by_degree.then_with(|| revlex_tie(&a.0, &b.0))
    }

    pub fn is_local(self) -> bool {
        matches!(self, MonomialOrder::LocalDegRevLex)
    }
}

/// A nonzero coefficient times a monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub coeff: Rational,
    pub exp: Exponent,
}

/// Sparse polynomial in `n` variables with rational coefficients.
///
/// No zero coefficients are stored; terms iterate in descending global
/// degree reverse lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(c, Exponent::zero(n))
    }

    pub fn monomial(c: Rational, exp: Exponent) -> Self {
        let n = exp.n();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Polynomial { n, terms }
    }

    /// The variable `x_i` (0-based).
    pub fn var(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(GermError::VariableOutOfRange { index: i, n });
        }
        Ok(Self::monomial(Rational::one(), Exponent::unit(n, i)))
    }

    /// Builds a polynomial from terms, summing repeated exponents.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Polynomial::zero(n);
        for (e, c) in terms {
            if e.n() != n {
                return Err(GermError::DimensionMismatch(n, e.n()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending global degrevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn coeff(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Exponent::zero(self.n))
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.n != other.n {
            return Err(GermError::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = Polynomial::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.product(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// `self * c * x^shift`.
    pub fn mul_term(&self, c: &Rational, shift: &Exponent) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.product(shift), a * c))
                .collect(),
        }
    }

    /// In-place `self += c * x^shift * other`.
    pub fn add_mul_term(&mut self, c: &Rational, shift: &Exponent, other: &Polynomial) {
        debug_assert_eq!(self.n, other.n);
        for (e, a) in &other.terms {
            self.add_term(e.product(shift), a * c);
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.n);
        for _ in 0..k {
            result = &result * self;
        }
        result
    }

    /// Formal partial derivative with respect to `x_i` (0-based).
    pub fn partial(&self, i: usize) -> Result<Polynomial> {
        if i >= self.n {
            return Err(GermError::VariableOutOfRange {
                index: i,
                n: self.n,
            });
        }
        let mut out = Polynomial::zero(self.n);
        for (e, c) in &self.terms {
            let a = e[i];
            if a == 0 {
                continue;
            }
            let mut d = e.0.clone();
            d[i] -= 1;
            out.add_term(Exponent(d), c * Rational::from_integer(BigInt::from(a)));
        }
        Ok(out)
    }

    /// All first partial derivatives.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.n)
            .map(|i| self.partial(i).expect("index in range"))
            .collect()
    }

    /// Minimal total degree over the support (the multiplicity of a germ);
    /// `None` stands for infinity on the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).min()
    }

    /// Maximal total degree over the support.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Exponent::degree)
    }

    pub fn leading_exponent(&self, ord: MonomialOrder) -> Option<&Exponent> {
        match ord {
            MonomialOrder::GlobalDegRevLex => self.terms.keys().next_back(),
            MonomialOrder::LocalDegRevLex => self.terms.keys().max_by(|a, b| ord.cmp(a, b)),
        }
    }

    pub fn leading_term(&self, ord: MonomialOrder) -> Result<Term> {
        let exp = self
            .leading_exponent(ord)
            .ok_or(GermError::ZeroPolynomial)?;
        Ok(Term {
            coeff: self.terms[exp].clone(),
            exp: exp.clone(),
        })
    }

    /// `deg(p) - deg(LM(p))`, the quantity driving Mora's reducer choice.
    pub fn ecart(&self, ord: MonomialOrder) -> u32 {
        match (self.degree(), self.leading_exponent(ord)) {
            (Some(d), Some(lm)) => d - lm.degree(),
            _ => 0,
        }
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.order() == self.degree()
    }

    /// Drops every term of total degree `≥ d`.
    pub fn truncate(&mut self, d: u32) {
        self.terms.retain(|e, _| e.degree() < d);
    }

    /// Positive primitive integer multiple: denominators cleared, integer
    /// content removed, leading coefficient under `ord` positive.
    pub fn primitive(&self, ord: MonomialOrder) -> Polynomial {
        let Some(lead) = self.leading_exponent(ord) else {
            return self.clone();
        };
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            let num = c.numer() * (&denom_lcm / c.denom());
            content = content.gcd(&num);
        }
        let mut factor = Rational::new(denom_lcm, content);
        if self.terms[lead].is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Substitutes `x_j ↦ images[j]`; the result lives in the ring of the
    /// images.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.n {
            return Err(GermError::DimensionMismatch(self.n, images.len()));
        }
        let m = images.first().map(Polynomial::n).unwrap_or(0);
        if let Some(bad) = images.iter().find(|p| p.n != m) {
            return Err(GermError::DimensionMismatch(m, bad.n));
        }
        // powers[j][k] = images[j]^k, built lazily up to the needed degree
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(m)]; self.n];
        let mut out = Polynomial::zero(m);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(m, c.clone());
            for j in 0..self.n {
                let k = e[j] as usize;
                while powers[j].len() <= k {
                    let next = powers[j].last().unwrap() * &images[j];
                    powers[j].push(next);
                }
                if k > 0 {
                    term = &term * &powers[j][k];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Result<Polynomial> {
        if perm.len() != self.n {
            return Err(GermError::DimensionMismatch(self.n, perm.len()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(GermError::InvalidInput("not a permutation".into()));
            }
        }
        Polynomial::from_terms(
            self.n,
            self.terms.iter().map(|(e, c)| {
                let mut f = vec![0; self.n];
                for (i, &a) in e.0.iter().enumerate() {
                    f[perm[i]] = a;
                }
                (Exponent(f), c.clone())
            }),
        )
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.n).map(|i| format!("x{i}")).collect();
        f.write_str(&crate::parse::format_poly(self, &names))
    }
}
