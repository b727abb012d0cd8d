//! Standard bases in the local ring ℚ[x]_(x) and quotient dimensions.
//!
//! Reduction follows Mora's tangent cone algorithm: the reducer with the
//! smallest ecart is used, and whenever that reducer has a larger ecart
//! than the current remainder, the remainder itself joins the reducer list.
//! Termination follows from the homogenized picture: after homogenizing, the
//! leading ideals of the growing reducer list form an ascending chain in a
//! Noetherian ring, so only finitely many remainders can be appended, and
//! between appends the ecart of the remainder is bounded, which bounds the
//! number of steps.
//!
//! For the local order, [`standard_basis`] first works modulo `m^{D+1}` for
//! growing `D`, which keeps every polynomial of bounded degree and usually
//! finds the highest corner quickly. When that fails (large or infinite
//! colength), Lazard's method decides: a homogeneous Gröbner basis of the
//! homogenized generators, dehomogenized, is a local standard basis.
//!
//! The result of [`mora_normal_form`] is a weak normal form: `u·g − h` lies
//! in the ideal for some unit `u`. That is enough for membership and for
//! completing the basis. For coordinates in the quotient (needed for the
//! multiplication operator) [`QuotientReducer`] computes a strong normal form, using
//! that an ideal of finite colength contains every monomial of degree past
//! the staircase.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{GermError, Result};
use crate::poly::{Exponent, MonomialOrder, Polynomial, Rational};

/// Default cap on the number of staircase monomials.
pub const DEFAULT_MAX_DIM: usize = 5000;

/// Staircase size cap, read from `GERMLAB_MAX_DIM`.
pub fn max_dim_from_env() -> usize {
    std::env::var("GERMLAB_MAX_DIM")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&v: &usize| v > 0)
        .unwrap_or(DEFAULT_MAX_DIM)
}

/// A nonempty list of nonzero generators in one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    n: usize,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(gens: Vec<Polynomial>) -> Result<Self> {
        let n = gens
            .first()
            .map(Polynomial::n)
            .ok_or_else(|| GermError::InvalidInput("ideal needs a generator".into()))?;
        if let Some(bad) = gens.iter().find(|g| g.n() != n) {
            return Err(GermError::DimensionMismatch(n, bad.n()));
        }
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(GermError::InvalidInput(
                "ideal has no nonzero generator".into(),
            ));
        }
        Ok(Ideal { n, gens })
    }

    /// The Jacobian ideal of `f`.
    pub fn jacobian(f: &Polynomial) -> Result<Self> {
        Ideal::new(f.gradient())
    }

    /// The Tjurina ideal `(∂f/∂x_1, …, ∂f/∂x_n, f)`.
    pub fn tjurina(f: &Polynomial) -> Result<Self> {
        let mut gens = f.gradient();
        gens.push(f.clone());
        Ideal::new(gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }
}

#[derive(Clone, Debug)]
struct Reducer {
    poly: Polynomial,
    lead: Exponent,
    lead_coeff: Rational,
    ecart: u32,
}

impl Reducer {
    fn new(poly: Polynomial, ord: MonomialOrder) -> Self {
        let lt = poly.leading_term(ord).expect("reducers are nonzero");
        let ecart = poly.ecart(ord);
        Reducer {
            poly,
            lead: lt.exp,
            lead_coeff: lt.coeff,
            ecart,
        }
    }
}

/// `h − (LT(h)/LT(r))·r`, cancelling the leading term of `h`.
fn reduce_once(h: &mut Polynomial, h_lead: &Exponent, h_coeff: &Rational, r: &Reducer) {
    let shift = r.lead.quotient_of(h_lead).expect("reducer divides");
    let c = -(h_coeff / &r.lead_coeff);
    h.add_mul_term(&c, &shift, &r.poly);
}

/// Drops terms of degree `>= bound`; they lie in the ideal once the
/// highest corner is known.
fn cut(h: &mut Polynomial, bound: Option<u32>) {
    if let Some(d) = bound {
        h.truncate(d);
    }
}

fn weak_normal_form(
    g: &Polynomial,
    reducers: &[Reducer],
    ord: MonomialOrder,
    bound: Option<u32>,
) -> Polynomial {
    let mut h = g.clone();
    if !ord.is_local() {
        // plain top reduction terminates for well-orders
        while let Ok(lt) = h.leading_term(ord) {
            let Some(r) = reducers.iter().find(|r| r.lead.divides(&lt.exp)) else {
                break;
            };
            reduce_once(&mut h, &lt.exp, &lt.coeff, r);
        }
        return h;
    }
    cut(&mut h, bound);
    let mut extra: Vec<Reducer> = Vec::new();
    loop {
        let Ok(lt) = h.leading_term(ord) else {
            return h;
        };
        let h_ecart = h.ecart(ord);
        // minimal ecart, earliest index on ties; appended remainders come last
        let best = reducers
            .iter()
            .chain(extra.iter())
            .filter(|r| r.lead.divides(&lt.exp))
            .min_by_key(|r| r.ecart);
        let Some(best) = best.cloned() else {
            return h;
        };
        if best.ecart > h_ecart {
            extra.push(Reducer {
                poly: h.clone(),
                lead: lt.exp.clone(),
                lead_coeff: lt.coeff.clone(),
                ecart: h_ecart,
            });
        }
        reduce_once(&mut h, &lt.exp, &lt.coeff, &best);
        cut(&mut h, bound);
    }
}

/// Mora's weak normal form of `g` with respect to `gens`.
///
/// For [`MonomialOrder::GlobalDegRevLex`] this is ordinary top reduction.
pub fn mora_normal_form(g: &Polynomial, gens: &[Polynomial], ord: MonomialOrder) -> Polynomial {
    let reducers: Vec<Reducer> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| Reducer::new(p.clone(), ord))
        .collect();
    weak_normal_form(g, &reducers, ord, None)
}

fn s_polynomial(a: &Reducer, b: &Reducer) -> Polynomial {
    let l = a.lead.lcm(&b.lead);
    let sa = a.lead.quotient_of(&l).expect("lcm");
    let sb = b.lead.quotient_of(&l).expect("lcm");
    let mut s = a.poly.mul_term(&b.lead_coeff, &sa);
    s.add_mul_term(&-a.lead_coeff.clone(), &sb, &b.poly);
    s
}

/// A completed standard basis together with its minimal leading exponents.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    ord: MonomialOrder,
    n: usize,
    reducers: Vec<Reducer>,
    lead_exponents: Vec<Exponent>,
    /// Every monomial of this degree or higher lies in the ideal.
    corner: Option<u32>,
}

impl StandardBasis {
    pub fn ord(&self) -> MonomialOrder {
        self.ord
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Vec<Polynomial> {
        self.reducers.iter().map(|r| r.poly.clone()).collect()
    }

    /// Minimal generators of the leading ideal, pairwise incomparable.
    pub fn lead_exponents(&self) -> &[Exponent] {
        &self.lead_exponents
    }

    pub fn normal_form(&self, g: &Polynomial) -> Polynomial {
        weak_normal_form(g, &self.reducers, self.ord, self.corner)
    }

    pub fn contains(&self, g: &Polynomial) -> bool {
        self.normal_form(g).is_zero()
    }

    /// True when the leading ideal contains the unit monomial.
    pub fn is_unit_ideal(&self) -> bool {
        self.lead_exponents.iter().any(Exponent::is_zero)
    }

    /// Checks that every S-polynomial reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        for i in 0..self.reducers.len() {
            for j in i + 1..self.reducers.len() {
                let s = s_polynomial(&self.reducers[i], &self.reducers[j]);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Staircase size up to which the completion looks for a highest corner.
const CORNER_SCAN_LIMIT: usize = 50_000;

/// First truncation degree tried by the local completion.
const FIRST_TRUNCATION: u32 = 8;

/// Last truncation degree tried before falling back to Lazard's method.
const LAST_TRUNCATION: u32 = 16;

/// Number and largest degree of the monomials of degree `< bound` outside
/// the monomial ideal generated by `leads`; `None` past `cap` monomials.
fn staircase_below(leads: &[&Exponent], n: usize, bound: u32, cap: usize) -> Option<(usize, u32)> {
    if bound == 0 || leads.iter().any(|e| e.is_zero()) {
        return Some((0, 0));
    }
    // each monomial is reached once, by raising variables in index order;
    // its divisors on that path are in the staircase too
    let mut stack = vec![(vec![0u32; n], 0usize)];
    let (mut count, mut max_deg) = (0usize, 0u32);
    while let Some((e, first)) = stack.pop() {
        count += 1;
        if count > cap {
            return None;
        }
        let deg: u32 = e.iter().sum();
        max_deg = max_deg.max(deg);
        if deg + 1 >= bound {
            continue;
        }
        for i in first..n {
            let mut next = e.clone();
            next[i] += 1;
            let exp = Exponent::new(next.clone());
            if !leads.iter().any(|l| l.divides(&exp)) {
                stack.push((next, i));
            }
        }
    }
    Some((count, max_deg))
}

/// Smallest `D` with every monomial of degree `D` in the monomial ideal
/// generated by `leads` together with all monomials of degree `cap`.
/// Returns a value `< cap` only when such a `D` exists below it.
///
/// Without `cap`, the leads alone must contain all monomials of degree `D`;
/// then the ideal they come from has a leading ideal of finite colength,
/// equal colength forces it to contain `m^D`, and so does `I`.
fn corner_of(leads: &[&Exponent], n: usize, cap: Option<u32>) -> Option<u32> {
    match cap {
        Some(c) => {
            let (_, max_deg) = staircase_below(leads, n, c, CORNER_SCAN_LIMIT)?;
            let d = if leads.iter().any(|e| e.is_zero()) {
                0
            } else {
                max_deg + 1
            };
            (d < c).then_some(d)
        }
        None => {
            let has_all_axes = (0..n).all(|i| leads.iter().any(|e| e.pure_power_var() == Some(i)));
            if !has_all_axes && !leads.iter().any(|e| e.is_zero()) {
                return None;
            }
            let owned: Vec<Exponent> = leads.iter().map(|e| (*e).clone()).collect();
            match staircase_of(&owned, n, CORNER_SCAN_LIMIT) {
                Ok(st) if st.finite => Some(st.degree_bound()),
                _ => None,
            }
        }
    }
}

/// All exponents of total degree exactly `d` in `n` variables.
fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    fn go(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Exponent>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Exponent::new(cur.clone()));
            return;
        }
        for a in 0..=left {
            cur[i] = a;
            go(cur, i + 1, left - a, out);
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(&mut vec![0; n], 0, d, &mut out);
    }
    out
}

/// Result of one completion run.
struct Completion {
    basis: Vec<Reducer>,
    /// Degree from which on every monomial is known to lie in the ideal
    /// itself (not just in the truncated ideal).
    corner: Option<u32>,
}

/// Buchberger completion with Mora reduction and the normal selection
/// strategy (smallest lcm degree first, then pair creation order).
///
/// With `truncation = Some(c)` the completion works modulo `m^c`: terms of
/// degree `>= c` are dropped throughout, so it computes a standard basis of
/// `I + m^c` and always terminates quickly. Whenever the leading monomials
/// found so far (together with `m^c`) contain all monomials of some degree
/// `D < c`, then `m^D ⊆ I + m^{D+1}`, and Nakayama's lemma gives
/// `m^D ⊆ I`; from then on the truncation degree is `D` and the result is
/// a standard basis of `I` itself.
fn complete(ideal: &Ideal, ord: MonomialOrder, truncation: Option<u32>) -> Completion {
    let n = ideal.n();
    let local = ord.is_local();
    let mut cap = if local { truncation } else { None };
    let mut corner: Option<u32> = None;
    let mut basis: Vec<Reducer> = Vec::new();
    let mut live: Vec<bool> = Vec::new();
    for g in ideal.gens() {
        let mut g = g.primitive(ord);
        cut(&mut g, cap);
        if !g.is_zero() {
            basis.push(Reducer::new(g, ord));
            live.push(true);
        }
    }
    let refresh = |basis: &mut Vec<Reducer>,
                   live: &mut Vec<bool>,
                   cap: &mut Option<u32>,
                   corner: &mut Option<u32>| {
        if !local {
            return;
        }
        let leads: Vec<&Exponent> = basis
            .iter()
            .zip(live.iter())
            .filter_map(|(r, &l)| l.then_some(&r.lead))
            .collect();
        let Some(d) = corner_of(&leads, n, *cap) else {
            return;
        };
        if corner.is_some_and(|c| c <= d) {
            return;
        }
        *corner = Some(d);
        *cap = Some(d);
        for (r, l) in basis.iter_mut().zip(live.iter_mut()) {
            if !*l {
                continue;
            }
            let mut p = r.poly.clone();
            p.truncate(d);
            if p.is_zero() && r.lead.degree() == d {
                // the leading monomial itself is a member
                *r = Reducer::new(
                    Polynomial::monomial(Rational::from_integer(1.into()), r.lead.clone()),
                    ord,
                );
            } else if p.is_zero() {
                *l = false;
            } else if p.len() != r.poly.len() {
                *r = Reducer::new(p, ord);
            }
        }
    };
    refresh(&mut basis, &mut live, &mut cap, &mut corner);
    let mut pairs: Vec<(u32, usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((basis[i].lead.lcm(&basis[j].lead).degree(), i, j));
        }
    }
    while !pairs.is_empty() {
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| p.0)
            .expect("nonempty");
        let (_, i, j) = pairs.remove(k);
        if basis.iter().zip(&live).any(|(r, &l)| l && r.lead.is_zero()) {
            break;
        }
        if !live[i] || !live[j] {
            continue;
        }
        if cap.is_some_and(|d| basis[i].lead.lcm(&basis[j].lead).degree() >= d) {
            // every term of the S-polynomial has degree past the truncation
            continue;
        }
        let mut s = s_polynomial(&basis[i], &basis[j]);
        cut(&mut s, cap);
        let active: Vec<Reducer> = basis
            .iter()
            .zip(&live)
            .filter(|&(_r, &l)| l).map(|(r, &_l)| r.clone())
            .collect();
        let h = weak_normal_form(&s, &active, ord, cap);
        if h.is_zero() {
            continue;
        }
        let h = Reducer::new(h.primitive(ord), ord);
        let new = basis.len();
        for (i, r) in basis.iter().enumerate() {
            if live[i] {
                pairs.push((r.lead.lcm(&h.lead).degree(), i, new));
            }
        }
        basis.push(h);
        live.push(true);
        refresh(&mut basis, &mut live, &mut cap, &mut corner);
    }
    Completion {
        basis: basis
            .into_iter()
            .zip(live)
            .filter_map(|(r, l)| l.then_some(r))
            .collect(),
        corner,
    }
}

/// Homogenized monomials `x^a t^p` (with `t` stored last) compare by total
/// degree, then by the local order on the `x` part.
fn homogenized_cmp(a: &Exponent, b: &Exponent) -> Ordering {
    let n = a.n() - 1;
    a.degree().cmp(&b.degree()).then_with(|| {
        MonomialOrder::LocalDegRevLex.cmp(
            &Exponent::new(a.as_slice()[..n].to_vec()),
            &Exponent::new(b.as_slice()[..n].to_vec()),
        )
    })
}

fn homogenized_lead(p: &Polynomial) -> Option<(Exponent, Rational)> {
    p.terms()
        .max_by(|x, y| homogenized_cmp(x.0, y.0))
        .map(|(e, c)| (e.clone(), c.clone()))
}

/// Top-reduces a homogeneous `h` until its leading monomial is not divisible
/// by any basis lead; terminates since each degree has finitely many
/// monomials.
fn homogenized_reduce(mut h: Polynomial, basis: &[(Polynomial, Exponent, Rational)]) -> Polynomial {
    while let Some((e, c)) = homogenized_lead(&h) {
        let Some((g, lead, lc)) = basis.iter().find(|b| b.1.divides(&e)) else {
            break;
        };
        let shift = lead.quotient_of(&e).expect("lead divides");
        h.add_mul_term(&-(&c / lc), &shift, g);
    }
    h
}

/// Local standard basis by Lazard's method: homogenize the generators with
/// an extra variable `t`, compute a Gröbner basis for the degree-compatible
/// order [`homogenized_cmp`] (plain Buchberger on homogeneous input), and
/// set `t = 1`. Always terminates, whatever the colength.
fn lazard_basis(ideal: &Ideal) -> Vec<Polynomial> {
    let n = ideal.n();
    let homogenize = |f: &Polynomial| {
        let d = f.degree().unwrap_or(0);
        let terms = f.terms().map(|(e, c)| {
            let mut v = e.as_slice().to_vec();
            v.push(d - e.degree());
            (Exponent::new(v), c.clone())
        });
        Polynomial::from_terms(n + 1, terms).expect("matching arity")
    };
    let mut basis: Vec<(Polynomial, Exponent, Rational)> = Vec::new();
    let mut pairs: Vec<(u32, usize, usize)> = Vec::new();
    let insert = |h: Polynomial,
                  basis: &mut Vec<(Polynomial, Exponent, Rational)>,
                  pairs: &mut Vec<(u32, usize, usize)>| {
        let h = homogenized_reduce(h, basis);
        if let Some((lead, lc)) = homogenized_lead(&h) {
            let new = basis.len();
            for (i, b) in basis.iter().enumerate() {
                pairs.push((b.1.lcm(&lead).degree(), i, new));
            }
            basis.push((h, lead, lc));
        }
    };
    for g in ideal.gens() {
        insert(homogenize(g), &mut basis, &mut pairs);
    }
    while !pairs.is_empty() {
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| p.0)
            .expect("nonempty");
        let (_, i, j) = pairs.remove(k);
        let (a, b) = (&basis[i], &basis[j]);
        let lcm = a.1.lcm(&b.1);
        if lcm == a.1.product(&b.1) {
            // coprime leading monomials: the S-polynomial reduces to zero
            continue;
        }
        let mut s = a.0.mul_term(&b.2, &a.1.quotient_of(&lcm).expect("divides"));
        s.add_mul_term(
            &-a.2.clone(),
            &b.1.quotient_of(&lcm).expect("divides"),
            &b.0,
        );
        insert(s, &mut basis, &mut pairs);
    }
    basis
        .into_iter()
        .map(|(p, _, _)| {
            let terms = p
                .terms()
                .map(|(e, c)| (Exponent::new(e.as_slice()[..n].to_vec()), c.clone()));
            Polynomial::from_terms(n, terms).expect("matching arity")
        })
        .collect()
}

/// Standard basis of `ideal` under `ord`.
///
/// For the local order, truncated completions modulo `m^{D+1}` are tried
/// with `D = 8, 16` until one proves a highest corner; this keeps
/// every intermediate polynomial of bounded degree. Otherwise (large or
/// infinite colength) Lazard's method decides.
pub fn standard_basis(ideal: &Ideal, ord: MonomialOrder) -> StandardBasis {
    let n = ideal.n();
    let mut done = None;
    if ord.is_local() {
        let max_dim = max_dim_from_env();
        let mut d = FIRST_TRUNCATION;
        while d <= LAST_TRUNCATION {
            let c = complete(ideal, ord, Some(d + 1));
            if c.corner.is_some() {
                done = Some(c);
                break;
            }
            let leads: Vec<&Exponent> = c.basis.iter().map(|r| &r.lead).collect();
            if staircase_below(&leads, n, d + 1, max_dim).is_none() {
                break;
            }
            d *= 2;
        }
        if done.is_none() {
            let basis: Vec<Reducer> = lazard_basis(ideal)
                .into_iter()
                .filter(|p| !p.is_zero())
                .map(|p| Reducer::new(p.primitive(ord), ord))
                .collect();
            let leads: Vec<&Exponent> = basis.iter().map(|r| &r.lead).collect();
            let corner = corner_of(&leads, n, None);
            done = Some(Completion { basis, corner });
        }
    }
    let Completion { mut basis, corner } = done.unwrap_or_else(|| complete(ideal, ord, None));
    if let Some(d) = corner {
        // monomials of degree D not yet covered are ideal members too
        for e in monomials_of_degree(n, d) {
            if !basis.iter().any(|r| r.lead.divides(&e)) {
                basis.push(Reducer::new(
                    Polynomial::monomial(Rational::from_integer(1.into()), e),
                    ord,
                ));
            }
        }
    }

    // minimalize: drop elements whose leading monomial is a proper multiple
    // of another's, or repeats an earlier one
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| {
            !basis.iter().enumerate().any(|(j, r)| {
                j != i && r.lead.divides(&basis[i].lead) && (r.lead != basis[i].lead || j < i)
            })
        })
        .collect();
    let reducers: Vec<Reducer> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(r, k)| k.then_some(r))
        .collect();
    let mut lead_exponents: Vec<Exponent> = reducers.iter().map(|r| r.lead.clone()).collect();
    lead_exponents.sort_by(|a, b| ord.cmp(b, a));
    StandardBasis {
        ord,
        n,
        reducers,
        lead_exponents,
        corner,
    }
}

/// Monomials outside a leading ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    /// Sorted descending in the local order, so `1` comes first.
    pub monomials: Vec<Exponent>,
    pub finite: bool,
}

impl Staircase {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// One more than the largest total degree in the staircase.
    pub fn degree_bound(&self) -> u32 {
        self.monomials
            .iter()
            .map(Exponent::degree)
            .max()
            .map_or(0, |d| d + 1)
    }
}

/// Enumerates the staircase of a leading ideal; infinite staircases come
/// back with `finite = false` and no monomials.
pub fn staircase_of(lead: &[Exponent], n: usize, max_dim: usize) -> Result<Staircase> {
    let mut bounds = vec![u32::MAX; n];
    for e in lead {
        if e.is_zero() {
            return Ok(Staircase {
                monomials: Vec::new(),
                finite: true,
            });
        }
        if let Some(i) = e.pure_power_var() {
            bounds[i] = bounds[i].min(e[i]);
        }
    }
    if bounds.contains(&u32::MAX) {
        return Ok(Staircase {
            monomials: Vec::new(),
            finite: false,
        });
    }
    let mut out = Vec::new();
    // depth-first over the order ideal, raising only variables at or after
    // the last raised one so each monomial is visited once
    let mut stack = vec![(Exponent::zero(n), 0usize)];
    while let Some((e, first)) = stack.pop() {
        if lead.iter().any(|l| l.divides(&e)) {
            continue;
        }
        out.push(e.clone());
        if out.len() > max_dim {
            return Err(GermError::ResourceLimit(format!(
                "staircase exceeds {max_dim} monomials (GERMLAB_MAX_DIM)"
            )));
        }
        for i in first..n {
            if e[i] + 1 < bounds[i] {
                let mut v = e.as_slice().to_vec();
                v[i] += 1;
                stack.push((Exponent::new(v), i));
            }
        }
    }
    let ord = MonomialOrder::LocalDegRevLex;
    out.sort_by(|a, b| ord.cmp(b, a));
    Ok(Staircase {
        monomials: out,
        finite: true,
    })
}

pub fn staircase(sb: &StandardBasis) -> Result<Staircase> {
    staircase_of(sb.lead_exponents(), sb.n(), max_dim_from_env())
}

/// `dim S/I` in the local ring; `None` when infinite.
pub fn quotient_dim(ideal: &Ideal) -> Result<Option<usize>> {
    let sb = standard_basis(ideal, MonomialOrder::LocalDegRevLex);
    let st = staircase(&sb)?;
    Ok(st.finite.then_some(st.len()))
}

pub fn membership(g: &Polynomial, sb: &StandardBasis) -> bool {
    sb.contains(g)
}

/// Monomial key ordered by the local degrevlex order.
#[derive(Clone, PartialEq, Eq, Debug)]
struct LocalKey(Exponent);

impl Ord for LocalKey {
    fn cmp(&self, other: &Self) -> Ordering {
        MonomialOrder::LocalDegRevLex.cmp(&self.0, &other.0)
    }
}

impl PartialOrd for LocalKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Strong normal forms modulo a local standard basis of finite colength,
/// as coordinate vectors on the staircase.
///
/// Every monomial of degree at least the staircase degree bound lies in the
/// leading ideal, hence (by the highest-corner lemma for degree orderings)
/// in the ideal itself; remainders are truncated there. Below the bound the
/// monomials form a finite set on which the local order is a well-order,
/// and each reduction step replaces the current largest monomial by
/// strictly smaller ones, so the process stops.
#[derive(Clone, Debug)]
pub struct QuotientReducer {
    sb: StandardBasis,
    staircase: Staircase,
    index: HashMap<Exponent, usize>,
    bound: u32,
}

impl QuotientReducer {
    pub fn new(sb: StandardBasis, staircase: Staircase) -> Result<Self> {
        if !sb.ord().is_local() {
            return Err(GermError::InvalidInput(
                "strong normal forms need the local ordering".into(),
            ));
        }
        if !staircase.finite {
            return Err(GermError::NotIsolated);
        }
        let index = staircase
            .monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let bound = staircase.degree_bound();
        Ok(QuotientReducer {
            sb,
            staircase,
            index,
            bound,
        })
    }

    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    pub fn standard_basis(&self) -> &StandardBasis {
        &self.sb
    }

    pub fn dim(&self) -> usize {
        self.staircase.len()
    }

    /// Coordinates of the class of `g` on the staircase basis.
    pub fn coordinates(&self, g: &Polynomial) -> Vec<Rational> {
        let mut coords = vec![Rational::zero(); self.dim()];
        let mut h: BTreeMap<LocalKey, Rational> = g
            .terms()
            .filter(|(e, _)| e.degree() < self.bound)
            .map(|(e, c)| (LocalKey(e.clone()), c.clone()))
            .collect();
        while let Some((LocalKey(e), c)) = h.pop_last() {
            if let Some(&i) = self.index.get(&e) {
                coords[i] = c;
                continue;
            }
            let r = self
                .sb
                .reducers
                .iter()
                .filter(|r| r.lead.divides(&e))
                .min_by_key(|r| r.ecart)
                .expect("monomial outside the staircase has a reducer");
            let shift = r.lead.quotient_of(&e).expect("divides");
            let factor = -(&c / &r.lead_coeff);
            for (te, tc) in r.poly.terms() {
                if *te == r.lead {
                    continue;
                }
                let m = te.product(&shift);
                if m.degree() >= self.bound {
                    continue;
                }
                let key = LocalKey(m);
                let delta = tc * &factor;
                match h.entry(key) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
        }
        coords
    }

    /// The polynomial whose terms are the staircase coordinates of `g`.
    pub fn reduce(&self, g: &Polynomial) -> Polynomial {
        let coords = self.coordinates(g);
        let n = self.sb.n();
        Polynomial::from_terms(
            n,
            self.staircase
                .monomials
                .iter()
                .cloned()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero()),
        )
        .expect("same ring")
    }

    /// Coordinates of the unit class.
    pub fn unit_vector(&self) -> Vec<Rational> {
        self.coordinates(&Polynomial::one(self.sb.n()))
    }
}
