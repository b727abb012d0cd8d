use germlab::milnor;
use germlab::newton;
use germlab::oracle::{self, OracleDim};
use germlab::parse::{format_poly, parse_poly};
use germlab::stdbasis::{quotient_dim, staircase, standard_basis, Ideal};
use germlab::{Exponent, MonomialOrder, Polynomial, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

const NAMES: [&str; 3] = ["x", "y", "z"];

fn vars(n: usize) -> Vec<String> {
    NAMES[..n].iter().map(|s| s.to_string()).collect()
}

fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Random polynomial with up to `len` terms of degree at most `deg`.
fn poly(n: usize, deg: u32, len: usize) -> impl Strategy<Value = Polynomial> {
    let term = (
        prop::collection::vec(0..=deg, n),
        -6i64..=6,
        prop_oneof![Just(1i64), 1i64..=4],
    );
    prop::collection::vec(term, 0..=len).prop_map(move |terms| {
        Polynomial::from_terms(
            n,
            terms
                .into_iter()
                .map(|(e, a, b)| (Exponent::new(e), rat(a, b))),
        )
        .unwrap()
    })
}

fn nonzero_poly(n: usize, deg: u32, len: usize) -> impl Strategy<Value = Polynomial> {
    poly(n, deg, len).prop_filter("nonzero", |p| !p.is_zero())
}

/// A germ with pure powers in every variable plus random higher terms,
/// so that its singularity is isolated for almost every draw.
fn germ(n: usize) -> impl Strategy<Value = Polynomial> {
    (
        prop::collection::vec(2u32..=5, n),
        prop::collection::vec((prop::collection::vec(0u32..=3, n), -3i64..=3), 0..=3),
    )
        .prop_map(move |(powers, extra)| {
            let mut terms: Vec<(Exponent, Rational)> = powers
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    let mut e = vec![0; n];
                    e[i] = a;
                    (Exponent::new(e), rat(1, 1))
                })
                .collect();
            for (e, c) in extra {
                // mixed terms only, so no pure power can cancel
                let e = Exponent::new(e);
                if e.degree() >= 2 && e.pure_power_var().is_none() {
                    terms.push((e, rat(c, 1)));
                }
            }
            Polynomial::from_terms(n, terms).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in poly(3, 3, 5), b in poly(3, 3, 5), c in poly(3, 3, 5)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(3), a.clone());
    }

    #[test]
    fn leibniz_rule(a in poly(3, 4, 5), b in poly(3, 4, 5), i in 0usize..3) {
        let lhs = (&a * &b).partial(i).unwrap();
        let rhs = &(&a.partial(i).unwrap() * &b) + &(&a * &b.partial(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn order_is_additive(a in nonzero_poly(3, 4, 5), b in nonzero_poly(3, 4, 5)) {
        let prod = &a * &b;
        prop_assert_eq!(prod.order(), Some(a.order().unwrap() + b.order().unwrap()));
    }

    #[test]
    fn leading_terms_multiply(a in nonzero_poly(3, 4, 5), b in nonzero_poly(3, 4, 5)) {
        for ord in [MonomialOrder::LocalDegRevLex, MonomialOrder::GlobalDegRevLex] {
            let la = a.leading_term(ord).unwrap();
            let lb = b.leading_term(ord).unwrap();
            let lp = (&a * &b).leading_term(ord).unwrap();
            prop_assert_eq!(lp.exp, la.exp.product(&lb.exp));
            prop_assert_eq!(lp.coeff, la.coeff * lb.coeff);
        }
    }

    #[test]
    fn format_round_trips(p in poly(3, 5, 6)) {
        let v = vars(3);
        let text = format_poly(&p, &v);
        prop_assert_eq!(parse_poly(&text, &v).unwrap(), p);
    }

    #[test]
    fn combinations_of_generators_are_members(
        f in germ(2),
        a in poly(2, 3, 3),
        b in poly(2, 3, 3),
    ) {
        let ideal = Ideal::jacobian(&f).unwrap();
        let sb = standard_basis(&ideal, MonomialOrder::LocalDegRevLex);
        // a partial may vanish, so the ideal can have a single generator
        let g = ideal
            .gens()
            .iter()
            .zip([&a, &b])
            .fold(Polynomial::zero(2), |acc, (gen, c)| &acc + &(c * gen));
        prop_assert!(sb.contains(&g));
        prop_assert!(sb.basis().iter().all(|h| sb.contains(h)));
    }

    #[test]
    fn quotient_dim_ignores_variable_order_and_scaling(f in germ(3), c in 1i64..=5) {
        let Ok(Some(d)) = Ideal::jacobian(&f).and_then(|i| quotient_dim(&i)) else {
            return Ok(());
        };
        let g = f.permute(&[2, 0, 1]).unwrap();
        prop_assert_eq!(quotient_dim(&Ideal::jacobian(&g).unwrap()).unwrap(), Some(d));
        let scaled: Vec<Polynomial> = Ideal::jacobian(&f)
            .unwrap()
            .gens()
            .iter()
            .map(|p| p.scale(&rat(c, 7)))
            .collect();
        prop_assert_eq!(quotient_dim(&Ideal::new(scaled).unwrap()).unwrap(), Some(d));
    }

    #[test]
    fn engine_matches_oracle(f in germ(2)) {
        match milnor::milnor_number(&f) {
            Ok(mu) => {
                prop_assert_eq!(oracle::oracle_milnor(&f).unwrap(), OracleDim::Finite(mu));
                let tau = milnor::tjurina_number(&f).unwrap();
                prop_assert_eq!(oracle::oracle_tjurina(&f).unwrap(), OracleDim::Finite(tau));
            }
            Err(_) => {
                // an infinite quotient never stabilizes under truncation
                let ideal = Ideal::jacobian(&f).unwrap();
                let low = oracle::truncated_dim(&ideal, 8).unwrap();
                let high = oracle::truncated_dim(&ideal, 16).unwrap();
                prop_assert!(low < high);
            }
        }
    }

    #[test]
    fn newton_number_ignores_variable_order(f in germ(3)) {
        let nu = newton::newton_number(&f).unwrap();
        prop_assert_eq!(newton::newton_number(&f.permute(&[1, 2, 0]).unwrap()).unwrap(), nu.clone());
        if let Ok(mu) = milnor::milnor_number(&f) {
            prop_assert!(BigInt::from(mu) >= nu);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn engine_matches_oracle_in_three_variables(f in germ(3)) {
        if let Ok(mu) = milnor::milnor_number(&f) {
            prop_assert_eq!(oracle::oracle_milnor(&f).unwrap(), OracleDim::Finite(mu));
            let tau = milnor::tjurina_number(&f).unwrap();
            prop_assert_eq!(oracle::oracle_tjurina(&f).unwrap(), OracleDim::Finite(tau));
        }
    }

    #[test]
    fn theorem_holds_on_random_germs(f in germ(3)) {
        if let Ok(c) = milnor::verify_theorem(&f) {
            prop_assert!(c.theorem_ok());
            prop_assert!(c.equality_case_consistent());
        }
    }
}

/// For a homogeneous ideal the local and global standard bases see the
/// same finite quotient.
#[test]
fn local_and_global_agree_on_homogeneous_ideals() {
    for src in [
        "x^3+y^3+z^3",
        "x^4+y^4+z^4+x^2*y^2",
        "x^3+y^3+z^3+x*y*z",
        "x^5+y^5+x^2*y^3",
    ] {
        let n = if src.contains('z') { 3 } else { 2 };
        let f = parse_poly(src, &vars(n)).unwrap();
        let ideal = Ideal::jacobian(&f).unwrap();
        let local = staircase(&standard_basis(&ideal, MonomialOrder::LocalDegRevLex)).unwrap();
        let global = staircase(&standard_basis(&ideal, MonomialOrder::GlobalDegRevLex)).unwrap();
        assert!(local.finite && global.finite, "{src}");
        assert_eq!(local.len(), global.len(), "{src}");
    }
}
