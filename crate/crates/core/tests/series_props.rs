mod common;

use common::{assert_matches, partition_counts, poch as opoch, Poly};
use proptest::prelude::*;
use qbailey::poch::{geometric, poch_finite, poch_inf};
use qbailey::{eq_to_order, rat, Den, Monomial, Series};

fn series_strategy(den: Den) -> impl Strategy<Value = Series> {
    (-3i64..4, prop::collection::vec((-4i64..30, -9i64..10), 0..12), 8i64..30).prop_map(move |(lead, terms, g)| {
        Series::from_int_terms(den, g, terms.into_iter().map(|(e, c)| (e.max(lead), c)))
    })
}

/// A series with constant term ±1 or 2, hence invertible.
fn unit_series() -> impl Strategy<Value = Series> {
    (
        prop::sample::select(vec![1i64, -1, 2]),
        prop::collection::vec((1i64..20, -5i64..6), 0..8),
        5i64..25,
    )
        .prop_map(|(c0, terms, g)| Series::from_int_terms(Den::One, g, std::iter::once((0, c0)).chain(terms)))
}

fn agree(s: &Series, t: &Series) -> bool {
    let g = s.guarantee().min(t.guarantee());
    eq_to_order(s, t, g).unwrap().is_pass()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(s in series_strategy(Den::One), t in series_strategy(Den::One), w in series_strategy(Den::Two)) {
        prop_assert!(agree(&(&s + &t), &(&t + &s)));
        prop_assert!(agree(&(&s * &t), &(&t * &s)));
        prop_assert!(agree(&(&(&s + &t) + &w), &(&s + &(&t + &w))));
        prop_assert!(agree(&(&(&s * &t) * &w), &(&s * &(&t * &w))));
        prop_assert!(agree(&(&s * &(&t + &w)), &(&(&s * &t) + &(&s * &w))));
        prop_assert!((&s - &s).is_zero());
    }

    #[test]
    fn mul_is_exact_below_its_guarantee(s in series_strategy(Den::One), t in series_strategy(Den::One)) {
        // full convolution of the stored terms
        let p = &s * &t;
        let mut full = std::collections::BTreeMap::new();
        for (a, x) in s.terms() {
            for (b, y) in t.terms() {
                *full.entry(a + b).or_insert_with(|| rat(0)) += x * y;
            }
        }
        for e in p.min_exp().unwrap_or(0).min(-8)..=p.guarantee() {
            prop_assert_eq!(p.coeff(e).unwrap(), full.get(&e).cloned().unwrap_or_else(|| rat(0)));
        }
    }

    #[test]
    fn inverse_is_two_sided(s in unit_series()) {
        let inv = s.inverse().unwrap();
        let prod = &s * &inv;
        prop_assert!(agree(&prod, &Series::one(Den::One, prod.guarantee())));
    }

    #[test]
    fn laurent_inverse(s in unit_series(), m in 1i64..5) {
        let shifted = s.shift(&Monomial::unit(m));
        let inv = shifted.inverse().unwrap();
        prop_assert_eq!(inv.min_exp(), Some(-m));
        prop_assert_eq!(inv.guarantee(), shifted.guarantee() - 2 * m);
        let prod = &shifted * &inv;
        prop_assert!(agree(&prod, &Series::one(Den::One, prod.guarantee())));
    }

    #[test]
    fn stretch_is_multiplicative(s in series_strategy(Den::One), t in series_strategy(Den::One), k in 1i64..4) {
        prop_assert!(agree(&(&s * &t).stretch(k), &(&s.stretch(k) * &t.stretch(k))));
        prop_assert!(agree(&(&s + &t).stretch(k), &(&s.stretch(k) + &t.stretch(k))));
    }

    #[test]
    fn neg_base_is_an_involutive_homomorphism(s in series_strategy(Den::Two), t in series_strategy(Den::Two)) {
        prop_assert_eq!(s.neg_base().neg_base(), s.clone());
        prop_assert!(agree(&(&s * &t).neg_base(), &(&s.neg_base() * &t.neg_base())));
        prop_assert!(agree(&(&s + &t).neg_base(), &(&s.neg_base() + &t.neg_base())));
        let even = s.even_double();
        for e in even.min_exp().unwrap_or(0).min(0)..=even.guarantee() {
            if e % 2 != 0 {
                prop_assert_eq!(even.coeff(e).unwrap(), rat(0));
            }
        }
    }

    #[test]
    fn pochhammer_recurrence(neg in any::<bool>(), e in -3i64..5, m in 1i64..4) {
        let x = if neg { Monomial::neg_unit(e) } else { Monomial::unit(e) };
        let g = 40;
        for n in 0..=12u64 {
            let step = Series::from_terms(Den::One, g + 60, [
                (0, rat(1)),
                (e + m * n as i64, -x.coeff.clone()),
            ]);
            let lhs = poch_finite(&x, m, n + 1, Den::One, g).unwrap();
            let rhs = poch_finite(&x, m, n, Den::One, g + 60).unwrap().mul(&step);
            prop_assert!(eq_to_order(&lhs, &rhs, g).unwrap().is_pass());
        }
    }
}

#[test]
fn poch_inf_agrees_with_long_finite_products() {
    for (x, m) in [
        (Monomial::unit(1), 1),
        (Monomial::neg_unit(2), 2),
        (Monomial::unit(3), 4),
    ] {
        let g = 50;
        let n = (g / m + 2) as u64;
        let finite = poch_finite(&x, m, n, Den::One, g).unwrap();
        assert!(eq_to_order(&poch_inf(&x, m, Den::One, g).unwrap(), &finite, g)
            .unwrap()
            .is_pass());
    }
}

#[test]
fn pentagonal_prefix() {
    let euler = poch_inf(&Monomial::unit(1), 1, Den::One, 12).unwrap();
    // direct product (1-q)(1-q^2)...(1-q^12)
    assert_matches(&euler, &opoch(12, 1, 1, 1, 12), 12);
    let signs: Vec<i64> = (0..=12)
        .map(|e| euler.coeff(e).unwrap().to_integer().try_into().unwrap())
        .collect();
    assert_eq!(signs, vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
}

#[test]
fn partition_prefix() {
    let inv = poch_inf(&Monomial::unit(1), 1, Den::One, 10)
        .unwrap()
        .inverse()
        .unwrap();
    let counts = partition_counts(10);
    assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    assert_matches(&inv, &Poly { c: counts }, 10);
}

#[test]
fn geometric_times_binomial_by_nested_loop() {
    let g = 10;
    let geo = geometric(1, Den::One, g);
    let one_minus_q = Series::from_int_terms(Den::One, g, [(0, 1), (1, -1)]);
    let product = geo.mul(&one_minus_q);
    let mut by_hand = vec![0i64; g as usize + 1];
    for (i, slot) in by_hand.iter_mut().enumerate() {
        for j in 0..=i {
            let a = 1; // every coefficient of 1/(1-q)
            let b = match i - j {
                0 => 1,
                1 => -1,
                _ => 0,
            };
            *slot += a * b;
        }
    }
    for (e, c) in by_hand.iter().enumerate() {
        assert_eq!(product.coeff(e as i64).unwrap(), rat(*c));
    }
}
