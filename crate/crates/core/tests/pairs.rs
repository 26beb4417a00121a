mod common;

use common::{assert_matches, poch, poch_inf as opoch_inf, Poly};
use qbailey::bailey::{
    apply_e1, apply_s1, check_pair, lemma_xnegq_y_inf, lemma_xy_inf, multi_sum_2_19, multi_sum_2_19_window, zero_pair,
};
use qbailey::pairs::{e1_of_bar, pair_bar, pair_hm, pair_lo, pair_thm21, pair_unit, registered_pairs, s1_of_thm21};
use qbailey::{eq_to_order, Error};

#[test]
fn registered_pairs_satisfy_their_definition() {
    for p in registered_pairs() {
        let r = check_pair(&p, 10, 40);
        assert!(r.is_pass(), "{r}");
    }
}

/// `alpha_n` of the (q⁴, q⁴) pair, from its defining blocks.
fn lo_alpha(n: usize, g: usize) -> Poly {
    let ni = n as i64;
    let lead = ni * (ni + 1) + 2 * ni * ni + ni;
    let sign = if n % 2 == 1 { -1 } else { 1 };
    let mut num = Poly::zero(g);
    for j in -ni..=ni {
        let alt = if j.rem_euclid(2) == 1 { -1 } else { 1 };
        for (e, c) in [(lead - j * j, sign + alt), (lead + 2 * ni + 1 - j * j, sign - alt)] {
            if e as usize <= g {
                num.c[e as usize] += c as i128;
            }
        }
    }
    num.mul(&Poly::binomial(g, -1, 2).inv())
}

#[test]
fn lo_pair_against_direct_summation() {
    let g = 60;
    let p = pair_lo();
    for n in 0..=8usize {
        let beta = poch(g, -1, 4, 2, 2 * n).mul(&poch(g, 1, 2, 4, n + 1)).inv().scale(2);
        let mut relation = Poly::zero(g);
        for j in 0..=n {
            let denom = poch(g, 1, 4, 4, n - j).mul(&poch(g, 1, 8, 4, n + j));
            relation = relation.add(&lo_alpha(j, g).mul(&denom.inv()));
        }
        assert_eq!(relation, beta, "n={n}");
        assert_matches(&p.beta(n as u64, g as i64).unwrap(), &beta, g);
        assert_matches(&p.alpha(n as u64, g as i64).unwrap(), &lo_alpha(n, g), g);
    }
}

#[test]
fn index_zero_is_forced() {
    for p in registered_pairs() {
        let (a, b) = (p.alpha(0, 30).unwrap(), p.beta(0, 30).unwrap());
        assert!(eq_to_order(&a, &b, 30).unwrap().is_pass(), "{}", p.name());
    }
}

#[test]
fn transforms_preserve_pairs() {
    for p in registered_pairs() {
        let r = check_pair(&apply_s1(&p), 8, 40);
        assert!(r.is_pass(), "S1({}): {r}", p.name());
        match apply_e1(&p) {
            Ok(q) => {
                let r = check_pair(&q, 8, 40);
                assert!(r.is_pass(), "E1({}): {r}", p.name());
            }
            Err(Error::Base(_)) => assert!(p.base() != 2 || p.a().exp % 2 != 0),
            Err(e) => panic!("{e}"),
        }
    }
    assert!(check_pair(&apply_s1(&pair_hm()), 8, 40).is_pass());
    assert!(check_pair(&e1_of_bar(), 6, 60).is_pass());
}

#[test]
fn e1_of_bar_reproduces_lo() {
    let (from, to) = (e1_of_bar(), pair_lo());
    assert_eq!(from.a(), to.a());
    assert_eq!(from.base(), to.base());
    for n in 0..=8 {
        // exact equality of the stored series, not just agreement to order
        assert_eq!(from.alpha(n, 60).unwrap(), to.alpha(n, 60).unwrap(), "alpha n={n}");
        let (b1, b2) = (from.beta(n, 60).unwrap(), to.beta(n, 60).unwrap());
        assert!(eq_to_order(&b1, &b2, 60).unwrap().is_pass(), "beta n={n}");
    }
}

#[test]
fn s1_of_thm21_is_bar_with_q_halved() {
    let (from, to) = (s1_of_thm21(), pair_bar());
    for n in 0..=10 {
        let a = from.alpha(n, 40).unwrap().stretch(2);
        assert!(eq_to_order(&a, &to.alpha(n, 81).unwrap(), 81).unwrap().is_pass());
        let b = from.beta(n, 40).unwrap().stretch(2);
        assert!(eq_to_order(&b, &to.beta(n, 81).unwrap(), 81).unwrap().is_pass());
    }
}

#[test]
fn thm21_alpha_has_no_negative_exponents() {
    let p = pair_thm21();
    for n in 0..=10 {
        let a = p.alpha(n, 40).unwrap();
        assert!(a.min_exp().unwrap() >= 0);
        assert!(a.is_integral());
    }
}

#[test]
fn bailey_lemma_holds_for_every_pair() {
    for p in registered_pairs() {
        let (lhs, rhs) = lemma_xy_inf(&p, 60).unwrap();
        assert!(
            eq_to_order(&lhs, &rhs, 60).unwrap().is_pass(),
            "X,Y -> inf for {}",
            p.name()
        );
        match lemma_xnegq_y_inf(&p, 60) {
            Ok((lhs, rhs)) => {
                assert!(
                    eq_to_order(&lhs, &rhs, 60).unwrap().is_pass(),
                    "X = -q for {}",
                    p.name()
                );
            }
            Err(Error::Base(_)) => assert_ne!(p.base(), 1),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn lemma_sides_for_the_unit_pair() {
    let g = 30;
    let p = pair_unit();
    // Σ q^{n²+n}/((q)_n (q²;q)_n) = 1/(q²;q)_inf
    let mut lhs = Poly::zero(g);
    for n in 0..6 {
        let w = n * n + n;
        lhs = lhs.add(&poch(g, 1, 1, 1, n).mul(&poch(g, 1, 2, 1, n)).inv().shift(w));
    }
    let rhs = opoch_inf(g, 1, 2, 1).inv();
    assert_eq!(lhs, rhs);
    let (l, r) = lemma_xy_inf(&p, g as i64).unwrap();
    assert_matches(&l, &lhs, g);
    assert_matches(&r, &rhs, g);

    // Σ (-q)_n q^{n(n+1)/2}/((q)_n (q²;q)_n) = (-q)_inf/(q²;q)_inf
    let mut lhs = Poly::zero(g);
    for n in 0..9 {
        let w = n * (n + 1) / 2;
        let term = poch(g, -1, 1, 1, n).mul(&poch(g, 1, 1, 1, n).mul(&poch(g, 1, 2, 1, n)).inv());
        lhs = lhs.add(&term.shift(w));
    }
    let rhs = opoch_inf(g, -1, 1, 1).mul(&opoch_inf(g, 1, 2, 1).inv());
    assert_eq!(lhs, rhs);
    let (l, r) = lemma_xnegq_y_inf(&p, g as i64).unwrap();
    assert_matches(&l, &lhs, g);
    assert_matches(&r, &rhs, g);
}

#[test]
fn zero_pair_gives_zero() {
    let z = zero_pair("zero", 1, 1);
    let (l, r) = lemma_xy_inf(&z, 20).unwrap();
    assert!(l.is_zero() && r.is_zero());
    let (l, r) = lemma_xnegq_y_inf(&z, 20).unwrap();
    assert!(l.is_zero() && r.is_zero());
    assert!(matches!(lemma_xnegq_y_inf(&pair_lo(), 20), Err(Error::Base(_))));
}

/// Every weakly decreasing `k`-tuple with `Σ(n_i² + n_i) <= g`.
fn tuples(k: usize, g: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, cap: usize, budget: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for n in 0..=cap {
            let w = n * n + n;
            if w > budget {
                break;
            }
            prefix.push(n);
            go(k, n, budget - w, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, g, g, &mut Vec::new(), &mut out);
    out
}

#[test]
fn multi_sum_against_tuple_enumeration() {
    for (k, g) in [(2usize, 30usize), (3, 30), (4, 24)] {
        let mut oracle = Poly::zero(g);
        for t in tuples(k, g) {
            let w: usize = t.iter().map(|n| n * n + n).sum();
            let mut denom = Poly::one(g);
            for pair in t.windows(2) {
                denom = denom.mul(&poch(g, 1, 1, 1, pair[0] - pair[1]));
            }
            let last = t[k - 1];
            denom = denom.mul(&poch(g, 1, 2, 2, last));
            let sign = if last % 2 == 1 { -1 } else { 1 };
            oracle = oracle.add(&denom.inv().scale(sign).shift(w));
        }
        assert_matches(&multi_sum_2_19(k as i64, g as i64).unwrap(), &oracle, g);
    }
}

#[test]
fn multi_sum_small_cases() {
    for k in 2..=6 {
        assert_eq!(multi_sum_2_19(k, 0).unwrap().coeff(0).unwrap(), qbailey::rat(1));
    }
    // k = 2: (1,0) gives q²/(q)_1, (1,1) starts at q⁴, so q² has coefficient 1
    assert_eq!(multi_sum_2_19(2, 3).unwrap().coeff(2).unwrap(), qbailey::rat(1));
    assert!(multi_sum_2_19(1, 10).is_err());
    for k in [2, 3] {
        assert_eq!(multi_sum_2_19(k, 40).unwrap(), multi_sum_2_19_window(k, 40, 2).unwrap());
    }
}
