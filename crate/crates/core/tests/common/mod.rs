//! Dense integer power series truncated at a fixed order, written without
//! touching the library's arithmetic so it can serve as an oracle.

#![allow(dead_code)]

use qbailey::{rat, Series};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub c: Vec<i128>,
}

impl Poly {
    pub fn zero(n: usize) -> Poly {
        Poly { c: vec![0; n + 1] }
    }

    pub fn one(n: usize) -> Poly {
        Poly::monomial(n, 1, 0)
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn monomial(n: usize, coeff: i128, exp: usize) -> Poly {
        let mut p = Poly::zero(n);
        if exp <= n {
            p.c[exp] = coeff;
        }
        p
    }

    /// `1 + coeff·q^exp`
    pub fn binomial(n: usize, coeff: i128, exp: usize) -> Poly {
        let mut p = Poly::one(n);
        if exp <= n {
            p.c[exp] += coeff;
        }
        p
    }

    pub fn add(&self, o: &Poly) -> Poly {
        Poly {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: i128) -> Poly {
        Poly {
            c: self.c.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let n = self.order();
        let mut out = Poly::zero(n);
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n + 1 - i) {
                out.c[i + j] += a * b;
            }
        }
        out
    }

    /// Needs a constant term of ±1.
    pub fn inv(&self) -> Poly {
        let n = self.order();
        let c0 = self.c[0];
        assert!(c0 == 1 || c0 == -1, "oracle inverse needs a unit constant term");
        let mut out = Poly::zero(n);
        for k in 0..=n {
            let mut acc = if k == 0 { 1 } else { 0 };
            for i in 1..=k {
                acc -= self.c[i] * out.c[k - i];
            }
            out.c[k] = acc * c0;
        }
        out
    }

    /// `q^e · self` for `e >= 0`.
    pub fn shift(&self, e: usize) -> Poly {
        let n = self.order();
        let mut out = Poly::zero(n);
        for i in 0..=n {
            if i + e <= n {
                out.c[i + e] = self.c[i];
            }
        }
        out
    }
}

/// `Π_{i<count} (1 - x q^{e + step·i})` with `x = ±1`.
pub fn poch(n: usize, x: i128, e: usize, step: usize, count: usize) -> Poly {
    let mut p = Poly::one(n);
    for i in 0..count {
        p = p.mul(&Poly::binomial(n, -x, e + step * i));
    }
    p
}

/// The infinite product, cut where factors stop mattering.
pub fn poch_inf(n: usize, x: i128, e: usize, step: usize) -> Poly {
    let count = if e > n { 0 } else { (n - e) / step + 1 };
    poch(n, x, e, step, count)
}

/// Asserts `s` has no negative exponents and matches `p` through `g`.
pub fn assert_matches(s: &Series, p: &Poly, g: usize) {
    assert!(s.guarantee() >= g as i64, "series only exact through {}", s.guarantee());
    assert!(s.min_exp().is_none_or(|m| m >= 0), "negative exponent in {s}");
    for e in 0..=g {
        assert_eq!(s.coeff(e as i64).unwrap(), rat(p.c[e] as i64), "coefficient of q^{e}");
    }
}

/// Number of partitions of each `m <= n`, by listing them.
pub fn partition_counts(n: usize) -> Vec<i128> {
    fn count(rest: usize, largest: usize) -> i128 {
        if rest == 0 {
            return 1;
        }
        (1..=largest.min(rest)).map(|part| count(rest - part, part)).sum()
    }
    (0..=n).map(|m| count(m, m)).collect()
}
