//! Sparse truncated Laurent series in `u = q^(1/D)` with exact rational
//! coefficients.
//!
//! Every series carries a guarantee `G`: all coefficients at unit exponents
//! `<= G` are exact, nothing above `G` is stored. Each operation derives the
//! guarantee of its result from the guarantees of its inputs, so a comparison
//! "to order N" is only ever made on coefficients that are known exactly.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Coefficient = BigRational;

/// Shorthand for an integer-valued coefficient.
pub fn rat(n: i64) -> Coefficient {
    BigRational::from_integer(BigInt::from(n))
}

/// Base denominator `D`: exponents are counted in units of `q^(1/D)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Den {
    One,
    Two,
}

impl Den {
    pub fn get(self) -> i64 {
        match self {
            Den::One => 1,
            Den::Two => 2,
        }
    }

    pub fn from_int(d: i64) -> Result<Den> {
        match d {
            1 => Ok(Den::One),
            2 => Ok(Den::Two),
            other => Err(Error::UnsupportedDen(other)),
        }
    }

    fn lcm(self, other: Den) -> Den {
        if self == Den::Two || other == Den::Two {
            Den::Two
        } else {
            Den::One
        }
    }
}

/// A coefficient times a single power of `u`. Exponents are in units of the
/// surrounding series' denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Coefficient,
    pub exp: i64,
}

impl Monomial {
    pub fn new(coeff: Coefficient, exp: i64) -> Result<Monomial> {
        if coeff.is_zero() {
            return Err(Error::Parameter("monomial coefficient must be nonzero".into()));
        }
        Ok(Monomial { coeff, exp })
    }

    /// `u^exp` with coefficient 1.
    pub fn unit(exp: i64) -> Monomial {
        Monomial {
            coeff: Coefficient::one(),
            exp,
        }
    }

    /// `-u^exp`.
    pub fn neg_unit(exp: i64) -> Monomial {
        Monomial {
            coeff: -Coefficient::one(),
            exp,
        }
    }

    /// `self^n` for any integer `n` (the coefficient is nonzero, so negative
    /// powers are fine).
    pub fn pow(&self, n: i64) -> Monomial {
        let mut coeff = Coefficient::one();
        for _ in 0..n.unsigned_abs() {
            coeff *= &self.coeff;
        }
        if n < 0 {
            coeff = coeff.recip();
        }
        Monomial {
            coeff,
            exp: self.exp * n,
        }
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0 && self.coeff.is_one()
    }
}

/// Outcome of comparing two series through a given order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Mismatch),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Smallest exponent at which two series disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub exp: i64,
    pub den: Den,
    pub lhs: Coefficient,
    pub rhs: Coefficient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    den: Den,
    guarantee: i64,
    terms: BTreeMap<i64, Coefficient>,
}

impl Series {
    pub fn zero(den: Den, guarantee: i64) -> Series {
        Series {
            den,
            guarantee,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(den: Den, guarantee: i64) -> Series {
        Series::from_terms(den, guarantee, [(0, Coefficient::one())])
    }

    /// The single term `c·u^e`; empty when `c = 0`.
    pub fn monomial(c: Coefficient, e: i64, den: Den, guarantee: i64) -> Result<Series> {
        if e > guarantee {
            return Err(Error::GuaranteeViolation { exp: e, guarantee });
        }
        Ok(Series::from_terms(den, guarantee, [(e, c)]))
    }

    /// Builds a series from (exponent, coefficient) pairs. Repeated exponents
    /// accumulate; terms above the guarantee are dropped.
    pub fn from_terms<I>(den: Den, guarantee: i64, terms: I) -> Series
    where
        I: IntoIterator<Item = (i64, Coefficient)>,
    {
        let mut map: BTreeMap<i64, Coefficient> = BTreeMap::new();
        for (e, c) in terms {
            if e > guarantee || c.is_zero() {
                continue;
            }
            *map.entry(e).or_insert_with(Coefficient::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Series {
            den,
            guarantee,
            terms: map,
        }
    }

    /// Like [`Series::from_terms`] with small integer coefficients.
    pub fn from_int_terms<I>(den: Den, guarantee: i64, terms: I) -> Series
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        Series::from_terms(den, guarantee, terms.into_iter().map(|(e, c)| (e, rat(c))))
    }

    pub fn den(&self) -> Den {
        self.den
    }

    pub fn guarantee(&self) -> i64 {
        self.guarantee
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Coefficient)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest stored exponent.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lower bound on the support of the untruncated series.
    fn support_floor(&self) -> i64 {
        self.min_exp().unwrap_or(self.guarantee + 1)
    }

    pub fn coeff(&self, e: i64) -> Result<Coefficient> {
        if e > self.guarantee {
            return Err(Error::GuaranteeViolation {
                exp: e,
                guarantee: self.guarantee,
            });
        }
        Ok(self.terms.get(&e).cloned().unwrap_or_else(Coefficient::zero))
    }

    /// True when every stored coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Lowers the guarantee to `min(g, G)`, dropping terms above it.
    pub fn truncate(&self, g: i64) -> Series {
        if g >= self.guarantee {
            return self.clone();
        }
        Series {
            den: self.den,
            guarantee: g,
            terms: self.terms.range(..=g).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Re-expresses the series over a finer denominator.
    pub fn rebase(&self, den: Den) -> Result<Series> {
        match (self.den, den) {
            (a, b) if a == b => Ok(self.clone()),
            (Den::One, Den::Two) => Ok(self.rescale(2)),
            (from, to) => Err(Error::Base(format!(
                "cannot rebase from denominator {} to {}",
                from.get(),
                to.get()
            ))),
        }
    }

    /// Exponents times `k`; the skipped intermediate exponents are known to
    /// vanish, which is why the guarantee grows to `k·G + k - 1`.
    fn rescale(&self, k: i64) -> Series {
        let den = if k == 2 && self.den == Den::One {
            Den::Two
        } else {
            self.den
        };
        Series {
            den,
            guarantee: k * self.guarantee + (k - 1),
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    fn common(&self, other: &Series) -> Result<(Series, Series)> {
        let den = self.den.lcm(other.den);
        Ok((self.rebase(den)?, other.rebase(den)?))
    }

    /// `cs·self + ct·other`; guarantee `min(G_s, G_t)`.
    pub fn add_scaled(&self, other: &Series, cs: &Coefficient, ct: &Coefficient) -> Series {
        let (s, t) = self.common(other).expect("lcm rebase of {1,2} cannot fail");
        let g = s.guarantee.min(t.guarantee);
        let left = s.terms.range(..=g).map(|(e, c)| (*e, c * cs));
        let right = t.terms.range(..=g).map(|(e, c)| (*e, c * ct));
        Series::from_terms(s.den, g, left.chain(right))
    }

    pub fn scale(&self, c: &Coefficient) -> Series {
        if c.is_zero() {
            return Series::zero(self.den, self.guarantee);
        }
        Series {
            den: self.den,
            guarantee: self.guarantee,
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplication by the exact monomial `c·u^e`; the guarantee moves by `e`.
    pub fn shift(&self, m: &Monomial) -> Series {
        Series {
            den: self.den,
            guarantee: self.guarantee + m.exp,
            terms: self.terms.iter().map(|(e, v)| (e + m.exp, v * &m.coeff)).collect(),
        }
    }

    /// Product with guarantee `min(G_s + m_t, G_t + m_s)`.
    pub fn mul(&self, other: &Series) -> Series {
        let (s, t) = self.common(other).expect("lcm rebase of {1,2} cannot fail");
        let g = (s.guarantee + t.support_floor()).min(t.guarantee + s.support_floor());
        let mut acc: BTreeMap<i64, Coefficient> = BTreeMap::new();
        for (es, cs) in &s.terms {
            for (et, ct) in &t.terms {
                let e = es + et;
                if e > g {
                    break;
                }
                *acc.entry(e).or_insert_with(Coefficient::zero) += cs * ct;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Series {
            den: s.den,
            guarantee: g,
            terms: acc,
        }
    }

    /// Reciprocal via leading-term division and the coefficient recursion.
    /// With leading exponent `m` the result starts at `-m` and is exact
    /// through `G - 2m`.
    pub fn inverse(&self) -> Result<Series> {
        let (&m, lead) = self.terms.iter().next().ok_or(Error::NotInvertible(self.guarantee))?;
        let precision = self.guarantee - m;
        let lead_inv = lead.recip();
        let normalized: Vec<(usize, Coefficient)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(e, c)| ((e - m) as usize, c * &lead_inv))
            .collect();

        let len = precision as usize + 1;
        let mut r: Vec<Coefficient> = Vec::with_capacity(len);
        r.push(Coefficient::one());
        for k in 1..len {
            let mut acc = Coefficient::zero();
            for (i, t) in &normalized {
                if *i > k {
                    break;
                }
                let prev = &r[k - i];
                if !prev.is_zero() {
                    acc -= t * prev;
                }
            }
            r.push(acc);
        }
        let terms = r
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64 - m, c * &lead_inv));
        Ok(Series::from_terms(self.den, self.guarantee - 2 * m, terms))
    }

    /// The substitution `q -> q^k` on the unit variable.
    pub fn stretch(&self, k: i64) -> Series {
        assert!(k >= 1, "stretch factor must be positive");
        Series {
            den: self.den,
            ..self.rescale(k)
        }
    }

    /// Reads a `q`-series as a series in `q^(1/2)`: same unit exponents, so
    /// `f(q)` becomes `f(q^(1/2))`.
    pub fn reinterpret_half(&self) -> Result<Series> {
        if self.den != Den::One {
            return Err(Error::DenMismatch {
                expected: 1,
                found: self.den.get(),
            });
        }
        Ok(Series {
            den: Den::Two,
            ..self.clone()
        })
    }

    /// `u -> -u`.
    pub fn neg_base(&self) -> Series {
        Series {
            den: self.den,
            guarantee: self.guarantee,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e.rem_euclid(2) == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// `f(u) + f(-u)`.
    pub fn even_double(&self) -> Series {
        let one = Coefficient::one();
        self.add_scaled(&self.neg_base(), &one, &one)
    }

    /// Drops a half-base series back to base `q`; every odd unit exponent
    /// must carry a zero coefficient.
    pub fn project_integer(&self) -> Result<Series> {
        if self.den != Den::Two {
            return Err(Error::DenMismatch {
                expected: 2,
                found: self.den.get(),
            });
        }
        if let Some((e, _)) = self.terms.iter().find(|(e, _)| e.rem_euclid(2) == 1) {
            return Err(Error::Parity(*e));
        }
        Ok(Series {
            den: Den::One,
            guarantee: self.guarantee.div_euclid(2),
            terms: self.terms.iter().map(|(e, c)| (e / 2, c.clone())).collect(),
        })
    }
}

/// Exact comparison of `s` and `t` through exponent `g` (in units of the
/// common denominator).
pub fn eq_to_order(s: &Series, t: &Series, g: i64) -> Result<Verdict> {
    let (s, t) = s.common(t)?;
    let bound = s.guarantee.min(t.guarantee);
    if g > bound {
        return Err(Error::GuaranteeViolation {
            exp: g,
            guarantee: bound,
        });
    }
    let mut exps: Vec<i64> = s
        .terms
        .range(..=g)
        .chain(t.terms.range(..=g))
        .map(|(e, _)| *e)
        .collect();
    exps.sort_unstable();
    exps.dedup();
    for e in exps {
        let a = s.terms.get(&e).cloned().unwrap_or_else(Coefficient::zero);
        let b = t.terms.get(&e).cloned().unwrap_or_else(Coefficient::zero);
        if a != b {
            return Ok(Verdict::Fail(Mismatch {
                exp: e,
                den: s.den,
                lhs: a,
                rhs: b,
            }));
        }
    }
    Ok(Verdict::Pass)
}

impl std::ops::Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let one = Coefficient::one();
        self.add_scaled(rhs, &one, &one)
    }
}

impl std::ops::Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        let one = Coefficient::one();
        self.add_scaled(rhs, &one, &-one.clone())
    }
}

impl std::ops::Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

impl std::ops::Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        self.scale(&-Coefficient::one())
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (sign, abs) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let exp = fmt_exp(*e, self.den);
            match (abs.is_one(), exp.as_str()) {
                (_, "0") => write!(f, "{abs}")?,
                (true, _) => write!(f, "q^{exp}")?,
                (false, _) => write!(f, "{abs}*q^{exp}")?,
            }
        }
        write!(f, " + O(q^{})", fmt_exp(self.guarantee + 1, self.den))
    }
}

fn fmt_exp(e: i64, den: Den) -> String {
    match den {
        Den::One => e.to_string(),
        Den::Two if e % 2 == 0 => (e / 2).to_string(),
        Den::Two => format!("({e}/2)"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(terms: &[(i64, i64)], g: i64) -> Series {
        Series::from_int_terms(Den::One, g, terms.iter().copied())
    }

    #[test]
    fn monomial_constructor() {
        let one = Series::monomial(rat(1), 0, Den::One, 40).unwrap();
        assert_eq!(one, Series::one(Den::One, 40));

        let minus_q = Series::monomial(rat(-1), 2, Den::Two, 40).unwrap();
        assert_eq!(minus_q.den(), Den::Two);
        assert_eq!(minus_q.coeff(2).unwrap(), rat(-1));
        assert_eq!(minus_q.len(), 1);

        assert_eq!(
            Series::monomial(rat(1), 41, Den::One, 40),
            Err(Error::GuaranteeViolation { exp: 41, guarantee: 40 })
        );
        assert!(Series::monomial(rat(0), 3, Den::One, 40).unwrap().is_zero());
    }

    #[test]
    fn add_and_cancel() {
        let a = q(&[(0, 1), (1, 1)], 10);
        let b = q(&[(0, 1), (1, -1)], 8);
        let s = &a + &b;
        assert_eq!(s, q(&[(0, 2)], 8));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn mul_small() {
        let a = q(&[(0, 1), (1, -1)], 20);
        let b = q(&[(0, 1), (1, 1)], 20);
        assert_eq!(&a * &b, q(&[(0, 1), (2, -1)], 20));
        assert_eq!(&a * &Series::one(Den::One, 20), a);
    }

    #[test]
    fn mul_guarantee_formula() {
        // G_s + m_t = 10 + 3, G_t + m_s = 5 + 0
        let s = q(&[(0, 1), (4, 2)], 10);
        let t = q(&[(3, 1)], 5);
        assert_eq!(s.mul(&t).guarantee(), 5);
        // empty operand: its support starts above its guarantee
        let z = Series::zero(Den::One, -5);
        // min(-5 + 0, 10 - 4)
        assert_eq!(z.mul(&s).guarantee(), -5);
    }

    #[test]
    fn inverse_geometric_and_laurent() {
        let inv = q(&[(0, 1), (1, -1)], 12).inverse().unwrap();
        assert_eq!(inv.guarantee(), 12);
        for e in 0..=12 {
            assert_eq!(inv.coeff(e).unwrap(), rat(1));
        }
        assert_eq!(Series::one(Den::One, 5).inverse().unwrap(), Series::one(Den::One, 5));

        // q^-2 (1 - q)^-1 from q^2 - q^3
        let s = q(&[(2, 1), (3, -1)], 10);
        let r = s.inverse().unwrap();
        assert_eq!(r.min_exp(), Some(-2));
        assert_eq!(r.guarantee(), 10 - 4);
        assert_eq!(
            eq_to_order(&s.mul(&r), &Series::one(Den::One, 100), 8).unwrap(),
            Verdict::Pass
        );

        assert_eq!(Series::zero(Den::One, 7).inverse(), Err(Error::NotInvertible(7)));
    }

    #[test]
    fn stretch_cases() {
        let s = q(&[(0, 1), (1, 1)], 10);
        let t = s.stretch(2);
        assert_eq!(t, q(&[(0, 1), (2, 1)], 21));
        assert_eq!(s.stretch(1), s);
        let geo = q(&[(0, 1), (1, -1)], 10).inverse().unwrap().stretch(2);
        for e in 0..=21 {
            assert_eq!(geo.coeff(e).unwrap(), rat(if e % 2 == 0 { 1 } else { 0 }));
        }
    }

    #[test]
    fn half_base_round_trip() {
        let s = q(&[(0, 1), (1, 1)], 9);
        let h = s.reinterpret_half().unwrap();
        assert_eq!(h.den(), Den::Two);
        assert_eq!(h.coeff(1).unwrap(), rat(1));
        assert_eq!(h.guarantee(), 9);
        assert!(h.reinterpret_half().is_err());
        let c = q(&[(0, 7)], 3).reinterpret_half().unwrap();
        assert_eq!(c.terms().count(), 1);
    }

    #[test]
    fn neg_base_and_even_double() {
        let s = q(&[(0, 1), (1, 1), (2, 1)], 6);
        assert_eq!(s.neg_base(), q(&[(0, 1), (1, -1), (2, 1)], 6));
        assert_eq!(s.neg_base().neg_base(), s);
        let even = q(&[(0, 3), (4, -2)], 6);
        assert_eq!(even.neg_base(), even);

        assert_eq!(q(&[(0, 1), (1, 1)], 4).even_double(), q(&[(0, 2)], 4));
        assert!(q(&[(3, 1)], 4).even_double().is_zero());
    }

    #[test]
    fn project_integer_cases() {
        let s = Series::from_int_terms(Den::Two, 9, [(0, 2), (2, 2)]);
        let p = s.project_integer().unwrap();
        assert_eq!(p, q(&[(0, 2), (1, 2)], 4));
        let bad = Series::from_int_terms(Den::Two, 9, [(1, 1)]);
        assert_eq!(bad.project_integer(), Err(Error::Parity(1)));
        assert!(q(&[(0, 1)], 3).project_integer().is_err());
    }

    #[test]
    fn coeff_bounds() {
        let s = q(&[(0, 1), (1, -1)], 6);
        assert_eq!(s.coeff(0).unwrap(), rat(1));
        assert_eq!(s.coeff(4).unwrap(), rat(0));
        assert_eq!(s.coeff(7), Err(Error::GuaranteeViolation { exp: 7, guarantee: 6 }));
    }

    #[test]
    fn eq_to_order_reports_first_mismatch() {
        let one = Series::one(Den::One, 20);
        let other = q(&[(0, 1), (7, 1)], 20);
        assert_eq!(eq_to_order(&one, &other, 6).unwrap(), Verdict::Pass);
        assert_eq!(
            eq_to_order(&one, &other, 7).unwrap(),
            Verdict::Fail(Mismatch {
                exp: 7,
                den: Den::One,
                lhs: rat(0),
                rhs: rat(1)
            })
        );
        assert!(eq_to_order(&one, &other, 21).is_err());
    }

    #[test]
    fn den_reconciliation() {
        let a = q(&[(0, 1), (1, 1)], 3);
        let b = Series::from_int_terms(Den::Two, 5, [(1, 1)]);
        let s = &a + &b;
        assert_eq!(s.den(), Den::Two);
        assert_eq!(s.guarantee(), 5);
        assert_eq!(s.coeff(2).unwrap(), rat(1));
        assert_eq!(s.coeff(1).unwrap(), rat(1));
        assert!(Den::from_int(3).is_err());
    }

    #[test]
    fn display_is_readable() {
        let s = q(&[(-1, -2), (0, 1), (3, 5)], 4);
        assert_eq!(s.to_string(), "-2*q^-1 + 1 + 5*q^3 + O(q^5)");
    }
}
