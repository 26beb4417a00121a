//! Left- and right-hand sides of the mock theta double-sum identities.
//!
//! Every double sum here has the shape `Σ_n Σ_{j<=n} ± q^{w(n,j)} · F(n,j)`
//! with `F` a product of finite Pochhammer symbols, their inverses and
//! geometric factors `1/(1 - q^d)`, all starting at `q^0`. The outer loop
//! stops once the smallest `w(n, ·)` exceeds the order; each builder
//! documents that row minimum.

use std::collections::HashMap;

use crate::error::Result;
use crate::functions::{f2_window, mock_a_window, phi_window};
use crate::hecke::theta_combination_window;
use crate::poch::{geometric, inv_poch_finite, poch_finite, poch_inf};
use crate::series::{rat, Den, Monomial, Series};

/// `±q^exp` for a Pochhammer argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Arg {
    neg: bool,
    exp: i64,
}

const fn q(exp: i64) -> Arg {
    Arg { neg: false, exp }
}

const fn neg_q(exp: i64) -> Arg {
    Arg { neg: true, exp }
}

impl Arg {
    fn monomial(self) -> Monomial {
        if self.neg {
            Monomial::neg_unit(self.exp)
        } else {
            Monomial::unit(self.exp)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Factor {
    /// `(x; q^step)_n`
    Poch(Arg, i64, u64),
    /// `1 / (x; q^step)_n`
    InvPoch(Arg, i64, u64),
    /// `1 / (1 - q^d)`
    Geometric(i64),
}

/// Factors are expanded once at the full order and truncated per term.
struct FactorCache {
    g: i64,
    memo: HashMap<Factor, Series>,
}

impl FactorCache {
    fn new(g: i64) -> FactorCache {
        FactorCache {
            g: g.max(0),
            memo: HashMap::new(),
        }
    }

    fn get(&mut self, f: Factor, rest: i64) -> Result<Series> {
        if !self.memo.contains_key(&f) {
            let g = self.g;
            let s = match f {
                Factor::Poch(x, step, n) => poch_finite(&x.monomial(), step, n, Den::One, g)?,
                Factor::InvPoch(x, step, n) => inv_poch_finite(&x.monomial(), step, n, Den::One, g)?,
                Factor::Geometric(d) => geometric(d, Den::One, g),
            };
            self.memo.insert(f, s);
        }
        Ok(self.memo[&f].truncate(rest))
    }
}

struct Term {
    coeff: i64,
    exp: i64,
    factors: Vec<Factor>,
}

fn double_sum<R, T>(g: i64, extend: u32, row_min: R, term: T) -> Result<Series>
where
    R: Fn(i64) -> i64,
    T: Fn(i64, i64) -> Option<Term>,
{
    let mut cache = FactorCache::new(g);
    let mut total = Series::zero(Den::One, g);
    let mut past = 0;
    for n in 0i64.. {
        if row_min(n) > g {
            if past >= extend {
                break;
            }
            past += 1;
        }
        for j in 0..=n {
            let t = match term(n, j) {
                Some(t) if t.exp <= g => t,
                _ => continue,
            };
            let rest = g - t.exp;
            let mut product = Series::one(Den::One, rest);
            for f in t.factors {
                product = product.mul(&cache.get(f, rest)?);
            }
            let w = Monomial::new(rat(t.coeff), t.exp)?;
            total = &total + &product.shift(&w);
        }
    }
    Ok(total.truncate(g))
}

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

fn u(n: i64) -> u64 {
    n as u64
}

/// `2 Σ Σ (-1)^j q^{n²+n+j(j+1)/2} / ((-q)_n (q)_{n-j} (q)_j (1-q^{2j+1}))`;
/// row minimum `n² + n` at `j = 0`.
pub fn lhs_2_13(g: i64, extend: u32) -> Result<Series> {
    double_sum(
        g,
        extend,
        |n| n * n + n,
        |n, j| {
            Some(Term {
                coeff: 2 * sign(j),
                exp: n * n + n + j * (j + 1) / 2,
                factors: vec![
                    Factor::InvPoch(neg_q(1), 1, u(n)),
                    Factor::InvPoch(q(1), 1, u(n - j)),
                    Factor::InvPoch(q(1), 1, u(j)),
                    Factor::Geometric(2 * j + 1),
                ],
            })
        },
    )
}

/// `A(q^{1/2}) + A(-q^{1/2})` in half-units, exact through `q^{g + 1/2}`.
pub fn rhs_2_13_half(g: i64, extend: u32) -> Result<Series> {
    Ok(mock_a_window(2 * g + 1, extend)?.reinterpret_half()?.even_double())
}

pub fn rhs_2_13(g: i64, extend: u32) -> Result<Series> {
    rhs_2_13_half(g, extend)?.project_integer()
}

/// `Σ Σ (-1)^j q^{2n²+2n+j²+j} / ((-q)_{2n+1} (q²;q²)_{n-j} (q²;q²)_j (1-q^{2j+1}))`;
/// row minimum `2n² + 2n` at `j = 0`.
pub fn lhs_2_14(g: i64, extend: u32) -> Result<Series> {
    double_sum(
        g,
        extend,
        |n| 2 * n * n + 2 * n,
        |n, j| {
            Some(Term {
                coeff: sign(j),
                exp: 2 * n * n + 2 * n + j * j + j,
                factors: vec![
                    Factor::InvPoch(neg_q(1), 1, u(2 * n + 1)),
                    Factor::InvPoch(q(2), 2, u(n - j)),
                    Factor::InvPoch(q(2), 2, u(j)),
                    Factor::Geometric(2 * j + 1),
                ],
            })
        },
    )
}

/// `F_2(q²)`.
pub fn rhs_2_14(g: i64, extend: u32) -> Result<Series> {
    Ok(f2_window(g.div_euclid(2), extend)?.stretch(2).truncate(g))
}

/// `Σ Σ (-1)^n q^{2n²+2n+(n-j)²} / ((-q)_{2n+1} (q²;q²)_{n-j} (q²;q²)_j (1-q^{2j+1}))`;
/// row minimum `2n² + 2n` at `j = n`.
pub fn lhs_2_15(g: i64, extend: u32) -> Result<Series> {
    double_sum(
        g,
        extend,
        |n| 2 * n * n + 2 * n,
        |n, j| {
            Some(Term {
                coeff: sign(n),
                exp: 2 * n * n + 2 * n + (n - j) * (n - j),
                factors: vec![
                    Factor::InvPoch(neg_q(1), 1, u(2 * n + 1)),
                    Factor::InvPoch(q(2), 2, u(n - j)),
                    Factor::InvPoch(q(2), 2, u(j)),
                    Factor::Geometric(2 * j + 1),
                ],
            })
        },
    )
}

/// `φ(q²) / (-q²;q²)_inf`.
pub fn rhs_2_15(g: i64, extend: u32) -> Result<Series> {
    let phi2 = phi_window(g.div_euclid(2), extend)?.stretch(2).truncate(g);
    Ok(phi2.mul(&poch_inf(&Monomial::neg_unit(2), 2, Den::One, g)?.inverse()?))
}

/// `2 Σ Σ (-1)^j q^{n(n+1)/2+j(j+1)/2} / ((q)_{n-j} (q)_j (1-q^{2j+1}))`;
/// row minimum `n(n+1)/2` at `j = 0`.
pub fn lhs_2_16(g: i64, extend: u32) -> Result<Series> {
    double_sum(
        g,
        extend,
        |n| n * (n + 1) / 2,
        |n, j| {
            Some(Term {
                coeff: 2 * sign(j),
                exp: n * (n + 1) / 2 + j * (j + 1) / 2,
                factors: vec![
                    Factor::InvPoch(q(1), 1, u(n - j)),
                    Factor::InvPoch(q(1), 1, u(j)),
                    Factor::Geometric(2 * j + 1),
                ],
            })
        },
    )
}

/// `((-q)_inf/(q)_inf) ((q)_inf (q^{1/2};q^{1/2})_inf + (q)_inf² (-q^{1/2};q)_inf)`
/// in half-units, exact through `q^{g + 1/2}`.
pub fn rhs_2_16_half(g: i64) -> Result<Series> {
    let h = 2 * g.max(0) + 1;
    let q_inf = poch_inf(&Monomial::unit(2), 2, Den::Two, h)?;
    let neg_q_inf = poch_inf(&Monomial::neg_unit(2), 2, Den::Two, h)?;
    let half_inf = poch_inf(&Monomial::unit(1), 1, Den::Two, h)?;
    let neg_half = poch_inf(&Monomial::neg_unit(1), 2, Den::Two, h)?;
    let prefactor = neg_q_inf.mul(&q_inf.inverse()?);
    let inner = &q_inf.mul(&half_inf) + &q_inf.mul(&q_inf).mul(&neg_half);
    Ok(prefactor.mul(&inner).truncate(2 * g + 1))
}

pub fn rhs_2_16(g: i64) -> Result<Series> {
    rhs_2_16_half(g)?.project_integer()
}

/// `2 Σ_n (-1)^n q^{n(n+1)/2} / ((q)_n (1 - q^{2n+1}))`: what the `X = -q`
/// limit of the lemma gives for the base pair directly.
pub fn single_sum_2_16(g: i64, extend: u32) -> Result<Series> {
    double_sum(
        g,
        extend,
        |n| n * (n + 1) / 2,
        |n, j| {
            // single sum: only the diagonal term is present
            if j < n {
                return None;
            }
            Some(Term {
                coeff: 2 * sign(n),
                exp: n * (n + 1) / 2,
                factors: vec![Factor::InvPoch(q(1), 1, u(n)), Factor::Geometric(2 * n + 1)],
            })
        },
    )
}

/// `2 Σ Σ (q)_n (-q;q²)_{j+1} (-1)^{n+j} q^{n(n+1)/2+n-j}
///   / ((q²;q²)_{n-j} (x;q²)_j (1 - q^{4j+2}))` with `x = -q²` as printed or
/// `x = q²`; row minimum `n(n+1)/2` at `j = n`.
fn lhs_d1_with(g: i64, extend: u32, x: Arg) -> Result<Series> {
    double_sum(
        g,
        extend,
        |n| n * (n + 1) / 2,
        |n, j| {
            Some(Term {
                coeff: 2 * sign(n + j),
                exp: n * (n + 1) / 2 + n - j,
                factors: vec![
                    Factor::Poch(q(1), 1, u(n)),
                    Factor::Poch(neg_q(1), 2, u(j + 1)),
                    Factor::InvPoch(q(2), 2, u(n - j)),
                    Factor::InvPoch(x, 2, u(j)),
                    Factor::Geometric(4 * j + 2),
                ],
            })
        },
    )
}

pub fn lhs_d1(g: i64, extend: u32) -> Result<Series> {
    lhs_d1_with(g, extend, neg_q(2))
}

pub fn lhs_d1_amended(g: i64, extend: u32) -> Result<Series> {
    lhs_d1_with(g, extend, q(2))
}

/// `Σ q^{n(n+1)/2} / (-q)_n + Σ q^{n(3n+1)/2} (1 + q^{2n+1}) Σ_{|j|<=n} q^{-j²}`;
/// the second sum's `n`-th block starts at `n(n+1)/2`.
pub fn rhs_d1(g: i64, extend: u32) -> Result<Series> {
    let first = double_sum(
        g,
        extend,
        |n| n * (n + 1) / 2,
        |n, j| {
            if j < n {
                return None;
            }
            Some(Term {
                coeff: 1,
                exp: n * (n + 1) / 2,
                factors: vec![Factor::InvPoch(neg_q(1), 1, u(n))],
            })
        },
    )?;
    let mut terms: Vec<(i64, i64)> = Vec::new();
    let mut past = 0;
    for n in 0i64.. {
        if n * (n + 1) / 2 > g {
            if past >= extend {
                break;
            }
            past += 1;
        }
        let base = n * (3 * n + 1) / 2;
        for (e, c) in crate::hecke::inner_terms(u(n), false) {
            terms.push((base + e, c));
            terms.push((base + 2 * n + 1 + e, c));
        }
    }
    Ok(&first + &Series::from_int_terms(Den::One, g, terms))
}

/// `(1/(q)_inf) (f_{k,k+2,k}(q^{2k}, q^{2k}, q²) + q^{2k+1} f_{k,k+2,k}(q^{4k+2}, q^{4k+2}, q²))`.
pub fn rhs_2_19(k: i64, g: i64, extend: u32) -> Result<Series> {
    let inv = poch_inf(&Monomial::unit(1), 1, Den::One, g)?.inverse()?;
    Ok(inv.mul(&theta_combination_window(k, g, extend)?))
}

/// `Σ_{j<=n} q^{n-j} / ((q²;q²)_{n-j} (q;q²)_{j+1})`.
pub fn zcoeff_lhs(n: u64, g: i64) -> Result<Series> {
    let n = n as i64;
    let mut cache = FactorCache::new(g);
    let mut total = Series::zero(Den::One, g);
    for j in 0..=n {
        let w = n - j;
        if w > g {
            continue;
        }
        let rest = g - w;
        let t = cache
            .get(Factor::InvPoch(q(2), 2, u(n - j)), rest)?
            .mul(&cache.get(Factor::InvPoch(q(1), 2, u(j + 1)), rest)?)
            .shift(&Monomial::unit(w));
        total = &total + &t;
    }
    Ok(total.truncate(g))
}

/// `Σ_{j<=n} (-1)^j q^{j(j+1)} / ((q)_{n-j} (q²;q²)_j (1 - q^{2j+1}))`.
pub fn zcoeff_rhs(n: u64, g: i64) -> Result<Series> {
    let n = n as i64;
    let mut cache = FactorCache::new(g);
    let mut total = Series::zero(Den::One, g);
    for j in 0..=n {
        let w = j * (j + 1);
        if w > g {
            continue;
        }
        let rest = g - w;
        let t = cache
            .get(Factor::InvPoch(q(1), 1, u(n - j)), rest)?
            .mul(&cache.get(Factor::InvPoch(q(2), 2, u(j)), rest)?)
            .mul(&cache.get(Factor::Geometric(2 * j + 1), rest)?)
            .shift(&Monomial {
                coeff: rat(sign(j)),
                exp: w,
            });
        total = &total + &t;
    }
    Ok(total.truncate(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_terms() {
        assert_eq!(lhs_2_16(0, 0).unwrap().coeff(0).unwrap(), rat(2));
        assert_eq!(rhs_2_16(0).unwrap().coeff(0).unwrap(), rat(2));
        assert_eq!(lhs_d1(0, 0).unwrap().coeff(0).unwrap(), rat(2));
        assert_eq!(rhs_d1(0, 0).unwrap().coeff(0).unwrap(), rat(2));
    }

    #[test]
    fn windows_are_complete() {
        for g in [0, 7, 30] {
            assert_eq!(lhs_2_13(g, 0).unwrap(), lhs_2_13(g, 2).unwrap());
            assert_eq!(lhs_d1(g, 0).unwrap(), lhs_d1(g, 2).unwrap());
            assert_eq!(rhs_d1(g, 0).unwrap(), rhs_d1(g, 2).unwrap());
        }
    }
}
