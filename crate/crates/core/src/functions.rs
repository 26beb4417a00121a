//! Single-sum mock theta type functions appearing on the right-hand sides.

use crate::error::Result;
use crate::poch::inv_poch_finite;
use crate::series::{Den, Monomial, Series};

/// Sums `Σ_n q^{w(n)} · tail(n)` where `w` is increasing and every `tail`
/// starts at `q^0`.
fn weighted_sum<W, T>(g: i64, extend: u32, weight: W, tail: T) -> Result<Series>
where
    W: Fn(i64) -> i64,
    T: Fn(u64, i64) -> Result<Series>,
{
    let mut total = Series::zero(Den::One, g);
    let mut past = 0;
    for n in 0i64.. {
        let w = weight(n);
        if w > g {
            if past >= extend {
                break;
            }
            past += 1;
        }
        let rest = (g - w).max(0);
        total = &total + &tail(n as u64, rest)?.shift(&Monomial::unit(w));
    }
    Ok(total.truncate(g))
}

/// `A(q) = Σ_{n>=0} q^{2n²+2n} / (-q;q)_{2n+1}`.
pub fn mock_a(g: i64) -> Result<Series> {
    mock_a_window(g, 0)
}

pub fn mock_a_window(g: i64, extend: u32) -> Result<Series> {
    weighted_sum(
        g,
        extend,
        |n| 2 * n * n + 2 * n,
        |n, rest| inv_poch_finite(&Monomial::neg_unit(1), 1, 2 * n + 1, Den::One, rest),
    )
}

/// `F_2(q) = Σ_{n>=0} q^{n²+n} / (q^{n+1};q)_{n+1}`.
pub fn f2(g: i64) -> Result<Series> {
    f2_window(g, 0)
}

pub fn f2_window(g: i64, extend: u32) -> Result<Series> {
    weighted_sum(
        g,
        extend,
        |n| n * n + n,
        |n, rest| inv_poch_finite(&Monomial::unit(n as i64 + 1), 1, n + 1, Den::One, rest),
    )
}

/// `φ(q) = Σ_{n>=0} q^{n(n+1)/2} / (q;q²)_{n+1}`.
pub fn phi(g: i64) -> Result<Series> {
    phi_window(g, 0)
}

pub fn phi_window(g: i64, extend: u32) -> Result<Series> {
    weighted_sum(
        g,
        extend,
        |n| n * (n + 1) / 2,
        |n, rest| inv_poch_finite(&Monomial::unit(1), 2, n + 1, Den::One, rest),
    )
}
