//! q-Pochhammer symbols `(x; q^step)_n` and `(x; q^step)_inf`.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{Coefficient, Den, Monomial, Series};

/// Multiplies `terms` in place by `(1 - c·u^d)`, keeping exponents `<= keep`.
fn mul_binomial(terms: &mut Vec<(i64, Coefficient)>, c: &Coefficient, d: i64, keep: i64) {
    let shifted: Vec<(i64, Coefficient)> = terms
        .iter()
        .filter(|(e, _)| e + d <= keep)
        .map(|(e, v)| (e + d, -(v * c)))
        .collect();
    let mut merged: Vec<(i64, Coefficient)> = Vec::with_capacity(terms.len() + shifted.len());
    let mut a = std::mem::take(terms).into_iter().peekable();
    let mut b = shifted.into_iter().peekable();
    loop {
        let next = match (a.peek(), b.peek()) {
            (Some((ea, _)), Some((eb, _))) if ea == eb => {
                let (e, x) = a.next().unwrap();
                let (_, y) = b.next().unwrap();
                Some((e, x + y))
            }
            (Some((ea, _)), Some((eb, _))) => {
                if ea < eb {
                    a.next()
                } else {
                    b.next()
                }
            }
            (Some(_), None) => a.next(),
            (None, Some(_)) => b.next(),
            (None, None) => None,
        };
        match next {
            Some((e, v)) if e <= keep && !v.is_zero() => merged.push((e, v)),
            Some(_) => {}
            None => break,
        }
    }
    *terms = merged;
}

/// `∏_{i=0}^{n-1} (1 - x·u^{step·i})`, exact through `guarantee`.
pub fn poch_finite(x: &Monomial, step: i64, n: u64, den: Den, guarantee: i64) -> Result<Series> {
    if step <= 0 {
        return Err(Error::Parameter(format!(
            "Pochhammer step must be positive, got {step}"
        )));
    }
    // Later factors can pull exponents down by at most the sum of their
    // negative shifts, so that much headroom is kept above the guarantee.
    let shifts: Vec<i64> = (0..n as i64).map(|i| x.exp + step * i).collect();
    let mut headroom: i64 = shifts.iter().filter(|d| **d < 0).map(|d| -d).sum();
    let mut terms = vec![(0, Coefficient::one())];
    for d in shifts {
        if d < 0 {
            headroom += d;
        }
        mul_binomial(&mut terms, &x.coeff, d, guarantee + headroom);
    }
    Ok(Series::from_terms(den, guarantee, terms))
}

/// `(x; u^step)_inf` truncated at `guarantee`. Factors whose first
/// nontrivial exponent lies above the guarantee are skipped.
pub fn poch_inf(x: &Monomial, step: i64, den: Den, guarantee: i64) -> Result<Series> {
    if step <= 0 {
        return Err(Error::Parameter(format!(
            "Pochhammer step must be positive, got {step}"
        )));
    }
    if x.is_one() {
        return Err(Error::DegenerateProduct);
    }
    if x.exp < 0 {
        return Err(Error::Parameter(format!(
            "infinite product needs a nonnegative exponent, got {}",
            x.exp
        )));
    }
    let mut terms = vec![(0, Coefficient::one())];
    let mut d = x.exp;
    while d <= guarantee {
        mul_binomial(&mut terms, &x.coeff, d, guarantee);
        d += step;
    }
    Ok(Series::from_terms(den, guarantee, terms))
}

/// `1 / (1 - u^d)` for `d > 0`.
pub fn geometric(d: i64, den: Den, guarantee: i64) -> Series {
    assert!(d > 0, "geometric step must be positive");
    let count = if guarantee < 0 { 0 } else { guarantee / d + 1 };
    Series::from_terms(den, guarantee, (0..count).map(|i| (i * d, Coefficient::one())))
}

/// Shorthand for the reciprocal of a finite Pochhammer symbol whose first
/// factor has a nonzero constant term.
pub fn inv_poch_finite(x: &Monomial, step: i64, n: u64, den: Den, guarantee: i64) -> Result<Series> {
    poch_finite(x, step, n, den, guarantee)?.inverse()
}
