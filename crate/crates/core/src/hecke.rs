//! Indefinite theta-type double sums.
//!
//! All enumerations stop once the smallest exponent a remaining term can
//! reach is above the requested order. The `*_window` variants keep scanning
//! `extend` further rows/columns past that point; since those terms are all
//! above the order, the result must not change, which the tests check.

use crate::error::{Error, Result};
use crate::poch::poch_inf;
use crate::series::{Coefficient, Den, Monomial, Series};

/// `(exponent, coefficient)` pairs of `Σ_{|j|<=n} (±1)^j q^{-j²}`.
pub(crate) fn inner_terms(n: u64, alternating: bool) -> impl Iterator<Item = (i64, i64)> {
    let n = n as i64;
    (-n..=n).map(move |j| {
        let sign = if alternating && j.rem_euclid(2) == 1 { -1 } else { 1 };
        (-j * j, sign)
    })
}

/// `Σ_{|j|<=n} (-1)^j q^{-j²}`, a Laurent polynomial starting at `q^{-n²}`.
pub fn alt_inner_sum(n: u64, guarantee: i64) -> Series {
    Series::from_int_terms(Den::One, guarantee, inner_terms(n, true))
}

/// `Σ_{|j|<=n} q^{-j²}`.
pub fn pos_inner_sum(n: u64, guarantee: i64) -> Series {
    Series::from_int_terms(Den::One, guarantee, inner_terms(n, false))
}

/// Parameters of `f_{a,b,c}(x, y, q^p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FParams {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub x: Monomial,
    pub y: Monomial,
    pub p: i64,
}

impl FParams {
    pub fn new(a: i64, b: i64, c: i64, x: Monomial, y: Monomial, p: i64) -> Result<FParams> {
        if a <= 0 || b <= 0 || c <= 0 || p <= 0 {
            return Err(Error::Parameter(format!(
                "f_abc needs positive a, b, c, p; got ({a}, {b}, {c}, {p})"
            )));
        }
        if b * b - a * c <= 0 {
            return Err(Error::Parameter(format!(
                "f_abc needs an indefinite form, b^2 - ac = {}",
                b * b - a * c
            )));
        }
        if x.exp <= 0 || y.exp <= 0 {
            return Err(Error::Convergence(x.exp, y.exp));
        }
        Ok(FParams { a, b, c, x, y, p })
    }

    /// `f_{a,b,c}(q^ex, q^ey, q^p)` with unit coefficients.
    pub fn with_powers(a: i64, b: i64, c: i64, ex: i64, ey: i64, p: i64) -> Result<FParams> {
        FParams::new(a, b, c, Monomial::unit(ex), Monomial::unit(ey), p)
    }

    /// `f_{c,b,a}(y, x, q^p)`.
    pub fn swapped(&self) -> FParams {
        FParams {
            a: self.c,
            b: self.b,
            c: self.a,
            x: self.y.clone(),
            y: self.x.clone(),
            p: self.p,
        }
    }

    fn exponent(&self, r: i64, s: i64) -> i64 {
        self.p * (self.a * r * (r - 1) / 2 + self.b * r * s + self.c * s * (s - 1) / 2)
            + r * self.x.exp
            + s * self.y.exp
    }

    fn coefficient(&self, r: i64, s: i64) -> Coefficient {
        let sign = if (r + s).rem_euclid(2) == 1 { -1 } else { 1 };
        let xr = self.x.pow(r).coeff;
        let ys = self.y.pow(s).coeff;
        xr * ys * crate::series::rat(sign)
    }
}

/// `(Σ_{r,s>=0} - Σ_{r,s<0}) (-1)^{r+s} x^r y^s q^{p(a r(r-1)/2 + b rs + c s(s-1)/2)}`.
pub fn f_abc(params: &FParams, g: i64) -> Result<Series> {
    f_abc_window(params, g, 0)
}

pub fn f_abc_window(params: &FParams, g: i64, extend: u32) -> Result<Series> {
    let f = params;
    let mut terms: Vec<(i64, Coefficient)> = Vec::new();

    // r, s >= 0: the exponent increases in both r and s, so the row
    // minimum is the s = 0 term.
    let mut r = 0i64;
    let mut past_rows = 0;
    loop {
        if f.exponent(r, 0) > g {
            if past_rows >= extend {
                break;
            }
            past_rows += 1;
        }
        let mut s = 0i64;
        let mut past_cols = 0;
        loop {
            let e = f.exponent(r, s);
            if e > g {
                if past_cols >= extend {
                    break;
                }
                past_cols += 1;
            } else {
                terms.push((e, f.coefficient(r, s)));
            }
            s += 1;
        }
        r += 1;
    }

    // r = -r', s = -s' with r', s' >= 1. Each row is a convex quadratic in
    // s'; b r' s' >= b r' bounds the row from below by a quadratic in r'.
    let col_min = {
        let mut best = f.exponent(0, -1);
        let mut s = 1i64;
        loop {
            let here = f.exponent(0, -s);
            best = best.min(here);
            if f.exponent(0, -(s + 1)) > here {
                break;
            }
            s += 1;
        }
        best
    };
    let row_floor = |rp: i64| f.exponent(-rp, 0) + f.p * f.b * rp + col_min;
    let mut rp = 1i64;
    let mut past_rows = 0;
    loop {
        let floor = row_floor(rp);
        if floor > g && row_floor(rp + 1) > floor {
            if past_rows >= extend {
                break;
            }
            past_rows += 1;
        }
        let mut sp = 1i64;
        let mut past_cols = 0;
        loop {
            let e = f.exponent(-rp, -sp);
            let rising = f.exponent(-rp, -(sp + 1)) > e;
            if e > g && rising {
                if past_cols >= extend {
                    break;
                }
                past_cols += 1;
            } else if e <= g {
                terms.push((e, -f.coefficient(-rp, -sp)));
            }
            sp += 1;
        }
        rp += 1;
    }

    Ok(Series::from_terms(Den::One, g, terms))
}

/// `Σ_{n>=0} q^{lead·n² + lin·n} (1 - q^{2n+1}) Σ_{|j|<=n} (-1)^j q^{-j²}`;
/// the n-th block starts at `(lead-1)n² + lin·n`.
fn hecke_sum(lead: i64, lin: i64, g: i64, extend: u32) -> Series {
    let mut terms: Vec<(i64, i64)> = Vec::new();
    let mut n = 0i64;
    let mut past = 0;
    loop {
        if (lead - 1) * n * n + lin * n > g {
            if past >= extend {
                break;
            }
            past += 1;
        }
        let base = lead * n * n + lin * n;
        for (e, c) in inner_terms(n as u64, true) {
            terms.push((base + e, c));
            terms.push((base + 2 * n + 1 + e, -c));
        }
        n += 1;
    }
    Series::from_int_terms(Den::One, g, terms)
}

fn check_k(k: i64) -> Result<()> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

/// `Σ_{n>=0} q^{(k+1)n² + kn} (1 - q^{2n+1}) Σ_{|j|<=n} (-1)^j q^{-j²}`.
pub fn hecke_form(k: i64, g: i64) -> Result<Series> {
    hecke_form_window(k, g, 0)
}

pub fn hecke_form_window(k: i64, g: i64, extend: u32) -> Result<Series> {
    check_k(k)?;
    Ok(hecke_sum(k + 1, k, g, extend))
}

/// The `n < 0` half of the bilateral form:
/// `Σ_{n<0} Σ_{|j|<=-n-1} (-1)^j q^{(k+1)n² + kn - j²}`, without the sign.
pub fn bilateral_negative_piece(k: i64, g: i64, extend: u32) -> Result<Series> {
    check_k(k)?;
    let mut terms: Vec<(i64, i64)> = Vec::new();
    let mut m = 1i64;
    let mut past = 0;
    loop {
        // n = -m; smallest exponent at |j| = m - 1
        if k * m * m + (2 - k) * m - 1 > g {
            if past >= extend {
                break;
            }
            past += 1;
        }
        let base = (k + 1) * m * m - k * m;
        for (e, c) in inner_terms((m - 1) as u64, true) {
            terms.push((base + e, c));
        }
        m += 1;
    }
    Ok(Series::from_int_terms(Den::One, g, terms))
}

/// `Σ_{n>=0} Σ_{|j|<=n} (-1)^j q^{(k+1)n²+kn-j²} - Σ_{n<0} Σ_{|j|<=-n-1} (-1)^j q^{(k+1)n²+kn-j²}`.
pub fn bilateral_form(k: i64, g: i64) -> Result<Series> {
    bilateral_form_window(k, g, 0)
}

pub fn bilateral_form_window(k: i64, g: i64, extend: u32) -> Result<Series> {
    check_k(k)?;
    let mut terms: Vec<(i64, i64)> = Vec::new();
    let mut n = 0i64;
    let mut past = 0;
    loop {
        if k * n * n + k * n > g {
            if past >= extend {
                break;
            }
            past += 1;
        }
        let base = (k + 1) * n * n + k * n;
        terms.extend(inner_terms(n as u64, true).map(|(e, c)| (base + e, c)));
        n += 1;
    }
    let positive = Series::from_int_terms(Den::One, g, terms);
    Ok(&positive - &bilateral_negative_piece(k, g, extend)?)
}

/// `f_{k,k+2,k}(q^{2k}, q^{2k}, q²) + q^{2k+1} f_{k,k+2,k}(q^{4k+2}, q^{4k+2}, q²)`.
pub fn theta_combination(k: i64, g: i64) -> Result<Series> {
    theta_combination_window(k, g, 0)
}

pub fn theta_combination_window(k: i64, g: i64, extend: u32) -> Result<Series> {
    check_k(k)?;
    let first = f_abc_window(&FParams::with_powers(k, k + 2, k, 2 * k, 2 * k, 2)?, g, extend)?;
    let shift = 2 * k + 1;
    let second = f_abc_window(
        &FParams::with_powers(k, k + 2, k, 4 * k + 2, 4 * k + 2, 2)?,
        g - shift,
        extend,
    )?
    .shift(&Monomial::unit(shift));
    Ok(&first + &second)
}

/// Both sides of
/// `Σ_{n>=0} q^{2n²+n} (1 - q^{2n+1}) Σ_{|j|<=n} (-1)^j q^{-j²} = (q)_inf (q²;q²)_inf`.
pub fn kac_peterson(g: i64) -> Result<(Series, Series)> {
    kac_peterson_window(g, 0)
}

pub fn kac_peterson_window(g: i64, extend: u32) -> Result<(Series, Series)> {
    let lhs = hecke_sum(2, 1, g, extend);
    let rhs = poch_inf(&Monomial::unit(1), 1, Den::One, g)?.mul(&poch_inf(&Monomial::unit(2), 2, Den::One, g)?);
    Ok((lhs, rhs))
}
