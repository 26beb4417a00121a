//! The concrete Bailey pairs behind the mock theta double sums.
//!
//! Each constructor returns a handle to a process-wide instance so that
//! memoized components are shared between callers.

use std::sync::OnceLock;

use crate::bailey::{apply_e1, apply_s1, unit_pair, BaileyPair};
use crate::error::Result;
use crate::hecke::inner_terms;
use crate::poch::{geometric, inv_poch_finite};
use crate::series::{rat, Den, Monomial, Series};

/// `q^{3n²+2n} (1 - q^{2n+1}) / (1 - q²) · Σ_{|j|<=n} (-1)^j q^{-j²}`.
pub fn a_n(n: u64, g: i64) -> Series {
    let ni = n as i64;
    let lead = 3 * ni * ni + 2 * ni;
    let poly = Series::from_int_terms(
        Den::One,
        g,
        inner_terms(n, true).flat_map(|(e, c)| [(lead + e, c), (lead + 2 * ni + 1 + e, -c)]),
    );
    poly.mul(&geometric(2, Den::One, g))
}

fn sign(n: u64) -> i64 {
    if n % 2 == 1 {
        -1
    } else {
        1
    }
}

/// Relative to `q` over base `q`:
/// `alpha_n = q^{-n²-n} (a_n(q^{1/2}) + a_n(-q^{1/2}))`,
/// `beta_n = 2 (-1)^n / ((q²;q²)_n (1 - q^{2n+1}))`.
pub fn pair_thm21() -> BaileyPair {
    static PAIR: OnceLock<BaileyPair> = OnceLock::new();
    PAIR.get_or_init(|| {
        BaileyPair::new(
            "pair_thm21",
            Monomial::unit(1),
            1,
            |n, g| {
                let w = (n * n + n) as i64;
                // a_n is needed at q^{1/2} through q^{g + w}
                let half_units = 2 * (g + w) + 1;
                let folded = a_n(n, half_units).reinterpret_half()?.even_double().project_integer()?;
                Ok(folded.shift(&Monomial::unit(-w)))
            },
            |n, g| {
                Ok(inv_poch_finite(&Monomial::unit(2), 2, n, Den::One, g)?
                    .mul(&geometric(2 * n as i64 + 1, Den::One, g))
                    .scale(&rat(2 * sign(n))))
            },
        )
    })
    .clone()
}

/// Relative to `q⁴` over base `q⁴`:
/// `beta_n = 2 / ((-q⁴;q²)_{2n} (q²;q⁴)_{n+1})`, alpha a pair of Hecke-type
/// blocks over `1 - q²`.
pub fn pair_lo() -> BaileyPair {
    static PAIR: OnceLock<BaileyPair> = OnceLock::new();
    PAIR.get_or_init(|| {
        BaileyPair::new(
            "pair_LO",
            Monomial::unit(4),
            4,
            |n, g| {
                let ni = n as i64;
                let lead = ni * (ni + 1) + 2 * ni * ni + ni;
                let s = sign(n);
                let plain =
                    inner_terms(n, false).flat_map(|(e, c)| [(lead + e, s * c), (lead + 2 * ni + 1 + e, s * c)]);
                let alternating = inner_terms(n, true).flat_map(|(e, c)| [(lead + e, c), (lead + 2 * ni + 1 + e, -c)]);
                let poly = Series::from_int_terms(Den::One, g, plain.chain(alternating));
                Ok(poly.mul(&geometric(2, Den::One, g)))
            },
            |n, g| {
                Ok(inv_poch_finite(&Monomial::neg_unit(4), 2, 2 * n, Den::One, g)?
                    .mul(&inv_poch_finite(&Monomial::unit(2), 4, n + 1, Den::One, g)?)
                    .scale(&rat(2)))
            },
        )
    })
    .clone()
}

/// Relative to `q²` over base `q²`: `alpha_n = a_n(q) + a_n(-q)`,
/// `beta_n = 2 Σ_{j<=n} q^{2(n-j)} / ((q⁴;q⁴)_{n-j} (q²;q⁴)_{j+1})`.
pub fn pair_bar() -> BaileyPair {
    static PAIR: OnceLock<BaileyPair> = OnceLock::new();
    PAIR.get_or_init(|| {
        BaileyPair::new(
            "pair_bar",
            Monomial::unit(2),
            2,
            |n, g| Ok(a_n(n, g).even_double()),
            |n, g| {
                let mut total = Series::zero(Den::One, g);
                for j in 0..=n {
                    let w = 2 * (n - j) as i64;
                    let term = inv_poch_finite(&Monomial::unit(4), 4, n - j, Den::One, g)?
                        .mul(&inv_poch_finite(&Monomial::unit(2), 4, j + 1, Den::One, g)?)
                        .shift(&Monomial::unit(w));
                    total = &total + &term;
                }
                Ok(total.scale(&rat(2)).truncate(g))
            },
        )
    })
    .clone()
}

/// Relative to `q` over base `q`:
/// `alpha_n = q^{n²} (1 - q^{2n+1}) / (1 - q) · Σ_{|j|<=n} (-1)^j q^{-j²}`,
/// `beta_n = (-1)^n / (q²;q²)_n`.
pub fn pair_hm() -> BaileyPair {
    static PAIR: OnceLock<BaileyPair> = OnceLock::new();
    PAIR.get_or_init(|| {
        BaileyPair::new(
            "pair_HM",
            Monomial::unit(1),
            1,
            |n, g| {
                let ni = n as i64;
                let lead = ni * ni;
                let poly = Series::from_int_terms(
                    Den::One,
                    g,
                    inner_terms(n, true).flat_map(|(e, c)| [(lead + e, c), (lead + 2 * ni + 1 + e, -c)]),
                );
                Ok(poly.mul(&geometric(1, Den::One, g)))
            },
            |n, g| Ok(inv_poch_finite(&Monomial::unit(2), 2, n, Den::One, g)?.scale(&rat(sign(n)))),
        )
    })
    .clone()
}

/// The unit pair relative to `q`.
pub fn pair_unit() -> BaileyPair {
    static PAIR: OnceLock<BaileyPair> = OnceLock::new();
    PAIR.get_or_init(|| unit_pair("pair_unit", 1)).clone()
}

/// `S1` applied to [`pair_thm21`]; its `q -> q²` stretch is [`pair_bar`].
pub fn s1_of_thm21() -> BaileyPair {
    static PAIR: OnceLock<BaileyPair> = OnceLock::new();
    PAIR.get_or_init(|| apply_s1(&pair_thm21())).clone()
}

/// `E1` applied to [`pair_bar`], which lands on [`pair_lo`].
pub fn e1_of_bar() -> BaileyPair {
    static PAIR: OnceLock<BaileyPair> = OnceLock::new();
    PAIR.get_or_init(|| apply_e1(&pair_bar()).expect("pair_bar is over an even base"))
        .clone()
}

/// All registered pairs, in registry order.
pub fn registered_pairs() -> Vec<BaileyPair> {
    vec![pair_thm21(), pair_lo(), pair_bar(), pair_hm(), pair_unit()]
}

pub fn pair_by_name(name: &str) -> Option<BaileyPair> {
    registered_pairs().into_iter().find(|p| p.name() == name)
}

/// Convenience for callers that want the `n`-th component by name.
pub fn component(pair: &str, which: &str, n: u64, g: i64) -> Result<Series> {
    let p = pair_by_name(pair).ok_or_else(|| crate::error::Error::Parameter(format!("unknown pair {pair:?}")))?;
    match which {
        "alpha" => p.alpha(n, g),
        "beta" => p.beta(n, g),
        other => Err(crate::error::Error::Parameter(format!(
            "pair component must be alpha or beta, got {other:?}"
        ))),
    }
}
