//! Bailey pairs as values, with the transforms and lemma specializations
//! used to move between them.
//!
//! A pair relative to `a` over base `q^m` satisfies
//!
//! ```text
//! beta_n = Σ_{j=0}^{n} alpha_j / ((q^m; q^m)_{n-j} (a q^m; q^m)_{n+j})
//! ```
//!
//! Components are generated on demand for a given index and guarantee.
//! Unless stated otherwise they are assumed to have no negative exponents,
//! which is what lets the sums below stop at a computable index.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use crate::error::{Error, Result, ResultExt};
use crate::poch::{inv_poch_finite, poch_finite, poch_inf};
use crate::report::{MismatchRecord, Params, VerificationReport};
use crate::series::{eq_to_order, rat, Den, Monomial, Series, Verdict};

type Generator = dyn Fn(u64, i64) -> Result<Series> + Send + Sync;

/// One side of a pair: `n -> component_n`, memoized per `(n, guarantee)`.
pub struct Sequence {
    generate: Box<Generator>,
    memo: Mutex<HashMap<(u64, i64), Series>>,
}

impl Sequence {
    pub fn new<F>(f: F) -> Sequence
    where
        F: Fn(u64, i64) -> Result<Series> + Send + Sync + 'static,
    {
        Sequence {
            generate: Box::new(f),
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Component `n`, exact through exactly `g`.
    pub fn at(&self, n: u64, g: i64) -> Result<Series> {
        if let Some(hit) = self.memo.lock().expect("memo poisoned").get(&(n, g)) {
            return Ok(hit.clone());
        }
        // A higher guarantee is always safe to compute and truncate; going
        // through 0 keeps empty Pochhammer truncations invertible.
        let raw = (self.generate)(n, g.max(0))?;
        if raw.guarantee() < g {
            return Err(Error::GuaranteeViolation {
                exp: g,
                guarantee: raw.guarantee(),
            });
        }
        let value = raw.truncate(g);
        self.memo
            .lock()
            .expect("memo poisoned")
            .entry((n, g))
            .or_insert_with(|| value.clone());
        Ok(value)
    }
}

struct PairInner {
    name: String,
    a: Monomial,
    base: i64,
    alpha: Sequence,
    beta: Sequence,
}

/// A Bailey pair relative to `a` over base `q^base`, all components in
/// integer powers of `q`.
#[derive(Clone)]
pub struct BaileyPair {
    inner: Arc<PairInner>,
}

impl std::fmt::Debug for BaileyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BaileyPair")
            .field("name", &self.inner.name)
            .field("a", &self.inner.a)
            .field("base", &self.inner.base)
            .finish()
    }
}

impl BaileyPair {
    pub fn new<A, B>(name: impl Into<String>, a: Monomial, base: i64, alpha: A, beta: B) -> BaileyPair
    where
        A: Fn(u64, i64) -> Result<Series> + Send + Sync + 'static,
        B: Fn(u64, i64) -> Result<Series> + Send + Sync + 'static,
    {
        assert!(base > 0, "pair base must be positive");
        BaileyPair {
            inner: Arc::new(PairInner {
                name: name.into(),
                a,
                base,
                alpha: Sequence::new(alpha),
                beta: Sequence::new(beta),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn a(&self) -> &Monomial {
        &self.inner.a
    }

    pub fn base(&self) -> i64 {
        self.inner.base
    }

    pub fn alpha(&self, n: u64, g: i64) -> Result<Series> {
        self.inner
            .alpha
            .at(n, g)
            .context_with(|| format!("{} alpha_{n}", self.inner.name))
    }

    pub fn beta(&self, n: u64, g: i64) -> Result<Series> {
        self.inner
            .beta
            .at(n, g)
            .context_with(|| format!("{} beta_{n}", self.inner.name))
    }

    /// `a^n q^{base·n²}`, the weight used by (S1) and the `X, Y -> inf` lemma.
    fn quadratic_weight(&self, n: u64) -> Monomial {
        let n = n as i64;
        let an = self.a().pow(n);
        Monomial {
            coeff: an.coeff,
            exp: an.exp + self.base() * n * n,
        }
    }

    /// `Σ_{j<=n} alpha_j / ((q^m;q^m)_{n-j} (a q^m;q^m)_{n+j})`, the right
    /// side of the defining relation.
    pub fn relation_beta(&self, n: u64, g: i64) -> Result<Series> {
        let m = self.base();
        let shifted_a = Monomial {
            coeff: self.a().coeff.clone(),
            exp: self.a().exp + m,
        };
        let mut total = Series::zero(Den::One, g);
        for j in 0..=n {
            let mut alpha = self.alpha(j, g)?;
            let floor = alpha.min_exp().unwrap_or(0).min(0);
            if floor < 0 {
                alpha = self.alpha(j, g - floor)?;
            }
            let need = g - floor;
            let denom = poch_finite(&Monomial::unit(m), m, n - j, Den::One, need)?
                .mul(&poch_finite(&shifted_a, m, n + j, Den::One, need)?)
                .inverse()
                .context_with(|| format!("{} relation denominator n={n} j={j}", self.name()))?;
            total = &total + &alpha.mul(&denom);
        }
        Ok(total.truncate(g))
    }
}

/// First index where a pair fails its defining relation, with the mismatch.
pub fn first_relation_failure(p: &BaileyPair, n_max: u64, g: i64) -> Result<Option<(u64, crate::series::Mismatch)>> {
    for n in 0..=n_max {
        let lhs = p.beta(n, g)?;
        let rhs = p.relation_beta(n, g)?;
        if let Verdict::Fail(m) = eq_to_order(&lhs, &rhs, g)? {
            return Ok(Some((n, m)));
        }
    }
    Ok(None)
}

/// Checks the defining relation for every `n <= n_max` through order `g`.
pub fn check_pair(p: &BaileyPair, n_max: u64, g: i64) -> VerificationReport {
    let start = Instant::now();
    let params = Params::with_n_max(n_max);
    let outcome = first_relation_failure(p, n_max, g);
    let ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(None) => VerificationReport::pass(p.name(), params, g, ms),
        Ok(Some((n, m))) => VerificationReport::fail(
            p.name(),
            params,
            g,
            MismatchRecord::from_mismatch(&m).at(format!("n={n}")),
            ms,
        ),
        Err(e) => VerificationReport::error(p.name(), params, g, e.to_string(), ms),
    }
}

/// (S1): `alpha'_n = a^n q^{mn²} alpha_n`,
/// `beta'_n = Σ_{j<=n} a^j q^{mj²} beta_j / (q^m;q^m)_{n-j}`.
pub fn apply_s1(p: &BaileyPair) -> BaileyPair {
    let name = format!("S1({})", p.name());
    let for_alpha = p.clone();
    let for_beta = p.clone();
    BaileyPair::new(
        name,
        p.a().clone(),
        p.base(),
        move |n, g| {
            let w = for_alpha.quadratic_weight(n);
            Ok(for_alpha.alpha(n, g - w.exp)?.shift(&w))
        },
        move |n, g| {
            let m = for_beta.base();
            let mut total = Series::zero(Den::One, g);
            for j in 0..=n {
                let w = for_beta.quadratic_weight(j);
                let rest = g - w.exp;
                if rest < 0 {
                    continue;
                }
                let term = for_beta
                    .beta(j, rest)?
                    .mul(&inv_poch_finite(&Monomial::unit(m), m, n - j, Den::One, rest)?)
                    .shift(&w);
                total = &total + &term;
            }
            Ok(total)
        },
    )
}

/// (E1): for a pair relative to `A` over `q²`, the pair relative to `A²`
/// over `q⁴` with the same alpha and
/// `beta'_n = Σ_{j<=n} (-1)^{n-j} q^{2(n-j)²} beta_j / ((-A q²;q²)_{2n} (q⁴;q⁴)_{n-j})`.
pub fn apply_e1(p: &BaileyPair) -> Result<BaileyPair> {
    if p.base() != 2 {
        return Err(Error::Base(format!(
            "(E1) needs a pair over q^2, {} is over q^{}",
            p.name(),
            p.base()
        )));
    }
    if p.a().exp.rem_euclid(2) != 0 {
        return Err(Error::Base(format!(
            "(E1) needs a relative parameter a^2, got exponent {}",
            p.a().exp
        )));
    }
    let name = format!("E1({})", p.name());
    let for_alpha = p.clone();
    let for_beta = p.clone();
    let neg_aq2 = Monomial {
        coeff: -p.a().coeff.clone(),
        exp: p.a().exp + 2,
    };
    Ok(BaileyPair::new(
        name,
        p.a().pow(2),
        4,
        move |n, g| for_alpha.alpha(n, g),
        move |n, g| {
            let mut total = Series::zero(Den::One, g);
            for j in 0..=n {
                let d = (n - j) as i64;
                let w = 2 * d * d;
                let rest = g - w;
                if rest < 0 {
                    continue;
                }
                let sign = if d % 2 == 1 { -1 } else { 1 };
                let term = for_beta
                    .beta(j, rest)?
                    .mul(&inv_poch_finite(&Monomial::unit(4), 4, n - j, Den::One, rest)?)
                    .shift(&Monomial {
                        coeff: rat(sign),
                        exp: w,
                    });
                total = &total + &term;
            }
            let outer = inv_poch_finite(&neg_aq2, 2, 2 * n, Den::One, g)?;
            Ok(total.mul(&outer))
        },
    ))
}

/// `Σ_n a^n q^{mn²} beta_n` and `(1/(a q^m;q^m)_inf) Σ_n a^n q^{mn²} alpha_n`.
pub fn lemma_xy_inf(p: &BaileyPair, g: i64) -> Result<(Series, Series)> {
    lemma_xy_inf_window(p, g, 0)
}

pub fn lemma_xy_inf_window(p: &BaileyPair, g: i64, extend: u32) -> Result<(Series, Series)> {
    let mut lhs = Series::zero(Den::One, g);
    let mut rhs_sum = Series::zero(Den::One, g);
    let mut past = 0;
    for n in 0u64.. {
        let w = p.quadratic_weight(n);
        if w.exp > g {
            if past >= extend {
                break;
            }
            past += 1;
        }
        let rest = g - w.exp;
        lhs = &lhs + &p.beta(n, rest)?.shift(&w);
        rhs_sum = &rhs_sum + &p.alpha(n, rest)?.shift(&w);
    }
    let m = p.base();
    let aqm = Monomial {
        coeff: p.a().coeff.clone(),
        exp: p.a().exp + m,
    };
    let prefactor = poch_inf(&aqm, m, Den::One, g)?.inverse()?;
    Ok((lhs.truncate(g), rhs_sum.mul(&prefactor).truncate(g)))
}

/// The `X = -q, Y -> inf` limit:
/// `Σ (-q)_n a^n q^{n(n-1)/2} beta_n` and
/// `((-a)_inf / (aq)_inf) Σ (-q)_n a^n q^{n(n-1)/2} alpha_n / (-a)_n`.
pub fn lemma_xnegq_y_inf(p: &BaileyPair, g: i64) -> Result<(Series, Series)> {
    lemma_xnegq_y_inf_window(p, g, 0)
}

pub fn lemma_xnegq_y_inf_window(p: &BaileyPair, g: i64, extend: u32) -> Result<(Series, Series)> {
    if p.base() != 1 {
        return Err(Error::Base(format!(
            "the X = -q limit is stated over base q, {} is over q^{}",
            p.name(),
            p.base()
        )));
    }
    let neg_q = Monomial::neg_unit(1);
    let neg_a = Monomial {
        coeff: -p.a().coeff.clone(),
        exp: p.a().exp,
    };
    let mut lhs = Series::zero(Den::One, g);
    let mut rhs_sum = Series::zero(Den::One, g);
    let mut past = 0;
    for n in 0u64.. {
        let ni = n as i64;
        let an = p.a().pow(ni);
        let w = Monomial {
            coeff: an.coeff,
            exp: an.exp + ni * (ni - 1) / 2,
        };
        // nondecreasing in n once n >= 1
        if w.exp > g && n >= 1 {
            if past >= extend {
                break;
            }
            past += 1;
        }
        let rest = g - w.exp;
        let neg_q_poch = poch_finite(&neg_q, 1, n, Den::One, rest.max(0))?;
        lhs = &lhs + &p.beta(n, rest)?.mul(&neg_q_poch).shift(&w);
        let ratio = neg_q_poch.mul(&inv_poch_finite(&neg_a, 1, n, Den::One, rest.max(0))?);
        rhs_sum = &rhs_sum + &p.alpha(n, rest)?.mul(&ratio).shift(&w);
    }
    let aq = Monomial {
        coeff: p.a().coeff.clone(),
        exp: p.a().exp + 1,
    };
    let prefactor = poch_inf(&neg_a, 1, Den::One, g)?.mul(&poch_inf(&aq, 1, Den::One, g)?.inverse()?);
    Ok((lhs.truncate(g), rhs_sum.mul(&prefactor).truncate(g)))
}

/// Largest `n` with `n² + n <= g`.
fn top_index(g: i64) -> i64 {
    let mut n = 0;
    while (n + 1) * (n + 2) <= g {
        n += 1;
    }
    n
}

/// `Σ_{n_1>=...>=n_k>=0} q^{Σ(n_i²+n_i)} (-1)^{n_k}
///   / ((q)_{n_1-n_2} ... (q)_{n_{k-1}-n_k} (q²;q²)_{n_k})`.
pub fn multi_sum_2_19(k: i64, g: i64) -> Result<Series> {
    multi_sum_2_19_window(k, g, 0)
}

/// Evaluated innermost-first: `T_k(n) = (-1)^n q^{n²+n} / (q²;q²)_n` and
/// `T_i(n) = q^{n²+n} Σ_{m<=n} T_{i+1}(m) / (q)_{n-m}`; the sum is `Σ_n T_1(n)`.
pub fn multi_sum_2_19_window(k: i64, g: i64, extend: u32) -> Result<Series> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    if g < 0 {
        return Ok(Series::zero(Den::One, g));
    }
    let top = (top_index(g) + extend as i64) as u64;
    let inv_q: Vec<Series> = (0..=top)
        .map(|d| inv_poch_finite(&Monomial::unit(1), 1, d, Den::One, g))
        .collect::<Result<_>>()?;
    let weight = |n: u64| Monomial::unit((n * n + n) as i64);

    let mut level: Vec<Series> = (0..=top)
        .map(|n| {
            let sign = if n % 2 == 1 { -1 } else { 1 };
            Ok(inv_poch_finite(&Monomial::unit(2), 2, n, Den::One, g)?
                .scale(&rat(sign))
                .shift(&weight(n))
                .truncate(g))
        })
        .collect::<Result<_>>()?;
    for _ in 1..k {
        level = (0..=top)
            .map(|n| {
                let w = weight(n);
                let mut acc = Series::zero(Den::One, g);
                for m in 0..=n {
                    acc = &acc + &level[m as usize].mul(&inv_q[(n - m) as usize]);
                }
                acc.shift(&w).truncate(g)
            })
            .collect();
    }
    let mut total = Series::zero(Den::One, g);
    for t in &level {
        total = &total + t;
    }
    Ok(total)
}

/// The unit pair relative to `a = q^e` over base `q`: `alpha_n = δ_{n0}`,
/// `beta_n = 1 / ((q)_n (aq)_n)`.
pub fn unit_pair(name: &str, a_exp: i64) -> BaileyPair {
    BaileyPair::new(
        name,
        Monomial::unit(a_exp),
        1,
        move |n, g| {
            Ok(if n == 0 {
                Series::one(Den::One, g)
            } else {
                Series::zero(Den::One, g)
            })
        },
        move |n, g| {
            Ok(
                inv_poch_finite(&Monomial::unit(1), 1, n, Den::One, g)?.mul(&inv_poch_finite(
                    &Monomial::unit(a_exp + 1),
                    1,
                    n,
                    Den::One,
                    g,
                )?),
            )
        },
    )
}

/// A pair with both sequences identically zero.
pub fn zero_pair(name: &str, a_exp: i64, base: i64) -> BaileyPair {
    BaileyPair::new(
        name,
        Monomial::unit(a_exp),
        base,
        |_, g| Ok(Series::zero(Den::One, g)),
        |_, g| Ok(Series::zero(Den::One, g)),
    )
}
