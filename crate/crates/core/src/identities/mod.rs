//! The registry of checkable identities and the verification driver.
//!
//! An entry builds a list of [`Comparison`]s for given parameters and order;
//! it passes when every comparison agrees through its common guarantee.

pub mod sums;

use std::time::Instant;

use crate::bailey::BaileyPair;
use crate::error::{Error, Result, ResultExt};
use crate::hecke::{bilateral_form_window, hecke_form_window, kac_peterson_window, theta_combination_window};
use crate::pairs;
use crate::report::{MismatchRecord, Params, VerificationReport};
use crate::series::{eq_to_order, Den, Series, Verdict};

/// One `lhs = rhs` check inside an entry.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub label: String,
    pub lhs: Series,
    pub rhs: Series,
}

impl Comparison {
    fn new(label: impl Into<String>, lhs: Series, rhs: Series) -> Comparison {
        Comparison {
            label: label.into(),
            lhs,
            rhs,
        }
    }
}

/// Which parameters an entry takes, with defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schema {
    Plain,
    /// Checked for every index `n <= n_max`.
    Indexed {
        n_max: u64,
    },
    /// A family in `k >= 2`.
    Family {
        ks: &'static [i64],
    },
}

type Builder = fn(&Params, i64, u32) -> Result<Vec<Comparison>>;

pub struct IdentityEntry {
    pub id: &'static str,
    /// What the entry asserts, in one line.
    pub anchor: &'static str,
    /// The base the right side is built over before any projection.
    pub base_den: Den,
    pub default_order: i64,
    pub schema: Schema,
    build: Builder,
}

impl std::fmt::Debug for IdentityEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityEntry")
            .field("id", &self.id)
            .finish_non_exhaustive()
    }
}

impl IdentityEntry {
    /// The default parameter expansions.
    pub fn default_params(&self) -> Vec<Params> {
        match self.schema {
            Schema::Plain => vec![Params::none()],
            Schema::Indexed { n_max } => vec![Params::with_n_max(n_max)],
            Schema::Family { ks } => ks.iter().map(|&k| Params::with_k(k)).collect(),
        }
    }

    fn check_params(&self, params: &Params) -> Result<()> {
        let ok = match self.schema {
            Schema::Plain => params.k.is_none() && params.n_max.is_none(),
            Schema::Indexed { .. } => params.k.is_none(),
            Schema::Family { .. } => params.n_max.is_none() && params.k.is_some_and(|k| k >= 2),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "{} does not accept parameters {{{params}}}",
                self.id
            )))
        }
    }

    fn n_max(&self, params: &Params) -> u64 {
        match (params.n_max, self.schema) {
            (Some(n), _) => n,
            (None, Schema::Indexed { n_max }) => n_max,
            _ => 0,
        }
    }
}

fn k_of(p: &Params) -> i64 {
    p.k.expect("family entries are built with k")
}

fn n_of(p: &Params) -> u64 {
    p.n_max.expect("indexed entries are built with n_max")
}

fn pair_relation(pair: BaileyPair, p: &Params, g: i64) -> Result<Vec<Comparison>> {
    (0..=n_of(p))
        .map(|n| {
            Ok(Comparison::new(
                format!("n={n}"),
                pair.beta(n, g)?,
                pair.relation_beta(n, g)?,
            ))
        })
        .collect()
}

fn single(lhs: Series, rhs: Series) -> Result<Vec<Comparison>> {
    Ok(vec![Comparison::new("", lhs, rhs)])
}

const PAIR_N: u64 = 10;

static REGISTRY: &[IdentityEntry] = &[
    IdentityEntry {
        id: "eq_2_13",
        anchor: "2ΣΣ(-1)^j q^{n²+n+j(j+1)/2}/((-q)_n(q)_{n-j}(q)_j(1-q^{2j+1})) = A(q^{1/2}) + A(-q^{1/2})",
        base_den: Den::Two,
        default_order: 60,
        schema: Schema::Plain,
        build: |_, g, x| single(sums::lhs_2_13(g, x)?, sums::rhs_2_13(g, x)?),
    },
    IdentityEntry {
        id: "eq_2_14",
        anchor: "ΣΣ(-1)^j q^{2n²+2n+j²+j}/((-q)_{2n+1}(q²;q²)_{n-j}(q²;q²)_j(1-q^{2j+1})) = F_2(q²)",
        base_den: Den::One,
        default_order: 60,
        schema: Schema::Plain,
        build: |_, g, x| single(sums::lhs_2_14(g, x)?, sums::rhs_2_14(g, x)?),
    },
    IdentityEntry {
        id: "eq_2_15",
        anchor: "ΣΣ(-1)^n q^{2n²+2n+(n-j)²}/((-q)_{2n+1}(q²;q²)_{n-j}(q²;q²)_j(1-q^{2j+1})) = φ(q²)/(-q²;q²)_∞",
        base_den: Den::One,
        default_order: 60,
        schema: Schema::Plain,
        build: |_, g, x| single(sums::lhs_2_15(g, x)?, sums::rhs_2_15(g, x)?),
    },
    IdentityEntry {
        id: "eq_2_16",
        anchor: "2ΣΣ(-1)^j q^{n(n+1)/2+j(j+1)/2}/((q)_{n-j}(q)_j(1-q^{2j+1})) = ((-q)_∞/(q)_∞)((q)_∞(q^{1/2};q^{1/2})_∞ + (q)_∞²(-q^{1/2};q)_∞)",
        base_den: Den::Two,
        default_order: 60,
        schema: Schema::Plain,
        build: |_, g, x| single(sums::lhs_2_16(g, x)?, sums::rhs_2_16(g)?),
    },
    IdentityEntry {
        id: "eq_2_16_lemma",
        anchor: "2Σ(-1)^n q^{n(n+1)/2}/((q)_n(1-q^{2n+1})) = ((-q)_∞/(q)_∞)((q)_∞(q^{1/2};q^{1/2})_∞ + (q)_∞²(-q^{1/2};q)_∞)",
        base_den: Den::Two,
        default_order: 60,
        schema: Schema::Plain,
        build: |_, g, x| single(sums::single_sum_2_16(g, x)?, sums::rhs_2_16(g)?),
    },
    IdentityEntry {
        id: "eq_2_19",
        anchor: "k-fold sum q^{Σ(n_i²+n_i)}(-1)^{n_k}/(…(q²;q²)_{n_k}) = (f_{k,k+2,k}(q^{2k},q^{2k},q²) + q^{2k+1}f_{k,k+2,k}(q^{4k+2},q^{4k+2},q²))/(q)_∞",
        base_den: Den::One,
        default_order: 40,
        schema: Schema::Family { ks: &[2, 3, 4, 6] },
        build: |p, g, x| {
            let k = k_of(p);
            single(
                crate::bailey::multi_sum_2_19_window(k, g, x)?,
                sums::rhs_2_19(k, g, x)?,
            )
        },
    },
    IdentityEntry {
        id: "eq_D1",
        anchor: "2ΣΣ(q)_n(-q;q²)_{j+1}(-1)^{n+j}q^{n(n+1)/2+n-j}/((q²;q²)_{n-j}(-q²;q²)_j(1-q^{4j+2})) = Σq^{n(n+1)/2}/(-q)_n + Σq^{n(3n+1)/2}(1+q^{2n+1})Σ_{|j|<=n}q^{-j²}",
        base_den: Den::One,
        default_order: 60,
        schema: Schema::Plain,
        build: |_, g, x| single(sums::lhs_d1(g, x)?, sums::rhs_d1(g, x)?),
    },
    IdentityEntry {
        id: "eq_D1_amended",
        anchor: "as eq_D1 with (q²;q²)_j in place of (-q²;q²)_j in the denominator",
        base_den: Den::One,
        default_order: 60,
        schema: Schema::Plain,
        build: |_, g, x| single(sums::lhs_d1_amended(g, x)?, sums::rhs_d1(g, x)?),
    },
    IdentityEntry {
        id: "hecke_rewrite",
        anchor: "Σq^{(k+1)n²+kn}(1-q^{2n+1})Σ_{|j|<=n}(-1)^j q^{-j²} and its bilateral form = f_{k,k+2,k}(q^{2k},q^{2k},q²) + q^{2k+1}f_{k,k+2,k}(q^{4k+2},q^{4k+2},q²)",
        base_den: Den::One,
        default_order: 60,
        schema: Schema::Family { ks: &[2, 3, 4, 5, 6] },
        build: |p, g, x| {
            let k = k_of(p);
            let theta = theta_combination_window(k, g, x)?;
            Ok(vec![
                Comparison::new("hecke form", hecke_form_window(k, g, x)?, theta.clone()),
                Comparison::new("bilateral form", bilateral_form_window(k, g, x)?, theta),
            ])
        },
    },
    IdentityEntry {
        id: "id_kp",
        anchor: "Σq^{2n²+n}(1-q^{2n+1})Σ_{|j|<=n}(-1)^j q^{-j²} = (q)_∞(q²;q²)_∞",
        base_den: Den::One,
        default_order: 200,
        schema: Schema::Plain,
        build: |_, g, x| {
            let (lhs, rhs) = kac_peterson_window(g, x)?;
            single(lhs, rhs)
        },
    },
    IdentityEntry {
        id: "link_E1",
        anchor: "E1 applied to pair_bar gives pair_LO",
        base_den: Den::One,
        default_order: 60,
        schema: Schema::Indexed { n_max: 8 },
        build: |p, g, _| {
            let (from, to) = (pairs::e1_of_bar(), pairs::pair_lo());
            let mut out = Vec::new();
            for n in 0..=n_of(p) {
                out.push(Comparison::new(format!("n={n} alpha"), from.alpha(n, g)?, to.alpha(n, g)?));
                out.push(Comparison::new(format!("n={n} beta"), from.beta(n, g)?, to.beta(n, g)?));
            }
            Ok(out)
        },
    },
    IdentityEntry {
        id: "link_S1",
        anchor: "S1 applied to pair_thm21, with q -> q², gives pair_bar",
        base_den: Den::One,
        default_order: 40,
        schema: Schema::Indexed { n_max: 10 },
        build: |p, g, _| {
            let (from, to) = (pairs::s1_of_thm21(), pairs::pair_bar());
            let wide = 2 * g + 1;
            let mut out = Vec::new();
            for n in 0..=n_of(p) {
                out.push(Comparison::new(
                    format!("n={n} alpha"),
                    from.alpha(n, g)?.stretch(2),
                    to.alpha(n, wide)?,
                ));
                out.push(Comparison::new(
                    format!("n={n} beta"),
                    from.beta(n, g)?.stretch(2),
                    to.beta(n, wide)?,
                ));
            }
            Ok(out)
        },
    },
    IdentityEntry {
        id: "link_zcoeff",
        anchor: "Σ_j q^{n-j}/((q²;q²)_{n-j}(q;q²)_{j+1}) = Σ_j (-1)^j q^{j(j+1)}/((q)_{n-j}(q²;q²)_j(1-q^{2j+1})) for each n",
        base_den: Den::One,
        default_order: 40,
        schema: Schema::Indexed { n_max: 10 },
        build: |p, g, _| {
            (0..=n_of(p))
                .map(|n| Ok(Comparison::new(format!("n={n}"), sums::zcoeff_lhs(n, g)?, sums::zcoeff_rhs(n, g)?)))
                .collect()
        },
    },
    IdentityEntry {
        id: "pair_HM",
        anchor: "alpha_n = q^{n²}(1-q^{2n+1})/(1-q)·Σ_{|j|<=n}(-1)^j q^{-j²}, beta_n = (-1)^n/(q²;q²)_n relative to q",
        base_den: Den::One,
        default_order: 40,
        schema: Schema::Indexed { n_max: PAIR_N },
        build: |p, g, _| pair_relation(pairs::pair_hm(), p, g),
    },
    IdentityEntry {
        id: "pair_LO",
        anchor: "Hecke-type alpha_n over 1-q², beta_n = 2/((-q⁴;q²)_{2n}(q²;q⁴)_{n+1}) relative to (q⁴, q⁴)",
        base_den: Den::One,
        default_order: 40,
        schema: Schema::Indexed { n_max: PAIR_N },
        build: |p, g, _| pair_relation(pairs::pair_lo(), p, g),
    },
    IdentityEntry {
        id: "pair_bar",
        anchor: "alpha_n = a_n(q) + a_n(-q), beta_n = 2Σ_j q^{2(n-j)}/((q⁴;q⁴)_{n-j}(q²;q⁴)_{j+1}) relative to (q², q²)",
        base_den: Den::One,
        default_order: 40,
        schema: Schema::Indexed { n_max: PAIR_N },
        build: |p, g, _| pair_relation(pairs::pair_bar(), p, g),
    },
    IdentityEntry {
        id: "pair_thm21",
        anchor: "alpha_n = q^{-n²-n}(a_n(q^{1/2}) + a_n(-q^{1/2})), beta_n = 2(-1)^n/((q²;q²)_n(1-q^{2n+1})) relative to (q, q)",
        base_den: Den::One,
        default_order: 40,
        schema: Schema::Indexed { n_max: PAIR_N },
        build: |p, g, _| pair_relation(pairs::pair_thm21(), p, g),
    },
    IdentityEntry {
        id: "pair_unit",
        anchor: "alpha_n = δ_{n0}, beta_n = 1/((q)_n(q²;q)_n) relative to (q, q)",
        base_den: Den::One,
        default_order: 40,
        schema: Schema::Indexed { n_max: PAIR_N },
        build: |p, g, _| pair_relation(pairs::pair_unit(), p, g),
    },
];

/// All entries, sorted by id.
pub fn registry() -> &'static [IdentityEntry] {
    REGISTRY
}

pub fn lookup(id: &str) -> Result<&'static IdentityEntry> {
    REGISTRY
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Glob match supporting `*` and `?`.
pub fn matches_pattern(pattern: &str, id: &str) -> bool {
    fn go(p: &[char], s: &[char]) -> bool {
        match p.split_first() {
            None => s.is_empty(),
            Some(('*', rest)) => (0..=s.len()).any(|i| go(rest, &s[i..])),
            Some(('?', rest)) => !s.is_empty() && go(rest, &s[1..]),
            Some((c, rest)) => s.first() == Some(c) && go(rest, &s[1..]),
        }
    }
    let p: Vec<char> = pattern.chars().collect();
    let s: Vec<char> = id.chars().collect();
    go(&p, &s)
}

pub fn matching(pattern: &str) -> Vec<&'static IdentityEntry> {
    REGISTRY.iter().filter(|e| matches_pattern(pattern, e.id)).collect()
}

pub fn build_sides(id: &str, params: &Params, g: i64) -> Result<Vec<Comparison>> {
    build_sides_window(id, params, g, 0)
}

/// As [`build_sides`], with every enumeration bound pushed `extend` steps
/// past the point where it would normally stop.
pub fn build_sides_window(id: &str, params: &Params, g: i64, extend: u32) -> Result<Vec<Comparison>> {
    let entry = lookup(id)?;
    entry.check_params(params)?;
    (entry.build)(params, g, extend).context_with(|| format!("building {id} {{{params}}} at order {g}"))
}

/// The right side of a half-base entry before it is projected to integer
/// exponents.
pub fn half_base_rhs(id: &str, g: i64) -> Result<Series> {
    match id {
        "eq_2_13" => sums::rhs_2_13_half(g, 0),
        "eq_2_16" | "eq_2_16_lemma" => sums::rhs_2_16_half(g),
        _ => Err(Error::Parameter(format!("{id} is not built over q^(1/2)"))),
    }
}

/// Compares already-built sides and produces the report.
pub fn judge(id: &str, params: &Params, g: i64, sides: Result<Vec<Comparison>>, start: Instant) -> VerificationReport {
    let outcome = sides.and_then(|comparisons| {
        for c in comparisons {
            if c.lhs.den() != c.rhs.den() {
                return Err(Error::DenMismatch {
                    expected: c.lhs.den().get(),
                    found: c.rhs.den().get(),
                });
            }
            let common = c.lhs.guarantee().min(c.rhs.guarantee());
            if common < g {
                return Err(Error::GuaranteeViolation {
                    exp: g,
                    guarantee: common,
                });
            }
            if let Verdict::Fail(m) = eq_to_order(&c.lhs, &c.rhs, common)? {
                let mut record = MismatchRecord::from_mismatch(&m);
                if !c.label.is_empty() {
                    record = record.at(c.label);
                }
                return Ok(Some(record));
            }
        }
        Ok(None)
    });
    let ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(None) => VerificationReport::pass(id, params.clone(), g, ms),
        Ok(Some(m)) => VerificationReport::fail(id, params.clone(), g, m, ms),
        Err(e) => VerificationReport::error(id, params.clone(), g, e.to_string(), ms),
    }
}

pub fn verify(id: &str, params: &Params, g: i64) -> VerificationReport {
    let start = Instant::now();
    judge(id, params, g, build_sides(id, params, g), start)
}

/// Per-run replacements for entry defaults.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub order: Option<i64>,
    pub n_max: Option<u64>,
    pub ks: Option<Vec<i64>>,
}

/// One concrete verification to run.
#[derive(Debug, Clone)]
pub struct Job {
    pub id: &'static str,
    pub params: Params,
    pub order: i64,
}

impl Job {
    pub fn run(&self) -> VerificationReport {
        verify(self.id, &self.params, self.order)
    }
}

/// Every `(entry, params)` expansion matching `pattern`, ordered by id then
/// params.
pub fn jobs(pattern: &str, overrides: &Overrides) -> Vec<Job> {
    let mut out = Vec::new();
    for e in matching(pattern) {
        let order = overrides.order.unwrap_or(e.default_order);
        let params: Vec<Params> = match e.schema {
            Schema::Plain => vec![Params::none()],
            Schema::Indexed { .. } => vec![Params::with_n_max(overrides.n_max.unwrap_or(e.n_max(&Params::none())))],
            Schema::Family { ks } => {
                let mut ks = overrides.ks.clone().unwrap_or_else(|| ks.to_vec());
                ks.sort_unstable();
                ks.dedup();
                ks.into_iter().map(Params::with_k).collect()
            }
        };
        out.extend(params.into_iter().map(|params| Job {
            id: e.id,
            params,
            order,
        }));
    }
    out.sort_by(|a, b| (a.id, &a.params).cmp(&(b.id, &b.params)));
    out
}

pub fn verify_all(pattern: &str, overrides: &Overrides) -> Vec<VerificationReport> {
    jobs(pattern, overrides).iter().map(Job::run).collect()
}
