//! Names accepted by `expand --target`.

use qbailey::functions::{f2, mock_a, phi};
use qbailey::hecke::{bilateral_form, f_abc, hecke_form, FParams};
use qbailey::identities::{build_sides, lookup, Schema};
use qbailey::pairs::component;
use qbailey::{Params, Result, Series};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    A,
    F2,
    Phi,
    F([i64; 6]),
    Hecke(i64),
    Bilateral(i64),
    MultiSum(i64),
    Component { pair: String, which: String, n: u64 },
    Side { id: String, k: Option<i64>, rhs: bool },
}

pub const HELP: &str = "A, F2, phi, f(a,b,c,ex,ey,p), hecke(k), bilateral(k), multisum(k), \
<pair>.alpha(n), <pair>.beta(n), <id>.lhs, <id>.rhs, <id>(k).lhs, <id>(k).rhs";

/// Splits `name(1,2,3)` into `("name", [1, 2, 3])`; a bare name has no
/// arguments.
fn call(s: &str) -> Option<(&str, Vec<i64>)> {
    match s.split_once('(') {
        None => Some((s, Vec::new())),
        Some((name, rest)) => {
            let inner = rest.strip_suffix(')')?;
            let args = inner
                .split(',')
                .map(|a| a.trim().parse::<i64>().ok())
                .collect::<Option<Vec<_>>>()?;
            Some((name, args))
        }
    }
}

pub fn parse(s: &str) -> std::result::Result<Target, String> {
    let bad = || format!("unknown target {s:?}; expected one of: {HELP}");
    let s = s.trim();
    if let Some((head, tail)) = s.rsplit_once('.') {
        let (name, args) = call(head).ok_or_else(bad)?;
        if tail == "lhs" || tail == "rhs" {
            let k = match args.as_slice() {
                [] => None,
                [k] => Some(*k),
                _ => return Err(bad()),
            };
            return Ok(Target::Side {
                id: name.to_string(),
                k,
                rhs: tail == "rhs",
            });
        }
        let (which, idx) = call(tail).ok_or_else(bad)?;
        return match (which, idx.as_slice()) {
            ("alpha" | "beta", [n]) if *n >= 0 && args.is_empty() => Ok(Target::Component {
                pair: name.to_string(),
                which: which.to_string(),
                n: *n as u64,
            }),
            _ => Err(bad()),
        };
    }
    let (name, args) = call(s).ok_or_else(bad)?;
    match (name, args.as_slice()) {
        ("A", []) => Ok(Target::A),
        ("F2", []) => Ok(Target::F2),
        ("phi", []) => Ok(Target::Phi),
        ("f", &[a, b, c, ex, ey, p]) => Ok(Target::F([a, b, c, ex, ey, p])),
        ("hecke", &[k]) => Ok(Target::Hecke(k)),
        ("bilateral", &[k]) => Ok(Target::Bilateral(k)),
        ("multisum", &[k]) => Ok(Target::MultiSum(k)),
        _ => Err(bad()),
    }
}

impl Target {
    pub fn expand(&self, order: i64) -> Result<Series> {
        match self {
            Target::A => mock_a(order),
            Target::F2 => f2(order),
            Target::Phi => phi(order),
            Target::F([a, b, c, ex, ey, p]) => f_abc(&FParams::with_powers(*a, *b, *c, *ex, *ey, *p)?, order),
            Target::Hecke(k) => hecke_form(*k, order),
            Target::Bilateral(k) => bilateral_form(*k, order),
            Target::MultiSum(k) => qbailey::bailey::multi_sum_2_19(*k, order),
            Target::Component { pair, which, n } => component(pair, which, *n, order),
            Target::Side { id, k, rhs } => {
                let entry = lookup(id)?;
                let params = match (entry.schema, k) {
                    (Schema::Family { .. }, Some(k)) => Params::with_k(*k),
                    (Schema::Family { ks }, None) => Params::with_k(ks[0]),
                    (_, Some(_)) => {
                        return Err(qbailey::Error::Parameter(format!("{id} takes no k")));
                    }
                    (Schema::Indexed { .. }, None) => {
                        return Err(qbailey::Error::Parameter(format!(
                            "{id} is checked per index; expand its pair components instead"
                        )));
                    }
                    (Schema::Plain, None) => Params::none(),
                };
                let first = build_sides(id, &params, order)?
                    .into_iter()
                    .next()
                    .expect("entries build at least one side");
                Ok(if *rhs { first.rhs } else { first.lhs })
            }
        }
    }
}
