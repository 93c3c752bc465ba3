//! Closed-form bounds, evaluated exactly where they are pure binomial
//! expressions and in floating point (flagged inexact) where they carry real
//! exponents or omitted `o(1)` terms.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `C(n, k)`, zero when `k < 0`, `n < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    BigInt::from(num_integer::binomial(
        BigUint::from(n as u64),
        BigUint::from(k as u64),
    ))
}

/// `C(n, k)` as a machine integer; panics on overflow.
pub fn binom_usize(n: i64, k: i64) -> usize {
    binom(n, k).to_usize().expect("binomial fits in usize")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundTag {
    /// Vertex Turán number with chromatic number and minimum colour class.
    At,
    HiltonMilner,
    StabSt,
    StabMulti,
    Cycle6,
    Cycles,
    EasyLemma,
    Bbn,
    Bs,
    Kst,
}

impl BoundTag {
    pub const ALL: [BoundTag; 10] = [
        BoundTag::At,
        BoundTag::HiltonMilner,
        BoundTag::StabSt,
        BoundTag::StabMulti,
        BoundTag::Cycle6,
        BoundTag::Cycles,
        BoundTag::EasyLemma,
        BoundTag::Bbn,
        BoundTag::Bs,
        BoundTag::Kst,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundTag::At => "at",
            BoundTag::HiltonMilner => "hm",
            BoundTag::StabSt => "stabst",
            BoundTag::StabMulti => "stabmulti",
            BoundTag::Cycle6 => "cycle6",
            BoundTag::Cycles => "cycles",
            BoundTag::EasyLemma => "easy-lemma",
            BoundTag::Bbn => "bbn",
            BoundTag::Bs => "bs",
            BoundTag::Kst => "kst",
        }
    }
}

impl fmt::Display for BoundTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::ParamsInfeasible(format!("unknown bound `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundNumber {
    Integer(BigInt),
    Rational(BigRational),
    Real(f64),
}

impl BoundNumber {
    pub fn to_f64(&self) -> f64 {
        match self {
            BoundNumber::Integer(i) => i.to_f64().unwrap_or(f64::INFINITY),
            BoundNumber::Rational(r) => r.to_f64().unwrap_or(f64::INFINITY),
            BoundNumber::Real(x) => *x,
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            BoundNumber::Integer(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for BoundNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundNumber::Integer(i) => write!(f, "{i}"),
            BoundNumber::Rational(r) => write!(f, "{r}"),
            BoundNumber::Real(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for BoundNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BoundNumber::Integer(i) => match i.to_i64() {
                Some(v) => s.serialize_i64(v),
                None => s.serialize_str(&i.to_string()),
            },
            BoundNumber::Rational(r) if r.is_integer() => {
                BoundNumber::Integer(r.to_integer()).serialize(s)
            }
            BoundNumber::Rational(r) => s.serialize_str(&r.to_string()),
            BoundNumber::Real(x) => s.serialize_f64(*x),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundValue {
    pub value: BoundNumber,
    pub exact: bool,
    pub tag: BoundTag,
    /// Caveat for inexact values, e.g. an omitted `o(1)` factor.
    pub note: Option<&'static str>,
}

impl BoundValue {
    fn integer(value: BigInt, tag: BoundTag) -> Self {
        BoundValue {
            value: BoundNumber::Integer(value),
            exact: true,
            tag,
            note: None,
        }
    }

    fn real(value: f64, tag: BoundTag, note: &'static str) -> Self {
        BoundValue {
            value: BoundNumber::Real(value),
            exact: false,
            tag,
            note: Some(note),
        }
    }

    /// The exact integer value; `None` for rational or real bounds.
    pub fn integer_value(&self) -> Option<&BigInt> {
        self.value.as_integer()
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("value", &self.value)?;
        map.serialize_entry("exact", &self.exact)?;
        map.serialize_entry("formula_tag", self.tag.name())?;
        if let Some(note) = self.note {
            map.serialize_entry("note", note)?;
        }
        map.end()
    }
}

fn c(n: i64, k: i64) -> BigInt {
    binom(n, k)
}

/// `C(n,k) - C(n-χ+1,k) + η - 1`.
pub fn at_bound(n: i64, k: i64, chi: i64, eta: i64) -> BoundValue {
    let v = c(n, k) - c(n - chi + 1, k) + BigInt::from(eta - 1);
    BoundValue::integer(v, BoundTag::At)
}

/// `C(n-1,k-1) - C(n-k-1,k-1) + 1`.
pub fn hm_bound(n: i64, k: i64) -> BoundValue {
    let v = c(n - 1, k - 1) - c(n - k - 1, k - 1) + BigInt::one();
    BoundValue::integer(v, BoundTag::HiltonMilner)
}

/// `C(n-1,k-1) - C(n-sk-1,k-1) + s + t - 1`.
pub fn stabst_bound(n: i64, k: i64, s: i64, t: i64) -> BoundValue {
    let v = c(n - 1, k - 1) - c(n - s * k - 1, k - 1) + BigInt::from(s + t - 1);
    BoundValue::integer(v, BoundTag::StabSt)
}

/// `C(n,k) - C(n-r+1,k) + C(n-r,k-1) - C(n-s_{r+1}k-r,k-1) + s_r + s_{r+1} - 1`
/// for parts `s_1 >= ... >= s_{r+1}` (sorted here).
pub fn stabmulti_bound(n: i64, k: i64, parts: &[usize]) -> Result<BoundValue> {
    if parts.len() < 2 || parts.contains(&0) {
        return Err(Error::ParamsInfeasible(
            "need at least two positive parts".into(),
        ));
    }
    let mut sorted: Vec<i64> = parts.iter().map(|&p| p as i64).collect();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let r = sorted.len() as i64 - 1;
    let last = sorted[sorted.len() - 1];
    let second_last = sorted[sorted.len() - 2];
    let v = c(n, k) - c(n - r + 1, k) + c(n - r, k - 1) - c(n - last * k - r, k - 1)
        + BigInt::from(second_last + last - 1);
    Ok(BoundValue::integer(v, BoundTag::StabMulti))
}

/// Leading term `C(n-1,k-1) - C(n-2k-1,k-1)` of the `C_6` bound.
pub fn cycle6_leading(n: i64, k: i64) -> BigInt {
    c(n - 1, k - 1) - c(n - 2 * k - 1, k - 1)
}

/// `L + 10^6 L^{3/4}` with `L` the leading term; strict upper bound.
pub fn cycle6_bound(n: i64, k: i64) -> BoundValue {
    let lead = cycle6_leading(n, k).to_f64().unwrap_or(f64::INFINITY);
    let value = lead + 1e6 * lead.max(0.0).powf(0.75);
    BoundValue::real(
        value,
        BoundTag::Cycle6,
        "strict bound; 3/4 power in floating point",
    )
}

/// `C(n-1,k-1) - C(n-2k,k-1) + (k^2+1) C(n-3,k-3)`; independent of `s`.
pub fn cycles_bound(n: i64, k: i64, _s: i64) -> BoundValue {
    let v = c(n - 1, k - 1) - c(n - 2 * k, k - 1) + BigInt::from(k * k + 1) * c(n - 3, k - 3);
    BoundValue::integer(v, BoundTag::Cycles)
}

/// `C(n-1,k-1) - C(n-floor((s+1)k/2)-1,k-1) + (s+1)(t-1)`.
pub fn easy_lemma_bound(n: i64, k: i64, s: i64, t: i64) -> BoundValue {
    let half = (s + 1) * k / 2;
    let v = c(n - 1, k - 1) - c(n - half - 1, k - 1) + BigInt::from((s + 1) * (t - 1));
    BoundValue::integer(v, BoundTag::EasyLemma)
}

/// `ℓ^2 / (2 C(2k,k))`, a lower bound on the edges of the induced Kneser graph.
pub fn bbn_lower_edges(ell: u64, k: i64) -> BoundValue {
    let num = BigInt::from(ell) * BigInt::from(ell);
    let den = BigInt::from(2) * c(2 * k, k);
    BoundValue {
        value: BoundNumber::Rational(BigRational::new(num, den)),
        exact: true,
        tag: BoundTag::Bbn,
        note: None,
    }
}

/// `100 s n^{1+1/s}`.
pub fn bs_edge_bound(n_vertices: u64, s: u64) -> BoundValue {
    let n = n_vertices as f64;
    let s_f = s as f64;
    let value = 100.0 * s_f * n.powf(1.0 + 1.0 / s_f);
    BoundValue::real(value, BoundTag::Bs, "real exponent")
}

/// `(1/2)(t-1)^{1/s} n^{2-1/s}`, the leading term only.
pub fn kst_edge_bound(n_vertices: u64, s: u64, t: u64) -> BoundValue {
    let n = n_vertices as f64;
    let s_f = s as f64;
    let value = 0.5 * ((t as f64) - 1.0).powf(1.0 / s_f) * n.powf(2.0 - 1.0 / s_f);
    BoundValue::real(value, BoundTag::Kst, "o(1) omitted")
}

impl BoundTag {
    /// Parameter names `evaluate` expects for this bound.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            BoundTag::At => &["n", "k", "chi", "eta"],
            BoundTag::HiltonMilner | BoundTag::Cycle6 => &["n", "k"],
            BoundTag::StabSt | BoundTag::EasyLemma => &["n", "k", "s", "t"],
            BoundTag::StabMulti => &["n", "k", "parts"],
            BoundTag::Cycles => &["n", "k", "s"],
            BoundTag::Bbn => &["ell", "k"],
            BoundTag::Bs => &["n", "s"],
            BoundTag::Kst => &["n", "s", "t"],
        }
    }
}

/// Evaluates a bound from `name=value` pairs; `parts` is a comma-separated list.
pub fn evaluate(tag: BoundTag, params: &[(String, String)]) -> Result<BoundValue> {
    let expected = tag.params();
    for (key, _) in params {
        if !expected.contains(&key.as_str()) {
            return Err(Error::ParamsInfeasible(format!(
                "`{key}` is not a parameter of {tag} (expects {})",
                expected.join(", ")
            )));
        }
    }
    let raw = |name: &str| {
        params
            .iter()
            .rev()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::ParamsInfeasible(format!("{tag} needs `{name}`")))
    };
    let int = |name: &str| -> Result<i64> {
        let v = raw(name)?;
        v.trim()
            .parse()
            .map_err(|_| Error::ParamsInfeasible(format!("`{name}` must be an integer, got `{v}`")))
    };
    let nonneg = |name: &str| -> Result<u64> {
        let v = int(name)?;
        u64::try_from(v)
            .map_err(|_| Error::ParamsInfeasible(format!("`{name}` must be non-negative, got {v}")))
    };
    Ok(match tag {
        BoundTag::At => at_bound(int("n")?, int("k")?, int("chi")?, int("eta")?),
        BoundTag::HiltonMilner => hm_bound(int("n")?, int("k")?),
        BoundTag::StabSt => stabst_bound(int("n")?, int("k")?, int("s")?, int("t")?),
        BoundTag::StabMulti => {
            let parts = raw("parts")?
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::ParamsInfeasible(format!("bad part `{p}` in `parts`")))
                })
                .collect::<Result<Vec<_>>>()?;
            stabmulti_bound(int("n")?, int("k")?, &parts)?
        }
        BoundTag::Cycle6 => cycle6_bound(int("n")?, int("k")?),
        BoundTag::Cycles => cycles_bound(int("n")?, int("k")?, int("s")?),
        BoundTag::EasyLemma => easy_lemma_bound(int("n")?, int("k")?, int("s")?, int("t")?),
        BoundTag::Bbn => bbn_lower_edges(nonneg("ell")?, int("k")?),
        BoundTag::Bs => bs_edge_bound(nonneg("n")?, nonneg("s")?),
        BoundTag::Kst => kst_edge_bound(nonneg("n")?, nonneg("s")?, nonneg("t")?),
    })
}
