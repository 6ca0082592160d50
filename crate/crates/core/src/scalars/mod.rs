//! Exact coefficient field: rational functions over Q in a registry of
//! indeterminates (`q` first), invertible monomials, and numeric evaluation.

mod numeric;
mod parse;
mod poly;
mod scalar;
mod unit;
mod vars;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use numeric::{
    approx_eq, eval_numeric, Assignment, DEFAULT_NUMERIC_Q, DEFAULT_ROOT_GUARD_BOUND, DEFAULT_TOLERANCE,
};
pub use parse::parse_scalar;
pub use poly::{gcd as poly_gcd, Mono, Poly};
pub use scalar::Scalar;
pub use unit::{LatticeBasis, Unit};
pub use vars::{declare_indeterminates, indeterminates, lookup, var_index, var_name, DEFAULT_INDETERMINATES, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("geometric ratio with base 1")]
    DegenerateRatio,
    #[error("q = {0} is a root of unity")]
    RootOfUnityQ(String),
    #[error("denominator of {0} vanishes at the evaluation point")]
    NumericDenominatorVanishes(String),
    #[error("no value assigned to indeterminate {0}")]
    UnassignedIndeterminate(String),
    #[error("exponent {0} too large")]
    ExponentTooLarge(i64),
    #[error("substitution hits a pole")]
    SubstitutionPole,
    #[error("too many indeterminates (adding {0})")]
    TooManyIndeterminates(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
}

/// `1 + g + ... + g^{p-1}` for `p > 0`, `-(g^{-1} + ... + g^{p})` for `p < 0`,
/// `0` for `p = 0`. Equal to `(g^p - 1)/(g - 1)` whenever `g != 1`, and to `p`
/// when `g = 1`.
pub fn geom_sum(g: &Scalar, p: i64) -> Scalar {
    if p == 0 {
        return Scalar::zero();
    }
    if g.is_one() {
        return Scalar::from_int(p);
    }
    let (base, n, sign) = if p > 0 {
        (g.clone(), p, 1)
    } else {
        (g.inv().expect("geometric base is nonzero"), -p, -1)
    };
    let mut acc = Scalar::zero();
    let mut pw = if p > 0 { Scalar::one() } else { base.clone() };
    for _ in 0..n {
        acc = acc.add_ref(&pw);
        pw = pw.mul_ref(&base);
    }
    if sign < 0 {
        acc.neg_ref()
    } else {
        acc
    }
}

/// `(γ^p - 1)/(γ - 1)`.
pub fn geom_ratio(gamma: &Unit, p: i64) -> Result<Scalar, ScalarError> {
    if gamma.is_one() {
        return Err(ScalarError::DegenerateRatio);
    }
    Ok(geom_sum(&gamma.to_scalar(), p))
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => parse_scalar(&s).map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) => parse_scalar(&n.to_string()).map_err(serde::de::Error::custom),
            other => Err(serde::de::Error::custom(format!("expected scalar string, got {other}"))),
        }
    }
}

impl Serialize for Unit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Unit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Unit, D::Error> {
        let sc = Scalar::deserialize(d)?;
        Unit::try_from(&sc).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Scalar, ScalarError> {
        parse_scalar(s)
    }
}

/// Shorthand used throughout tests and examples; panics on malformed input.
pub fn sc(s: &str) -> Scalar {
    parse_scalar(s).unwrap_or_else(|e| panic!("bad scalar {s:?}: {e}"))
}

/// Unit counterpart of [`sc`].
pub fn un(s: &str) -> Unit {
    s.parse().unwrap_or_else(|e| panic!("bad unit {s:?}: {e}"))
}
