use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::Scalar;
use super::vars::{var_name, MAX_VARS};
use super::{parse_scalar, ScalarError};

/// An invertible scalar: a nonzero rational times a Laurent monomial in the
/// indeterminates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Unit {
    coeff: BigRational,
    exps: [i32; MAX_VARS],
}

impl Unit {
    pub fn one() -> Unit {
        Unit {
            coeff: BigRational::one(),
            exps: [0; MAX_VARS],
        }
    }

    pub fn from_rational(c: BigRational) -> Result<Unit, ScalarError> {
        if c.is_zero() {
            return Err(ScalarError::NotAUnit("0".into()));
        }
        Ok(Unit {
            coeff: c,
            exps: [0; MAX_VARS],
        })
    }

    pub fn from_int(n: i64) -> Result<Unit, ScalarError> {
        Unit::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn q_pow(n: i64) -> Unit {
        let mut u = Unit::one();
        u.exps[0] = n as i32;
        u
    }

    pub fn var(name: &str) -> Result<Unit, ScalarError> {
        let s = Scalar::var(name)?;
        Unit::try_from(&s)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn exponents(&self) -> &[i32; MAX_VARS] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Unit) -> Unit {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e += *o;
        }
        Unit {
            coeff: &self.coeff * &other.coeff,
            exps,
        }
    }

    pub fn inv(&self) -> Unit {
        let mut exps = self.exps;
        for e in exps.iter_mut() {
            *e = -*e;
        }
        Unit {
            coeff: self.coeff.recip(),
            exps,
        }
    }

    pub fn pow(&self, n: i64) -> Unit {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let k = n.unsigned_abs();
        let mut exps = base.exps;
        for e in exps.iter_mut() {
            *e = (*e as i64 * k as i64) as i32;
        }
        let kk = u32::try_from(k).expect("unit power too large");
        Unit {
            coeff: num_traits::pow::Pow::pow(&base.coeff, kk),
            exps,
        }
    }

    pub fn to_scalar(&self) -> Scalar {
        let exps: Vec<(usize, i64)> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e as i64))
            .collect();
        Scalar::monomial(self.coeff.clone(), &exps)
    }

    /// `s * self`, cheaper than going through [`Unit::to_scalar`].
    pub fn times(&self, s: &Scalar) -> Scalar {
        s.mul_monomial(&self.coeff, &self.exps)
    }

    /// Coordinates in the free abelian group generated by the indeterminates
    /// and the rational primes, together with the sign of the coefficient.
    ///
    /// Two units `u`, `w` satisfy `u^m = w^n` for some nonzero `(m, n)` iff
    /// their coordinate vectors are linearly dependent (signs can always be
    /// absorbed by doubling `m` and `n`).
    pub fn lattice_coordinates(&self) -> (bool, Vec<(LatticeBasis, i64)>) {
        let mut out: Vec<(LatticeBasis, i64)> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (LatticeBasis::Var(i), e as i64))
            .collect();
        for (p, e) in factor_int(self.coeff.numer()) {
            out.push((LatticeBasis::Prime(p), e));
        }
        for (p, e) in factor_int(self.coeff.denom()) {
            match out.iter_mut().find(|(b, _)| *b == LatticeBasis::Prime(p.clone())) {
                Some((_, x)) => *x -= e,
                None => out.push((LatticeBasis::Prime(p), -e)),
            }
        }
        out.retain(|(_, e)| *e != 0);
        out.sort();
        (self.coeff.is_negative(), out)
    }

    /// True when `self^m = other^n` for some integers `m, n` not both zero,
    /// i.e. when the two units fail to be multiplicatively independent.
    pub fn multiplicatively_dependent(&self, other: &Unit) -> bool {
        let (_, a) = self.lattice_coordinates();
        let (_, b) = other.lattice_coordinates();
        if a.is_empty() || b.is_empty() {
            return true;
        }
        // rank of the 2 x n integer matrix [a; b] is < 2 iff all 2x2 minors vanish
        let mut keys: Vec<&LatticeBasis> = a.iter().map(|(k, _)| k).collect();
        keys.extend(b.iter().map(|(k, _)| k));
        keys.sort();
        keys.dedup();
        let get = |v: &[(LatticeBasis, i64)], k: &LatticeBasis| {
            v.iter().find(|(b, _)| b == k).map_or(0i128, |(_, e)| *e as i128)
        };
        for (i, ki) in keys.iter().enumerate() {
            for kj in &keys[i + 1..] {
                let minor = get(&a, ki) * get(&b, kj) - get(&a, kj) * get(&b, ki);
                if minor != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// True when `self^n = 1` for some `n >= 1`.
    pub fn is_root_of_unity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0) && self.coeff.abs().is_one()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticeBasis {
    Var(usize),
    Prime(BigInt),
}

fn factor_int(n: &BigInt) -> Vec<(BigInt, i64)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

impl TryFrom<&Scalar> for Unit {
    type Error = ScalarError;

    fn try_from(s: &Scalar) -> Result<Unit, ScalarError> {
        let num = s.numerator();
        let den = s.denominator();
        if !num.is_monomial() || !den.is_monomial() {
            return Err(ScalarError::NotAUnit(s.to_string()));
        }
        let (nm, nc) = &num.terms()[0];
        let (dm, dc) = &den.terms()[0];
        let mut exps = [0i32; MAX_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = nm.0[i] as i32 - dm.0[i] as i32;
        }
        Ok(Unit {
            coeff: nc / dc,
            exps,
        })
    }
}

impl std::str::FromStr for Unit {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Unit, ScalarError> {
        let sc = parse_scalar(s)?;
        Unit::try_from(&sc)
    }
}

impl From<&Unit> for Scalar {
    fn from(u: &Unit) -> Scalar {
        u.to_scalar()
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    var_name(i)
                } else {
                    format!("{}^{}", var_name(i), e)
                }
            })
            .collect();
        let c = &self.coeff;
        if vars.is_empty() {
            return write!(f, "{c}");
        }
        if c.is_one() {
            write!(f, "{}", vars.join("*"))
        } else if (-c).is_one() {
            write!(f, "-{}", vars.join("*"))
        } else {
            write!(f, "{}*{}", c, vars.join("*"))
        }
    }
}

impl fmt::Debug for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Unit({self})")
    }
}
