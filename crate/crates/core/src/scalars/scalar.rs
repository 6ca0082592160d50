use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{gcd, Mono, Poly};
use super::vars::var_index;
use super::ScalarError;

/// An exact rational function over the rationals.
///
/// Always stored reduced, with a denominator whose leading coefficient
/// (graded-lex order) is 1. Two scalars are equal iff their fields are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(c: BigRational) -> Scalar {
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    /// The indeterminate with this name (registered on first use).
    pub fn var(name: &str) -> Result<Scalar, ScalarError> {
        let i = var_index(name)?;
        Ok(Scalar::from_poly(Poly::term(Mono::var(i, 1), BigRational::one())))
    }

    /// `q`, the quantum parameter.
    pub fn q() -> Scalar {
        Scalar::q_pow(1)
    }

    /// `q^n` for any integer `n`.
    pub fn q_pow(n: i64) -> Scalar {
        Scalar::monomial(BigRational::one(), &[(0, n)])
    }

    /// `c * prod v_i^{e_i}` with signed exponents.
    pub fn monomial(c: BigRational, exps: &[(usize, i64)]) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        let mut up = Mono::ONE;
        let mut down = Mono::ONE;
        for &(v, e) in exps {
            let mag = u16::try_from(e.unsigned_abs()).expect("exponent out of range");
            if e > 0 {
                up.0[v] += mag;
            } else if e < 0 {
                down.0[v] += mag;
            }
        }
        // Cancel overlapping exponents so the result is reduced.
        for v in 0..up.0.len() {
            let m = up.0[v].min(down.0[v]);
            up.0[v] -= m;
            down.0[v] -= m;
        }
        Scalar {
            num: Poly::term(up, c),
            den: Poly::term(down, BigRational::one()),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in the rationals.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Builds `num/den` and brings it to canonical form.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        Scalar::normalize_lead(num, den)
    }

    fn normalize_lead(num: Poly, den: Poly) -> Scalar {
        let lc = den.leading_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn add_ref(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return Scalar::from_poly(num);
            }
            return Scalar::reduce(num, self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        let (d1, d2) = if g.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (
                self.den.div_exact(&g).expect("gcd divides"),
                other.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let num = self.num.mul(&d2).add(&other.num.mul(&d1));
        let den = self.den.mul(&d2);
        Scalar::reduce(num, den)
    }

    pub fn neg_ref(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub_ref(&self, other: &Scalar) -> Scalar {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = exact_div(&self.num, &g1);
        let d2 = exact_div(&other.den, &g1);
        let n2 = exact_div(&other.num, &g2);
        let d1 = exact_div(&self.den, &g2);
        Scalar::normalize_lead(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::normalize_lead(self.den.clone(), self.num.clone()))
    }

    pub fn div_ref(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = u32::try_from(e.unsigned_abs()).map_err(|_| ScalarError::ExponentTooLarge(e))?;
        if k == 0 {
            return Ok(Scalar::one());
        }
        Ok(Scalar {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    pub fn scale_rational(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiplies by `c * prod v_i^{e_i}` (signed exponents) without a full gcd.
    pub fn mul_monomial(&self, c: &BigRational, exps: &[i32]) -> Scalar {
        if self.is_zero() || c.is_zero() {
            return Scalar::zero();
        }
        let mut up = Mono::ONE;
        let mut down = Mono::ONE;
        for (v, &e) in exps.iter().enumerate() {
            let mag = u16::try_from(e.unsigned_abs()).expect("exponent out of range");
            if e > 0 {
                up.0[v] = mag;
            } else if e < 0 {
                down.0[v] = mag;
            }
        }
        let mut num = self.num.mul_mono(&up);
        let mut den = self.den.mul_mono(&down);
        // num/den was reduced, so any new common factor is a monomial.
        let g = num.mono_content().gcd(&den.mono_content());
        if !g.is_one() {
            num = num.div_mono(&g);
            den = den.div_mono(&g);
        }
        Scalar {
            num: num.scale(c),
            den,
        }
    }

    /// Replaces the indeterminate `var` by `value` everywhere.
    pub fn substitute(&self, var: usize, value: &Scalar) -> Result<Scalar, ScalarError> {
        let num = substitute_poly(&self.num, var, value)?;
        let den = substitute_poly(&self.den, var, value)?;
        num.div_ref(&den).map_err(|_| ScalarError::SubstitutionPole)
    }

    /// Indices of indeterminates appearing in the value.
    pub fn vars_mask(&self) -> u32 {
        self.num.vars_mask() | self.den.vars_mask()
    }
}

fn exact_div(a: &Poly, g: &Poly) -> Poly {
    if g.is_one() {
        a.clone()
    } else {
        a.div_exact(g).expect("gcd divides")
    }
}

fn substitute_poly(p: &Poly, var: usize, value: &Scalar) -> Result<Scalar, ScalarError> {
    let mut acc = Scalar::zero();
    for (m, c) in p.terms() {
        let e = m.0[var];
        let mut rest = *m;
        rest.0[var] = 0;
        let base = Scalar::from_poly(Poly::term(rest, c.clone()));
        let term = if e == 0 {
            base
        } else {
            base.mul_ref(&value.pow(e as i64)?)
        };
        acc = acc.add_ref(&term);
    }
    Ok(acc)
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(c: BigRational) -> Self {
        Scalar::from_rational(c)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_ref(rhs)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.add_ref(&rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.sub_ref(rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.sub_ref(&rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_ref(rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.mul_ref(&rhs)
    }
}

/// Panics on division by zero; use [`Scalar::div_ref`] to get an error.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.div_ref(rhs).expect("division by zero scalar")
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.div_ref(&rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}
