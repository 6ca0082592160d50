//! Laurent quantum plane `yx = qxy` with exact coefficients, plus the
//! commutative Laurent ring in one variable `z`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalars::{parse_scalar, Scalar, ScalarError, Unit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QAlgebraError {
    #[error("element is not a single monomial")]
    NotAMonomial,
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("cannot parse element: {0}")]
    Parse(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `q^{jk}`: the scalar picked up when `y^j` is moved past `x^k`.
fn reorder_factor(j: i64, k: i64) -> Scalar {
    Scalar::q_pow(j * k)
}

/// An invertible monomial `c x^i y^j` with unit coefficient. Closed under
/// products, powers and inverses without any polynomial arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitMonomial {
    pub coef: Unit,
    pub i: i64,
    pub j: i64,
}

impl UnitMonomial {
    pub fn new(coef: Unit, i: i64, j: i64) -> Self {
        UnitMonomial { coef, i, j }
    }

    pub fn one() -> Self {
        Self::new(Unit::one(), 0, 0)
    }

    pub fn xy(i: i64, j: i64) -> Self {
        Self::new(Unit::one(), i, j)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = self.coef.mul(&o.coef).mul(&Unit::q_pow(self.j * o.i));
        Self::new(c, self.i + o.i, self.j + o.j)
    }

    pub fn pow(&self, n: i64) -> Self {
        let qexp = n * (n - 1) / 2 * self.i * self.j;
        Self::new(self.coef.pow(n).mul(&Unit::q_pow(qexp)), n * self.i, n * self.j)
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn scale(&self, u: &Unit) -> Self {
        Self::new(self.coef.mul(u), self.i, self.j)
    }

    pub fn to_plane(&self) -> PlaneElement {
        PlaneElement::monomial(self.coef.to_scalar(), self.i, self.j)
    }
}

impl TryFrom<&PlaneElement> for UnitMonomial {
    type Error = QAlgebraError;
    fn try_from(p: &PlaneElement) -> Result<Self, QAlgebraError> {
        let (i, j, c) = p.as_monomial().ok_or_else(|| QAlgebraError::NotAUnit(p.to_string()))?;
        let u = Unit::try_from(c).map_err(|_| QAlgebraError::NotAUnit(p.to_string()))?;
        Ok(Self::new(u, i, j))
    }
}

/// An element `Σ c_ij x^i y^j` of the Laurent quantum plane, x-powers first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PlaneElement {
    terms: BTreeMap<(i64, i64), Scalar>,
}

impl PlaneElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Scalar::one(), 0, 0)
    }

    pub fn monomial(c: Scalar, i: i64, j: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(Scalar::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Scalar::one(), 0, 1)
    }

    /// `x^i y^j` with coefficient 1.
    pub fn xy(i: i64, j: i64) -> Self {
        Self::monomial(Scalar::one(), i, j)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), Scalar)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    /// Adds `c x^i y^j` in place, dropping the key if the sum vanishes.
    pub fn add_term(&mut self, i: i64, j: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((i, j)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: i64, j: i64) -> Scalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn support(&self) -> Vec<(i64, i64)> {
        self.terms.keys().copied().collect()
    }

    /// The single term `(i, j, c)` if the element is a monomial.
    pub fn as_monomial(&self) -> Option<(i64, i64, &Scalar)> {
        if self.terms.len() == 1 {
            let (&(i, j), c) = self.terms.iter().next().unwrap();
            Some((i, j, c))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (&(i, j), c) in &other.terms {
            r.add_term(i, j, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (&(i, j), c) in &other.terms {
            r.add_term(i, j, c.neg_ref());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c.mul_ref(s))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                let c = a.mul_ref(b);
                let c = if j * k == 0 { c } else { c.mul_ref(&reorder_factor(j, k)) };
                r.add_term(i + k, j + l, c);
            }
        }
        r
    }

    /// `m^n` for a monomial `m = c x^r y^s`, any integer `n`.
    /// `u * self` for a unit monomial `u`.
    pub fn mul_unit_left(&self, u: &UnitMonomial) -> Self {
        let mut r = Self::zero();
        for (&(a, b), c) in &self.terms {
            let k = u.coef.mul(&Unit::q_pow(u.j * a));
            r.add_term(u.i + a, u.j + b, k.times(c));
        }
        r
    }

    /// `self * u` for a unit monomial `u`.
    pub fn mul_unit_right(&self, u: &UnitMonomial) -> Self {
        let mut r = Self::zero();
        for (&(a, b), c) in &self.terms {
            let k = u.coef.mul(&Unit::q_pow(b * u.i));
            r.add_term(a + u.i, b + u.j, k.times(c));
        }
        r
    }

    pub fn monomial_pow(&self, n: i64) -> Result<Self, QAlgebraError> {
        let (r, s, c) = self.as_monomial().ok_or(QAlgebraError::NotAMonomial)?;
        if n < 0 && c.is_zero() {
            return Err(QAlgebraError::NotAUnit(self.to_string()));
        }
        // (x^r y^s)^n = q^{n(n-1)rs/2} x^{nr} y^{ns}, valid for every integer n.
        let qexp = n * (n - 1) / 2 * r * s;
        let coeff = c.pow(n)?.mul_ref(&Scalar::q_pow(qexp));
        Ok(Self::monomial(coeff, n * r, n * s))
    }

    /// Inverse in the unit group; only monomials with unit coefficient qualify.
    pub fn invert(&self) -> Result<Self, QAlgebraError> {
        let (_, _, c) = self
            .as_monomial()
            .ok_or_else(|| QAlgebraError::NotAUnit(self.to_string()))?;
        Unit::try_from(c).map_err(|_| QAlgebraError::NotAUnit(self.to_string()))?;
        self.monomial_pow(-1)
    }

    /// Positive or negative power of an arbitrary element; negative powers
    /// require a unit.
    pub fn pow(&self, n: i64) -> Result<Self, QAlgebraError> {
        if self.as_monomial().is_some() {
            return self.monomial_pow(n);
        }
        if n < 0 {
            return Err(QAlgebraError::NotAUnit(self.to_string()));
        }
        let mut r = Self::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        Ok(r)
    }

    pub fn map_coeffs<F: FnMut(&Scalar) -> Scalar>(&self, mut f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, f(c))))
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the textual form `(c) * x^i y^j + ...`; `x^i`/`y^j` factors
    /// may be omitted when zero and the coefficient parentheses are optional
    /// for a bare number or identifier.
    pub fn parse_text(src: &str) -> Result<Self, QAlgebraError> {
        let s = src.trim();
        if s == "0" || s.is_empty() {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for chunk in split_top_level_plus(s) {
            let (coef, i, j) = parse_plane_term(chunk.trim())?;
            out.add_term(i, j, coef);
        }
        Ok(out)
    }
}

fn split_top_level_plus(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let b = s.as_bytes();
    for (k, &c) in b.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' if depth == 0 && k > 0 && b[k - 1] == b' ' => {
                out.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_exp_factor(rest: &mut &str, var: char) -> Result<i64, QAlgebraError> {
    let r = rest.trim_start();
    if let Some(after) = r.strip_prefix(var) {
        let after = after.trim_start();
        let (e, tail) = if let Some(a) = after.strip_prefix('^') {
            let a = a.trim_start();
            let end = a
                .char_indices()
                .find(|&(k, c)| !(c.is_ascii_digit() || (k == 0 && (c == '-' || c == '+'))))
                .map_or(a.len(), |(k, _)| k);
            let e: i64 = a[..end]
                .parse()
                .map_err(|_| QAlgebraError::Parse(format!("bad exponent of {var} in {a:?}")))?;
            (e, &a[end..])
        } else {
            (1, after)
        };
        *rest = tail;
        Ok(e)
    } else {
        *rest = r;
        Ok(0)
    }
}

fn parse_plane_term(t: &str) -> Result<(Scalar, i64, i64), QAlgebraError> {
    let (coef, mut rest) = split_coefficient(t, &['x', 'y'])?;
    let i = parse_exp_factor(&mut rest, 'x')?;
    let j = parse_exp_factor(&mut rest, 'y')?;
    if !rest.trim().is_empty() {
        return Err(QAlgebraError::Parse(format!("trailing input {rest:?} in term {t:?}")));
    }
    Ok((coef, i, j))
}

/// Splits `"(c) * rest"`, `"c * rest"` or a bare monomial into coefficient and rest.
fn split_coefficient<'a>(t: &'a str, vars: &[char]) -> Result<(Scalar, &'a str), QAlgebraError> {
    if let Some(stripped) = t.strip_prefix('(') {
        let mut depth = 1;
        for (k, c) in stripped.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        let coef = parse_scalar(&stripped[..k])?;
                        let rest = stripped[k + 1..].trim_start();
                        let rest = rest.strip_prefix('*').unwrap_or(rest);
                        return Ok((coef, rest));
                    }
                }
                _ => {}
            }
        }
        return Err(QAlgebraError::Parse(format!("unbalanced parentheses in {t:?}")));
    }
    if let Some(pos) = t.find('*') {
        let head = t[..pos].trim();
        let tail = t[pos + 1..].trim_start();
        if tail.starts_with(|c| vars.contains(&c)) {
            return Ok((parse_scalar(head)?, tail));
        }
    }
    if t.starts_with(|c| vars.contains(&c)) {
        return Ok((Scalar::one(), t));
    }
    Ok((parse_scalar(t)?, ""))
}

impl fmt::Display for PlaneElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| format!("({c}) * x^{i} y^{j}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PlaneElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Plane[{self}]")
    }
}

impl std::ops::Add for &PlaneElement {
    type Output = PlaneElement;
    fn add(self, rhs: &PlaneElement) -> PlaneElement {
        PlaneElement::add(self, rhs)
    }
}

impl std::ops::Sub for &PlaneElement {
    type Output = PlaneElement;
    fn sub(self, rhs: &PlaneElement) -> PlaneElement {
        PlaneElement::sub(self, rhs)
    }
}

impl std::ops::Mul for &PlaneElement {
    type Output = PlaneElement;
    fn mul(self, rhs: &PlaneElement) -> PlaneElement {
        PlaneElement::mul(self, rhs)
    }
}

#[derive(Serialize, Deserialize)]
struct PlaneTerm {
    i: i64,
    j: i64,
    coef: Scalar,
}

impl Serialize for PlaneElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<PlaneTerm> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| PlaneTerm { i, j, coef: c.clone() })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlaneElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<PlaneTerm>::deserialize(d)?;
        Ok(Self::from_terms(v.into_iter().map(|t| ((t.i, t.j), t.coef))))
    }
}

/// An element `Σ c_i z^i` of the Laurent polynomial ring in one variable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LineElement {
    terms: BTreeMap<i64, Scalar>,
}

impl LineElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Scalar::one(), 0)
    }

    pub fn z() -> Self {
        Self::monomial(Scalar::one(), 1)
    }

    pub fn monomial(c: Scalar, p: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(p, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Scalar)>>(it: I) -> Self {
        let mut e = Self::zero();
        for (p, c) in it {
            e.add_term(p, c);
        }
        e
    }

    pub fn add_term(&mut self, p: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&p) {
            Some(old) => old.add_ref(&c),
            None => c,
        };
        if s.is_zero() {
            self.terms.remove(&p);
        } else {
            self.terms.insert(p, s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: i64) -> Scalar {
        self.terms.get(&p).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn as_monomial(&self) -> Option<(i64, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(p, c)| (*p, c))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (&p, c) in &other.terms {
            r.add_term(p, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(p, c)| (*p, c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, c)| (*p, c.mul_ref(s))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for (&p, a) in &self.terms {
            for (&q, b) in &other.terms {
                r.add_term(p + q, a.mul_ref(b));
            }
        }
        r
    }

    /// Multiplies by the unit monomial `u z^p`.
    pub fn mul_unit(&self, u: &Unit, p: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + p, u.times(c))).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Result<Self, QAlgebraError> {
        if let Some((p, c)) = self.as_monomial() {
            return Ok(Self::monomial(c.pow(n)?, p * n));
        }
        if n < 0 {
            return Err(QAlgebraError::NotAUnit(self.to_string()));
        }
        let mut r = Self::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        Ok(r)
    }

    pub fn parse_text(src: &str) -> Result<Self, QAlgebraError> {
        let s = src.trim();
        if s == "0" || s.is_empty() {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for chunk in split_top_level_plus(s) {
            let (c, mut rest) = split_coefficient(chunk.trim(), &['z'])?;
            let p = parse_exp_factor(&mut rest, 'z')?;
            if !rest.trim().is_empty() {
                return Err(QAlgebraError::Parse(format!("trailing input {rest:?}")));
            }
            out.add_term(p, c);
        }
        Ok(out)
    }
}

impl fmt::Display for LineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("({c}) * z^{p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line[{self}]")
    }
}

#[derive(Serialize, Deserialize)]
struct LineTerm {
    p: i64,
    coef: Scalar,
}

impl Serialize for LineElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<LineTerm> = self
            .terms
            .iter()
            .map(|(&p, c)| LineTerm { p, coef: c.clone() })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LineElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<LineTerm>::deserialize(d)?;
        Ok(Self::from_terms(v.into_iter().map(|t| (t.p, t.coef))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::sc;

    // Reorders a word in x, y, x^-1, y^-1 using only yx = qxy and the
    // inverse relations, one adjacent swap at a time.
    fn word_oracle(word: &[(char, i64)]) -> PlaneElement {
        let mut w: Vec<(char, i64)> = word.to_vec();
        let mut qexp = 0i64;
        loop {
            let pos = w.windows(2).position(|p| p[0].0 == 'y' && p[1].0 == 'x');
            match pos {
                None => break,
                Some(k) => {
                    // y^a x^b = q^{ab} x^b y^a, with a, b = ±1
                    qexp += w[k].1 * w[k + 1].1;
                    w.swap(k, k + 1);
                }
            }
        }
        let i: i64 = w.iter().filter(|l| l.0 == 'x').map(|l| l.1).sum();
        let j: i64 = w.iter().filter(|l| l.0 == 'y').map(|l| l.1).sum();
        PlaneElement::monomial(Scalar::q_pow(qexp), i, j)
    }

    fn letters(i: i64, j: i64) -> Vec<(char, i64)> {
        let mut v = vec![('x', i.signum()); i.unsigned_abs() as usize];
        v.extend(vec![('y', j.signum()); j.unsigned_abs() as usize]);
        v
    }

    #[test]
    fn reorder_constant_matches_relation_oracle() {
        for (i, j, k, l) in [(0, 1, 1, 0), (1, -2, -3, 2), (-2, 3, 2, -1), (0, -1, -1, 0)] {
            let mut w = letters(i, j);
            w.extend(letters(k, l));
            assert_eq!(PlaneElement::xy(i, j).mul(&PlaneElement::xy(k, l)), word_oracle(&w));
        }
    }

    #[test]
    fn basic_products() {
        assert_eq!(PlaneElement::y().mul(&PlaneElement::x()), PlaneElement::monomial(Scalar::q(), 1, 1));
        assert_eq!(PlaneElement::x().mul(&PlaneElement::xy(-1, 0)), PlaneElement::one());
        let xy = PlaneElement::xy(1, 1);
        assert_eq!(xy.mul(&xy), PlaneElement::monomial(Scalar::q(), 2, 2));
    }

    #[test]
    fn powers_and_inverses() {
        let xy = PlaneElement::xy(1, 1);
        assert_eq!(xy.monomial_pow(3).unwrap(), PlaneElement::monomial(Scalar::q_pow(3), 3, 3));
        assert_eq!(PlaneElement::xy(2, 1).monomial_pow(0).unwrap(), PlaneElement::one());
        let inv = xy.monomial_pow(-1).unwrap();
        assert_eq!(xy.mul(&inv), PlaneElement::one());
        assert_eq!(inv, PlaneElement::monomial(Scalar::q(), -1, -1));
        let qx = PlaneElement::monomial(Scalar::q(), 1, 0);
        assert_eq!(qx.invert().unwrap(), PlaneElement::monomial(Scalar::q_pow(-1), -1, 0));
        assert!(matches!(
            PlaneElement::x().add(&PlaneElement::y()).invert(),
            Err(QAlgebraError::NotAUnit(_))
        ));
        assert_eq!(
            PlaneElement::xy(2, -1).invert().unwrap(),
            PlaneElement::monomial(Scalar::q_pow(-2), -2, 1)
        );
        assert!(PlaneElement::monomial(sc("q+1"), 1, 0).invert().is_err());
    }

    #[test]
    fn text_and_json_round_trip() {
        let p = PlaneElement::from_terms([((1, 0), sc("q^2 - 1")), ((-2, 3), sc("(q^4 - 1)/(q^2)"))]);
        let t = p.to_text();
        assert_eq!(PlaneElement::parse_text(&t).unwrap(), p);
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<PlaneElement>(&j).unwrap(), p);
        assert_eq!(PlaneElement::parse_text("0").unwrap(), PlaneElement::zero());
        assert_eq!(PlaneElement::parse_text("q * x y^-1").unwrap(), PlaneElement::monomial(Scalar::q(), 1, -1));
        let l = LineElement::from_terms([(2, sc("a")), (-1, sc("q + 1"))]);
        assert_eq!(LineElement::parse_text(&l.to_string()).unwrap(), l);
    }
}
