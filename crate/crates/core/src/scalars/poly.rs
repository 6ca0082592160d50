//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept sorted in descending graded-lexicographic order with no
//! zero coefficients, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::vars::{var_name, MAX_VARS};

/// Exponent vector with non-negative entries, indexed by indeterminate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u16; MAX_VARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAX_VARS]);

    pub fn var(index: usize, exp: u16) -> Mono {
        let mut m = Mono::ONE;
        m.0[index] = exp;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o = o.checked_add(*e).expect("monomial exponent overflow");
        }
        out
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        let mut out = *other;
        for (o, e) in out.0.iter_mut().zip(self.0.iter()) {
            *o -= *e;
        }
        out
    }

    pub fn gcd(&self, other: &Mono) -> Mono {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o = (*o).min(*e);
        }
        out
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", MonoDisplay(self))
    }
}

pub(crate) struct MonoDisplay<'a>(pub &'a Mono);

impl fmt::Display for MonoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0 .0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", var_name(i))?;
            } else {
                write!(f, "{}^{}", var_name(i), e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, BigRational)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Mono::ONE, c)],
            }
        }
    }

    pub fn term(m: Mono, c: BigRational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from unsorted, possibly repeated terms.
    pub fn from_terms<I: IntoIterator<Item = (Mono, BigRational)>>(terms: I) -> Poly {
        let mut acc: HashMap<Mono, BigRational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, BigRational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// Divides every term by `m`, which must divide all of them.
    pub fn div_mono(&self, m: &Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (m.quotient_of(t), c.clone()))
                .collect(),
        }
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.is_monomial() {
            let (m, c) = &self.terms[0];
            return other.mul_mono(m).scale(c);
        }
        if other.is_monomial() {
            let (m, c) = &other.terms[0];
            return self.mul_mono(m).scale(c);
        }
        let mut acc: HashMap<Mono, BigRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        Poly { terms }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.terms.first()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if divisor.is_monomial() {
            if !self.terms.iter().all(|(m, _)| lm.divides(m)) {
                return None;
            }
            return Some(self.div_mono(lm).scale(&lc.recip()));
        }
        // Cheap rejection before running the division loop.
        if !lm.divides(&self.terms[0].0) {
            return None;
        }
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            if !lm.divides(&rm) {
                return None;
            }
            let qm = lm.quotient_of(&rm);
            let qc = rc * &lc_inv;
            rem = rem.sub(&divisor.mul_mono(&qm).scale(&qc));
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Componentwise minimum of the exponents over all terms.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::ONE,
            Some((m, _)) => it.fold(*m, |acc, (t, _)| acc.gcd(t)),
        }
    }

    pub fn vars_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Coefficients with respect to `var`, indexed by degree.
    fn to_univariate(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Mono, BigRational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let d = m.0[var] as usize;
            let mut rest = *m;
            rest.0[var] = 0;
            buckets[d].push((rest, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_by_key(|m| std::cmp::Reverse(m.0));
                Poly { terms: t }
            })
            .collect()
    }

    fn from_univariate(coeffs: &[Poly], var: usize) -> Poly {
        let mut terms = Vec::new();
        for (d, c) in coeffs.iter().enumerate() {
            let shift = Mono::var(var, d as u16);
            terms.extend(c.terms.iter().map(|(m, a)| (m.mul(&shift), a.clone())));
        }
        Poly::from_terms(terms)
    }
}

/// Greatest common divisor, normalized to be monic (1 for coprime inputs).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.mono_content();
    let mb = b.mono_content();
    let g0 = ma.gcd(&mb);
    let a = a.div_mono(&ma);
    let b = b.div_mono(&mb);
    let g = gcd_content_free(a, b);
    g.mul_mono(&g0).monic()
}

/// gcd of polynomials with no monomial content.
fn gcd_content_free(mut a: Poly, mut b: Poly) -> Poly {
    loop {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        if a == b {
            return a.monic();
        }
        // Trial division catches the common "one divides the other" case.
        if a.total_degree() >= b.total_degree() {
            if a.div_exact(&b).is_some() {
                return b.monic();
            }
        } else if b.div_exact(&a).is_some() {
            return a.monic();
        }
        let va = a.vars_mask();
        let vb = b.vars_mask();
        let only_a = va & !vb;
        let only_b = vb & !va;
        if only_a != 0 {
            let v = only_a.trailing_zeros() as usize;
            a = content_in(&a, v);
            continue;
        }
        if only_b != 0 {
            let v = only_b.trailing_zeros() as usize;
            b = content_in(&b, v);
            continue;
        }
        // Same variable set; eliminate the one of smallest degree.
        let mut best = None;
        for v in 0..MAX_VARS {
            if va & (1 << v) == 0 {
                continue;
            }
            let d = a.degree_in(v).max(b.degree_in(v));
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((v, d));
            }
        }
        let (v, _) = best.expect("non-constant polynomial has a variable");
        return gcd_univariate(&a, &b, v);
    }
}

fn content_of(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn content_in(p: &Poly, var: usize) -> Poly {
    content_of(&p.to_univariate(var))
}

fn trim(p: &mut Vec<Poly>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn uni_is_zero(p: &[Poly]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn primitive_part(p: &[Poly]) -> Vec<Poly> {
    let c = content_of(p);
    let v: Vec<Poly> = if c.is_one() || c.is_zero() {
        p.to_vec()
    } else {
        p.iter()
            .map(|x| x.div_exact(&c).expect("content divides every coefficient"))
            .collect()
    };
    integer_primitive(v)
}

/// Rescales by a rational so all coefficients are coprime integers; keeps
/// pseudo-remainder sequences from blowing up.
fn integer_primitive(v: Vec<Poly>) -> Vec<Poly> {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for p in &v {
        for (_, c) in &p.terms {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
    }
    if num.is_zero() || (den.is_one() && num.is_one()) {
        return v;
    }
    let f = BigRational::new(den, num);
    v.iter().map(|p| p.scale(&f)).collect()
}

/// Pseudo-remainder of `a` by `b` as polynomials in one variable.
fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r: Vec<Poly> = a.to_vec();
    trim(&mut r);
    while !uni_is_zero(&r) && r.len() > db {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(lcb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&bc.mul(&lcr));
        }
        next.pop();
        trim(&mut next);
        r = next;
        if r.is_empty() {
            r.push(Poly::zero());
        }
    }
    r
}

fn gcd_univariate(a: &Poly, b: &Poly, var: usize) -> Poly {
    let ua = a.to_univariate(var);
    let ub = b.to_univariate(var);
    let ca = content_of(&ua);
    let cb = content_of(&ub);
    let c = gcd(&ca, &cb);
    let mut p = primitive_part(&ua);
    let mut r = primitive_part(&ub);
    if p.len() < r.len() {
        std::mem::swap(&mut p, &mut r);
    }
    loop {
        if r.len() == 1 {
            // r is a nonzero constant in `var`: primitive gcd is trivial.
            return c;
        }
        let rem = pseudo_rem(&p, &r);
        if uni_is_zero(&rem) {
            let g = Poly::from_univariate(&r, var);
            return g.mul(&c).monic();
        }
        p = r;
        r = primitive_part(&rem);
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", MonoDisplay(m))?;
            } else {
                write!(f, "{}*{}", abs, MonoDisplay(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Poly {
        Poly::term(Mono::var(0, 1), BigRational::one())
    }
    fn t() -> Poly {
        Poly::term(Mono::var(1, 1), BigRational::one())
    }
    fn c(n: i64) -> Poly {
        Poly::constant(BigRational::from_integer(n.into()))
    }

    #[test]
    fn gcd_of_cyclotomic_like_factors() {
        let a = q().pow(4).sub(&c(1)); // (q^2-1)(q^2+1)
        let b = q().pow(2).sub(&c(1));
        assert_eq!(gcd(&a, &b), b);
        assert_eq!(a.div_exact(&b).unwrap(), q().pow(2).add(&c(1)));
    }

    #[test]
    fn gcd_multivariate_shared_factor() {
        let f = q().sub(&t()); // q - t
        let g1 = f.mul(&q().add(&c(2)));
        let g2 = f.mul(&t().pow(2).add(&q()));
        assert_eq!(gcd(&g1, &g2), f.monic());
    }

    #[test]
    fn gcd_coprime_is_one() {
        let a = q().add(&t());
        let b = q().sub(&t());
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn gcd_monomial_content() {
        let a = q().pow(3).mul(&t());
        let b = q().mul(&t().pow(2)).mul(&q().add(&c(1)));
        assert_eq!(gcd(&a, &b), q().mul(&t()));
    }

    #[test]
    fn inexact_division_is_none() {
        let a = q().pow(2).add(&c(1));
        assert!(a.div_exact(&q().sub(&c(1))).is_none());
    }
}
