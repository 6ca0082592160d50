//! Automorphisms `x ↦ α x^k y^m`, `y ↦ β x^l y^n` of the Laurent quantum
//! plane, their group law, orders, and closed-form powers of hyperbolic
//! integer matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qalgebra::{PlaneElement, UnitMonomial};
use crate::scalars::Unit;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("matrix {0:?} does not have determinant 1")]
    NotUnimodular([[i64; 2]; 2]),
    #[error("trace {0} is not hyperbolic (|tr| <= 2)")]
    NotHyperbolic(i64),
}

/// A 2x2 integer matrix `[[k, l], [m, n]]` of determinant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2 {
    pub k: i64,
    pub l: i64,
    pub m: i64,
    pub n: i64,
}

impl Sl2 {
    pub const IDENTITY: Sl2 = Sl2 { k: 1, l: 0, m: 0, n: 1 };
    pub const MINUS_IDENTITY: Sl2 = Sl2 { k: -1, l: 0, m: 0, n: -1 };

    pub fn new(k: i64, l: i64, m: i64, n: i64) -> Result<Sl2, AutError> {
        if k * n - l * m != 1 {
            return Err(AutError::NotUnimodular([[k, l], [m, n]]));
        }
        Ok(Sl2 { k, l, m, n })
    }

    pub fn from_rows(r: [[i64; 2]; 2]) -> Result<Sl2, AutError> {
        Sl2::new(r[0][0], r[0][1], r[1][0], r[1][1])
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.k, self.l], [self.m, self.n]]
    }

    pub fn trace(&self) -> i64 {
        self.k + self.n
    }

    pub fn mul(&self, o: &Sl2) -> Sl2 {
        Sl2 {
            k: self.k * o.k + self.l * o.m,
            l: self.k * o.l + self.l * o.n,
            m: self.m * o.k + self.n * o.m,
            n: self.m * o.l + self.n * o.n,
        }
    }

    pub fn inv(&self) -> Sl2 {
        Sl2 {
            k: self.n,
            l: -self.l,
            m: -self.m,
            n: self.k,
        }
    }

    pub fn pow(&self, e: i64) -> Sl2 {
        let base = if e < 0 { self.inv() } else { *self };
        (0..e.unsigned_abs()).fold(Sl2::IDENTITY, |acc, _| acc.mul(&base))
    }
}

impl std::str::FromStr for Sl2 {
    type Err = String;
    /// `"k,l,m,n"` (row-major).
    fn from_str(s: &str) -> Result<Sl2, String> {
        let v: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad matrix entry {t:?}: {e}")))
            .collect::<Result<_, _>>()?;
        if v.len() != 4 {
            return Err(format!("expected 4 comma-separated entries, got {}", v.len()));
        }
        Sl2::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
    }
}

/// Raises a pair of units to an integer matrix, acting on exponent row
/// vectors from the right: `(α, β)^M = (α^{M11} β^{M21}, α^{M12} β^{M22})`.
pub fn unit_pair_pow(a: &Unit, b: &Unit, m: [[i64; 2]; 2]) -> (Unit, Unit) {
    (
        a.pow(m[0][0]).mul(&b.pow(m[1][0])),
        a.pow(m[0][1]).mul(&b.pow(m[1][1])),
    )
}

/// The automorphism `x ↦ α x^k y^m`, `y ↦ β x^l y^n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AutoJson", into = "AutoJson")]
pub struct Auto {
    pub sigma: Sl2,
    pub alpha: Unit,
    pub beta: Unit,
}

#[derive(Serialize, Deserialize)]
struct AutoJson {
    sigma: [[i64; 2]; 2],
    alpha: Unit,
    beta: Unit,
}

impl TryFrom<AutoJson> for Auto {
    type Error = AutError;
    fn try_from(j: AutoJson) -> Result<Auto, AutError> {
        Ok(Auto {
            sigma: Sl2::from_rows(j.sigma)?,
            alpha: j.alpha,
            beta: j.beta,
        })
    }
}

impl From<Auto> for AutoJson {
    fn from(a: Auto) -> AutoJson {
        AutoJson {
            sigma: a.sigma.rows(),
            alpha: a.alpha,
            beta: a.beta,
        }
    }
}

impl Auto {
    pub fn new(sigma: Sl2, alpha: Unit, beta: Unit) -> Auto {
        Auto { sigma, alpha, beta }
    }

    pub fn identity() -> Auto {
        Auto::new(Sl2::IDENTITY, Unit::one(), Unit::one())
    }

    /// `φ_{σ,1,1}`.
    pub fn matrix(sigma: Sl2) -> Auto {
        Auto::new(sigma, Unit::one(), Unit::one())
    }

    /// The diagonal automorphism `x ↦ αx`, `y ↦ βy`.
    pub fn units(alpha: Unit, beta: Unit) -> Auto {
        Auto::new(Sl2::IDENTITY, alpha, beta)
    }

    pub fn image_x(&self) -> UnitMonomial {
        UnitMonomial::new(self.alpha.clone(), self.sigma.k, self.sigma.m)
    }

    pub fn image_y(&self) -> UnitMonomial {
        UnitMonomial::new(self.beta.clone(), self.sigma.l, self.sigma.n)
    }

    /// The automorphism determined by the images of `x` and `y`.
    pub fn from_images(ix: &UnitMonomial, iy: &UnitMonomial) -> Result<Auto, AutError> {
        Ok(Auto::new(Sl2::new(ix.i, iy.i, ix.j, iy.j)?, ix.coef.clone(), iy.coef.clone()))
    }

    /// Image of `x^i y^j`, a monomial with unit coefficient.
    pub fn apply_monomial(&self, i: i64, j: i64) -> UnitMonomial {
        self.image_x().pow(i).mul(&self.image_y().pow(j))
    }

    pub fn apply_unit_monomial(&self, u: &UnitMonomial) -> UnitMonomial {
        self.apply_monomial(u.i, u.j).scale(&u.coef)
    }

    pub fn apply(&self, p: &PlaneElement) -> PlaneElement {
        let mut out = PlaneElement::zero();
        for (&(i, j), c) in p.terms() {
            let m = self.apply_monomial(i, j);
            out.add_term(m.i, m.j, c.mul_ref(&m.coef.to_scalar()));
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Auto) -> Auto {
        let ix = self.apply_unit_monomial(&other.image_x());
        let iy = self.apply_unit_monomial(&other.image_y());
        Auto::from_images(&ix, &iy).expect("composition of automorphisms is unimodular")
    }

    pub fn inverse(&self) -> Auto {
        let psi = Auto::matrix(self.sigma.inv());
        // self ∘ psi is diagonal; undo its units afterwards.
        let d = self.compose(&psi);
        debug_assert_eq!(d.sigma, Sl2::IDENTITY);
        psi.compose(&Auto::units(d.alpha.inv(), d.beta.inv()))
    }

    pub fn pow(&self, e: i64) -> Auto {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Auto::identity();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.compose(&b);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.sigma == Sl2::IDENTITY && self.alpha.is_one() && self.beta.is_one()
    }

    /// Smallest `n <= max_order` with `self^n = id`, compared structurally.
    pub fn order(&self, max_order: u32) -> Option<u32> {
        let mut acc = self.clone();
        for n in 1..=max_order {
            if acc.is_identity() {
                return Some(n);
            }
            acc = acc.compose(self);
        }
        None
    }

    /// `self^{-1} ∘ (μ, ν) ∘ self` for the diagonal automorphism `(μ, ν)`:
    /// again diagonal, with units `(μ, ν)^σ`.
    pub fn conjugate_units(&self, mu: &Unit, nu: &Unit) -> (Unit, Unit) {
        unit_pair_pow(mu, nu, self.sigma.rows())
    }

    /// A diagonal `w` with `w^{-1} ∘ φ_{σ,1,1} ∘ w = self`, when one exists
    /// with exponents in the lattice. This needs `(I - σ)^{-1}` applied to the
    /// unit pair; it is integral exactly when `tr σ ∈ {1, 3}`.
    pub fn untwisting_conjugator(&self) -> Option<Auto> {
        let det = 2 - self.sigma.trace();
        if det == 0 {
            return None;
        }
        let s = self.sigma;
        // adj(I - σ) = [[1 - n, l], [m, 1 - k]]
        let adj = [[1 - s.n, s.l], [s.m, 1 - s.k]];
        let (a, b) = unit_pair_pow(&self.alpha, &self.beta, adj);
        let w = Auto::units(unit_root(&a, det)?, unit_root(&b, det)?);
        let check = w.inverse().compose(&Auto::matrix(self.sigma)).compose(&w);
        (check == *self).then_some(w)
    }
}

/// The `d`-th root of a unit inside the lattice, if it exists (sign-aware).
pub fn unit_root(u: &Unit, d: i64) -> Option<Unit> {
    if d == 1 {
        return Some(u.clone());
    }
    if d == -1 {
        return Some(u.inv());
    }
    let base = if d < 0 { u.inv() } else { u.clone() };
    let dd = d.unsigned_abs() as u32;
    let exps = base.exponents();
    if exps.iter().any(|e| (*e as i64) % dd as i64 != 0) {
        return None;
    }
    let c = base.coeff();
    if c.is_negative() && dd.is_multiple_of(2) {
        return None;
    }
    let root_int = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().nth_root(dd);
        (num_traits::pow(r.clone(), dd as usize) == n.abs()).then_some(if n.is_negative() { -r } else { r })
    };
    let rn = root_int(c.numer())?;
    let rd = root_int(c.denom())?;
    let mut out = Unit::from_rational(BigRational::new(rn, rd)).ok()?;
    for (idx, e) in exps.iter().enumerate() {
        if *e != 0 {
            let v = Unit::var(&crate::scalars::var_name(idx)).ok()?;
            out = out.mul(&v.pow(*e as i64 / dd as i64));
        }
    }
    Some(out)
}

impl fmt::Display for Auto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "φ[[{}, {}], [{}, {}]; {}, {}]",
            self.sigma.k, self.sigma.l, self.sigma.m, self.sigma.n, self.alpha, self.beta
        )
    }
}

impl fmt::Debug for Auto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `a + bλ` in `Q[λ]/(λ² - tλ + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quad {
    pub a: BigRational,
    pub b: BigRational,
    t: i64,
}

impl Quad {
    pub fn new(a: BigRational, b: BigRational, t: i64) -> Quad {
        Quad { a, b, t }
    }

    pub fn rational(a: BigRational, t: i64) -> Quad {
        Quad::new(a, BigRational::zero(), t)
    }

    pub fn int(a: i64, t: i64) -> Quad {
        Quad::rational(BigRational::from_integer(a.into()), t)
    }

    pub fn lambda(t: i64) -> Quad {
        Quad::new(BigRational::zero(), BigRational::one(), t)
    }

    fn tr(&self) -> BigRational {
        BigRational::from_integer(self.t.into())
    }

    pub fn add(&self, o: &Quad) -> Quad {
        Quad::new(&self.a + &o.a, &self.b + &o.b, self.t)
    }

    pub fn sub(&self, o: &Quad) -> Quad {
        Quad::new(&self.a - &o.a, &self.b - &o.b, self.t)
    }

    pub fn mul(&self, o: &Quad) -> Quad {
        let bd = &self.b * &o.b;
        Quad::new(
            &self.a * &o.a - &bd,
            &self.a * &o.b + &self.b * &o.a + self.tr() * bd,
            self.t,
        )
    }

    /// Image under `λ ↦ λ^{-1} = t - λ`.
    pub fn conj(&self) -> Quad {
        Quad::new(&self.a + &self.b * self.tr(), -self.b.clone(), self.t)
    }

    pub fn norm(&self) -> BigRational {
        // (a + bλ)(a + bλ') = a² + abt + b²
        &self.a * &self.a + &self.a * &self.b * self.tr() + &self.b * &self.b
    }

    pub fn inv(&self) -> Quad {
        let n = self.norm();
        assert!(!n.is_zero(), "zero divisor in quadratic field");
        let c = self.conj();
        Quad::new(c.a / &n, c.b / n, self.t)
    }

    pub fn pow(&self, e: i64) -> Quad {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Quad::int(1, self.t);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.b.is_zero().then(|| self.a.clone())
    }
}

/// `σ^N` written as `A λ^N + B λ^{-N}` entrywise.
#[derive(Clone, Debug)]
pub struct SigmaPowerForm {
    pub sigma: Sl2,
    pub a: Quad,
    pub b: Quad,
    pub c: Quad,
    pub d: Quad,
}

impl SigmaPowerForm {
    pub fn new(sigma: Sl2) -> Result<SigmaPowerForm, AutError> {
        let t = sigma.trace();
        if t.abs() <= 2 {
            return Err(AutError::NotHyperbolic(t));
        }
        let lam = Quad::lambda(t);
        let lam_inv = lam.inv();
        let gap_inv = lam.sub(&lam_inv).inv();
        let a = Quad::int(sigma.k, t).sub(&lam_inv).mul(&gap_inv);
        let b = Quad::int(sigma.l, t).mul(&gap_inv);
        let c = Quad::int(sigma.m, t).mul(&gap_inv);
        let d = Quad::int(sigma.n, t).sub(&lam_inv).mul(&gap_inv);
        Ok(SigmaPowerForm { sigma, a, b, c, d })
    }

    fn t(&self) -> i64 {
        self.sigma.trace()
    }

    /// `d = 1 - a` and `c = a(1 - a)/b`, exactly.
    pub fn identities_hold(&self) -> bool {
        let one = Quad::int(1, self.t());
        let one_minus_a = one.sub(&self.a);
        self.d == one_minus_a && !self.b.norm().is_zero() && self.c == self.a.mul(&one_minus_a).mul(&self.b.inv())
    }

    /// Entries `a(N), b(N), c(N), d(N)` as elements of the quadratic field.
    pub fn entries(&self, n: i64) -> [Quad; 4] {
        let t = self.t();
        let ln = Quad::lambda(t).pow(n);
        let lmn = Quad::lambda(t).pow(-n);
        let one = Quad::int(1, t);
        let diff = ln.sub(&lmn);
        [
            self.a.mul(&ln).add(&one.sub(&self.a).mul(&lmn)),
            self.b.mul(&diff),
            self.c.mul(&diff),
            one.sub(&self.a).mul(&ln).add(&self.a.mul(&lmn)),
        ]
    }

    pub fn matrix(&self, n: i64) -> Sl2 {
        let e = self.entries(n);
        let as_int = |q: &Quad| -> i64 {
            let r = q.as_rational().expect("σ^N entries are rational");
            assert!(r.is_integer(), "σ^N entries are integers");
            r.to_integer().to_i64().expect("σ^N entry fits in i64")
        };
        Sl2 {
            k: as_int(&e[0]),
            l: as_int(&e[1]),
            m: as_int(&e[2]),
            n: as_int(&e[3]),
        }
    }
}

/// `σ^N` through the closed form in the splitting field of σ.
pub fn sigma_power(sigma: Sl2, n: i64) -> Result<Sl2, AutError> {
    Ok(SigmaPowerForm::new(sigma)?.matrix(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{un, Scalar};

    fn rot() -> Sl2 {
        Sl2::new(0, -1, 1, 0).unwrap()
    }

    #[test]
    fn apply_examples() {
        let phi = Auto::units(un("t"), un("a"));
        assert_eq!(phi.apply(&PlaneElement::x()), PlaneElement::monomial(un("t").to_scalar(), 1, 0));
        let k = Auto::new(Sl2::MINUS_IDENTITY, un("t^-1"), un("a^-1"));
        assert_eq!(k.apply(&PlaneElement::y()), PlaneElement::monomial(un("a^-1").to_scalar(), 0, -1));
        let r = Auto::matrix(rot());
        // x ↦ y, y ↦ x^-1, so xy ↦ y x^-1 = q^-1 x^-1 y
        assert_eq!(r.apply(&PlaneElement::xy(1, 1)), PlaneElement::monomial(Scalar::q_pow(-1), -1, 1));
    }

    #[test]
    fn apply_is_multiplicative() {
        let phi = Auto::new(Sl2::new(2, 1, 1, 1).unwrap(), un("q*t"), un("-2"));
        let p = PlaneElement::xy(1, -2).add(&PlaneElement::xy(-1, 3));
        let r = PlaneElement::xy(2, 1).add(&PlaneElement::one());
        assert_eq!(phi.apply(&p.mul(&r)), phi.apply(&p).mul(&phi.apply(&r)));
    }

    #[test]
    fn compose_and_inverse() {
        let phi = Auto::new(Sl2::new(2, 1, 1, 1).unwrap(), un("q*t"), un("-2"));
        let psi = Auto::new(rot(), un("a"), un("q^3"));
        let p = PlaneElement::xy(3, -1);
        assert_eq!(phi.compose(&psi).apply(&p), phi.apply(&psi.apply(&p)));
        assert!(phi.compose(&phi.inverse()).is_identity());
        assert!(phi.inverse().compose(&phi).is_identity());
        let st = Auto::matrix(rot()).compose(&Auto::matrix(Sl2::new(1, 1, 0, 1).unwrap()));
        assert_eq!(st.sigma, rot().mul(&Sl2::new(1, 1, 0, 1).unwrap()));
    }

    #[test]
    fn semidirect_law() {
        let s = Sl2::new(2, 1, 1, 1).unwrap();
        let (mu, nu) = (un("t"), un("a^2"));
        let sig = Auto::matrix(s);
        let lhs = sig.inverse().compose(&Auto::units(mu.clone(), nu.clone())).compose(&sig);
        let (a, b) = sig.conjugate_units(&mu, &nu);
        assert_eq!(lhs, Auto::units(a, b));
    }

    #[test]
    fn orders() {
        assert_eq!(Auto::matrix(rot()).order(24), Some(4));
        assert_eq!(Auto::new(Sl2::MINUS_IDENTITY, un("t"), un("a")).order(24), Some(2));
        assert_eq!(Auto::new(rot(), un("t"), Unit::one()).order(24), Some(4));
        assert_eq!(Auto::matrix(Sl2::new(1, 1, 0, 1).unwrap()).order(50), None);
    }

    #[test]
    fn untwisting_for_trace_one() {
        let s = Sl2::new(1, -1, 1, 0).unwrap();
        let phi = Auto::new(s, un("t"), un("q*a"));
        let w = phi.untwisting_conjugator().expect("integral for trace 1");
        assert_eq!(w.inverse().compose(&Auto::matrix(s)).compose(&w), phi);
    }

    #[test]
    fn sigma_powers() {
        let s = Sl2::new(2, 1, 1, 1).unwrap();
        assert_eq!(sigma_power(s, 0).unwrap(), Sl2::IDENTITY);
        assert_eq!(sigma_power(s, 2).unwrap(), Sl2::new(5, 3, 3, 2).unwrap());
        assert_eq!(sigma_power(s, -1).unwrap(), Sl2::new(1, -1, -1, 2).unwrap());
        assert!(SigmaPowerForm::new(s).unwrap().identities_hold());
        assert!(matches!(sigma_power(rot(), 2), Err(AutError::NotHyperbolic(0))));
    }

    #[test]
    fn json_shape() {
        let phi = Auto::new(rot(), un("t"), un("q^-2"));
        let j = serde_json::to_value(&phi).unwrap();
        assert_eq!(j["sigma"], serde_json::json!([[0, -1], [1, 0]]));
        assert_eq!(j["beta"], "q^-2");
        let back: Auto = serde_json::from_value(j).unwrap();
        assert_eq!(back, phi);
    }
}
