//! The quantum universal enveloping algebra of sl2: words over the generators,
//! PBW normal form `f^i k^j e^l`, and the Hopf structure maps.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Uqsl2Error {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    K,
    Kinv,
    E,
    F,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::K, Generator::Kinv, Generator::E, Generator::F];

    pub fn name(self) -> &'static str {
        match self {
            Generator::K => "k",
            Generator::Kinv => "kinv",
            Generator::E => "e",
            Generator::F => "f",
        }
    }
}

impl std::str::FromStr for Generator {
    type Err = Uqsl2Error;
    fn from_str(s: &str) -> Result<Self, Uqsl2Error> {
        match s.to_ascii_lowercase().as_str() {
            "k" => Ok(Generator::K),
            "kinv" | "k^-1" | "k-1" => Ok(Generator::Kinv),
            "e" => Ok(Generator::E),
            "f" => Ok(Generator::F),
            _ => Err(Uqsl2Error::UnknownGenerator(s.to_string())),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Word = Vec<Generator>;

/// Parses a whitespace-separated word such as `"k e f kinv"`; the empty
/// string (or `"1"`) is the empty word.
pub fn parse_word(s: &str) -> Result<Word, Uqsl2Error> {
    s.split_whitespace().filter(|t| *t != "1").map(str::parse).collect()
}

pub fn word_to_string(w: &[Generator]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|g| g.name()).collect::<Vec<_>>().join(" ")
}

/// Basis element `f^i k^j e^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwKey {
    pub i: u32,
    pub j: i64,
    pub l: u32,
}

impl PbwKey {
    pub const ONE: PbwKey = PbwKey { i: 0, j: 0, l: 0 };

    pub fn new(i: u32, j: i64, l: u32) -> Self {
        PbwKey { i, j, l }
    }

    pub fn to_word(self) -> Word {
        let mut w = vec![Generator::F; self.i as usize];
        let kg = if self.j >= 0 { Generator::K } else { Generator::Kinv };
        w.extend(std::iter::repeat_n(kg, self.j.unsigned_abs() as usize));
        w.extend(std::iter::repeat_n(Generator::E, self.l as usize));
        w
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// `Σ c · f^i k^j e^l`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PBWElement {
    terms: BTreeMap<PbwKey, Scalar>,
}

impl PBWElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(PbwKey::ONE)
    }

    pub fn basis(k: PbwKey) -> Self {
        Self::term(k, Scalar::one())
    }

    pub fn term(k: PbwKey, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn generator(g: Generator) -> Self {
        Self::basis(match g {
            Generator::K => PbwKey::new(0, 1, 0),
            Generator::Kinv => PbwKey::new(0, -1, 0),
            Generator::E => PbwKey::new(0, 0, 1),
            Generator::F => PbwKey::new(1, 0, 0),
        })
    }

    pub fn add_term(&mut self, k: PbwKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&k) {
            Some(old) => old.add_ref(&c),
            None => c,
        };
        if s.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: PbwKey) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut r = Self::zero();
        for (k, c) in &self.terms {
            r.add_term(*k, c.mul_ref(s));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        let mut cache = HashMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                let mut w = ka.to_word();
                w.extend(kb.to_word());
                let prod = normalize_cached(&w, Strategy::Leftmost, &mut cache);
                let c = ca.mul_ref(cb);
                for (k, v) in &prod.terms {
                    r.add_term(*k, v.mul_ref(&c));
                }
            }
        }
        r
    }

    pub fn counit(&self) -> Scalar {
        self.terms
            .iter()
            .filter(|(k, _)| k.i == 0 && k.l == 0)
            .fold(Scalar::zero(), |acc, (_, c)| acc.add_ref(c))
    }
}

impl fmt::Display for PBWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("({c}) * f^{} k^{} e^{}", k.i, k.j, k.l))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PBWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PBW[{self}]")
    }
}

#[derive(Serialize, Deserialize)]
struct PbwTerm {
    i: u32,
    j: i64,
    l: u32,
    coef: Scalar,
}

impl Serialize for PBWElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<PbwTerm> = self
            .terms
            .iter()
            .map(|(k, c)| PbwTerm { i: k.i, j: k.j, l: k.l, coef: c.clone() })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PBWElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<PbwTerm>::deserialize(d)?;
        let mut p = PBWElement::zero();
        for t in v {
            p.add_term(PbwKey::new(t.i, t.j, t.l), t.coef);
        }
        Ok(p)
    }
}

/// `1/(q - q^{-1})`.
fn inv_q_diff() -> Scalar {
    (Scalar::q() - Scalar::q_pow(-1)).inv().expect("q - 1/q is nonzero")
}

use Generator::{E, F, K, Kinv};

/// Right-hand side of the rewrite rule for the adjacent pair `(a, b)`, if any.
fn rewrite(a: Generator, b: Generator) -> Option<Vec<(Scalar, Word)>> {
    Some(match (a, b) {
        (K, Kinv) | (Kinv, K) => vec![(Scalar::one(), vec![])],
        (E, K) => vec![(Scalar::q_pow(-2), vec![K, E])],
        (E, Kinv) => vec![(Scalar::q_pow(2), vec![Kinv, E])],
        (K, F) => vec![(Scalar::q_pow(-2), vec![F, K])],
        (Kinv, F) => vec![(Scalar::q_pow(2), vec![F, Kinv])],
        (E, F) => {
            let c = inv_q_diff();
            vec![
                (Scalar::one(), vec![F, E]),
                (c.clone(), vec![K]),
                (c.neg_ref(), vec![Kinv]),
            ]
        }
        _ => return None,
    })
}

fn find_redex(w: &[Generator], strategy: Strategy) -> Option<usize> {
    let hit = |p: usize| rewrite(w[p], w[p + 1]).is_some();
    let n = w.len();
    if n < 2 {
        return None;
    }
    match strategy {
        Strategy::Leftmost => (0..n - 1).find(|&p| hit(p)),
        Strategy::Rightmost => (0..n - 1).rev().find(|&p| hit(p)),
    }
}

/// A word with no redex has the shape `f^i (k^j | kinv^j) e^l`.
fn key_of_normal_word(w: &[Generator]) -> PbwKey {
    let mut k = PbwKey::ONE;
    for g in w {
        match g {
            F => k.i += 1,
            K => k.j += 1,
            Kinv => k.j -= 1,
            E => k.l += 1,
        }
    }
    k
}

fn normalize_cached(w: &[Generator], strategy: Strategy, cache: &mut HashMap<Word, PBWElement>) -> PBWElement {
    if let Some(r) = cache.get(w) {
        return r.clone();
    }
    let out = match find_redex(w, strategy) {
        None => PBWElement::basis(key_of_normal_word(w)),
        Some(p) => {
            let mut acc = PBWElement::zero();
            for (c, rep) in rewrite(w[p], w[p + 1]).expect("redex") {
                let mut nw = w[..p].to_vec();
                nw.extend(rep);
                nw.extend_from_slice(&w[p + 2..]);
                acc = acc.add(&normalize_cached(&nw, strategy, cache).scale(&c));
            }
            acc
        }
    };
    cache.insert(w.to_vec(), out.clone());
    out
}

/// PBW normal form of a word, rewriting with the given redex-selection order.
pub fn pbw_normalize_with(w: &[Generator], strategy: Strategy) -> PBWElement {
    normalize_cached(w, strategy, &mut HashMap::new())
}

pub fn pbw_normalize(w: &[Generator]) -> PBWElement {
    pbw_normalize_with(w, Strategy::Leftmost)
}

/// Normal form of a linear combination of words.
pub fn pbw_normalize_sum(words: &[(Scalar, Word)]) -> PBWElement {
    let mut cache = HashMap::new();
    let mut acc = PBWElement::zero();
    for (c, w) in words {
        acc = acc.add(&normalize_cached(w, Strategy::Leftmost, &mut cache).scale(c));
    }
    acc
}

/// An element of the tensor square, `Σ c · a ⊗ b` over PBW basis pairs.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Tensor2 {
    terms: BTreeMap<(PbwKey, PbwKey), Scalar>,
}

impl Tensor2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::pure(&PBWElement::one(), &PBWElement::one())
    }

    /// `a ⊗ b` for arbitrary PBW elements.
    pub fn pure(a: &PBWElement, b: &PBWElement) -> Self {
        let mut t = Self::zero();
        for (ka, ca) in a.terms() {
            for (kb, cb) in b.terms() {
                t.add_term(*ka, *kb, ca.mul_ref(cb));
            }
        }
        t
    }

    pub fn add_term(&mut self, a: PbwKey, b: PbwKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&(a, b)) {
            Some(old) => old.add_ref(&c),
            None => c,
        };
        if s.is_zero() {
            self.terms.remove(&(a, b));
        } else {
            self.terms.insert((a, b), s);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for ((a, b), c) in &o.terms {
            r.add_term(*a, *b, c.clone());
        }
        r
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(PbwKey, PbwKey), &Scalar)> {
        self.terms.iter()
    }

    /// Componentwise product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &o.terms {
                let left = PBWElement::basis(*a).mul(&PBWElement::basis(*c));
                let right = PBWElement::basis(*b).mul(&PBWElement::basis(*d));
                let coef = c1.mul_ref(c2);
                for (kl, vl) in left.terms() {
                    for (kr, vr) in right.terms() {
                        r.add_term(*kl, *kr, coef.mul_ref(vl).mul_ref(vr));
                    }
                }
            }
        }
        r
    }

    /// `(ε ⊗ id)` applied to the tensor.
    pub fn counit_left(&self) -> PBWElement {
        let mut r = PBWElement::zero();
        for ((a, b), c) in &self.terms {
            let e = PBWElement::basis(*a).counit();
            r.add_term(*b, c.mul_ref(&e));
        }
        r
    }

    /// `(id ⊗ ε)` applied to the tensor.
    pub fn counit_right(&self) -> PBWElement {
        let mut r = PBWElement::zero();
        for ((a, b), c) in &self.terms {
            let e = PBWElement::basis(*b).counit();
            r.add_term(*a, c.mul_ref(&e));
        }
        r
    }

    /// `m ∘ (S ⊗ id)`.
    pub fn antipode_left_multiply(&self) -> PBWElement {
        let mut r = PBWElement::zero();
        for ((a, b), c) in &self.terms {
            let sa = antipode_word(&a.to_word());
            r = r.add(&sa.mul(&PBWElement::basis(*b)).scale(c));
        }
        r
    }

    /// `m ∘ (id ⊗ S)`.
    pub fn antipode_right_multiply(&self) -> PBWElement {
        let mut r = PBWElement::zero();
        for ((a, b), c) in &self.terms {
            let sb = antipode_word(&b.to_word());
            r = r.add(&PBWElement::basis(*a).mul(&sb).scale(c));
        }
        r
    }
}

impl fmt::Debug for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("({c}) [{},{},{}]⊗[{},{},{}]", a.i, a.j, a.l, b.i, b.j, b.l))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn coproduct_generator(g: Generator) -> Tensor2 {
    let one = PBWElement::one();
    let gen = PBWElement::generator;
    match g {
        K => Tensor2::pure(&gen(K), &gen(K)),
        Kinv => Tensor2::pure(&gen(Kinv), &gen(Kinv)),
        E => Tensor2::pure(&one, &gen(E)).add(&Tensor2::pure(&gen(E), &gen(K))),
        F => Tensor2::pure(&gen(F), &one).add(&Tensor2::pure(&gen(Kinv), &gen(F))),
    }
}

/// Coproduct of a word, extended multiplicatively.
pub fn coproduct(w: &[Generator]) -> Tensor2 {
    w.iter()
        .fold(Tensor2::one(), |acc, g| acc.mul(&coproduct_generator(*g)))
}

pub fn counit_generator(g: Generator) -> Scalar {
    match g {
        K | Kinv => Scalar::one(),
        E | F => Scalar::zero(),
    }
}

pub fn counit(w: &[Generator]) -> Scalar {
    if w.iter().any(|g| matches!(g, E | F)) {
        Scalar::zero()
    } else {
        Scalar::one()
    }
}

/// `S(k) = k^{-1}`, `S(e) = -e k^{-1}`, `S(f) = -k f`, normalized.
pub fn antipode(g: Generator) -> PBWElement {
    let m1 = Scalar::from_int(-1);
    match g {
        K => PBWElement::generator(Kinv),
        Kinv => PBWElement::generator(K),
        E => pbw_normalize(&[E, Kinv]).scale(&m1),
        F => pbw_normalize(&[K, F]).scale(&m1),
    }
}

/// Antipode of a word; anti-multiplicative.
pub fn antipode_word(w: &[Generator]) -> PBWElement {
    w.iter()
        .rev()
        .fold(PBWElement::one(), |acc, g| acc.mul(&antipode(*g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::sc;

    #[test]
    fn rewrite_examples() {
        assert_eq!(pbw_normalize(&[K, Kinv]), PBWElement::one());
        assert_eq!(pbw_normalize(&[Kinv, K]), PBWElement::one());
        assert_eq!(pbw_normalize(&[K, E]), PBWElement::basis(PbwKey::new(0, 1, 1)));
        assert_eq!(
            pbw_normalize(&[E, K]),
            PBWElement::term(PbwKey::new(0, 1, 1), Scalar::q_pow(-2))
        );
        let ef = pbw_normalize(&[E, F]);
        let c = sc("1/(q - q^-1)");
        let mut want = PBWElement::basis(PbwKey::new(1, 0, 1));
        want.add_term(PbwKey::new(0, 1, 0), c.clone());
        want.add_term(PbwKey::new(0, -1, 0), c.neg_ref());
        assert_eq!(ef, want);
    }

    #[test]
    fn hopf_examples() {
        assert_eq!(coproduct(&[K]), Tensor2::pure(&PBWElement::generator(K), &PBWElement::generator(K)));
        let ek = coproduct(&[E, K]);
        let k = PBWElement::generator(K);
        let ekp = pbw_normalize(&[E, K]);
        let k2 = PBWElement::basis(PbwKey::new(0, 2, 0));
        assert_eq!(ek, Tensor2::pure(&k, &ekp).add(&Tensor2::pure(&ekp, &k2)));
        assert!(counit(&[K, E]).is_zero());
        assert_eq!(antipode(K), PBWElement::generator(Kinv));
        assert_eq!(antipode(E), PBWElement::term(PbwKey::new(0, -1, 1), sc("-q^2")));
        assert_eq!(antipode(F), PBWElement::term(PbwKey::new(1, 1, 0), sc("-q^-2")));
    }

    #[test]
    fn hopf_axioms_on_generators() {
        for g in Generator::ALL {
            let d = coproduct_generator(g);
            let gg = PBWElement::generator(g);
            assert_eq!(d.counit_left(), gg, "{g}");
            assert_eq!(d.counit_right(), gg, "{g}");
            let eps = PBWElement::one().scale(&counit_generator(g));
            assert_eq!(d.antipode_left_multiply(), eps, "{g}");
            assert_eq!(d.antipode_right_multiply(), eps, "{g}");
        }
    }

    #[test]
    fn words_parse() {
        assert_eq!(parse_word("k e f kinv").unwrap(), vec![K, E, F, Kinv]);
        assert!(parse_word("k x").is_err());
        assert_eq!(word_to_string(&[]), "1");
    }
}
