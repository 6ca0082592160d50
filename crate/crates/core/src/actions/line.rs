//! Actions on the Laurent polynomial ring `C[z, z⁻¹]`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::qalgebra::LineElement;
use crate::scalars::{geom_sum, Scalar, Unit};
use crate::uqsl2::Generator;

use super::{ActionError, Which};

/// The automorphism `z ↦ γ z^s` with `s = ±1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineAuto {
    pub gamma: Unit,
    pub exponent: i64,
}

impl LineAuto {
    pub fn new(gamma: Unit, exponent: i64) -> Result<Self, ActionError> {
        if exponent != 1 && exponent != -1 {
            return Err(ActionError::InvalidArgument(format!(
                "line automorphism exponent must be 1 or -1, got {exponent}"
            )));
        }
        Ok(LineAuto { gamma, exponent })
    }

    pub fn identity() -> Self {
        LineAuto {
            gamma: Unit::one(),
            exponent: 1,
        }
    }

    pub fn inversion() -> Self {
        LineAuto {
            gamma: Unit::one(),
            exponent: -1,
        }
    }

    /// Image of `z^p` as `(coefficient, exponent)`.
    pub fn apply_power(&self, p: i64) -> (Unit, i64) {
        (self.gamma.pow(p), self.exponent * p)
    }

    pub fn apply(&self, v: &LineElement) -> LineElement {
        let mut out = LineElement::zero();
        for (&p, c) in v.terms() {
            let (u, e) = self.apply_power(p);
            out.add_term(e, u.times(c));
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LineAuto) -> LineAuto {
        let (u, e) = self.apply_power(other.exponent);
        LineAuto {
            gamma: other.gamma.mul(&u),
            exponent: e,
        }
    }

    pub fn inverse(&self) -> LineAuto {
        if self.exponent == 1 {
            LineAuto {
                gamma: self.gamma.inv(),
                exponent: 1,
            }
        } else {
            self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineKind {
    /// `k(z) = γz` with `γ^{r-1} = q²`, nonzero `e` and `f`.
    One,
    /// `k(z) = ±z`, `e = f = 0`.
    Sign,
    /// `k(z) = γz⁻¹`, `e = f = 0`.
    Two,
}

impl std::str::FromStr for LineKind {
    type Err = ActionError;
    fn from_str(s: &str) -> Result<Self, ActionError> {
        match s {
            "1" | "one" => Ok(LineKind::One),
            "sign" => Ok(LineKind::Sign),
            "2" | "two" => Ok(LineKind::Two),
            _ => Err(ActionError::InvalidArgument(format!("unknown line kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineAction {
    pub k: LineAuto,
    pub e_z: LineElement,
    pub f_z: LineElement,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
}

impl PartialEq for LineAction {
    fn eq(&self, o: &Self) -> bool {
        self.k == o.k && self.e_z == o.e_z && self.f_z == o.f_z
    }
}

/// The line family of the given kind. `a` and `r` are ignored unless `kind` is `One`.
pub fn line_family(kind: LineKind, gamma: Unit, a: Unit, r: i64) -> Result<LineAction, ActionError> {
    let mut params = BTreeMap::new();
    params.insert("family".to_string(), "line".to_string());
    params.insert("gamma".to_string(), gamma.to_string());
    let q2m1 = Scalar::q_pow(2).sub_ref(&Scalar::one());
    match kind {
        LineKind::One => {
            if gamma.pow(r - 1) != Unit::q_pow(2) {
                return Err(ActionError::RelationViolated(format!(
                    "gamma^(r-1) = q^2 fails for gamma = {gamma}, r = {r}"
                )));
            }
            params.insert("kind".to_string(), "1".to_string());
            params.insert("a".to_string(), a.to_string());
            params.insert("r".to_string(), r.to_string());
            let ec = a.times(&q2m1.inv()?);
            // f(z) = -q^3 (γ-1)^2 / (γ a (q^2-1)) z^{2-r}
            let gm1 = gamma.to_scalar().sub_ref(&Scalar::one());
            let fc = gamma
                .mul(&a)
                .inv()
                .mul(&Unit::q_pow(3))
                .times(&gm1.mul_ref(&gm1).div_ref(&q2m1)?)
                .neg_ref();
            Ok(LineAction {
                k: LineAuto::new(gamma, 1)?,
                e_z: LineElement::monomial(ec, r),
                f_z: LineElement::monomial(fc, 2 - r),
                params,
            })
        }
        LineKind::Sign => {
            let one = Unit::one();
            let minus = Unit::from_int(-1)?;
            if gamma != one && gamma != minus {
                return Err(ActionError::RelationViolated(format!(
                    "sign kind needs gamma = 1 or -1, got {gamma}"
                )));
            }
            params.insert("kind".to_string(), "sign".to_string());
            Ok(LineAction {
                k: LineAuto::new(gamma, 1)?,
                e_z: LineElement::zero(),
                f_z: LineElement::zero(),
                params,
            })
        }
        LineKind::Two => {
            params.insert("kind".to_string(), "2".to_string());
            Ok(LineAction {
                k: LineAuto::new(gamma, -1)?,
                e_z: LineElement::zero(),
                f_z: LineElement::zero(),
                params,
            })
        }
    }
}

/// `ψ ∘ π(g) ∘ ψ⁻¹`.
pub fn conjugate_line(act: &LineAction, psi: &LineAuto) -> LineAction {
    let pinv = psi.inverse();
    let mut ev = LineEval::new(act);
    let (u, e) = pinv.apply_power(1);
    let z_pre = LineElement::monomial(u.to_scalar(), e);
    let mut params = act.params.clone();
    params.insert("conjugated_by".to_string(), format!("{}*z^{}", psi.gamma, psi.exponent));
    LineAction {
        k: psi.compose(&act.k).compose(&pinv),
        e_z: psi.apply(&ev.apply_gen(Generator::E, &z_pre)),
        f_z: psi.apply(&ev.apply_gen(Generator::F, &z_pre)),
        params,
    }
}

struct LineTwisted {
    dz: LineElement,
    left: LineAuto,
    right: LineAuto,
    cache: HashMap<i64, LineElement>,
}

impl LineTwisted {
    fn mul_img(v: &LineElement, auto: &LineAuto, p: i64) -> LineElement {
        let (u, e) = auto.apply_power(p);
        v.mul_unit(&u, e)
    }

    fn power(&mut self, p: i64) -> LineElement {
        if let Some(v) = self.cache.get(&p) {
            return v.clone();
        }
        let val = match p {
            0 => LineElement::zero(),
            1 => self.dz.clone(),
            -1 => {
                let t = Self::mul_img(&self.dz, &self.left, -1);
                Self::mul_img(&t, &self.right, -1).neg()
            }
            p if p > 1 => {
                let prev = self.power(p - 1);
                let a = Self::mul_img(&prev, &self.left, 1);
                a.add(&Self::mul_img(&self.dz, &self.right, p - 1))
            }
            p => {
                let prev = self.power(p + 1);
                let dinv = self.power(-1);
                let a = Self::mul_img(&prev, &self.left, -1);
                a.add(&Self::mul_img(&dinv, &self.right, p + 1))
            }
        };
        self.cache.insert(p, val.clone());
        val
    }

    fn apply(&mut self, v: &LineElement) -> LineElement {
        let mut out = LineElement::zero();
        for (&p, c) in v.terms() {
            out = out.add(&self.power(p).scale(c));
        }
        out
    }
}

pub struct LineEval {
    k: LineAuto,
    kinv: LineAuto,
    e: LineTwisted,
    f: LineTwisted,
}

impl LineEval {
    pub fn new(act: &LineAction) -> Self {
        let kinv = act.k.inverse();
        LineEval {
            e: LineTwisted {
                dz: act.e_z.clone(),
                left: LineAuto::identity(),
                right: act.k.clone(),
                cache: HashMap::new(),
            },
            f: LineTwisted {
                dz: act.f_z.clone(),
                left: kinv.clone(),
                right: LineAuto::identity(),
                cache: HashMap::new(),
            },
            k: act.k.clone(),
            kinv,
        }
    }

    pub fn apply_gen(&mut self, g: Generator, v: &LineElement) -> LineElement {
        match g {
            Generator::K => self.k.apply(v),
            Generator::Kinv => self.kinv.apply(v),
            Generator::E => self.e.apply(v),
            Generator::F => self.f.apply(v),
        }
    }

    /// `π(g)(ab)` by the coproduct rule.
    pub fn leibniz(&mut self, g: Generator, a: &LineElement, b: &LineElement) -> LineElement {
        match g {
            Generator::K => self.k.apply(a).mul(&self.k.apply(b)),
            Generator::Kinv => self.kinv.apply(a).mul(&self.kinv.apply(b)),
            Generator::E => a.mul(&self.e.apply(b)).add(&self.e.apply(a).mul(&self.k.apply(b))),
            Generator::F => self
                .f
                .apply(a)
                .mul(b)
                .add(&self.kinv.apply(a).mul(&self.f.apply(b))),
        }
    }
}

/// Closed form of `π(e)(z^p)` or `π(f)(z^p)`.
pub fn line_closed_form(act: &LineAction, which: Which, p: i64) -> LineElement {
    let base = match which {
        Which::E => &act.e_z,
        Which::F => &act.f_z,
    };
    if p == 0 || base.is_zero() {
        return LineElement::zero();
    }
    if act.k.exponent == 1 {
        let g = match which {
            Which::E => act.k.gamma.to_scalar(),
            Which::F => act.k.gamma.inv().to_scalar(),
        };
        return base.mul_unit(&Unit::one(), p - 1).scale(&geom_sum(&g, p));
    }
    // z ↦ γz⁻¹: sum the Leibniz expansion term by term
    let k = &act.k;
    let kinv = k.inverse();
    let mut out = LineElement::zero();
    let mono = |c: Unit, e: i64| LineElement::monomial(c.to_scalar(), e);
    let one = Unit::one();
    match which {
        Which::E if p > 0 => {
            for r in 0..p {
                let (u, e) = k.apply_power(r);
                out = out.add(&base.mul(&mono(u, e)).mul(&mono(one.clone(), p - 1 - r)));
            }
        }
        Which::E => {
            for r in 0..-p {
                let (u, e) = k.apply_power(-r - 1);
                out = out.sub(&base.mul(&mono(u, e)).mul(&mono(one.clone(), p + r)));
            }
        }
        Which::F if p > 0 => {
            for s in 0..p {
                let (u, e) = kinv.apply_power(s);
                out = out.add(&base.mul(&mono(u, e)).mul(&mono(one.clone(), p - 1 - s)));
            }
        }
        Which::F => {
            for s in 0..-p {
                let (u, e) = kinv.apply_power(-s - 1);
                out = out.sub(&base.mul(&mono(u, e)).mul(&mono(one.clone(), p + s)));
            }
        }
    }
    out
}
