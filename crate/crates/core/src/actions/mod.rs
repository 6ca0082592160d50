//! Candidate module-algebra structures on the quantum plane and on the line.

mod eval;
mod line;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::autgroup::{Auto, Sl2};
use crate::qalgebra::{PlaneElement, QAlgebraError, UnitMonomial};
use crate::scalars::{geom_sum, Scalar, ScalarError, Unit};

pub use eval::ActionEval;
pub use line::{conjugate_line, line_closed_form, line_family, LineAction, LineAuto, LineEval, LineKind};

#[derive(Debug, Error)]
pub enum ActionError {
    #[error("weight relation violated: {0}")]
    WeightRelationViolated(String),
    #[error("weight constants are not generic: {0}")]
    GenericityViolated(String),
    #[error("defining relation violated: {0}")]
    RelationViolated(String),
    #[error("not a weight action: k must act diagonally")]
    NotAWeightAction,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    QAlgebra(#[from] QAlgebraError),
}

/// The action of `k`, `e`, `f` on the generators `x`, `y`. Everything else is
/// determined by the Hopf structure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Action {
    pub k: Auto,
    pub e_x: PlaneElement,
    pub e_y: PlaneElement,
    pub f_x: PlaneElement,
    pub f_y: PlaneElement,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
}

/// Compares the action data only; `params` is bookkeeping.
impl PartialEq for Action {
    fn eq(&self, o: &Self) -> bool {
        self.k == o.k && self.e_x == o.e_x && self.e_y == o.e_y && self.f_x == o.f_x && self.f_y == o.f_y
    }
}

impl Action {
    pub fn trivial(k: Auto) -> Action {
        Action {
            k,
            e_x: PlaneElement::zero(),
            e_y: PlaneElement::zero(),
            f_x: PlaneElement::zero(),
            f_y: PlaneElement::zero(),
            params: BTreeMap::new(),
        }
    }

    pub fn is_weight(&self) -> bool {
        self.k.sigma == Sl2::IDENTITY
    }

    pub fn image(&self, which: Which, var: Var) -> &PlaneElement {
        match (which, var) {
            (Which::E, Var::X) => &self.e_x,
            (Which::E, Var::Y) => &self.e_y,
            (Which::F, Var::X) => &self.f_x,
            (Which::F, Var::Y) => &self.f_y,
        }
    }

    /// Replaces an indeterminate in the `e` and `f` images, e.g. to
    /// reparametrize a family. `π(k)` is left untouched.
    pub fn substitute(&self, var: &str, value: &Scalar) -> Result<Action, ActionError> {
        let idx = crate::scalars::var_index(var)?;
        let mut out = self.clone();
        for w in [Which::E, Which::F] {
            for v in [Var::X, Var::Y] {
                let mut img = PlaneElement::zero();
                for (&(i, j), c) in self.image(w, v).terms() {
                    img.add_term(i, j, c.substitute(idx, value)?);
                }
                *out.image_mut(w, v) = img;
            }
        }
        Ok(out)
    }

    pub fn image_mut(&mut self, which: Which, var: Var) -> &mut PlaneElement {
        match (which, var) {
            (Which::E, Var::X) => &mut self.e_x,
            (Which::E, Var::Y) => &mut self.e_y,
            (Which::F, Var::X) => &mut self.f_x,
            (Which::F, Var::Y) => &mut self.f_y,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    E,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
}

impl Var {
    fn exps(self, p: i64) -> (i64, i64) {
        match self {
            Var::X => (p, 0),
            Var::Y => (0, p),
        }
    }
}

impl std::str::FromStr for Which {
    type Err = ActionError;
    fn from_str(s: &str) -> Result<Self, ActionError> {
        match s {
            "e" | "E" => Ok(Which::E),
            "f" | "F" => Ok(Which::F),
            _ => Err(ActionError::InvalidArgument(format!("expected e or f, got {s:?}"))),
        }
    }
}

impl std::str::FromStr for Var {
    type Err = ActionError;
    fn from_str(s: &str) -> Result<Self, ActionError> {
        match s {
            "x" => Ok(Var::X),
            "y" => Ok(Var::Y),
            _ => Err(ActionError::InvalidArgument(format!("expected x or y, got {s:?}"))),
        }
    }
}

fn q(n: i64) -> Scalar {
    Scalar::q_pow(n)
}

/// The generic weight family: `k = (α, β)` with `α^u β^v = q²` and `α`, `β`
/// multiplicatively independent; `a` is a free nonzero constant.
pub fn generic_family(u: i64, v: i64, alpha: Unit, beta: Unit, a: Unit) -> Result<Action, ActionError> {
    if alpha.pow(u).mul(&beta.pow(v)) != Unit::q_pow(2) {
        return Err(ActionError::WeightRelationViolated(format!(
            "alpha^{u} * beta^{v} != q^2 for alpha = {alpha}, beta = {beta}"
        )));
    }
    if alpha.multiplicatively_dependent(&beta) {
        return Err(ActionError::GenericityViolated(format!(
            "alpha^m = beta^n has a solution with (m, n) != (0, 0) for alpha = {alpha}, beta = {beta}"
        )));
    }
    let one = Scalar::one();
    let al = alpha.to_scalar();
    let be = beta.to_scalar();
    let one_m_q2 = one.sub_ref(&q(2));
    let den = one_m_q2.mul_ref(&one_m_q2);
    let lead = a.mul(&Unit::q_pow(u * v + 3)).times(&den.inv()?);
    let e_x = lead.mul_ref(&one.sub_ref(&al.mul_ref(&q(v))));
    let e_y = lead.mul_ref(&q(u).sub_ref(&be));
    let ainv = a.inv();
    let f_x = ainv.times(&al.inv()?.sub_ref(&q(-v))).neg_ref();
    let f_y = ainv.times(&be.inv()?.mul_ref(&q(-u)).sub_ref(&one)).neg_ref();
    let mut params = BTreeMap::new();
    params.insert("family".into(), "generic".into());
    params.insert("u".into(), u.to_string());
    params.insert("v".into(), v.to_string());
    params.insert("alpha".into(), alpha.to_string());
    params.insert("beta".into(), beta.to_string());
    params.insert("a".into(), a.to_string());
    Ok(Action {
        k: Auto::units(alpha, beta),
        e_x: PlaneElement::monomial(e_x, u + 1, v),
        e_y: PlaneElement::monomial(e_y, u, v + 1),
        f_x: PlaneElement::monomial(f_x, 1 - u, -v),
        f_y: PlaneElement::monomial(f_y, -u, 1 - v),
        params,
    })
}

/// `k: x ↦ α⁻¹x⁻¹, y ↦ β⁻¹y⁻¹` with `e = f = 0`.
pub fn minus_identity_family(alpha: Unit, beta: Unit) -> Action {
    let mut params = BTreeMap::new();
    params.insert("family".into(), "minus-identity".into());
    params.insert("alpha".into(), alpha.to_string());
    params.insert("beta".into(), beta.to_string());
    let mut act = Action::trivial(Auto::new(Sl2::MINUS_IDENTITY, alpha.inv(), beta.inv()));
    act.params = params;
    act
}

/// `(u_ij, v_ij)`: eigenvectors of the `-I` family's `k` for eigenvalues `1` and `-1`.
pub fn weight_basis(alpha: &Unit, beta: &Unit, i: i64, j: i64) -> Result<(PlaneElement, PlaneElement), ActionError> {
    if i <= 0 || j <= 0 {
        return Err(ActionError::InvalidArgument(format!(
            "weight basis indices must be positive, got ({i}, {j})"
        )));
    }
    let c = alpha.pow(i).mul(&beta.pow(j)).to_scalar();
    let pos = PlaneElement::monomial(c, i, j);
    let neg = PlaneElement::xy(-i, -j);
    Ok((pos.add(&neg), pos.sub(&neg)))
}

/// `φ ∘ π(g) ∘ φ⁻¹`, read off on `x` and `y`.
pub fn conjugate(act: &Action, phi: &Auto) -> Action {
    let pinv = phi.inverse();
    let mut ev = ActionEval::new(act);
    let pre_x = pinv.image_x().to_plane();
    let pre_y = pinv.image_y().to_plane();
    let e = crate::uqsl2::Generator::E;
    let f = crate::uqsl2::Generator::F;
    let mut params = act.params.clone();
    params.insert("conjugated_by".into(), phi.to_string());
    Action {
        k: phi.compose(&act.k).compose(&pinv),
        e_x: phi.apply(&ev.apply_gen(e, &pre_x)),
        e_y: phi.apply(&ev.apply_gen(e, &pre_y)),
        f_x: phi.apply(&ev.apply_gen(f, &pre_x)),
        f_y: phi.apply(&ev.apply_gen(f, &pre_y)),
        params,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioFailure {
    pub equation: String,
    pub i: i64,
    pub j: i64,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub checked: usize,
    pub failures: Vec<RatioFailure>,
    pub pass: bool,
}

/// Checks the coefficient ratios forced on a weight action by the relation
/// `yx = qxy`:
/// `a_{i+1,j}(q^i - β) = b_{i,j+1}(1 - αq^j)` and
/// `c_{i+1,j}(1 - β⁻¹q^i) = d_{i,j+1}(q^j - α⁻¹)`.
pub fn ratio_check(act: &Action) -> Result<RatioReport, ActionError> {
    if !act.is_weight() {
        return Err(ActionError::NotAWeightAction);
    }
    let al = act.k.alpha.to_scalar();
    let be = act.k.beta.to_scalar();
    let ali = act.k.alpha.inv().to_scalar();
    let bei = act.k.beta.inv().to_scalar();
    let one = Scalar::one();
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut run = |name: &str, px: &PlaneElement, py: &PlaneElement, fx: &dyn Fn(i64, i64) -> Scalar, fy: &dyn Fn(i64, i64) -> Scalar| {
        let mut pairs: Vec<(i64, i64)> = px.support().into_iter().map(|(i, j)| (i - 1, j)).collect();
        pairs.extend(py.support().into_iter().map(|(i, j)| (i, j - 1)));
        pairs.sort();
        pairs.dedup();
        for (i, j) in pairs {
            checked += 1;
            let lhs = px.coeff(i + 1, j).mul_ref(&fx(i, j));
            let rhs = py.coeff(i, j + 1).mul_ref(&fy(i, j));
            if lhs != rhs {
                failures.push(RatioFailure {
                    equation: name.to_string(),
                    i,
                    j,
                    lhs,
                    rhs,
                });
            }
        }
    };
    run(
        "ab",
        &act.e_x,
        &act.e_y,
        &|i, _| q(i).sub_ref(&be),
        &|_, j| one.sub_ref(&al.mul_ref(&q(j))),
    );
    run(
        "cd",
        &act.f_x,
        &act.f_y,
        &|i, _| one.sub_ref(&bei.mul_ref(&q(i))),
        &|_, j| q(j).sub_ref(&ali),
    );
    let pass = failures.is_empty();
    Ok(RatioReport { checked, failures, pass })
}

/// Closed form for `π(e)` or `π(f)` on `x^p` or `y^p`. Weight actions use the
/// geometric-series formulas; other actions use the expanded Leibniz sums.
pub fn closed_form_powers(act: &Action, which: Which, var: Var, p: i64) -> PlaneElement {
    if act.is_weight() {
        weight_power_form(act, which, var, p)
    } else {
        power_sum_form(act, which, var, p)
    }
}

/// The geometric-series closed forms, valid when `k` acts diagonally.
pub fn weight_power_form(act: &Action, which: Which, var: Var, p: i64) -> PlaneElement {
    let al = &act.k.alpha;
    let be = &act.k.beta;
    let mut out = PlaneElement::zero();
    if p == 0 {
        return out;
    }
    for (&(i, j), c) in act.image(which, var).terms() {
        let (factor, shift) = match (which, var) {
            (Which::E, Var::X) => (geom_sum(&al.mul(&Unit::q_pow(j)).to_scalar(), p), (p - 1, 0)),
            (Which::E, Var::Y) => {
                let g = geom_sum(&be.mul(&Unit::q_pow(-i)).to_scalar(), p);
                (g.mul_ref(&q(i * (p - 1))), (0, p - 1))
            }
            (Which::F, Var::X) => {
                let g = geom_sum(&al.inv().mul(&Unit::q_pow(-j)).to_scalar(), p);
                (g.mul_ref(&q(j * (p - 1))), (p - 1, 0))
            }
            (Which::F, Var::Y) => (geom_sum(&be.inv().mul(&Unit::q_pow(i)).to_scalar(), p), (0, p - 1)),
        };
        out.add_term(i + shift.0, j + shift.1, c.mul_ref(&factor));
    }
    out
}

/// The Leibniz expansion of `π(e)(v^p)` or `π(f)(v^p)` as an explicit sum,
/// valid for any `k`.
pub fn power_sum_form(act: &Action, which: Which, var: Var, p: i64) -> PlaneElement {
    let base = act.image(which, var);
    let mono = |i: i64| {
        let (a, b) = var.exps(i);
        UnitMonomial::xy(a, b)
    };
    let kimg = |auto: &Auto, r: i64| {
        let (a, b) = var.exps(r);
        auto.apply_monomial(a, b)
    };
    let mut out = PlaneElement::zero();
    match which {
        Which::E => {
            let k = &act.k;
            if p > 0 {
                for r in 0..p {
                    out = out.add(&base.mul_unit_left(&mono(p - 1 - r)).mul_unit_right(&kimg(k, r)));
                }
            } else {
                for r in 0..-p {
                    out = out.sub(&base.mul_unit_left(&mono(p + r)).mul_unit_right(&kimg(k, -r - 1)));
                }
            }
        }
        Which::F => {
            let kinv = act.k.inverse();
            if p > 0 {
                for s in 0..p {
                    out = out.add(&base.mul_unit_left(&kimg(&kinv, s)).mul_unit_right(&mono(p - 1 - s)));
                }
            } else {
                for s in 0..-p {
                    out = out.sub(&base.mul_unit_left(&kimg(&kinv, -s - 1)).mul_unit_right(&mono(p + s)));
                }
            }
        }
    }
    out
}
