//! Degree-bounded verification of the module-algebra axioms.
//!
//! Axioms checked on each monomial of the grid:
//! - `a`: `π(k)π(k⁻¹) = π(k⁻¹)π(k) = id`
//! - `b`: `π(k)π(e) = q²π(e)π(k)`
//! - `c`: `π(k)π(f) = q⁻²π(f)π(k)`
//! - `d`: `π(e)π(f) - π(f)π(e) = (π(k) - π(k⁻¹))/(q - q⁻¹)`
//! - `e`: `π(g)(1) = ε(g)1` (witness at the origin only)
//! - `f`: product rule on `yx` agrees with `q` times the product rule on `xy`
//!   (on the line: `z·w` against `w·z`)
//! - `leibniz`: the product rule on `v·m` agrees with the action on the
//!   normalized product, for `v` among the generators and their inverses
//!
//! Passing on the grid is a bounded check, not a proof for the whole algebra.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::actions::{Action, ActionEval, LineAction, LineEval, Var, Which};
use crate::qalgebra::{LineElement, PlaneElement};
use crate::scalars::{Scalar, Unit};
use crate::uqsl2::{counit_generator, Generator};

pub const DEFAULT_DEGREE_BOUND: i64 = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check<T> {
    pub axiom: String,
    pub witness: Vec<i64>,
    pub lhs: T,
    pub rhs: T,
    pub pass: bool,
}

impl<T: PartialEq> Check<T> {
    fn new(axiom: &str, witness: Vec<i64>, lhs: T, rhs: T) -> Self {
        let pass = lhs == rhs;
        Check {
            axiom: axiom.to_string(),
            witness,
            lhs,
            rhs,
            pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub checks: Vec<Check<T>>,
    pub pass: bool,
}

impl<T> Report<T> {
    fn from_checks(checks: Vec<Check<T>>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Report { checks, pass }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check<T>> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// True when some check of `axiom` failed, at `witness` if given.
    pub fn fails_at(&self, axiom: &str, witness: Option<&[i64]>) -> bool {
        self.failures()
            .any(|c| c.axiom == axiom && witness.is_none_or(|w| c.witness == w))
    }
}

pub type PlaneReport = Report<PlaneElement>;
pub type LineReport = Report<LineElement>;

fn q_minus_qinv() -> Scalar {
    Scalar::q().sub_ref(&Scalar::q_pow(-1))
}

fn grid(n: i64) -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for i in -n..=n {
        for j in -n..=n {
            v.push((i, j));
        }
    }
    v
}

fn monomial_checks(ev: &mut ActionEval, i: i64, j: i64) -> Vec<Check<PlaneElement>> {
    use Generator::*;
    let w = vec![i, j];
    let m = PlaneElement::xy(i, j);
    let mut out = Vec::with_capacity(12);
    let km = ev.on_monomial(K, i, j);
    let kim = ev.on_monomial(Kinv, i, j);
    out.push(Check::new("a", w.clone(), ev.apply_gen(K, &kim), m.clone()));
    out.push(Check::new("a", w.clone(), ev.apply_gen(Kinv, &km), m.clone()));
    let em = ev.on_monomial(E, i, j);
    let fm = ev.on_monomial(F, i, j);
    out.push(Check::new(
        "b",
        w.clone(),
        ev.apply_gen(K, &em),
        ev.apply_gen(E, &km).scale(&Scalar::q_pow(2)),
    ));
    out.push(Check::new(
        "c",
        w.clone(),
        ev.apply_gen(K, &fm),
        ev.apply_gen(F, &km).scale(&Scalar::q_pow(-2)),
    ));
    let lhs = ev.apply_gen(E, &fm).sub(&ev.apply_gen(F, &em));
    let rhs = km.sub(&kim).scale(&q_minus_qinv().inv().expect("q - 1/q is nonzero"));
    out.push(Check::new("d", w.clone(), lhs, rhs));
    for (vi, vj) in [(1, 0), (0, 1), (-1, 0), (0, -1)] {
        let v = PlaneElement::xy(vi, vj);
        let prod = v.mul(&m);
        for g in [E, F] {
            out.push(Check::new(
                "leibniz",
                vec![vi, vj, i, j],
                ev.leibniz(g, &v, &m),
                ev.apply_gen(g, &prod),
            ));
        }
    }
    out
}

fn global_checks(ev: &mut ActionEval) -> Vec<Check<PlaneElement>> {
    let one = PlaneElement::one();
    let x = PlaneElement::x();
    let y = PlaneElement::y();
    let mut out = Vec::new();
    for g in [Generator::K, Generator::Kinv, Generator::E, Generator::F] {
        out.push(Check::new(
            "e",
            vec![0, 0],
            ev.apply_gen(g, &one),
            one.scale(&counit_generator(g)),
        ));
    }
    for g in [Generator::K, Generator::Kinv, Generator::E, Generator::F] {
        out.push(Check::new(
            "f",
            vec![0, 1, 1, 0],
            ev.leibniz(g, &y, &x),
            ev.leibniz(g, &x, &y).scale(&Scalar::q()),
        ));
    }
    out
}

/// Checks every axiom on `x^i y^j` for `|i|, |j| <= n`.
pub fn verify_module_algebra(act: &Action, n: i64) -> PlaneReport {
    let n = n.max(1);
    let mut checks = global_checks(&mut ActionEval::new(act));
    let per: Vec<Vec<Check<PlaneElement>>> = grid(n)
        .into_par_iter()
        .map_init(|| ActionEval::new(act), |ev, (i, j)| monomial_checks(ev, i, j))
        .collect();
    checks.extend(per.into_iter().flatten());
    Report::from_checks(checks)
}

fn line_checks(ev: &mut LineEval, p: i64) -> Vec<Check<LineElement>> {
    use Generator::*;
    let w = vec![p];
    let m = LineElement::monomial(Scalar::one(), p);
    let z = LineElement::z();
    let mut out = Vec::new();
    let km = ev.apply_gen(K, &m);
    let kim = ev.apply_gen(Kinv, &m);
    out.push(Check::new("a", w.clone(), ev.apply_gen(K, &kim), m.clone()));
    out.push(Check::new("a", w.clone(), ev.apply_gen(Kinv, &km), m.clone()));
    let em = ev.apply_gen(E, &m);
    let fm = ev.apply_gen(F, &m);
    out.push(Check::new(
        "b",
        w.clone(),
        ev.apply_gen(K, &em),
        ev.apply_gen(E, &km).scale(&Scalar::q_pow(2)),
    ));
    out.push(Check::new(
        "c",
        w.clone(),
        ev.apply_gen(K, &fm),
        ev.apply_gen(F, &km).scale(&Scalar::q_pow(-2)),
    ));
    let lhs = ev.apply_gen(E, &fm).sub(&ev.apply_gen(F, &em));
    let rhs = km.sub(&kim).scale(&q_minus_qinv().inv().expect("q - 1/q is nonzero"));
    out.push(Check::new("d", w.clone(), lhs, rhs));
    for g in [K, Kinv, E, F] {
        out.push(Check::new("f", w.clone(), ev.leibniz(g, &z, &m), ev.leibniz(g, &m, &z)));
    }
    for s in [1, -1] {
        let v = LineElement::monomial(Scalar::one(), s);
        for g in [E, F] {
            out.push(Check::new(
                "leibniz",
                vec![s, p],
                ev.leibniz(g, &v, &m),
                ev.apply_gen(g, &v.mul(&m)),
            ));
        }
    }
    out
}

/// Line analogue of [`verify_module_algebra`] on `z^p`, `|p| <= n`.
pub fn verify_line_action(act: &LineAction, n: i64) -> LineReport {
    let n = n.max(1);
    let mut ev = LineEval::new(act);
    let one = LineElement::one();
    let mut checks = Vec::new();
    for g in [Generator::K, Generator::Kinv, Generator::E, Generator::F] {
        checks.push(Check::new(
            "e",
            vec![0],
            ev.apply_gen(g, &one),
            one.scale(&counit_generator(g)),
        ));
    }
    let per: Vec<Vec<Check<LineElement>>> = (-n..=n)
        .into_par_iter()
        .map_init(|| LineEval::new(act), line_checks)
        .collect();
    checks.extend(per.into_iter().flatten());
    Report::from_checks(checks)
}

/// For a weight action: whether every support monomial of each image has the
/// weight the relations `ke = q²ek`, `kf = q⁻²fk` demand. `None` otherwise.
pub fn weight_condition(act: &Action) -> Option<bool> {
    if !act.is_weight() {
        return None;
    }
    let (al, be) = (&act.k.alpha, &act.k.beta);
    let ok = |img: &PlaneElement, target: Unit| {
        img.support()
            .iter()
            .all(|&(i, j)| al.pow(i).mul(&be.pow(j)) == target)
    };
    let q2 = Unit::q_pow(2);
    let qm2 = Unit::q_pow(-2);
    Some(
        ok(&act.e_x, q2.mul(al))
            && ok(&act.e_y, q2.mul(be))
            && ok(&act.f_x, qm2.mul(al))
            && ok(&act.f_y, qm2.mul(be)),
    )
}

/// The twelve canonical single-image mutations: scale by `q`, negate, and
/// shift the `x`-exponent by one, applied to each of `e_x, e_y, f_x, f_y`.
/// A zero image is first seeded with its own generator so the mutation is
/// not a no-op.
pub fn canonical_mutations(act: &Action) -> Vec<(String, Action)> {
    let mut out = Vec::new();
    for which in [Which::E, Which::F] {
        for var in [Var::X, Var::Y] {
            let base = act.image(which, var);
            let seed = if base.is_zero() {
                match var {
                    Var::X => PlaneElement::x(),
                    Var::Y => PlaneElement::y(),
                }
            } else {
                base.clone()
            };
            let shifted = PlaneElement::from_terms(seed.terms().map(|(&(i, j), c)| ((i + 1, j), c.clone())));
            let label = format!("{}_{}", if which == Which::E { "e" } else { "f" }, if var == Var::X { "x" } else { "y" });
            let variants = [
                ("scale_q", seed.scale(&Scalar::q())),
                ("negate", if base.is_zero() { seed.clone() } else { seed.neg() }),
                ("shift", shifted),
            ];
            for (kind, img) in variants {
                let mut m = act.clone();
                *m.image_mut(which, var) = img;
                out.push((format!("{label}:{kind}"), m));
            }
        }
    }
    out
}

/// Line analogue of [`canonical_mutations`]: six mutations of `e_z`, `f_z`.
pub fn canonical_line_mutations(act: &LineAction) -> Vec<(String, LineAction)> {
    let mut out = Vec::new();
    for (label, is_e) in [("e_z", true), ("f_z", false)] {
        let base = if is_e { &act.e_z } else { &act.f_z };
        let seed = if base.is_zero() { LineElement::z() } else { base.clone() };
        let shifted = LineElement::from_terms(seed.terms().map(|(&p, c)| (p + 1, c.clone())));
        let variants = [
            ("scale_q", seed.scale(&Scalar::q())),
            ("negate", if base.is_zero() { seed.clone() } else { seed.neg() }),
            ("shift", shifted),
        ];
        for (kind, img) in variants {
            let mut m = act.clone();
            if is_e {
                m.e_z = img;
            } else {
                m.f_z = img;
            }
            out.push((format!("{label}:{kind}"), m));
        }
    }
    out
}
