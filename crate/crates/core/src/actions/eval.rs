//! Evaluation of an action on arbitrary plane elements.
//!
//! `π(e)` and `π(f)` are twisted derivations `D(ab) = L(a)D(b) + D(a)R(b)`
//! with `(L, R) = (id, π(k))` for `e` and `(π(k⁻¹), id)` for `f`. Values on
//! monomials are memoized per evaluator.

use std::collections::HashMap;

use crate::autgroup::Auto;
use crate::qalgebra::PlaneElement;
use crate::uqsl2::{Generator, PBWElement};

use super::Action;

#[derive(Clone, Copy)]
enum Axis {
    X,
    Y,
}

impl Axis {
    fn exps(self, p: i64) -> (i64, i64) {
        match self {
            Axis::X => (p, 0),
            Axis::Y => (0, p),
        }
    }
}

pub(crate) struct Twisted {
    dx: PlaneElement,
    dy: PlaneElement,
    left: Auto,
    right: Auto,
    cache: HashMap<(i64, i64), PlaneElement>,
}

impl Twisted {
    pub(crate) fn new(dx: PlaneElement, dy: PlaneElement, left: Auto, right: Auto) -> Self {
        Twisted {
            dx,
            dy,
            left,
            right,
            cache: HashMap::new(),
        }
    }

    fn axis_power(&mut self, ax: Axis, p: i64) -> PlaneElement {
        let key = ax.exps(p);
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let base = match ax {
            Axis::X => self.dx.clone(),
            Axis::Y => self.dy.clone(),
        };
        let (vi, vj) = ax.exps(1);
        let val = match p {
            0 => PlaneElement::zero(),
            1 => base,
            -1 => {
                let l = self.left.apply_monomial(vi, vj).inv();
                let r = self.right.apply_monomial(vi, vj).inv();
                base.mul_unit_left(&l).mul_unit_right(&r).neg()
            }
            p if p > 1 => {
                let prev = self.axis_power(ax, p - 1);
                let (pi, pj) = ax.exps(p - 1);
                let l = self.left.apply_monomial(vi, vj);
                let r = self.right.apply_monomial(pi, pj);
                prev.mul_unit_left(&l).add(&base.mul_unit_right(&r))
            }
            p => {
                let prev = self.axis_power(ax, p + 1);
                let dinv = self.axis_power(ax, -1);
                let (pi, pj) = ax.exps(p + 1);
                let l = self.left.apply_monomial(-vi, -vj);
                let r = self.right.apply_monomial(pi, pj);
                prev.mul_unit_left(&l).add(&dinv.mul_unit_right(&r))
            }
        };
        self.cache.insert(key, val.clone());
        val
    }

    /// `D(x^i y^j)`.
    pub(crate) fn monomial(&mut self, i: i64, j: i64) -> PlaneElement {
        if j == 0 {
            return self.axis_power(Axis::X, i);
        }
        if i == 0 {
            return self.axis_power(Axis::Y, j);
        }
        if let Some(v) = self.cache.get(&(i, j)) {
            return v.clone();
        }
        let dxi = self.axis_power(Axis::X, i);
        let dyj = self.axis_power(Axis::Y, j);
        let l = self.left.apply_monomial(i, 0);
        let r = self.right.apply_monomial(0, j);
        let val = dyj.mul_unit_left(&l).add(&dxi.mul_unit_right(&r));
        self.cache.insert((i, j), val.clone());
        val
    }

    pub(crate) fn apply(&mut self, p: &PlaneElement) -> PlaneElement {
        let mut out = PlaneElement::zero();
        for (&(i, j), c) in p.terms() {
            let d = self.monomial(i, j);
            for (&(a, b), v) in d.terms() {
                out.add_term(a, b, v.mul_ref(c));
            }
        }
        out
    }

    /// `D(ab)` computed by the twisted Leibniz rule, without normalizing `ab` first.
    pub(crate) fn leibniz(&mut self, a: &PlaneElement, b: &PlaneElement) -> PlaneElement {
        let la = self.left.apply(a);
        let rb = self.right.apply(b);
        let da = self.apply(a);
        let db = self.apply(b);
        la.mul(&db).add(&da.mul(&rb))
    }
}

/// Evaluator for one [`Action`]; holds the memo tables.
pub struct ActionEval {
    k: Auto,
    kinv: Auto,
    e: Twisted,
    f: Twisted,
}

impl ActionEval {
    pub fn new(act: &Action) -> Self {
        let kinv = act.k.inverse();
        ActionEval {
            e: Twisted::new(act.e_x.clone(), act.e_y.clone(), Auto::identity(), act.k.clone()),
            f: Twisted::new(act.f_x.clone(), act.f_y.clone(), kinv.clone(), Auto::identity()),
            k: act.k.clone(),
            kinv,
        }
    }

    pub fn apply_gen(&mut self, g: Generator, p: &PlaneElement) -> PlaneElement {
        match g {
            Generator::K => self.k.apply(p),
            Generator::Kinv => self.kinv.apply(p),
            Generator::E => self.e.apply(p),
            Generator::F => self.f.apply(p),
        }
    }

    pub fn on_monomial(&mut self, g: Generator, i: i64, j: i64) -> PlaneElement {
        match g {
            Generator::K => self.k.apply_monomial(i, j).to_plane(),
            Generator::Kinv => self.kinv.apply_monomial(i, j).to_plane(),
            Generator::E => self.e.monomial(i, j),
            Generator::F => self.f.monomial(i, j),
        }
    }

    /// `π(g_1 g_2 ... g_n)(p)`; the rightmost letter acts first.
    pub fn apply_word(&mut self, w: &[Generator], p: &PlaneElement) -> PlaneElement {
        w.iter().rev().fold(p.clone(), |acc, &g| self.apply_gen(g, &acc))
    }

    pub fn apply_pbw(&mut self, u: &PBWElement, p: &PlaneElement) -> PlaneElement {
        let mut out = PlaneElement::zero();
        for (key, c) in u.terms() {
            let mut v = p.clone();
            for _ in 0..key.l {
                v = self.e.apply(&v);
            }
            let kk = if key.j >= 0 { &self.k } else { &self.kinv };
            for _ in 0..key.j.unsigned_abs() {
                v = kk.apply(&v);
            }
            for _ in 0..key.i {
                v = self.f.apply(&v);
            }
            out = out.add(&v.scale(c));
        }
        out
    }

    /// `π(g)(ab)` by the coproduct rule, before `ab` is normalized.
    pub fn leibniz(&mut self, g: Generator, a: &PlaneElement, b: &PlaneElement) -> PlaneElement {
        match g {
            Generator::K => self.k.apply(a).mul(&self.k.apply(b)),
            Generator::Kinv => self.kinv.apply(a).mul(&self.kinv.apply(b)),
            Generator::E => self.e.leibniz(a, b),
            Generator::F => self.f.leibniz(a, b),
        }
    }
}
