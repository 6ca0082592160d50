//! Bounded-support search for actions with a prescribed `π(k)`.
//!
//! Unknowns are the coefficients of `e_x, e_y, f_x, f_y` on the box
//! `|i|, |j| <= B`. The linear block consists of `ke = q²ek`, `kf = q⁻²fk`
//! on `x`, `y` and the product-rule consistency on `yx = qxy`; its columns
//! are obtained by running the evaluator on one unknown at a time. The
//! remaining relation `ef - fe = (k - k⁻¹)/(q - q⁻¹)` is bilinear and is
//! solved on the kernel of the linear block.
//!
//! An empty result only says that no action has its images supported in the
//! box. It is not a statement about unbounded support.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::actions::{Action, ActionEval, Var, Which};
use crate::autgroup::{Auto, AutError, Sl2};
use crate::qalgebra::PlaneElement;
use crate::scalars::{var_index, Scalar, ScalarError, Unit};
use crate::uqsl2::Generator;
use crate::verifier::verify_module_algebra;

/// Largest number of linear-block rows the solver will eliminate.
pub const ROW_BUDGET: usize = 50_000;
/// Largest order probed by [`finite_order_obstruction`].
pub const ORDER_PROBE: u32 = 24;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("solver budget exceeded: {0}")]
    SolverBudgetExceeded(String),
    #[error("invalid job: {0}")]
    InvalidJob(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Aut(#[from] AutError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportBox {
    pub bound: i64,
}

impl SupportBox {
    pub fn new(bound: i64) -> Result<Self, SearchError> {
        if bound < 1 {
            return Err(SearchError::InvalidJob(format!("box bound must be positive, got {bound}")));
        }
        Ok(SupportBox { bound })
    }

    pub fn points(&self) -> Vec<(i64, i64)> {
        let b = self.bound;
        (-b..=b).flat_map(|i| (-b..=b).map(move |j| (i, j))).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Numeric,
}

/// One unknown coefficient: the `x^i y^j` coefficient of `π(which)(var)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Unknown {
    which: Which,
    var: Var,
    i: i64,
    j: i64,
}

type LinForm = BTreeMap<usize, Scalar>;

/// Incremental reduced row echelon form over the scalar field.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, LinForm)>,
}

impl Echelon {
    fn reduce(&self, mut r: LinForm) -> LinForm {
        for (p, row) in &self.rows {
            if let Some(c) = r.get(p).cloned() {
                for (col, v) in row {
                    let nv = r.get(col).cloned().unwrap_or_else(Scalar::zero).sub_ref(&v.mul_ref(&c));
                    if nv.is_zero() {
                        r.remove(col);
                    } else {
                        r.insert(*col, nv);
                    }
                }
            }
        }
        r
    }

    fn insert(&mut self, r: LinForm) {
        let r = self.reduce(r);
        let Some((&p, lead)) = r.iter().next() else {
            return;
        };
        let inv = lead.inv().expect("pivot is nonzero");
        let r: LinForm = r.iter().map(|(c, v)| (*c, v.mul_ref(&inv))).collect();
        for (_, row) in self.rows.iter_mut() {
            if let Some(c) = row.get(&p).cloned() {
                for (col, v) in &r {
                    let nv = row.get(col).cloned().unwrap_or_else(Scalar::zero).sub_ref(&v.mul_ref(&c));
                    if nv.is_zero() {
                        row.remove(col);
                    } else {
                        row.insert(*col, nv);
                    }
                }
            }
        }
        self.rows.push((p, r));
    }

    fn pivot_row(&self, col: usize) -> Option<&LinForm> {
        self.rows.iter().find(|(p, _)| *p == col).map(|(_, r)| r)
    }

    /// Basis of the null space among columns `0..n`.
    fn kernel(&self, n: usize) -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        for free in 0..n {
            if self.pivot_row(free).is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(); n];
            v[free] = Scalar::one();
            for (p, row) in &self.rows {
                if let Some(c) = row.get(&free) {
                    v[*p] = c.neg_ref();
                }
            }
            out.push(v);
        }
        out
    }

    /// For the augmented system with right-hand side in column `n`: a
    /// particular solution, or `None` when inconsistent.
    fn particular(&self, n: usize) -> Option<Vec<Scalar>> {
        if self.pivot_row(n).is_some() {
            return None;
        }
        let mut v = vec![Scalar::zero(); n];
        for (p, row) in &self.rows {
            if let Some(c) = row.get(&n) {
                v[*p] = c.clone();
            }
        }
        Some(v)
    }
}

fn basis_action(k: &Auto, u: &Unknown) -> Action {
    let mut act = Action::trivial(k.clone());
    *act.image_mut(u.which, u.var) = PlaneElement::xy(u.i, u.j);
    act
}

/// Residuals of the linear relations for one `which` block, keyed by
/// (relation tag, monomial). `with_leibniz` adds the product-rule rows.
fn linear_residuals(act: &Action, which: Which, with_leibniz: bool) -> Vec<((u8, i64, i64), Scalar)> {
    let mut ev = ActionEval::new(act);
    let (g, twist) = match which {
        Which::E => (Generator::E, Scalar::q_pow(2)),
        Which::F => (Generator::F, Scalar::q_pow(-2)),
    };
    let x = PlaneElement::x();
    let y = PlaneElement::y();
    let mut exprs = Vec::new();
    for (tag, v) in [(0u8, &x), (1, &y)] {
        let gv = ev.apply_gen(g, v);
        let lhs = ev.apply_gen(Generator::K, &gv);
        let kv = ev.apply_gen(Generator::K, v);
        let rhs = ev.apply_gen(g, &kv).scale(&twist);
        exprs.push((tag, lhs.sub(&rhs)));
    }
    if with_leibniz {
        let r = ev.leibniz(g, &y, &x).sub(&ev.leibniz(g, &x, &y).scale(&Scalar::q()));
        exprs.push((2, r));
    }
    let mut out = Vec::new();
    for (tag, e) in exprs {
        for (&(i, j), c) in e.terms() {
            out.push(((tag, i, j), c.clone()));
        }
    }
    out
}

type RowKey = (u8, i64, i64);

/// Columns of the linear block for the given unknowns, assembled into rows.
fn linear_block(k: &Auto, unknowns: &[Unknown], which: Which, with_leibniz: bool) -> BTreeMap<(u8, i64, i64), LinForm> {
    let cols: Vec<Vec<(RowKey, Scalar)>> = unknowns
        .par_iter()
        .map(|u| linear_residuals(&basis_action(k, u), which, with_leibniz))
        .collect();
    let mut rows: BTreeMap<(u8, i64, i64), LinForm> = BTreeMap::new();
    for (c, col) in cols.into_iter().enumerate() {
        for (key, v) in col {
            rows.entry(key).or_default().insert(c, v);
        }
    }
    rows
}

fn all_unknowns(which: Which, bx: &SupportBox) -> Vec<Unknown> {
    let mut v = Vec::new();
    for var in [Var::X, Var::Y] {
        for (i, j) in bx.points() {
            v.push(Unknown { which, var, i, j });
        }
    }
    v
}

/// Unknowns of one block that are not forced to vanish by the `k`-twisted
/// weight equations alone.
fn admissible(k: &Auto, which: Which, bx: &SupportBox) -> Result<Vec<Unknown>, SearchError> {
    let unknowns = all_unknowns(which, bx);
    let rows = linear_block(k, &unknowns, which, false);
    if rows.len() > ROW_BUDGET {
        return Err(SearchError::SolverBudgetExceeded(format!("{} rows", rows.len())));
    }
    let mut ech = Echelon::default();
    for (_, r) in rows {
        ech.insert(r);
    }
    let ker = ech.kernel(unknowns.len());
    Ok(unknowns
        .into_iter()
        .enumerate()
        .filter(|(c, _)| ker.iter().any(|v| !v[*c].is_zero()))
        .map(|(_, u)| u)
        .collect())
}

/// Per-image supports compatible with the twisted weight equations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Supports {
    pub e_x: Vec<(i64, i64)>,
    pub e_y: Vec<(i64, i64)>,
    pub f_x: Vec<(i64, i64)>,
    pub f_y: Vec<(i64, i64)>,
}

pub fn admissible_support(k: &Auto, bx: &SupportBox) -> Result<Supports, SearchError> {
    let e = admissible(k, Which::E, bx)?;
    let f = admissible(k, Which::F, bx)?;
    let pick = |us: &[Unknown], var: Var| us.iter().filter(|u| u.var == var).map(|u| (u.i, u.j)).collect();
    Ok(Supports {
        e_x: pick(&e, Var::X),
        e_y: pick(&e, Var::Y),
        f_x: pick(&f, Var::X),
        f_y: pick(&f, Var::Y),
    })
}

/// Kernel of the full linear block for one `which`, as actions carrying only
/// that block's images.
fn linear_kernel(k: &Auto, which: Which, bx: &SupportBox, prune: bool) -> Result<Vec<Action>, SearchError> {
    let unknowns = if prune { admissible(k, which, bx)? } else { all_unknowns(which, bx) };
    if unknowns.is_empty() {
        return Ok(Vec::new());
    }
    let rows = linear_block(k, &unknowns, which, true);
    if rows.len() > ROW_BUDGET {
        return Err(SearchError::SolverBudgetExceeded(format!("{} rows", rows.len())));
    }
    let mut ech = Echelon::default();
    for (_, r) in rows {
        ech.insert(r);
    }
    Ok(ech
        .kernel(unknowns.len())
        .into_iter()
        .map(|v| {
            let mut act = Action::trivial(k.clone());
            for (u, c) in unknowns.iter().zip(v) {
                act.image_mut(u.which, u.var).add_term(u.i, u.j, c);
            }
            act
        })
        .collect())
}

fn combine(k: &Auto, e: Option<&Action>, f: Option<&Action>) -> Action {
    let mut act = Action::trivial(k.clone());
    if let Some(e) = e {
        act.e_x = e.e_x.clone();
        act.e_y = e.e_y.clone();
    }
    if let Some(f) = f {
        act.f_x = f.f_x.clone();
        act.f_y = f.f_y.clone();
    }
    act
}

/// `(ef - fe)(v)` for `v = x, y`, concatenated as (tag, monomial) → scalar.
fn effe_residual(act: &Action) -> BTreeMap<(u8, i64, i64), Scalar> {
    let mut ev = ActionEval::new(act);
    let mut out = BTreeMap::new();
    for (tag, v) in [(0u8, PlaneElement::x()), (1, PlaneElement::y())] {
        let r = ev
            .apply_word(&[Generator::E, Generator::F], &v)
            .sub(&ev.apply_word(&[Generator::F, Generator::E], &v));
        for (&(i, j), c) in r.terms() {
            out.insert((tag, i, j), c.clone());
        }
    }
    out
}

fn effe_target(k: &Auto) -> BTreeMap<(u8, i64, i64), Scalar> {
    let kinv = k.inverse();
    let scale = Scalar::q().sub_ref(&Scalar::q_pow(-1)).inv().expect("q - 1/q is nonzero");
    let mut out = BTreeMap::new();
    for (tag, v) in [(0u8, PlaneElement::x()), (1, PlaneElement::y())] {
        let r = k.apply(&v).sub(&kinv.apply(&v)).scale(&scale);
        for (&(i, j), c) in r.terms() {
            out.insert((tag, i, j), c.clone());
        }
    }
    out
}

fn param(n: usize) -> Result<Scalar, SearchError> {
    let name = format!("s{n}");
    var_index(&name)?;
    Ok(Scalar::var(&name)?)
}

fn scaled(act: &Action, s: &Scalar) -> Action {
    let mut a = act.clone();
    for w in [Which::E, Which::F] {
        for v in [Var::X, Var::Y] {
            let img = a.image(w, v).scale(s);
            *a.image_mut(w, v) = img;
        }
    }
    a
}

fn sum_actions(k: &Auto, parts: &[Action]) -> Action {
    let mut acc = Action::trivial(k.clone());
    for p in parts {
        acc.e_x = acc.e_x.add(&p.e_x);
        acc.e_y = acc.e_y.add(&p.e_y);
        acc.f_x = acc.f_x.add(&p.f_x);
        acc.f_y = acc.f_y.add(&p.f_y);
    }
    acc
}

/// All actions with the given `π(k)` whose images lie in the box. Free
/// parameters of a family appear as indeterminates `s1, s2, ...`.
pub fn solve(k: &Auto, bx: &SupportBox) -> Result<Vec<Action>, SearchError> {
    solve_with(k, bx, true)
}

/// [`solve`] with weight pruning switchable, for cross-checking.
pub fn solve_with(k: &Auto, bx: &SupportBox, prune: bool) -> Result<Vec<Action>, SearchError> {
    let ek = linear_kernel(k, Which::E, bx, prune)?;
    let fk = linear_kernel(k, Which::F, bx, prune)?;
    let target = effe_target(k);
    let mut sols = Vec::new();
    let zero_branch = |free: &[Action], sols: &mut Vec<Action>| -> Result<(), SearchError> {
        // one side vanishes: the relation forces k = k⁻¹ and leaves the other side free
        if target.is_empty() {
            let parts = free
                .iter()
                .enumerate()
                .map(|(n, a)| Ok(scaled(a, &param(n + 1)?)))
                .collect::<Result<Vec<_>, SearchError>>()?;
            sols.push(sum_actions(k, &parts));
        }
        Ok(())
    };
    match (ek.len(), fk.len()) {
        (0, _) => zero_branch(&fk, &mut sols)?,
        (_, 0) => zero_branch(&ek, &mut sols)?,
        (de, df) if de == 1 || df == 1 => {
            let (scale_side, other, scale_is_e) = if de == 1 { (&ek[0], &fk, true) } else { (&fk[0], &ek, false) };
            // s * Σ t_j M_j = target with M_j the bilinear residual of (scale_side, other_j)
            let cols: Vec<BTreeMap<(u8, i64, i64), Scalar>> = other
                .par_iter()
                .map(|o| {
                    let act = if scale_is_e { combine(k, Some(scale_side), Some(o)) } else { combine(k, Some(o), Some(scale_side)) };
                    effe_residual(&act)
                })
                .collect();
            let n = cols.len();
            let mut rows: BTreeMap<(u8, i64, i64), LinForm> = BTreeMap::new();
            for (c, col) in cols.iter().enumerate() {
                for (key, v) in col {
                    rows.entry(*key).or_default().insert(c, v.clone());
                }
            }
            for (key, v) in &target {
                rows.entry(*key).or_default().insert(n, v.clone());
            }
            let mut ech = Echelon::default();
            for (_, r) in rows {
                ech.insert(r);
            }
            if let Some(t0) = ech.particular(n) {
                // s ≠ 0: t = t0 / s + kernel combinations
                let s = param(1)?;
                let sinv = s.inv()?;
                let mut parts = vec![scaled(scale_side, &s)];
                for (o, c) in other.iter().zip(&t0) {
                    parts.push(scaled(o, &c.mul_ref(&sinv)));
                }
                for (m, kv) in ech.kernel(n).into_iter().enumerate() {
                    let mu = param(m + 2)?;
                    for (o, c) in other.iter().zip(&kv) {
                        parts.push(scaled(o, &c.mul_ref(&mu)));
                    }
                }
                sols.push(sum_actions(k, &parts));
            }
            // s = 0
            zero_branch(other, &mut sols)?;
        }
        (de, df) => {
            return Err(SearchError::SolverBudgetExceeded(format!(
                "bilinear block with kernel dimensions ({de}, {df}) needs general elimination"
            )));
        }
    }
    let mut out = Vec::new();
    for mut s in sols {
        s.params.insert("family".into(), "search".into());
        s.params.insert("box".into(), bx.bound.to_string());
        debug_assert!(verify_module_algebra(&s, bx.bound).pass);
        out.push(s);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Obstruction {
    /// `π(k)` has finite order `d > 2`, which forces `e = f = 0` and then
    /// contradicts `ef - fe = (k - k⁻¹)/(q - q⁻¹)`.
    NoSymmetryPossible { order: u32 },
    Inconclusive { order: Option<u32> },
}

pub fn finite_order_obstruction(k: &Auto) -> Obstruction {
    match k.order(ORDER_PROBE) {
        Some(d) if d > 2 => Obstruction::NoSymmetryPossible { order: d },
        o => Obstruction::Inconclusive { order: o },
    }
}

/// Random weight constants in `[1/3, 3]`, reproducible from `seed`, avoiding
/// `±1` and multiplicatively dependent pairs.
pub fn numeric_units(seed: u64) -> (Unit, Unit) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| loop {
        let d: i64 = rng.gen_range(1..=12);
        let n: i64 = rng.gen_range((d + 2) / 3..=3 * d);
        let u = Unit::from_rational(num_rational::BigRational::new(n.into(), d.into())).expect("nonzero");
        if !u.is_root_of_unity() {
            return u;
        }
    };
    loop {
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        if !a.multiplicatively_dependent(&b) {
            return (a, b);
        }
    }
}

/// A search job as read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Job {
    pub sigma: [[i64; 2]; 2],
    #[serde(default = "one_unit")]
    pub alpha: Unit,
    #[serde(default = "one_unit")]
    pub beta: Unit,
    #[serde(rename = "B")]
    pub bound: i64,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub seed: u64,
}

fn one_unit() -> Unit {
    Unit::one()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobResult {
    pub job: Job,
    pub k: Auto,
    pub solutions: Vec<Action>,
}

impl Job {
    /// `π(k)` for the job; numeric mode replaces the units by seeded draws.
    pub fn k_auto(&self) -> Result<Auto, SearchError> {
        let sigma = Sl2::from_rows(self.sigma)?;
        Ok(match self.mode {
            Mode::Exact => Auto::new(sigma, self.alpha.clone(), self.beta.clone()),
            Mode::Numeric => {
                let (a, b) = numeric_units(self.seed);
                Auto::new(sigma, a, b)
            }
        })
    }

    pub fn run(&self) -> Result<JobResult, SearchError> {
        let k = self.k_auto()?;
        let solutions = solve(&k, &SupportBox::new(self.bound)?)?;
        Ok(JobResult {
            job: self.clone(),
            k,
            solutions,
        })
    }
}

/// Runs independent jobs in parallel; results keep the input order.
pub fn run_batch(jobs: &[Job]) -> Vec<Result<JobResult, SearchError>> {
    jobs.par_iter().map(Job::run).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::un;

    #[test]
    fn weight_support() {
        let k = Auto::units(un("q^2"), un("t"));
        let s = admissible_support(&k, &SupportBox::new(3).unwrap()).unwrap();
        assert_eq!(s.e_x, vec![(2, 0)]);
        assert_eq!(s.e_y, vec![(1, 1)]);
        assert_eq!(s.f_x, vec![(0, 0)]);
        assert_eq!(s.f_y, vec![(-1, 1)]);
    }

    #[test]
    fn jordan_support_on_axis() {
        let (a, b) = numeric_units(1);
        let k = Auto::new(Sl2::new(1, 1, 0, 1).unwrap(), a, b);
        let s = admissible_support(&k, &SupportBox::new(3).unwrap()).unwrap();
        assert!(s.e_x.iter().all(|&(_, j)| j == 0), "{:?}", s.e_x);
    }

    #[test]
    fn finds_generic_family() {
        let k = Auto::units(un("q^2"), un("t"));
        let sols = solve(&k, &SupportBox::new(3).unwrap()).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(verify_module_algebra(&sols[0], 3).pass);
    }

    #[test]
    fn obstruction() {
        let rot = Auto::matrix(Sl2::new(0, -1, 1, 0).unwrap());
        assert_eq!(finite_order_obstruction(&rot), Obstruction::NoSymmetryPossible { order: 4 });
        let mi = Auto::matrix(Sl2::MINUS_IDENTITY);
        assert_eq!(finite_order_obstruction(&mi), Obstruction::Inconclusive { order: Some(2) });
        let w = Auto::units(un("q^2"), un("t"));
        assert_eq!(finite_order_obstruction(&w), Obstruction::Inconclusive { order: None });
    }

    #[test]
    fn numeric_draws_are_seeded() {
        assert_eq!(numeric_units(7), numeric_units(7));
        assert_ne!(numeric_units(7), numeric_units(8));
    }
}
