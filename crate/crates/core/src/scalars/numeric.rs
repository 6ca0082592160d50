use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::poly::Poly;
use super::scalar::Scalar;
use super::vars::{var_index, var_name, MAX_VARS};
use super::ScalarError;

pub const DEFAULT_NUMERIC_Q: (i64, i64) = (7, 5);
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_ROOT_GUARD_BOUND: u32 = 64;

/// A complex value for each indeterminate, used to evaluate scalars.
#[derive(Clone, Debug)]
pub struct Assignment {
    values: [Option<Complex64>; MAX_VARS],
    /// Orders checked by the root-of-unity guard when `|q| = 1`.
    pub root_guard_bound: u32,
    /// Relative magnitude below which a denominator counts as zero.
    pub denominator_epsilon: f64,
}

impl Assignment {
    /// Assignment with `q` set; fails if `q` is (numerically) a root of unity.
    pub fn new(q: Complex64) -> Result<Assignment, ScalarError> {
        let a = Assignment {
            values: [None; MAX_VARS],
            root_guard_bound: DEFAULT_ROOT_GUARD_BOUND,
            denominator_epsilon: 1e-12,
        }
        .set_index(0, q);
        a.check_q()?;
        Ok(a)
    }

    pub fn default_q() -> Assignment {
        let (n, d) = DEFAULT_NUMERIC_Q;
        Assignment::new(Complex64::new(n as f64 / d as f64, 0.0)).expect("7/5 is not a root of unity")
    }

    pub fn with_bound(mut self, bound: u32) -> Result<Assignment, ScalarError> {
        self.root_guard_bound = bound;
        self.check_q()?;
        Ok(self)
    }

    pub fn set(self, name: &str, v: Complex64) -> Result<Assignment, ScalarError> {
        let i = var_index(name)?;
        let a = self.set_index(i, v);
        if i == 0 {
            a.check_q()?;
        }
        Ok(a)
    }

    fn set_index(mut self, i: usize, v: Complex64) -> Assignment {
        self.values[i] = Some(v);
        self
    }

    pub fn q(&self) -> Complex64 {
        self.values[0].expect("q is always assigned")
    }

    fn check_q(&self) -> Result<(), ScalarError> {
        let q = self.q();
        if q.norm() == 0.0 {
            return Err(ScalarError::RootOfUnityQ(q.to_string()));
        }
        if (q.norm() - 1.0).abs() > 1e-12 {
            return Ok(());
        }
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..self.root_guard_bound {
            p *= q;
            if (p - 1.0).norm() < 1e-9 {
                return Err(ScalarError::RootOfUnityQ(q.to_string()));
            }
        }
        Ok(())
    }

    fn eval_poly(&self, p: &Poly) -> Result<(Complex64, f64), ScalarError> {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for (m, c) in p.terms() {
            let mut t = Complex64::new(rat_to_f64(c), 0.0);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = self.values[i].ok_or_else(|| ScalarError::UnassignedIndeterminate(var_name(i)))?;
                t *= v.powu(e as u32);
            }
            scale += t.norm();
            sum += t;
        }
        Ok((sum, scale))
    }

    pub fn eval(&self, s: &Scalar) -> Result<Complex64, ScalarError> {
        let (n, _) = self.eval_poly(s.numerator())?;
        let (d, scale) = self.eval_poly(s.denominator())?;
        if d.norm() <= self.denominator_epsilon * scale.max(1.0) {
            return Err(ScalarError::NumericDenominatorVanishes(s.to_string()));
        }
        Ok(n / d)
    }
}

fn rat_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

/// Evaluates `s` at `point`.
pub fn eval_numeric(s: &Scalar, point: &Assignment) -> Result<Complex64, ScalarError> {
    point.eval(s)
}

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn approx_eq(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
}
