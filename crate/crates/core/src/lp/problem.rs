use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field for [`LpProblem`]: exact rationals or `f64`.
pub trait LpScalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Zero
    + One
    + core::ops::Neg<Output = Self>
    + core::ops::Sub<Output = Self>
    + core::ops::Div<Output = Self>
    + for<'a> core::ops::AddAssign<&'a Self>
    + for<'a> core::ops::SubAssign<&'a Self>
{
    /// True for exact arithmetic; the solver then never rounds.
    const EXACT: bool;

    /// Magnitudes at or below this count as zero in pivoting.
    fn pivot_tolerance() -> Self;

    fn from_i64(v: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    fn from_rational(v: &BigRational) -> Self;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn mul_ref(&self, other: &Self) -> Self;
}

impl LpScalar for BigRational {
    const EXACT: bool = true;

    fn pivot_tolerance() -> Self {
        BigRational::zero()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn from_rational(v: &BigRational) -> Self {
        v.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl LpScalar for f64 {
    const EXACT: bool = false;

    fn pivot_tolerance() -> Self {
        1e-9
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_bigint(v: &BigInt) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }

    fn from_rational(v: &BigRational) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "=",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

/// `maximize objective . x` subject to the constraints and `x >= 0`.
///
/// Variables pinned to zero are not columns at all: `labels` names the
/// surviving variables (composition or class indices) and `fixed_zero` lists
/// the ones that were removed.
#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem<T> {
    pub objective: Vec<T>,
    pub constraints: Vec<Constraint<T>>,
    pub labels: Vec<usize>,
    pub fixed_zero: Vec<usize>,
}

impl<T: LpScalar> LpProblem<T> {
    pub fn new(objective: Vec<T>) -> Self {
        let labels = (0..objective.len()).collect();
        LpProblem { objective, constraints: Vec::new(), labels, fixed_zero: Vec::new() }
    }

    pub fn with_labels(objective: Vec<T>, labels: Vec<usize>, fixed_zero: Vec<usize>) -> Result<Self> {
        if labels.len() != objective.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} variables",
                labels.len(),
                objective.len()
            )));
        }
        Ok(LpProblem { objective, constraints: Vec::new(), labels, fixed_zero })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// No free variables left: only the zero codeword is admissible.
    pub fn is_trivial(&self) -> bool {
        self.objective.is_empty()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<T>, relation: Relation, rhs: T) -> Result<()> {
        if coeffs.len() != self.num_vars() {
            return Err(Error::DimensionMismatch(format!(
                "constraint with {} coefficients for {} variables",
                coeffs.len(),
                self.num_vars()
            )));
        }
        self.constraints.push(Constraint { coeffs, relation, rhs });
        Ok(())
    }

    pub fn objective_value(&self, x: &[T]) -> T {
        dot(&self.objective, x)
    }

    /// Index of the variable with the given label.
    pub fn column_of(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }
}

pub(crate) fn dot<T: LpScalar>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc += &x.mul_ref(y);
    }
    acc
}

/// Plain-text dump: a header line, the objective, then one row per
/// constraint. Meant for debugging, not as a stable format.
impl<T: LpScalar> fmt::Display for LpProblem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {} rows {}", self.num_vars(), self.constraints.len())?;
        write!(f, "labels")?;
        for l in &self.labels {
            write!(f, " {l}")?;
        }
        writeln!(f)?;
        write!(f, "fixed_zero")?;
        for l in &self.fixed_zero {
            write!(f, " {l}")?;
        }
        writeln!(f)?;
        write!(f, "max")?;
        for c in &self.objective {
            write!(f, " {c}")?;
        }
        writeln!(f)?;
        for row in &self.constraints {
            for c in &row.coeffs {
                write!(f, "{c} ")?;
            }
            writeln!(f, "{} {}", row.relation, row.rhs)?;
        }
        Ok(())
    }
}
