//! Exact arithmetic in the real field `Q(zeta)`, ordered by the embedding
//! `zeta = 2 cos(2 pi / q)`.
//!
//! An element is `num / den` with `num` in `Z[zeta]` and `den > 0`, reduced
//! by the gcd of all coefficients. Inverses come from the Galois conjugates
//! `zeta -> eta_j`: `a * prod_{j=2}^{s} sigma_j(a)` is the norm, a rational
//! integer. Signs are read off a double-precision evaluation when it is
//! unambiguous and off a rigorous rational approximation otherwise.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::{CycInt, CycRing};
use crate::lp::{FromCyc, LpScalar};

#[derive(Clone)]
pub struct CycReal {
    /// `None` for rationals; then `num` has a single entry.
    ring: Option<Arc<CycRing>>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycReal {
    pub fn rational(value: &BigRational) -> CycReal {
        CycReal::normalized(None, vec![value.numer().clone()], value.denom().clone())
    }

    pub fn integer(value: BigInt) -> CycReal {
        CycReal { ring: None, num: vec![value], den: BigInt::one() }
    }

    pub fn from_cyc_int(a: &CycInt) -> CycReal {
        CycReal::normalized(Some(a.ring().clone()), a.coeffs().to_vec(), BigInt::one())
    }

    fn normalized(ring: Option<Arc<CycRing>>, mut num: Vec<BigInt>, mut den: BigInt) -> CycReal {
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -core::mem::take(c));
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(Zero::is_zero) {
            return CycReal { ring: None, num: vec![BigInt::zero()], den: BigInt::one() };
        }
        if !g.is_one() {
            num.iter_mut().for_each(|c| *c /= &g);
            den /= &g;
        }
        if num[1..].iter().all(Zero::is_zero) {
            num.truncate(1);
            return CycReal { ring: None, num, den };
        }
        CycReal { ring, num, den }
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// `Some(r)` when the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.ring {
            None => Some(BigRational::new(self.num[0].clone(), self.den.clone())),
            Some(_) => None,
        }
    }

    fn lift(&self, ring: &Arc<CycRing>) -> CycInt {
        CycInt::from_coeffs(ring, self.num.clone())
    }

    fn common_ring(&self, other: &CycReal) -> Option<Arc<CycRing>> {
        match (&self.ring, &other.ring) {
            (Some(a), Some(b)) => {
                assert_eq!(a.q(), b.q(), "mixed real fields q = {} and q = {}", a.q(), b.q());
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn combine(&self, other: &CycReal, negate: bool) -> CycReal {
        let den = &self.den * &other.den;
        let (a, b) = (&other.den, &self.den);
        let len = self.num.len().max(other.num.len());
        let num = (0..len)
            .map(|i| {
                let x = self.num.get(i).map_or_else(BigInt::zero, |c| c * a);
                let y = other.num.get(i).map_or_else(BigInt::zero, |c| c * b);
                if negate {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        CycReal::normalized(self.common_ring(other), num, den)
    }

    fn product(&self, other: &CycReal) -> CycReal {
        let den = &self.den * &other.den;
        match self.common_ring(other) {
            None => CycReal::normalized(None, vec![&self.num[0] * &other.num[0]], den),
            Some(ring) => {
                let p = &self.lift(&ring) * &other.lift(&ring);
                CycReal::normalized(Some(ring), p.coeffs().to_vec(), den)
            }
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> CycReal {
        assert!(!self.is_zero(), "division by zero in Q(zeta)");
        let Some(ring) = &self.ring else {
            return CycReal::normalized(None, vec![self.den.clone()], self.num[0].clone());
        };
        let a = self.lift(ring);
        let mut cofactor = CycInt::one(ring);
        for j in 2..=ring.s() as i64 {
            cofactor = &cofactor * &conjugate(&a, j);
        }
        let norm = (&a * &cofactor).as_integer().expect("the norm of a nonzero element is a rational integer");
        let num = cofactor.coeffs().iter().map(|c| c * &self.den).collect();
        CycReal::normalized(Some(ring.clone()), num, norm)
    }

    pub fn to_f64(&self) -> f64 {
        let value = match &self.ring {
            None => self.num[0].to_f64().unwrap_or(f64::NAN),
            Some(ring) => self.lift(ring).to_f64(),
        };
        value / self.den.to_f64().unwrap_or(f64::NAN)
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        if let Some(r) = self.as_rational() {
            return r.floor().to_integer();
        }
        let mut m = BigRational::from_float(libm::floor(self.to_f64()))
            .map(|r| r.to_integer())
            .unwrap_or_else(BigInt::zero);
        while CycReal::integer(m.clone()) > *self {
            m -= 1;
        }
        while CycReal::integer(&m + 1) <= *self {
            m += 1;
        }
        m
    }

    pub fn signum(&self) -> Ordering {
        let Some(ring) = &self.ring else {
            return self.num[0].cmp(&BigInt::zero());
        };
        let a = self.lift(ring);
        let approx = a.to_f64();
        let magnitude: f64 = self
            .num
            .iter()
            .enumerate()
            .map(|(i, c)| c.to_f64().unwrap_or(f64::INFINITY).abs() * libm::pow(2.0, i as f64))
            .sum();
        if approx.is_finite() && approx.abs() > 1e-9 * magnitude {
            return if approx > 0.0 { Ordering::Greater } else { Ordering::Less };
        }
        // nonzero by normalization, so some precision separates it from 0
        let mut digits = 30 + libm::log10(magnitude.max(1.0)) as u32;
        loop {
            let r = a.to_real(digits);
            let tol = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize));
            if Signed::abs(&r) > tol {
                return if r.is_positive() { Ordering::Greater } else { Ordering::Less };
            }
            digits *= 2;
        }
    }
}

/// `sigma_j(a)`: substitutes `eta_j` for `zeta`.
fn conjugate(a: &CycInt, j: i64) -> CycInt {
    let ring = a.ring();
    let eta = CycInt::eta(ring, j);
    let mut acc = CycInt::zero(ring);
    for c in a.coeffs().iter().rev() {
        acc = &(&acc * &eta) + &CycInt::integer(ring, c.clone());
    }
    acc
}

impl PartialEq for CycReal {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den && self.num == other.num
    }
}

impl Eq for CycReal {}

impl PartialOrd for CycReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycReal {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.ring.is_none() && other.ring.is_none() {
            return (&self.num[0] * &other.den).cmp(&(&other.num[0] * &self.den));
        }
        if self == other {
            return Ordering::Equal;
        }
        self.combine(other, true).signum()
    }
}

impl fmt::Debug for CycReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycReal({self})")
    }
}

impl fmt::Display for CycReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.ring {
            None => write!(f, "{}", self.num[0])?,
            Some(ring) => write!(f, "({})", self.lift(ring))?,
        }
        if !self.den.is_one() {
            write!(f, "/{}", self.den)?;
        }
        Ok(())
    }
}

impl Zero for CycReal {
    fn zero() -> Self {
        CycReal::integer(BigInt::zero())
    }

    fn is_zero(&self) -> bool {
        self.ring.is_none() && self.num[0].is_zero()
    }
}

impl One for CycReal {
    fn one() -> Self {
        CycReal::integer(BigInt::one())
    }
}

impl Add for CycReal {
    type Output = CycReal;
    fn add(self, other: CycReal) -> CycReal {
        self.combine(&other, false)
    }
}

impl Sub for CycReal {
    type Output = CycReal;
    fn sub(self, other: CycReal) -> CycReal {
        self.combine(&other, true)
    }
}

impl Mul for CycReal {
    type Output = CycReal;
    fn mul(self, other: CycReal) -> CycReal {
        self.product(&other)
    }
}

impl Div for CycReal {
    type Output = CycReal;
    fn div(self, other: CycReal) -> CycReal {
        self.product(&other.recip())
    }
}

impl Neg for CycReal {
    type Output = CycReal;
    fn neg(mut self) -> CycReal {
        self.num.iter_mut().for_each(|c| *c = -core::mem::take(c));
        self
    }
}

impl AddAssign<&CycReal> for CycReal {
    fn add_assign(&mut self, other: &CycReal) {
        *self = self.combine(other, false);
    }
}

impl SubAssign<&CycReal> for CycReal {
    fn sub_assign(&mut self, other: &CycReal) {
        *self = self.combine(other, true);
    }
}

impl LpScalar for CycReal {
    const EXACT: bool = true;

    fn pivot_tolerance() -> Self {
        CycReal::zero()
    }

    fn from_i64(v: i64) -> Self {
        CycReal::integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        CycReal::integer(v.clone())
    }

    fn from_rational(v: &BigRational) -> Self {
        CycReal::rational(v)
    }

    fn to_f64(&self) -> f64 {
        CycReal::to_f64(self)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.product(other)
    }
}

impl FromCyc for CycReal {
    fn from_cyc(a: &CycInt) -> Self {
        CycReal::from_cyc_int(a)
    }
}
