//! Exact arithmetic in `Z[zeta]`, `zeta = xi + 1/xi = 2 cos(2 pi / q)` for an
//! odd prime `q`, in the power basis `1, zeta, ..., zeta^(s-1)`.
//!
//! The reduction rule for `zeta^s` is derived from `1 + xi + ... + xi^(q-1) = 0`
//! regrouped as `1 + sum_{m=1}^{s} eta_m = 0`, where `eta_m = xi^m + xi^-m` is
//! an integer polynomial in `zeta` given by `eta_0 = 2`, `eta_1 = zeta`,
//! `eta_{m+1} = zeta eta_m - eta_{m-1}`.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lee::{check_odd_prime, half};

/// `zeta^s = sum_i reduction[i] zeta^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalRelation {
    pub q: u32,
    pub reduction: Vec<BigInt>,
}

impl MinimalRelation {
    /// Coefficients of the monic polynomial `x^s - sum reduction[i] x^i`,
    /// lowest degree first.
    pub fn polynomial(&self) -> Vec<BigInt> {
        let mut p: Vec<BigInt> = self.reduction.iter().map(|c| -c).collect();
        p.push(BigInt::one());
        p
    }
}

/// `eta_0, ..., eta_s` as unreduced integer polynomials in `zeta`.
fn eta_polynomials(s: usize) -> Vec<Vec<BigInt>> {
    let mut etas: Vec<Vec<BigInt>> = Vec::with_capacity(s + 1);
    etas.push(vec![BigInt::from(2)]);
    if s >= 1 {
        etas.push(vec![BigInt::zero(), BigInt::one()]);
    }
    for m in 1..s {
        let mut next = vec![BigInt::zero(); m + 2];
        for (i, c) in etas[m].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in etas[m - 1].iter().enumerate() {
            next[i] -= c;
        }
        etas.push(next);
    }
    etas
}

pub fn minimal_relation(q: u32) -> Result<MinimalRelation> {
    check_odd_prime(q)?;
    let s = half(q);
    let etas = eta_polynomials(s);
    // 1 + eta_1 + ... + eta_s = 0, and eta_s is monic of degree s
    let mut sum = vec![BigInt::zero(); s + 1];
    sum[0] += 1;
    for eta in &etas[1..] {
        for (i, c) in eta.iter().enumerate() {
            sum[i] += c;
        }
    }
    debug_assert!(sum[s].is_one());
    let reduction = sum[..s].iter().map(|c| -c).collect();
    Ok(MinimalRelation { q, reduction })
}

/// Arithmetic context for one modulus `q`.
#[derive(Debug)]
pub struct CycRing {
    q: u32,
    s: usize,
    relation: MinimalRelation,
    etas: Vec<Vec<BigInt>>,
    zeta: f64,
    zeta_powers: Vec<f64>,
}

impl CycRing {
    pub fn new(q: u32) -> Result<Arc<CycRing>> {
        let relation = minimal_relation(q)?;
        let s = half(q);
        let zeta = 2.0 * libm::cos(2.0 * core::f64::consts::PI / q as f64);
        let zeta_powers = (0..s).scan(1.0, |p, _| {
            let cur = *p;
            *p *= zeta;
            Some(cur)
        });
        let mut ring = CycRing {
            q,
            s,
            relation,
            etas: Vec::new(),
            zeta,
            zeta_powers: zeta_powers.collect(),
        };
        ring.etas = eta_polynomials(s).into_iter().map(|p| ring.reduce(p)).collect();
        Ok(Arc::new(ring))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Dimension of the power basis, `s = (q - 1) / 2`.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn relation(&self) -> &MinimalRelation {
        &self.relation
    }

    /// `2 cos(2 pi / q)` in double precision.
    pub fn zeta_f64(&self) -> f64 {
        self.zeta
    }

    /// Reduces an integer polynomial in `zeta` of any degree to the basis.
    fn reduce(&self, mut poly: Vec<BigInt>) -> Vec<BigInt> {
        let s = self.s;
        while poly.len() > s {
            let top = poly.pop().expect("non-empty");
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - s;
            for (i, c) in self.relation.reduction.iter().enumerate() {
                poly[shift + i] += &top * c;
            }
        }
        poly.resize(s, BigInt::zero());
        poly
    }

    /// `eta_m = xi^m + xi^-m` for any integer `m`.
    pub fn eta_coeffs(&self, m: i64) -> &[BigInt] {
        let q = self.q as i64;
        let r = m.rem_euclid(q);
        let folded = r.min(q - r) as usize;
        &self.etas[folded]
    }
}

pub fn ring(q: u32) -> Result<Arc<CycRing>> {
    CycRing::new(q)
}

/// An element `sum a_i zeta^i` of `Z[zeta]`.
#[derive(Clone)]
pub struct CycInt {
    ring: Arc<CycRing>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.ring.q == other.ring.q && self.coeffs == other.coeffs
    }
}

impl Eq for CycInt {}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[q={}]{:?}", self.ring.q, self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = match c.sign() {
                Sign::Minus => ("-", -c),
                _ => ("+", c.clone()),
            };
            if wrote {
                write!(f, " {sign} ")?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}z^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl CycInt {
    /// Builds an element from power-basis coefficients. Shorter vectors are
    /// zero-padded; longer ones are reduced.
    pub fn from_coeffs(ring: &Arc<CycRing>, coeffs: Vec<BigInt>) -> CycInt {
        CycInt { ring: ring.clone(), coeffs: ring.reduce(coeffs) }
    }

    pub fn from_i64s(ring: &Arc<CycRing>, coeffs: &[i64]) -> CycInt {
        CycInt::from_coeffs(ring, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(ring: &Arc<CycRing>) -> CycInt {
        CycInt { ring: ring.clone(), coeffs: vec![BigInt::zero(); ring.s] }
    }

    pub fn one(ring: &Arc<CycRing>) -> CycInt {
        CycInt::integer(ring, BigInt::one())
    }

    pub fn integer(ring: &Arc<CycRing>, value: BigInt) -> CycInt {
        let mut coeffs = vec![BigInt::zero(); ring.s];
        coeffs[0] = value;
        CycInt { ring: ring.clone(), coeffs }
    }

    /// `zeta` itself (equal to `-1` when `q = 3`).
    pub fn zeta(ring: &Arc<CycRing>) -> CycInt {
        CycInt::from_coeffs(ring, vec![BigInt::zero(), BigInt::one()])
    }

    pub fn eta(ring: &Arc<CycRing>, m: i64) -> CycInt {
        CycInt { ring: ring.clone(), coeffs: ring.eta_coeffs(m).to_vec() }
    }

    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn q(&self) -> u32 {
        self.ring.q
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(a_0)` when the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_ring(&self, other: &CycInt) -> Result<()> {
        if self.ring.q != other.ring.q {
            return Err(Error::RingMismatch { left: self.ring.q, right: other.ring.q });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CycInt) -> Result<CycInt> {
        self.check_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { ring: self.ring.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.check_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { ring: self.ring.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check_ring(other)?;
        Ok(CycInt { ring: self.ring.clone(), coeffs: self.mul_coeffs(&other.coeffs) })
    }

    fn mul_coeffs(&self, other: &[BigInt]) -> Vec<BigInt> {
        let s = self.ring.s;
        let mut prod = vec![BigInt::zero(); 2 * s - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.ring.reduce(prod)
    }

    pub(crate) fn add_assign_ref(&mut self, other: &CycInt) {
        for (acc, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *acc += b;
        }
    }

    /// `self += eta_m * other`, the inner step of the Lee-number recursion.
    pub(crate) fn add_eta_multiple(&mut self, m: i64, other: &CycInt) {
        let eta = self.ring.eta_coeffs(m);
        let s = self.ring.s;
        if eta[1..].iter().all(Zero::is_zero) {
            let c = &eta[0];
            for (acc, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
                *acc += c * b;
            }
            return;
        }
        let mut prod = vec![BigInt::zero(); 2 * s - 1];
        for (i, a) in eta.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        for (acc, p) in self.coeffs.iter_mut().zip(self.ring.reduce(prod)) {
            *acc += p;
        }
    }

    pub fn scale(&self, c: &BigInt) -> CycInt {
        CycInt { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Double-precision value with `zeta = 2 cos(2 pi / q)`.
    pub fn to_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .zip(&self.ring.zeta_powers)
            .map(|(c, p)| c.to_f64().unwrap_or(f64::NAN) * p)
            .sum()
    }

    /// A rational within `10^-digits` of the real value.
    ///
    /// `zeta` is isolated as the largest root of the relation polynomial by
    /// exact bisection, so the error bound is rigorous.
    pub fn to_real(&self, digits: u32) -> BigRational {
        let ten = BigInt::from(10);
        let tolerance = BigRational::new(BigInt::one(), num_traits::pow(ten, digits as usize));
        let value = |x: &BigRational| -> BigRational {
            self.coeffs
                .iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
        };
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            return BigRational::from_integer(self.coeffs[0].clone());
        }
        // |p(x) - p(zeta)| <= |x - zeta| * sum_i i |a_i| 2^(i-1) for |x|, |zeta| <= 2
        let lipschitz: BigInt = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.abs() * BigInt::from(i) * (BigInt::one() << (i - 1)))
            .sum();
        let width = tolerance / BigRational::from_integer(lipschitz + 1);
        let (lo, hi) = self.ring.zeta_bracket(&width);
        value(&((lo + hi) / BigRational::from_integer(BigInt::from(2))))
    }
}

impl CycRing {
    /// A rational interval of length at most `width` containing `zeta`.
    fn zeta_bracket(&self, width: &BigRational) -> (BigRational, BigRational) {
        let poly: Vec<BigRational> =
            self.relation.polynomial().into_iter().map(BigRational::from_integer).collect();
        let eval = |x: &BigRational| -> BigRational {
            poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
        };
        let rat = |x: f64| BigRational::from_float(x).expect("finite");
        let mut lo = rat(self.zeta - 1e-9);
        let mut hi = rat(self.zeta + 1e-9);
        let mut lo_sign = eval(&lo).signum();
        assert!(
            lo_sign != eval(&hi).signum(),
            "double-precision estimate of zeta does not bracket the root for q = {}",
            self.q
        );
        let two = BigRational::from_integer(BigInt::from(2));
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / &two;
            let sign = eval(&mid).signum();
            if sign.is_zero() {
                return (mid.clone(), mid);
            }
            if sign == lo_sign {
                lo = mid;
                lo_sign = sign;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }
}

pub fn eta(m: i64, q: u32) -> Result<CycInt> {
    Ok(CycInt::eta(&CycRing::new(q)?, m))
}

pub fn cyc_mul(a: &CycInt, b: &CycInt) -> Result<CycInt> {
    a.try_mul(b)
}

pub fn cyc_to_real(a: &CycInt, digits: u32) -> BigRational {
    a.to_real(digits)
}

pub fn as_integer(a: &CycInt) -> Option<BigInt> {
    a.as_integer()
}

fn mismatch(a: &CycInt, b: &CycInt) -> ! {
    panic!("{}", format!("mixed cyclotomic contexts q = {} and q = {}", a.q(), b.q()))
}

impl<'a> Add<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn add(self, rhs: &'a CycInt) -> CycInt {
        self.try_add(rhs).unwrap_or_else(|_| mismatch(self, rhs))
    }
}

impl<'a> Sub<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &'a CycInt) -> CycInt {
        self.try_sub(rhs).unwrap_or_else(|_| mismatch(self, rhs))
    }
}

impl<'a> Mul<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &'a CycInt) -> CycInt {
        self.try_mul(rhs).unwrap_or_else(|_| mismatch(self, rhs))
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn printed_relations() {
        assert_eq!(minimal_relation(5).unwrap().reduction, ints(&[1, -1]));
        assert_eq!(minimal_relation(7).unwrap().reduction, ints(&[1, 2, -1]));
        assert_eq!(minimal_relation(3).unwrap().reduction, ints(&[-1]));
        assert_eq!(minimal_relation(9), Err(Error::UnsupportedModulus(9)));
        assert_eq!(minimal_relation(2), Err(Error::UnsupportedModulus(2)));
    }

    #[test]
    fn printed_etas() {
        assert_eq!(eta(2, 5).unwrap().coeffs(), ints(&[-1, -1]));
        assert_eq!(eta(2, 7).unwrap().coeffs(), ints(&[-2, 0, 1]));
        assert_eq!(eta(3, 7).unwrap().coeffs(), ints(&[1, -1, -1]));
        assert_eq!(eta(0, 11).unwrap().as_integer(), Some(BigInt::from(2)));
        // folding: eta_{-m} = eta_m = eta_{q-m}
        assert_eq!(eta(-2, 7).unwrap(), eta(5, 7).unwrap());
        assert_eq!(eta(9, 7).unwrap(), eta(2, 7).unwrap());
    }

    #[test]
    fn printed_product_rules() {
        let r5 = CycRing::new(5).unwrap();
        let z = CycInt::zeta(&r5);
        assert_eq!((&z * &z).coeffs(), ints(&[1, -1]));

        let a = CycInt::from_i64s(&r5, &[3, -2]);
        assert_eq!(&a * &CycInt::one(&r5), a);

        let r7 = CycRing::new(7).unwrap();
        let x = CycInt::zeta(&r7);
        assert_eq!((&(&x * &x) * &x).coeffs(), ints(&[1, 2, -1]));
    }

    #[test]
    fn mismatched_rings() {
        let a = CycInt::one(&CycRing::new(5).unwrap());
        let b = CycInt::one(&CycRing::new(7).unwrap());
        assert_eq!(a.try_mul(&b), Err(Error::RingMismatch { left: 5, right: 7 }));
    }

    #[test]
    fn real_values() {
        let r5 = CycRing::new(5).unwrap();
        let z = CycInt::zeta(&r5);
        assert!((z.to_f64() - 0.618_033_988_749_894_8).abs() < 1e-15);
        let approx = z.to_real(30);
        let golden = BigRational::new(
            BigInt::parse_bytes(b"618033988749894848204586834365638", 10).unwrap(),
            num_traits::pow(BigInt::from(10), 33),
        );
        assert!((approx - golden).abs() < BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 30)));

        let r7 = CycRing::new(7).unwrap();
        assert!((CycInt::zeta(&r7).to_f64() - 1.246_979_603_717_467).abs() < 1e-15);
        let five = CycInt::integer(&r7, BigInt::from(5));
        assert_eq!(five.to_real(20), BigRational::from_integer(BigInt::from(5)));
        assert_eq!(five.to_f64(), 5.0);
    }

    #[test]
    fn integrality() {
        let r7 = CycRing::new(7).unwrap();
        assert_eq!(CycInt::from_i64s(&r7, &[5, 0, 0]).as_integer(), Some(BigInt::from(5)));
        assert_eq!(CycInt::zeta(&CycRing::new(5).unwrap()).as_integer(), None);
    }

    #[test]
    fn relation_vanishes_at_zeta() {
        for &q in &[3u32, 5, 7, 11, 13, 17, 19] {
            let ring = CycRing::new(q).unwrap();
            let z = 2.0 * (2.0 * core::f64::consts::PI / q as f64).cos();
            let value: f64 = ring
                .relation()
                .polynomial()
                .iter()
                .enumerate()
                .map(|(i, c)| c.to_f64().unwrap() * z.powi(i as i32))
                .sum();
            assert!(value.abs() < 1e-12, "q={q}: {value}");
        }
    }

    #[test]
    fn eta_product_law() {
        for &q in &[5u32, 7, 11] {
            let ring = CycRing::new(q).unwrap();
            let s = ring.s() as i64;
            for m in 0..=s {
                for k in 0..=s {
                    let lhs = &CycInt::eta(&ring, m) * &CycInt::eta(&ring, k);
                    let rhs = &CycInt::eta(&ring, m + k) + &CycInt::eta(&ring, m - k);
                    assert_eq!(lhs, rhs, "q={q} m={m} k={k}");
                }
            }
        }
    }

    /// The hand-derived closed forms for q = 5 and q = 7.
    fn rule5(a: &[i64], b: &[i64]) -> [i64; 2] {
        let (a0, a1, c, d) = (a[0], a[1], b[0], b[1]);
        [a0 * c + a1 * d, a0 * d + a1 * c - a1 * d]
    }

    fn rule7(x: &[i64], y: &[i64]) -> [i64; 3] {
        let (a, b, c, d, e, f) = (x[0], x[1], x[2], y[0], y[1], y[2]);
        [
            a * d + b * f + c * e - c * f,
            a * e + b * d + 2 * c * e + 2 * b * f - c * f,
            a * f + b * e + c * d - b * f - c * e + 3 * c * f,
        ]
    }

    fn element(q: u32) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-50i64..50, (q as usize - 1) / 2)
    }

    fn triple() -> impl Strategy<Value = (u32, Vec<i64>, Vec<i64>, Vec<i64>)> {
        prop::sample::select(vec![3u32, 5, 7, 11, 13])
            .prop_flat_map(|q| (Just(q), element(q), element(q), element(q)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn q5_rule(a in element(5), b in element(5)) {
            let ring = CycRing::new(5).unwrap();
            let p = &CycInt::from_i64s(&ring, &a) * &CycInt::from_i64s(&ring, &b);
            prop_assert_eq!(p.coeffs(), ints(&rule5(&a, &b)));
        }

        #[test]
        fn q7_rule(a in element(7), b in element(7)) {
            let ring = CycRing::new(7).unwrap();
            let p = &CycInt::from_i64s(&ring, &a) * &CycInt::from_i64s(&ring, &b);
            prop_assert_eq!(p.coeffs(), ints(&rule7(&a, &b)));
        }
    }

    proptest! {
        #[test]
        fn ring_axioms((q, a, b, c) in triple()) {
            let ring = CycRing::new(q).unwrap();
            let (a, b, c) = (
                CycInt::from_i64s(&ring, &a),
                CycInt::from_i64s(&ring, &b),
                CycInt::from_i64s(&ring, &c),
            );
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &CycInt::zero(&ring), a.clone());
            prop_assert_eq!(&a * &CycInt::one(&ring), a.clone());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn real_evaluation_is_a_homomorphism((q, a, b, _c) in triple()) {
            let ring = CycRing::new(q).unwrap();
            let (a, b) = (CycInt::from_i64s(&ring, &a), CycInt::from_i64s(&ring, &b));
            let exact = (&a * &b).to_real(20);
            let product = a.to_real(20) * b.to_real(20);
            let tol = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 12));
            prop_assert!((exact - product).abs() < tol);
            let f = (&a * &b).to_f64() - a.to_f64() * b.to_f64();
            prop_assert!(f.abs() < 1e-6 * (1.0 + a.to_f64().abs() * b.to_f64().abs()));
        }
    }
}
