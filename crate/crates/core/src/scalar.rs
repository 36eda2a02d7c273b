//! Exact arithmetic in the number field ℚ(i, √2, √3).
//!
//! An element is stored as eight rational coordinates: a real part and an
//! imaginary part, each over the basis `{1, √2, √3, √6}` of the real subfield
//! ℚ(√2, √3). Every literal in the constructions of this crate (halves,
//! `1/√2`, `1/√6`, `i√3`, the primitive cube roots of unity) lives here, so
//! all equality tests are exact.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Square-root labels of the real basis, in coordinate order.
pub const BASIS_RADICANDS: [u32; 4] = [1, 2, 3, 6];

/// `e_a · e_b = factor · e_c` over the basis `{1, √2, √3, √6}`.
const PRODUCT_TABLE: [[(usize, i64); 4]; 4] = [
    [(0, 1), (1, 1), (2, 1), (3, 1)],
    [(1, 1), (0, 2), (3, 1), (2, 2)],
    [(2, 1), (3, 1), (0, 3), (1, 3)],
    [(3, 1), (2, 2), (1, 3), (0, 6)],
];

type Real = [Rational; 4];

fn real_zero() -> Real {
    [
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
    ]
}

fn real_is_zero(a: &Real) -> bool {
    a.iter().all(Zero::is_zero)
}

fn real_add(a: &Real, b: &Real) -> Real {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2], &a[3] + &b[3]]
}

fn real_sub(a: &Real, b: &Real) -> Real {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2], &a[3] - &b[3]]
}

fn real_neg(a: &Real) -> Real {
    [-&a[0], -&a[1], -&a[2], -&a[3]]
}

fn real_mul(a: &Real, b: &Real) -> Real {
    let mut out = real_zero();
    for (x, ax) in a.iter().enumerate() {
        if ax.is_zero() {
            continue;
        }
        for (y, by) in b.iter().enumerate() {
            if by.is_zero() {
                continue;
            }
            let (target, factor) = PRODUCT_TABLE[x][y];
            let prod = ax * by;
            if factor == 1 {
                out[target] += prod;
            } else {
                out[target] += prod * Rational::from_integer(BigInt::from(factor));
            }
        }
    }
    out
}

fn real_scale(a: &Real, s: &Rational) -> Real {
    [&a[0] * s, &a[1] * s, &a[2] * s, &a[3] * s]
}

/// Galois automorphism √2 ↦ −√2 (fixes √3).
fn flip_sqrt2(a: &Real) -> Real {
    [a[0].clone(), -&a[1], a[2].clone(), -&a[3]]
}

/// Galois automorphism √3 ↦ −√3 (fixes √2).
fn flip_sqrt3(a: &Real) -> Real {
    [a[0].clone(), a[1].clone(), -&a[2], -&a[3]]
}

fn real_inverse(a: &Real) -> Option<Real> {
    if real_is_zero(a) {
        return None;
    }
    // a·σ3(a) lies in ℚ(√2); multiplying by its √2-conjugate lands in ℚ.
    let c3 = flip_sqrt3(a);
    let r = real_mul(a, &c3);
    let c2 = flip_sqrt2(&r);
    let norm = real_mul(&r, &c2);
    debug_assert!(norm[1..].iter().all(Zero::is_zero));
    let inv_norm = norm[0].recip();
    Some(real_scale(&real_mul(&c3, &c2), &inv_norm))
}

/// An element of ℚ(i, √2, √3).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    re: Real,
    im: Real,
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self {
            re: real_zero(),
            im: real_zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        let mut s = Self::zero();
        s.im[0] = Rational::one();
        s
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut s = Self::zero();
        s.re[0] = q;
        s
    }

    pub fn from_coords(re: [Rational; 4], im: [Rational; 4]) -> Self {
        Self { re, im }
    }

    /// `√k` for `k ∈ {1, 2, 3, 6}`.
    pub fn sqrt(k: u32) -> Self {
        let idx = BASIS_RADICANDS
            .iter()
            .position(|&r| r == k)
            .unwrap_or_else(|| panic!("√{k} is outside ℚ(√2, √3) basis"));
        let mut s = Self::zero();
        s.re[idx] = Rational::one();
        s
    }

    /// The primitive cube root of unity `e^{i2π/3} = −1/2 + i√3/2`.
    pub fn omega() -> Self {
        let mut s = Self::zero();
        s.re[0] = Rational::new(BigInt::from(-1), BigInt::from(2));
        s.im[2] = Rational::new(BigInt::from(1), BigInt::from(2));
        s
    }

    pub fn re_coords(&self) -> &[Rational; 4] {
        &self.re
    }

    pub fn im_coords(&self) -> &[Rational; 4] {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        real_is_zero(&self.re) && real_is_zero(&self.im)
    }

    pub fn is_one(&self) -> bool {
        self.re[0].is_one() && self.re[1..].iter().all(Zero::is_zero) && real_is_zero(&self.im)
    }

    pub fn is_real(&self) -> bool {
        real_is_zero(&self.im)
    }

    pub fn is_imaginary(&self) -> bool {
        real_is_zero(&self.re)
    }

    /// `Some(q)` when the element is the rational `q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.re[1..].iter().all(Zero::is_zero) && real_is_zero(&self.im)).then(|| &self.re[0])
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: real_neg(&self.im),
        }
    }

    pub fn re(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: real_zero(),
        }
    }

    pub fn im(&self) -> Self {
        Self {
            re: self.im.clone(),
            im: real_zero(),
        }
    }

    pub fn mul_i(&self) -> Self {
        Self {
            re: real_neg(&self.im),
            im: self.re.clone(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            re: real_scale(&self.re, q),
            im: real_scale(&self.im, q),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        // z⁻¹ = z̄ / (re² + im²), where re² + im² is a nonzero real field element.
        let norm = real_add(&real_mul(&self.re, &self.re), &real_mul(&self.im, &self.im));
        let inv_norm = real_inverse(&norm).ok_or(Error::DivisionByZero)?;
        Ok(Self {
            re: real_mul(&self.re, &inv_norm),
            im: real_neg(&real_mul(&self.im, &inv_norm)),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (part, imaginary) in [(&self.re, false), (&self.im, true)] {
            for (idx, coeff) in part.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let negative = coeff.is_negative();
                let mag = coeff.abs();
                let radicand = BASIS_RADICANDS[idx];
                let mut unit = String::new();
                if radicand != 1 {
                    unit.push_str(&if latex {
                        format!("\\sqrt{{{radicand}}}")
                    } else {
                        format!("√{radicand}")
                    });
                }
                if imaginary {
                    unit.push('i');
                }
                let body = if mag.is_one() && !unit.is_empty() {
                    unit
                } else if latex && !mag.is_integer() {
                    format!("\\frac{{{}}}{{{}}}{}", mag.numer(), mag.denom(), unit)
                } else if unit.is_empty() {
                    mag.to_string()
                } else if mag.is_integer() {
                    format!("{mag}{unit}")
                } else {
                    format!("({mag}){unit}")
                };
                terms.push((negative, body));
            }
        }
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (negative, body)) in terms.into_iter().enumerate() {
            match (n, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({})", self.render(false))
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for ExactScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: real_add(&self.re, &rhs.re),
            im: real_add(&self.im, &rhs.im),
        }
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: real_sub(&self.re, &rhs.re),
            im: real_sub(&self.im, &rhs.im),
        }
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let re_only = real_is_zero(&self.im) && real_is_zero(&rhs.im);
        if re_only {
            return ExactScalar {
                re: real_mul(&self.re, &rhs.re),
                im: real_zero(),
            };
        }
        ExactScalar {
            re: real_sub(&real_mul(&self.re, &rhs.re), &real_mul(&self.im, &rhs.im)),
            im: real_add(&real_mul(&self.re, &rhs.im), &real_mul(&self.im, &rhs.re)),
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re: real_neg(&self.re),
            im: real_neg(&self.im),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

/// Panics on division by zero, like integer division; use
/// [`ExactScalar::checked_div`] for a fallible version.
impl Div for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        for k in 0..4 {
            self.re[k] += &rhs.re[k];
            self.im[k] += &rhs.im[k];
        }
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        for k in 0..4 {
            self.re[k] -= &rhs.re[k];
            self.im[k] -= &rhs.im[k];
        }
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

/// Reduced `"p/q"` form; zero is `"0/1"`.
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int =
        |t: &str| BigInt::from_str(t.trim()).map_err(|e| Error::Parse(format!("{t:?}: {e}")));
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    re: [String; 4],
    im: [String; 4],
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr {
            re: self.re.clone().map(|q| rational_to_string(&q)),
            im: self.im.clone().map(|q| rational_to_string(&q)),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        let conv = |parts: &[String; 4]| -> std::result::Result<Real, D::Error> {
            let mut out = real_zero();
            for (slot, text) in out.iter_mut().zip(parts) {
                *slot = parse_rational(text).map_err(serde::de::Error::custom)?;
            }
            Ok(out)
        };
        Ok(ExactScalar {
            re: conv(&repr.re)?,
            im: conv(&repr.im)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(k: u32) -> ExactScalar {
        ExactScalar::sqrt(k)
    }

    #[test]
    fn inverse_sqrt2_squared_is_half() {
        let inv = s(2).inv().unwrap();
        assert_eq!(&inv * &inv, ExactScalar::from_ratio(1, 2));
    }

    #[test]
    fn radical_products() {
        assert_eq!(&s(2) * &s(3), s(6));
        assert_eq!(&s(2) * &s(6), &ExactScalar::from_int(2) * &s(3));
        assert_eq!(&s(3) * &s(6), &ExactScalar::from_int(3) * &s(2));
        for k in [2, 3, 6] {
            assert_eq!(&s(k) * &s(k), ExactScalar::from_int(k as i64));
        }
    }

    #[test]
    fn conjugation_of_imaginary_sqrt3() {
        let x = s(3).mul_i();
        assert_eq!(x.conj(), -&x);
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn omega_is_a_primitive_cube_root() {
        let w = ExactScalar::omega();
        assert!(!w.is_one());
        assert!(!(&w * &w).is_one());
        assert!(w.pow(3).is_one());
        assert_eq!(&w * &w, w.conj());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(ExactScalar::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn json_encoding_uses_reduced_fractions() {
        let x = &ExactScalar::from_ratio(2, 4) + &s(3).mul_i();
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(
            json,
            r#"{"re":["1/2","0/1","0/1","0/1"],"im":["0/1","0/1","1/1","0/1"]}"#
        );
        let back: ExactScalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn display_forms() {
        assert_eq!(ExactScalar::omega().to_string(), "-1/2 + (1/2)√3i");
        assert_eq!(ExactScalar::zero().to_string(), "0");
        assert_eq!(ExactScalar::omega().to_latex(), "-\\frac{1}{2} + \\frac{1}{2}\\sqrt{3}i");
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse_rational("3/0").is_err());
        assert_eq!(parse_rational("-6/4").unwrap(), Rational::new((-3).into(), 2.into()));
    }
}
