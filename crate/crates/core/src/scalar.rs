//! Scalars over the complexification of a real superalgebra.
//!
//! [`Cx`] is the exact layer: Gaussian rationals `p/q + (r/s)i` backed by
//! big rationals, so zero tests are decidable. [`Approx`] is the float layer:
//! a complex double with a conservative absolute error bound.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact Gaussian-rational complex number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cx {
    pub re: BigRational,
    pub im: BigRational,
}

impl Cx {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Cx { re, im }
    }

    pub fn zero() -> Self {
        Cx::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Cx::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Cx::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Cx::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Cx::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn real(re: BigRational) -> Self {
        Cx::new(re, BigRational::zero())
    }

    /// Exact dyadic image of a finite double. Non-finite input maps to an error.
    pub fn from_f64(x: f64) -> Result<Self> {
        BigRational::from_float(x)
            .map(Cx::real)
            .ok_or_else(|| Error::Parse(format!("non-finite float {x}")))
    }

    /// The shortest decimal that round-trips to `x`, read exactly; `0.3`
    /// becomes `3/10` rather than its binary approximation.
    pub fn from_f64_decimal(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::Parse(format!("non-finite float {x}")));
        }
        format!("{x:e}").parse()
    }

    pub fn from_c64(z: Complex64) -> Result<Self> {
        let re = BigRational::from_float(z.re)
            .ok_or_else(|| Error::Parse(format!("non-finite float {}", z.re)))?;
        let im = BigRational::from_float(z.im)
            .ok_or_else(|| Error::Parse(format!("non-finite float {}", z.im)))?;
        Ok(Cx::new(re, im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Cx::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.norm_sqr();
        Some(Cx::new(&self.re / &d, -&self.im / &d))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cx::new(&self.re * r, &self.im * r)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    /// Modulus as a double (rounded).
    pub fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    /// `1 / k!` as an exact real.
    pub fn inv_factorial(k: usize) -> Self {
        let mut f = BigInt::one();
        for j in 2..=k {
            f *= BigInt::from(j);
        }
        Cx::real(BigRational::new(BigInt::one(), f))
    }

    /// `i^k`.
    pub fn i_pow(k: u8) -> Self {
        match k % 4 {
            0 => Cx::one(),
            1 => Cx::i(),
            2 => Cx::from_int(-1),
            _ => -Cx::i(),
        }
    }
}

/// Rounds a big rational to the nearest double, also for magnitudes beyond
/// the range where numerator and denominator fit individually.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(x) = r.to_f64() {
        if x.is_finite() {
            return x;
        }
    }
    // Fall back to a shifted division when num or den overflow f64.
    let num = r.numer();
    let den = r.denom();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift = nb - db;
    let scaled = if shift > 0 {
        BigRational::new(num.clone(), den.clone() << (shift as usize))
    } else {
        BigRational::new(num.clone() << ((-shift) as usize), den.clone())
    };
    let m = scaled.to_f64().unwrap_or(0.0);
    m * 2f64.powi(shift.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}*i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{}*i", self.re, self.im)
                }
            }
        }
    }
}

fn parse_real(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let bad = || Error::Parse(format!("bad rational literal {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_real(n)?;
        let d = parse_real(d)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(n / d);
    }
    let (neg, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mant, exp) = match body.find(['e', 'E']) {
        Some(p) => (&body[..p], body[p + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value = BigRational::from_integer(digits.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exp - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num::pow(ten, scale as usize);
    } else {
        value /= num::pow(ten, (-scale) as usize);
    }
    Ok(if neg { -value } else { value })
}

impl FromStr for Cx {
    type Err = Error;

    /// Accepts `p/q`, decimals, `p/q*i`, `i`, `-i` and sums such as
    /// `1/2+3/4*i` or `0.5-2i`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        // Split at a sign that is not leading and not part of an exponent.
        let bytes = t.as_bytes();
        let mut split = None;
        for k in 1..bytes.len() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E' | b'/') {
                split = Some(k);
            }
        }
        let parts: Vec<&str> = match split {
            Some(k) => vec![&t[..k], &t[k..]],
            None => vec![&t[..]],
        };
        let mut out = Cx::zero();
        for p in parts {
            if let Some(body) = p.strip_suffix('i') {
                let body = body.strip_suffix('*').unwrap_or(body);
                let coeff = match body {
                    "" | "+" => BigRational::one(),
                    "-" => -BigRational::one(),
                    _ => parse_real(body)?,
                };
                out.im += coeff;
            } else {
                out.re += parse_real(p)?;
            }
        }
        Ok(out)
    }
}

impl From<i64> for Cx {
    fn from(n: i64) -> Self {
        Cx::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Cx> for &Cx {
            type Output = Cx;
            fn $method(self, rhs: &Cx) -> Cx {
                let f: fn(&Cx, &Cx) -> Cx = $body;
                f(self, rhs)
            }
        }
        impl $trait<Cx> for Cx {
            type Output = Cx;
            fn $method(self, rhs: Cx) -> Cx {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cx> for Cx {
            type Output = Cx;
            fn $method(self, rhs: &Cx) -> Cx {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Cx::new(&a.re + &b.re, &a.im + &b.im));
forward_binop!(Sub, sub, |a, b| Cx::new(&a.re - &b.re, &a.im - &b.im));
forward_binop!(Mul, mul, |a, b| Cx::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));
forward_binop!(Div, div, |a, b| a * &b.inv().expect("division by exact zero"));

impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx::new(-self.re, -self.im)
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&Cx> for Cx {
    fn add_assign(&mut self, rhs: &Cx) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Cx> for Cx {
    fn sub_assign(&mut self, rhs: &Cx) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Cx> for Cx {
    fn mul_assign(&mut self, rhs: &Cx) {
        *self = &*self * rhs;
    }
}

/// Complex double with an absolute error bound.
///
/// Addition adds bounds; multiplication uses `|x|e_y + |y|e_x + e_x e_y`.
/// Rounding of the operation itself is folded in with a unit-roundoff term.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Approx {
    pub value: Complex64,
    pub err: f64,
}

const UNIT_ROUNDOFF: f64 = f64::EPSILON;

impl Approx {
    pub fn new(value: Complex64, err: f64) -> Self {
        Approx { value, err }
    }

    pub fn exact(value: Complex64) -> Self {
        Approx { value, err: 0.0 }
    }

    /// Rounds an exact scalar; the bound covers the rounding of both parts.
    pub fn from_exact(c: &Cx) -> Self {
        let value = c.to_c64();
        Approx { value, err: value.norm() * 2.0 * UNIT_ROUNDOFF }
    }

    pub fn zero() -> Self {
        Approx::default()
    }

    pub fn conj(self) -> Self {
        Approx { value: self.value.conj(), err: self.err }
    }

    pub fn with_extra_err(self, e: f64) -> Self {
        Approx { value: self.value, err: self.err + e }
    }

    /// True when `other` lies within the combined error bounds plus `tol`.
    pub fn agrees_with(&self, other: &Approx, tol: f64) -> bool {
        (self.value - other.value).norm() <= self.err + other.err + tol
    }
}

impl Add for Approx {
    type Output = Approx;
    fn add(self, rhs: Approx) -> Approx {
        let value = self.value + rhs.value;
        Approx { value, err: self.err + rhs.err + value.norm() * UNIT_ROUNDOFF }
    }
}

impl Sub for Approx {
    type Output = Approx;
    fn sub(self, rhs: Approx) -> Approx {
        self + Approx { value: -rhs.value, err: rhs.err }
    }
}

impl Mul for Approx {
    type Output = Approx;
    fn mul(self, rhs: Approx) -> Approx {
        let value = self.value * rhs.value;
        let err = self.value.norm() * rhs.err
            + rhs.value.norm() * self.err
            + self.err * rhs.err
            + value.norm() * 2.0 * UNIT_ROUNDOFF;
        Approx { value, err }
    }
}

impl PartialOrd for Approx {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.norm().partial_cmp(&other.value.norm())
    }
}
