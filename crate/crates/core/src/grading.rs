//! Degrees in Z₂ⁿ and the sign calculus built on them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num::complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Cx;

pub const MAX_WIDTH: usize = 16;

/// An element of Z₂ⁿ, n ≤ 16.
///
/// Component `j` (0-based) is stored at bit `n - 1 - j`, so integer order on
/// `bits` coincides with the lexicographic order on tuples.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Degree {
    bits: u16,
    n: u8,
}

/// A sign ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_cx(self) -> Cx {
        Cx::from_int(self.to_i64())
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() ^ rhs.is_minus())
    }
}

/// A fourth root of unity `i^k`, stored exactly as `k mod 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase {
    power_of_i: u8,
}

impl Phase {
    pub const ONE: Phase = Phase { power_of_i: 0 };

    pub fn from_power(k: i64) -> Self {
        Phase { power_of_i: k.rem_euclid(4) as u8 }
    }

    pub fn power_of_i(self) -> u8 {
        self.power_of_i
    }

    pub fn conj(self) -> Self {
        Phase::from_power(-(self.power_of_i as i64))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        Phase::from_power(self.power_of_i as i64 + 2)
    }

    pub fn to_cx(self) -> Cx {
        Cx::i_pow(self.power_of_i)
    }

    pub fn to_c64(self) -> Complex64 {
        match self.power_of_i {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    // Phases multiply by adding exponents of i.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_power(self.power_of_i as i64 + rhs.power_of_i as i64)
    }
}

impl From<Sign> for Phase {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Plus => Phase::ONE,
            Sign::Minus => Phase::from_power(2),
        }
    }
}

impl Degree {
    pub fn new(components: &[u8]) -> Result<Self> {
        let n = components.len();
        if n == 0 || n > MAX_WIDTH {
            return Err(Error::InvalidDegree(format!("width {n} outside 1..={MAX_WIDTH}")));
        }
        let mut bits = 0u16;
        for (j, &c) in components.iter().enumerate() {
            match c {
                0 => {}
                1 => bits |= 1 << (n - 1 - j),
                other => {
                    return Err(Error::InvalidDegree(format!("component {other} is not 0 or 1")))
                }
            }
        }
        Ok(Degree { bits, n: n as u8 })
    }

    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_WIDTH).contains(&n), "degree width out of range");
        Degree { bits: 0, n: n as u8 }
    }

    /// Degree with the given packed bits (component 0 in the high bit).
    pub fn from_bits(bits: u16, n: usize) -> Self {
        assert!((1..=MAX_WIDTH).contains(&n), "degree width out of range");
        let mask = if n == 16 { u16::MAX } else { (1u16 << n) - 1 };
        Degree { bits: bits & mask, n: n as u8 }
    }

    /// All 2ⁿ degrees in increasing lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Degree> {
        (0..(1u32 << n)).map(move |b| Degree::from_bits(b as u16, n))
    }

    pub fn width(self) -> usize {
        self.n as usize
    }

    pub fn bits(self) -> u16 {
        self.bits
    }

    pub fn components(self) -> Vec<u8> {
        (0..self.width()).map(|j| self.component(j)).collect()
    }

    pub fn component(self, j: usize) -> u8 {
        ((self.bits >> (self.width() - 1 - j)) & 1) as u8
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Number of nonzero entries.
    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    fn check(self, other: Degree) -> Result<()> {
        if self.n != other.n {
            Err(Error::DegreeLength(self.width(), other.width()))
        } else {
            Ok(())
        }
    }

    pub fn try_add(self, other: Degree) -> Result<Degree> {
        self.check(other)?;
        Ok(Degree { bits: self.bits ^ other.bits, n: self.n })
    }
}

impl Add for Degree {
    type Output = Degree;

    /// Componentwise sum mod 2. Panics on width mismatch; use
    /// [`Degree::try_add`] for checked addition.
    fn add(self, rhs: Degree) -> Degree {
        self.try_add(rhs).expect("degree widths differ")
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components().iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.components().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u8>::deserialize(d)?;
        Degree::new(&v).map_err(serde::de::Error::custom)
    }
}

/// `⟨a, b⟩ = Σ aᵢbᵢ mod 2`.
pub fn pairing(a: Degree, b: Degree) -> Result<u8> {
    a.check(b)?;
    Ok(((a.bits & b.bits).count_ones() % 2) as u8)
}

/// The bicharacter `B(a, b) = (−1)^⟨a,b⟩`.
pub fn beta(a: Degree, b: Degree) -> Result<Sign> {
    Ok(Sign::from_parity(pairing(a, b)? == 1))
}

/// Unchecked variant used internally once widths are known to agree.
pub(crate) fn sign(a: Degree, b: Degree) -> Sign {
    debug_assert_eq!(a.n, b.n);
    Sign::from_parity((a.bits & b.bits).count_ones() % 2 == 1)
}

/// `α(a) = i^{u(a)}` where `u(a)` counts the nonzero entries.
pub fn alpha(a: Degree) -> Phase {
    Phase::from_power(a.weight() as i64)
}

/// Lexicographic order with the zero degree minimal.
pub fn lex_compare(a: Degree, b: Degree) -> Result<Ordering> {
    a.check(b)?;
    Ok(a.bits.cmp(&b.bits))
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        lex_compare(*self, *other).ok()
    }
}
