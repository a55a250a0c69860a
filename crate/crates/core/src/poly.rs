//! Multivariate polynomials with exact coefficients, the desk-scale stand-in
//! for smooth functions of the even coordinates.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;

use crate::scalar::Cx;

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Cx>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("({c})x^{e:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn factorial(k: u32) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// `k!/(k−m)!`, the factor produced by differentiating `x^k` `m` times.
fn falling(k: u32, m: u32) -> BigInt {
    ((k - m + 1)..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Cx) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn monomial(exps: Exponents, c: Cx) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Cx)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Exponents, c: Cx) {
        assert_eq!(exps.len(), self.nvars, "exponent length");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(Cx::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> Cx {
        self.terms.get(exps).cloned().unwrap_or_else(Cx::zero)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Cx) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, a * b);
            }
        }
        out
    }

    /// `∂^μ p`.
    pub fn derivative(&self, mu: &[u32]) -> Poly {
        assert_eq!(mu.len(), self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().zip(mu).any(|(k, m)| k < m) {
                continue;
            }
            let mut factor = BigInt::one();
            for (k, m) in e.iter().zip(mu) {
                factor *= falling(*k, *m);
            }
            let ne = e.iter().zip(mu).map(|(k, m)| k - m).collect();
            out.add_term(ne, c.scale(&BigRational::from_integer(factor)));
        }
        out
    }

    pub fn eval(&self, x: &[Cx]) -> Cx {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Cx::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, k) in x.iter().zip(e) {
                for _ in 0..*k {
                    t *= xi;
                }
            }
            acc += &t;
        }
        acc
    }

    /// `(∂^μ p)(0) = μ! · [x^μ] p`.
    pub fn derivative_at_origin(&self, mu: &[u32]) -> Cx {
        let f = mu.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k));
        self.coeff(mu).scale(&BigRational::from_integer(f))
    }

    /// Taylor polynomial with `[x^μ] = values(μ) / μ!`.
    pub fn from_taylor(nvars: usize, values: impl IntoIterator<Item = (Exponents, Cx)>) -> Poly {
        let mut p = Poly::zero(nvars);
        for (mu, v) in values {
            let f = mu.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k));
            p.add_term(mu, v.scale(&BigRational::new(BigInt::one(), f)));
        }
        p
    }
}
