//! The enveloping algebra U(g_ℂ) in PBW normal form.
//!
//! Elements are finite sums of sorted basis words. Products are straightened
//! with the rewrite rules
//!
//! ```text
//! x_i x_j → B(d_i, d_j) x_j x_i + [x_i, x_j]     (i > j)
//! x x     → ½ [x, x]                             (B(d, d) = −1)
//! ```
//!
//! always at the leftmost offending position.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::grading::{sign, Degree};
use crate::liesuper::{GVector, LieSuperalgebra};
use crate::scalar::Cx;

/// A basis word `x_{i₁} ⋯ x_{i_k}`; sorted when in PBW normal form.
pub type Word = Vec<usize>;

/// Element of U(g_ℂ) as a map from PBW words to nonzero exact coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnvElement {
    terms: BTreeMap<Word, Cx>,
}

/// Degree of an enveloping-algebra element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Pure(Degree),
    Mixed,
}

impl fmt::Debug for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*{w:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl EnvElement {
    pub fn zero() -> Self {
        EnvElement::default()
    }

    pub fn one() -> Self {
        Self::monomial(Vec::new(), Cx::one())
    }

    pub fn scalar(c: Cx) -> Self {
        Self::monomial(Vec::new(), c)
    }

    /// A single term. The word is stored as given; use [`normal_form`] for
    /// unsorted words.
    pub fn monomial(word: Word, c: Cx) -> Self {
        let mut e = EnvElement::zero();
        e.add_term(word, c);
        e
    }

    pub fn generator(i: usize) -> Self {
        Self::monomial(vec![i], Cx::one())
    }

    /// Embeds `g_ℂ` into U(g_ℂ).
    pub fn from_gvector(v: &GVector) -> Self {
        let mut e = EnvElement::zero();
        for (i, c) in v.support() {
            e.add_term(vec![i], c.clone());
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Cx)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &[usize]) -> Cx {
        self.terms.get(word).cloned().unwrap_or_else(Cx::zero)
    }

    pub fn add_term(&mut self, word: Word, c: Cx) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &EnvElement, c: &Cx) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn add(&self, other: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        out.add_scaled(other, &Cx::one());
        out
    }

    pub fn sub(&self, other: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        out.add_scaled(other, &Cx::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Cx) -> EnvElement {
        let mut out = EnvElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// Filtration degree: the longest word, 0 for zero.
    pub fn filtration_degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Sum of coefficient moduli.
    pub fn norm1(&self) -> f64 {
        self.terms.values().map(Cx::abs_f64).sum()
    }

    /// Drops terms whose word is longer than `n`.
    pub fn truncate(&self, n: usize) -> EnvElement {
        EnvElement { terms: self.terms.iter().filter(|(w, _)| w.len() <= n).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    /// Every stored word is a PBW word for `alg`.
    pub fn is_normal(&self, alg: &LieSuperalgebra) -> bool {
        self.terms.keys().all(|w| first_violation(alg, w).is_none())
    }
}

pub fn word_degree(alg: &LieSuperalgebra, word: &[usize]) -> Degree {
    word.iter().fold(Degree::zero(alg.width()), |acc, &i| acc + alg.degree(i))
}

/// Common degree of all terms; zero and scalars report degree zero.
pub fn degree_of(alg: &LieSuperalgebra, d: &EnvElement) -> Grading {
    let mut deg = None;
    for w in d.terms.keys() {
        let e = word_degree(alg, w);
        match deg {
            None => deg = Some(e),
            Some(f) if f != e => return Grading::Mixed,
            _ => {}
        }
    }
    Grading::Pure(deg.unwrap_or_else(|| Degree::zero(alg.width())))
}

pub fn truncate(d: &EnvElement, n: usize) -> EnvElement {
    d.truncate(n)
}

/// Leftmost position `p` where `word[p], word[p+1]` must be rewritten.
fn first_violation(alg: &LieSuperalgebra, word: &[usize]) -> Option<usize> {
    word.windows(2)
        .position(|w| w[0] > w[1] || (w[0] == w[1] && alg.is_self_odd(w[0])))
}

/// Memoizing straightener bound to one algebra.
pub struct Straightener<'a> {
    alg: &'a LieSuperalgebra,
    memo: HashMap<Word, EnvElement>,
}

impl<'a> Straightener<'a> {
    pub fn new(alg: &'a LieSuperalgebra) -> Self {
        Straightener { alg, memo: HashMap::new() }
    }

    pub fn algebra(&self) -> &'a LieSuperalgebra {
        self.alg
    }

    /// Normal form of a single word.
    pub fn word(&mut self, word: &[usize]) -> EnvElement {
        let Some(p) = first_violation(self.alg, word) else {
            return EnvElement::monomial(word.to_vec(), Cx::one());
        };
        if let Some(hit) = self.memo.get(word) {
            return hit.clone();
        }
        let (i, j) = (word[p], word[p + 1]);
        let mut out = EnvElement::zero();
        let splice = |k: Option<usize>, swapped: bool| -> Word {
            let mut w = word[..p].to_vec();
            match k {
                Some(k) => w.push(k),
                None if swapped => w.extend([j, i]),
                None => {}
            }
            w.extend_from_slice(&word[p + 2..]);
            w
        };
        let bracket = self.alg.structure(i, j).clone();
        if i == j {
            let half = Cx::from_ratio(1, 2);
            for (k, c) in bracket.support() {
                let sub = self.word(&splice(Some(k), false));
                out.add_scaled(&sub, &(c * &half));
            }
        } else {
            let s = sign(self.alg.degree(i), self.alg.degree(j)).to_cx();
            let sub = self.word(&splice(None, true));
            out.add_scaled(&sub, &s);
            for (k, c) in bracket.support() {
                let sub = self.word(&splice(Some(k), false));
                out.add_scaled(&sub, c);
            }
        }
        self.memo.insert(word.to_vec(), out.clone());
        out
    }

    /// Normal form of an arbitrary (possibly unsorted) element.
    pub fn normalize(&mut self, d: &EnvElement) -> EnvElement {
        let mut out = EnvElement::zero();
        for (w, c) in d.terms() {
            let nf = self.word(w);
            out.add_scaled(&nf, c);
        }
        out
    }

    pub fn product(&mut self, u: &EnvElement, v: &EnvElement) -> EnvElement {
        let mut out = EnvElement::zero();
        for (wu, cu) in u.terms() {
            for (wv, cv) in v.terms() {
                let mut w = wu.clone();
                w.extend_from_slice(wv);
                let nf = self.word(&w);
                out.add_scaled(&nf, &(cu * cv));
            }
        }
        out
    }

    pub fn star(&mut self, d: &EnvElement) -> EnvElement {
        let mut out = EnvElement::zero();
        for (w, c) in d.terms() {
            let mut phase = Cx::one();
            for &i in w {
                phase *= &self.alg.star_factor(i);
            }
            let coeff = &c.conj() * &phase;
            let rev: Word = w.iter().rev().copied().collect();
            let nf = self.word(&rev);
            out.add_scaled(&nf, &coeff);
        }
        out
    }

    /// `u` raised to a nonnegative power.
    pub fn power(&mut self, u: &EnvElement, r: usize) -> EnvElement {
        let mut acc = EnvElement::one();
        for _ in 0..r {
            acc = self.product(&acc, u);
        }
        acc
    }
}

/// Normal form of an arbitrary element.
pub fn normal_form(alg: &LieSuperalgebra, d: &EnvElement) -> EnvElement {
    Straightener::new(alg).normalize(d)
}

/// Product in U(g_ℂ), returned in PBW normal form.
pub fn nf_product(alg: &LieSuperalgebra, u: &EnvElement, v: &EnvElement) -> EnvElement {
    Straightener::new(alg).product(u, v)
}

/// The conjugate-linear antiautomorphism extending `x* = −ᾱ(a)x`.
pub fn star_env(alg: &LieSuperalgebra, d: &EnvElement) -> EnvElement {
    Straightener::new(alg).star(d)
}

/// All PBW words of length at most `max_len`, shortest first.
pub fn pbw_words(alg: &LieSuperalgebra, max_len: usize) -> Vec<Word> {
    let d = alg.dim();
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            let start = w.last().copied().unwrap_or(0);
            for i in start..d {
                if w.last() == Some(&i) && alg.is_self_odd(i) {
                    continue;
                }
                let mut nw = w.clone();
                nw.push(i);
                next.push(nw);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Human-readable word using basis names.
pub fn word_names(alg: &LieSuperalgebra, w: &[usize]) -> Vec<String> {
    w.iter().map(|&i| alg.name(i).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn g(alg: &LieSuperalgebra, name: &str) -> EnvElement {
        EnvElement::generator(alg.index_of(name).unwrap())
    }

    #[test]
    fn toy_straightening_step() {
        let a = fixtures::toy();
        let (x, y, z) = (g(&a, "x"), g(&a, "y"), g(&a, "z"));
        let yx = nf_product(&a, &y, &x);
        let xy = nf_product(&a, &x, &y);
        assert_eq!(yx, xy.sub(&z));
        assert!(xy.is_normal(&a));
    }

    #[test]
    fn unit_is_neutral() {
        let a = fixtures::toy();
        let d = nf_product(&a, &g(&a, "x"), &g(&a, "z")).add(&g(&a, "y"));
        assert_eq!(nf_product(&a, &EnvElement::one(), &d), d);
        assert_eq!(nf_product(&a, &d, &EnvElement::one()), d);
    }

    #[test]
    fn odd_square_reduces() {
        let a = fixtures::toy();
        let x = g(&a, "x");
        assert!(nf_product(&a, &x, &x).is_zero());
        let n = fixtures::nilpotent();
        let q = g(&n, "q");
        let v = g(&n, "v");
        assert_eq!(nf_product(&n, &q, &q), v.scale(&Cx::from_ratio(1, 2)));
    }

    #[test]
    fn star_examples() {
        let a = fixtures::toy_with_even();
        assert_eq!(star_env(&a, &EnvElement::one()), EnvElement::one());
        let (x, y, z) = (g(&a, "x"), g(&a, "y"), g(&a, "z"));
        let xy = nf_product(&a, &x, &y);
        assert_eq!(star_env(&a, &xy), xy.scale(&Cx::from_int(-1)).add(&z));
        let h = g(&a, "h");
        assert_eq!(star_env(&a, &h), h.scale(&Cx::from_int(-1)));
    }

    #[test]
    fn degree_examples() {
        let a = fixtures::toy();
        let (x, y) = (g(&a, "x"), g(&a, "y"));
        let xy = nf_product(&a, &x, &y);
        assert_eq!(degree_of(&a, &xy), Grading::Pure(Degree::new(&[1, 1]).unwrap()));
        assert_eq!(degree_of(&a, &EnvElement::one()), Grading::Pure(Degree::zero(2)));
        assert_eq!(degree_of(&a, &x.add(&y)), Grading::Mixed);
    }

    #[test]
    fn truncate_examples() {
        let a = fixtures::toy_with_even();
        let (x, y, h) = (g(&a, "x"), g(&a, "y"), g(&a, "h"));
        let d = nf_product(&a, &x, &y).add(&h).add(&EnvElement::scalar(Cx::from_int(3)));
        assert_eq!(truncate(&d, 1), h.add(&EnvElement::scalar(Cx::from_int(3))));
        assert_eq!(truncate(&d, 0), EnvElement::scalar(Cx::from_int(3)));
        assert_eq!(truncate(&d, 10), d);
    }

    #[test]
    fn pbw_word_enumeration_skips_odd_squares() {
        let a = fixtures::toy();
        let words = pbw_words(&a, 2);
        assert!(words.contains(&vec![]));
        let (x, z) = (a.index_of("x").unwrap(), a.index_of("z").unwrap());
        assert!(!words.contains(&vec![x, x]));
        assert!(words.contains(&vec![z, z]));
    }
}
