//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zsuper_core::{Cx, EnvElement, GVector, GroupWord, LieSuperalgebra, MonoidElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small Gaussian rational `(a + bi)/d` with `|a|, |b| ≤ 3`, `d ≤ 3`.
pub fn scalar(r: &mut impl Rng) -> Cx {
    let d = r.random_range(1..=3);
    let re = Cx::from_ratio(r.random_range(-3..=3), d);
    let im = Cx::from_ratio(r.random_range(-3..=3), d);
    &re + &(&im * &Cx::i())
}

pub fn nonzero_scalar(r: &mut impl Rng) -> Cx {
    loop {
        let c = scalar(r);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Up to `terms` random words of length `≤ max_len` over the whole basis,
/// not yet in normal form.
pub fn env(r: &mut impl Rng, alg: &LieSuperalgebra, terms: usize, max_len: usize) -> EnvElement {
    let mut d = EnvElement::zero();
    for _ in 0..r.random_range(1..=terms) {
        let len = r.random_range(0..=max_len);
        let w = (0..len).map(|_| r.random_range(0..alg.dim())).collect();
        d.add_term(w, nonzero_scalar(r));
    }
    d
}

/// A random homogeneous element: every word has the degree of the first one.
pub fn homogeneous_env(r: &mut impl Rng, alg: &LieSuperalgebra, terms: usize, max_len: usize) -> EnvElement {
    let first = env(r, alg, 1, max_len);
    let deg = zsuper_core::enveloping::degree_of(alg, &first);
    let mut d = first;
    for _ in 0..terms.saturating_sub(1) {
        let cand = env(r, alg, 1, max_len);
        if zsuper_core::enveloping::degree_of(alg, &cand) == deg {
            d = d.add(&cand);
        }
    }
    d
}

/// A real combination of the even basis elements.
pub fn even_vector(r: &mut impl Rng, alg: &LieSuperalgebra, scale: i64) -> GVector {
    let mut v = GVector::zero(alg.dim());
    for i in alg.even_indices() {
        if r.random_bool(0.7) {
            let c = Cx::from_ratio(r.random_range(-scale..=scale), r.random_range(1..=4));
            v = v.add(&GVector::basis(alg.dim(), i).scale(&c));
        }
    }
    v
}

pub fn group_word(r: &mut impl Rng, alg: &LieSuperalgebra, max_factors: usize) -> GroupWord {
    let n = r.random_range(0..=max_factors);
    let factors = (0..n).map(|_| even_vector(r, alg, 2)).filter(|h| !h.is_zero()).collect();
    GroupWord::new(alg, factors).expect("even factors")
}

pub fn monoid(r: &mut impl Rng, alg: &LieSuperalgebra) -> MonoidElement {
    let d = zsuper_core::enveloping::normal_form(alg, &env(r, alg, 2, 2));
    MonoidElement::new(group_word(r, alg, 2), d)
}

/// `exp(t·x)` for a named basis element and a decimal `t`.
pub fn exp_named(alg: &LieSuperalgebra, name: &str, t: f64) -> GroupWord {
    let h = alg.basis_vector(name).unwrap().scale(&Cx::from_f64_decimal(t).unwrap());
    GroupWord::exp(alg, h).unwrap()
}
