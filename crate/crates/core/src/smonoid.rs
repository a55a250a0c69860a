//! The monoid `S = G₀ × U(g_ℂ)` with product
//! `(g₁,D₁)(g₂,D₂) = (g₁g₂, Ad(g₂⁻¹)(D₁)·D₂)` and involution
//! `(g,D)* = (g⁻¹, Ad(g)(D*))`.
//!
//! Equality is syntactic on canonical forms (abelian words collapsed, PBW
//! normal form for `D`); it is not group-semantic for nonabelian G₀.

use crate::enveloping::{degree_of, EnvElement, Grading, Straightener};
use crate::error::Result;
use crate::groupword::{ad_group, ad_env_with, canonicalize, gw_inverse, gw_mul, GroupWord};
use crate::liesuper::{GVector, LieSuperalgebra};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidElement {
    pub g: GroupWord,
    pub d: EnvElement,
}

impl MonoidElement {
    pub fn new(g: GroupWord, d: EnvElement) -> Self {
        MonoidElement { g, d }
    }

    /// `1_S = (e, 1)`.
    pub fn unit() -> Self {
        MonoidElement::new(GroupWord::identity(), EnvElement::one())
    }

    /// `(e, D)`.
    pub fn env(d: EnvElement) -> Self {
        MonoidElement::new(GroupWord::identity(), d)
    }

    /// `(g, 1)`.
    pub fn group(g: GroupWord) -> Self {
        MonoidElement::new(g, EnvElement::one())
    }

    pub fn degree(&self, alg: &LieSuperalgebra) -> Grading {
        degree_of(alg, &self.d)
    }

    /// Canonical representative: abelian words collapsed.
    pub fn canonical(&self, alg: &LieSuperalgebra) -> MonoidElement {
        MonoidElement::new(canonicalize(alg, &self.g), self.d.clone())
    }
}

fn ad_apply(st: &mut Straightener<'_>, g: &GroupWord, d: &EnvElement) -> Result<EnvElement> {
    if g.is_empty() {
        return Ok(d.clone());
    }
    let ad = ad_group(st.algebra(), g)?;
    Ok(ad_env_with(st, &ad, d))
}

pub fn s_mul(alg: &LieSuperalgebra, s1: &MonoidElement, s2: &MonoidElement) -> Result<MonoidElement> {
    let mut st = Straightener::new(alg);
    s_mul_with(&mut st, s1, s2)
}

pub(crate) fn s_mul_with(st: &mut Straightener<'_>, s1: &MonoidElement, s2: &MonoidElement) -> Result<MonoidElement> {
    let g = gw_mul(&s1.g, &s2.g);
    let moved = ad_apply(st, &gw_inverse(&s2.g), &s1.d)?;
    let d = st.product(&moved, &s2.d);
    Ok(MonoidElement::new(g, d))
}

pub fn s_star(alg: &LieSuperalgebra, s: &MonoidElement) -> Result<MonoidElement> {
    let mut st = Straightener::new(alg);
    s_star_with(&mut st, s)
}

pub(crate) fn s_star_with(st: &mut Straightener<'_>, s: &MonoidElement) -> Result<MonoidElement> {
    let starred = st.star(&s.d);
    let d = ad_apply(st, &s.g, &starred)?;
    Ok(MonoidElement::new(gw_inverse(&s.g), d))
}

/// `s · (e, x*)`, the right translation underlying the ρ action on kernels.
pub fn right_by_star(alg: &LieSuperalgebra, s: &MonoidElement, x: &GVector) -> Result<MonoidElement> {
    let xs = alg.star_g(x)?;
    s_mul(alg, s, &MonoidElement::env(EnvElement::from_gvector(&xs)))
}
