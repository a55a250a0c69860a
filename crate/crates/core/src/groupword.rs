//! Elements of G₀ modeled as words `exp(h₁)⋯exp(h_k)` with `hᵢ ∈ g₀`, and
//! the adjoint action on `g` and on U(g_ℂ).

use num::complex::Complex64;

use crate::enveloping::{EnvElement, Straightener};
use crate::error::{Error, Result};
use crate::liesuper::{GVector, LieSuperalgebra};
use crate::linalg::{self, CMatrix, ExactMatrix};
use crate::scalar::Cx;

/// `exp(h₁)⋯exp(h_k)`; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    factors: Vec<GVector>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    /// Checks that every factor lies in g₀.
    pub fn new(alg: &LieSuperalgebra, factors: Vec<GVector>) -> Result<Self> {
        for (index, h) in factors.iter().enumerate() {
            if h.dim() != alg.dim() {
                return Err(Error::Dimension(format!("factor {index} has {} coordinates, algebra has {}", h.dim(), alg.dim())));
            }
            if !alg.is_even(h) {
                return Err(Error::NotInEvenPart { index });
            }
        }
        Ok(GroupWord { factors })
    }

    /// Single factor `exp(h)`.
    pub fn exp(alg: &LieSuperalgebra, h: GVector) -> Result<Self> {
        Self::new(alg, vec![h])
    }

    pub fn factors(&self) -> &[GVector] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `Σ ‖hᵢ‖₁`, the growth rate of the exponential series of the word.
    pub fn norm1(&self) -> f64 {
        self.factors.iter().map(GVector::norm1).sum()
    }
}

/// Concatenation, realizing the group product.
pub fn gw_mul(p: &GroupWord, q: &GroupWord) -> GroupWord {
    let mut factors = p.factors.clone();
    factors.extend(q.factors.iter().cloned());
    GroupWord { factors }
}

/// `exp(−h_k)⋯exp(−h₁)`.
pub fn gw_inverse(p: &GroupWord) -> GroupWord {
    GroupWord { factors: p.factors.iter().rev().map(GVector::neg).collect() }
}

/// When g₀ is abelian a word collapses to the single factor `exp(Σhᵢ)`;
/// otherwise the word is returned unchanged.
pub fn canonicalize(alg: &LieSuperalgebra, p: &GroupWord) -> GroupWord {
    if p.factors.len() <= 1 && p.factors.iter().all(|h| !h.is_zero()) {
        return p.clone();
    }
    if !alg.even_part_is_abelian() {
        return p.clone();
    }
    let sum = p.factors.iter().fold(GVector::zero(alg.dim()), |acc, h| acc.add(h));
    if sum.is_zero() {
        GroupWord::identity()
    } else {
        GroupWord { factors: vec![sum] }
    }
}

/// Exponential-coordinate point of a word in an abelian g₀, one coordinate
/// per even basis element.
pub fn abelian_coordinates(alg: &LieSuperalgebra, p: &GroupWord) -> Result<Vec<Cx>> {
    if !alg.even_part_is_abelian() {
        return Err(Error::NonAbelian);
    }
    let even = alg.even_indices();
    let mut x = vec![Cx::zero(); even.len()];
    for h in &p.factors {
        for (slot, &i) in even.iter().enumerate() {
            x[slot] += &h.coeffs[i];
        }
    }
    Ok(x)
}

/// `Ad(p)` on `g` together with an absolute error bound in the induced
/// 1-norm. The bound is zero exactly when every factor has nilpotent `ad`.
#[derive(Clone, Debug)]
pub struct AdOperator {
    pub matrix: ExactMatrix,
    pub error_bound: f64,
}

impl AdOperator {
    pub fn is_exact(&self) -> bool {
        self.error_bound == 0.0
    }

    /// Image of the basis vector `x_j`.
    pub fn image(&self, j: usize) -> GVector {
        GVector { coeffs: self.matrix.column(j) }
    }

    pub fn apply(&self, x: &GVector) -> GVector {
        GVector { coeffs: self.matrix.apply(&x.coeffs) }
    }
}

/// Smallest `m ≤ dim` with `(ad h)^m = 0`, if any.
pub fn nilpotency_index(alg: &LieSuperalgebra, h: &GVector) -> Option<usize> {
    let ad = alg.ad_matrix(h);
    let mut pow = ExactMatrix::identity(alg.dim());
    for m in 1..=alg.dim().max(1) {
        pow = pow.mul(&ad);
        if pow.is_zero() {
            return Some(m);
        }
    }
    None
}

/// Every factor of the word acts by a nilpotent `ad`, so `Ad(p)` is exact.
pub fn is_exact_word(alg: &LieSuperalgebra, p: &GroupWord) -> bool {
    p.factors.iter().all(|h| nilpotency_index(alg, h).is_some())
}

/// `Exp(ad h)`.
fn exp_ad(alg: &LieSuperalgebra, h: &GVector) -> Result<AdOperator> {
    let d = alg.dim();
    let ad = alg.ad_matrix(h);
    if let Some(m) = nilpotency_index(alg, h) {
        let mut sum = ExactMatrix::identity(d);
        let mut term = ExactMatrix::identity(d);
        for k in 1..m {
            term = term.mul(&ad).scale(&Cx::from_ratio(1, k as i64));
            sum = sum.add(&term);
        }
        return Ok(AdOperator { matrix: sum, error_bound: 0.0 });
    }
    let a: CMatrix = ad.to_c64();
    let norm = linalg::norm1(&a);
    let opts = alg.ad_options;
    let mut sum = CMatrix::identity(d, d);
    let mut term = CMatrix::identity(d, d);
    // Rounding in the float summation: a few ulps per term times e^{‖A‖}.
    let rounding = (d as f64) * 4.0 * f64::EPSILON * norm.exp();
    for k in 1..=opts.max_iter {
        term = &term * &a * Complex64::new(1.0 / k as f64, 0.0);
        sum += &term;
        // Remainder after k terms: ‖A‖^{k+1}/(k+1)! · e^{‖A‖}.
        let tail = (1..=k + 1).fold(1.0f64, |acc, j| acc * norm / j as f64) * norm.exp();
        if linalg::norm1(&term) < opts.tol && tail < opts.tol.max(rounding) {
            let matrix = ExactMatrix::from_c64(&sum)?;
            return Ok(AdOperator { matrix, error_bound: tail + rounding });
        }
    }
    let tail = (1..=opts.max_iter + 1).fold(1.0f64, |acc, j| acc * norm / j as f64) * norm.exp();
    Err(Error::NonConvergence { iterations: opts.max_iter, bound: tail })
}

/// `Ad(p) = Π Exp(ad hᵢ)`, composed left to right.
pub fn ad_group(alg: &LieSuperalgebra, p: &GroupWord) -> Result<AdOperator> {
    let mut acc = AdOperator { matrix: ExactMatrix::identity(alg.dim()), error_bound: 0.0 };
    for h in &p.factors {
        let f = exp_ad(alg, h)?;
        let (na, nf) = (acc.matrix.norm1(), f.matrix.norm1());
        let err = if acc.is_exact() && f.is_exact() {
            0.0
        } else {
            na * f.error_bound + nf * acc.error_bound + acc.error_bound * f.error_bound
        };
        acc = AdOperator { matrix: acc.matrix.mul(&f.matrix), error_bound: err };
    }
    Ok(acc)
}

/// `Ad(p)` on U(g_ℂ): each letter is replaced by its image and products are
/// re-straightened. The returned bound is the operator bound on `g`; for
/// non-nilpotent words the result is an approximation.
pub fn ad_env(alg: &LieSuperalgebra, p: &GroupWord, d: &EnvElement) -> Result<(EnvElement, f64)> {
    if p.is_empty() {
        return Ok((d.clone(), 0.0));
    }
    let ad = ad_group(alg, p)?;
    let mut st = Straightener::new(alg);
    Ok((ad_env_with(&mut st, &ad, d), ad.error_bound))
}

pub(crate) fn ad_env_with(st: &mut Straightener<'_>, ad: &AdOperator, d: &EnvElement) -> EnvElement {
    let images: Vec<EnvElement> = (0..st.algebra().dim()).map(|j| EnvElement::from_gvector(&ad.image(j))).collect();
    let mut out = EnvElement::zero();
    for (w, c) in d.terms() {
        let mut acc = EnvElement::one();
        for &i in w {
            acc = st.product(&acc, &images[i]);
        }
        out.add_scaled(&acc, c);
    }
    out
}
