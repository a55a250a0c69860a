//! The global extension `ȟ(g, D) = (π(g)ρ(D)K₁, K₁)` of a local positive
//! definite superfunction, computed directly from the state functional.
//!
//! For `g = exp(h₁)⋯exp(h_k)` the matrix coefficient expands to
//! `Σ ∏(1/rᵢ!) λ(h₁^{r₁}⋯h_k^{r_k}·D)`. The products are built here from the
//! right on the starred side, `E = D*·(h_k*)^{r_k}⋯(h₁*)^{r₁}`, and then
//! `λ(E*)` is taken; this is an independent computation from the
//! left-multiplying series used by local evaluation.

use num::complex::Complex64;

use crate::enveloping::{EnvElement, Straightener};
use crate::error::{Error, Result};
use crate::groupword::{canonicalize, GroupWord};
use crate::scalar::{Approx, Cx};
use crate::smonoid::{s_mul_with, s_star_with, MonoidElement};
use crate::superfunc::{exp_tail, f_check_with, gram_report, Backend, GramReport, LocalSuperfunction};

fn star_series(
    f: &LocalSuperfunction,
    st: &mut Straightener<'_>,
    hstars: &[EnvElement],
    e: &EnvElement,
    budget: usize,
    acc: &mut Cx,
) -> Result<()> {
    // hstars is ordered h_k*, …, h₁*.
    let Some((first, rest)) = hstars.split_first() else {
        let back = st.star(e);
        *acc += &f.lambda_env(&back)?;
        return Ok(());
    };
    let mut cur = e.clone();
    for r in 0..=budget {
        if r > 0 {
            cur = st.product(&cur, first).scale(&Cx::from_ratio(1, r as i64));
        }
        if cur.is_zero() {
            break;
        }
        star_series(f, st, rest, &cur, budget - r, acc)?;
    }
    Ok(())
}

/// `ȟ(g, D)` truncated at total order `R`, with tail bound
/// `C·‖D‖₁·Σ_{m>R} νᵐ/m!`, `ν = Σ‖hᵢ‖₁`. No domain restriction applies.
pub fn extend_value(f: &LocalSuperfunction, g: &GroupWord, d: &EnvElement, order: usize) -> Result<Approx> {
    let alg = f.algebra();
    GroupWord::new(alg, g.factors().to_vec())?;
    let mut st = Straightener::new(alg);
    let d = st.normalize(d);
    let budget = if g.is_empty() { 0 } else { order };
    let c = match f.backend() {
        Backend::State(sf) => {
            let needed = budget + d.filtration_degree();
            if needed > sf.n_f {
                return Err(Error::FiltrationExhausted { needed, available: sf.n_f });
            }
            sf.c
        }
        Backend::Coefficient(_) => f64::INFINITY,
    };
    let hstars = g
        .factors()
        .iter()
        .rev()
        .map(|h| alg.star_g(h).map(|v| EnvElement::from_gvector(&v)))
        .collect::<Result<Vec<_>>>()?;
    let dstar = st.star(&d);
    let mut acc = Cx::zero();
    star_series(f, &mut st, &hstars, &dstar, budget, &mut acc)?;
    let value: Complex64 = acc.to_c64();
    let tail = if g.is_empty() { 0.0 } else { c * d.norm1() * exp_tail(g.norm1(), order) };
    Ok(Approx::new(value, tail + 2.0 * f64::EPSILON * value.norm()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RestrictionReport {
    pub max_deviation: f64,
    /// Combined error bounds of both routes at the worst sample.
    pub combined_bound: f64,
    /// Largest combined bound over all samples.
    pub max_bound: f64,
    pub samples: usize,
    pub passed: bool,
}

/// Compares the extension against local evaluation on samples in `U`.
pub fn verify_restriction(f: &LocalSuperfunction, samples: &[MonoidElement], order: usize, tol: f64) -> Result<RestrictionReport> {
    let mut st = Straightener::new(f.algebra());
    let mut rep = RestrictionReport { max_deviation: 0.0, combined_bound: 0.0, max_bound: 0.0, samples: 0, passed: true };
    for s in samples {
        if !f.in_u(&s.g)? {
            return Err(Error::OutsideDomain(format!("sample {:?} is not in U", s.g.factors())));
        }
        let global = extend_value(f, &s.g, &s.d, order)?;
        let local = f_check_with(f, &mut st, s, order)?;
        let dev = (global.value - local.value).norm();
        let bound = global.err + local.err;
        rep.samples += 1;
        rep.max_bound = rep.max_bound.max(bound);
        if dev >= rep.max_deviation {
            rep.max_deviation = dev;
            rep.combined_bound = bound;
        }
        if dev > tol || dev > bound {
            rep.passed = false;
        }
    }
    Ok(rep)
}

/// Gram matrix `ȟ(sᵢ* s_j)` over arbitrary samples. Words are collapsed
/// first when g₀ is abelian, which changes nothing in the group.
pub fn global_posdef_check(
    f: &LocalSuperfunction,
    samples: &[MonoidElement],
    tol_h: f64,
    tol_psd: f64,
    order: usize,
) -> Result<GramReport> {
    let alg = f.algebra();
    let mut st = Straightener::new(alg);
    let n = samples.len();
    let stars = samples.iter().map(|s| s_star_with(&mut st, s)).collect::<Result<Vec<_>>>()?;
    let mut matrix = crate::linalg::CMatrix::zeros(n, n);
    let mut entry_error = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let p = s_mul_with(&mut st, &stars[i], &samples[j])?;
            let g = canonicalize(alg, &p.g);
            let v = extend_value(f, &g, &p.d, order)?;
            matrix[(i, j)] = v.value;
            entry_error = entry_error.max(v.err);
        }
    }
    Ok(gram_report(matrix, entry_error, f.condition_i_violations(), tol_h, tol_psd))
}
