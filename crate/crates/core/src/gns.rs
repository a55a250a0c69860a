//! The reproducing-kernel space spanned by `K_s(t) = f̌(t s*)`.
//!
//! Only finite spans are represented. The pairing is
//! `(K_s, K_t) = f̌(t s*)`, linear in the first slot, and `ρ(x)` acts by
//! right translation `K_s ↦ K_{s(1,x*)}`.

use std::collections::BTreeMap;

use crate::enveloping::{degree_of, EnvElement, Grading, Straightener};
use crate::error::{Error, Result};
use crate::grading::sign;
use crate::groupword::{ad_group, canonicalize, GroupWord};
use crate::liesuper::{GVector, LieSuperalgebra};
use crate::linalg::CMatrix;
use crate::scalar::{Approx, Cx};
use crate::smonoid::{s_mul_with, s_star_with, MonoidElement};
use crate::superfunc::{exp_tail, f_check_with, LocalSuperfunction};

/// `Σ c_s K_s` with a bound on the norm distance to the exact vector.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct KernelVector {
    terms: BTreeMap<MonoidElement, Cx>,
    pub error: f64,
}

impl KernelVector {
    pub fn zero() -> Self {
        KernelVector::default()
    }

    /// `K_s` for a canonicalized `s`.
    pub fn kernel(alg: &LieSuperalgebra, s: &MonoidElement) -> Self {
        let mut w = KernelVector::zero();
        w.add_term(alg, s.clone(), Cx::one());
        w
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoidElement, &Cx)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·K_s`. Keys are canonical: abelian words collapsed and the
    /// enveloping part split into PBW monomials, using
    /// `K_{(g, Σ a_w w)} = Σ ā_w K_{(g, w)}`.
    pub fn add_term(&mut self, alg: &LieSuperalgebra, s: MonoidElement, c: Cx) {
        if c.is_zero() {
            return;
        }
        let g = canonicalize(alg, &s.g);
        for (w, a) in s.d.terms() {
            let key = MonoidElement::new(g.clone(), EnvElement::monomial(w.clone(), Cx::one()));
            let slot = self.terms.entry(key.clone()).or_insert_with(Cx::zero);
            *slot += &(&c * &a.conj());
            if slot.is_zero() {
                self.terms.remove(&key);
            }
        }
    }

    pub fn add(&self, alg: &LieSuperalgebra, other: &KernelVector) -> KernelVector {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(alg, s.clone(), c.clone());
        }
        out.error += other.error;
        out
    }

    pub fn scale(&self, c: &Cx) -> KernelVector {
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(s, a)| (s.clone(), a * c)).collect()
        };
        KernelVector { terms, error: self.error * c.abs_f64() }
    }
}

/// Common degree of the enveloping parts, or `Mixed`.
pub fn kernel_degree(alg: &LieSuperalgebra, w: &KernelVector) -> Grading {
    let mut deg = None;
    for s in w.terms.keys() {
        match degree_of(alg, &s.d) {
            Grading::Mixed => return Grading::Mixed,
            Grading::Pure(d) => match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Grading::Mixed,
                _ => {}
            },
        }
    }
    Grading::Pure(deg.unwrap_or_else(|| crate::grading::Degree::zero(alg.width())))
}

/// Applies `w ↦ w·(1, E)` termwise: `K_{(g,D)} ↦ K_{(g, D·E)}`.
fn right_env(st: &mut Straightener<'_>, w: &KernelVector, e: &EnvElement) -> KernelVector {
    let alg = st.algebra();
    let mut out = KernelVector { terms: BTreeMap::new(), error: w.error };
    for (s, c) in &w.terms {
        let d = st.product(&s.d, e);
        out.add_term(alg, MonoidElement::new(s.g.clone(), d), c.clone());
    }
    out
}

/// `ρ(x)` for homogeneous `x`.
pub fn rho_apply(alg: &LieSuperalgebra, x: &GVector, w: &KernelVector) -> Result<KernelVector> {
    let xs = EnvElement::from_gvector(&alg.star_g(x)?);
    let mut st = Straightener::new(alg);
    Ok(right_env(&mut st, w, &xs))
}

/// `(K_s, K_t) = f̌(t s*)`.
fn kernel_pair(f: &LocalSuperfunction, st: &mut Straightener<'_>, s: &MonoidElement, t: &MonoidElement, order: usize) -> Result<Approx> {
    let ss = s_star_with(st, s)?;
    let p = s_mul_with(st, t, &ss)?;
    f_check_with(f, st, &p, order)
}

fn pairing_with(
    f: &LocalSuperfunction,
    st: &mut Straightener<'_>,
    u: &KernelVector,
    w: &KernelVector,
    order: usize,
) -> Result<Approx> {
    let mut acc = Approx::zero();
    for (s, a) in &u.terms {
        for (t, b) in &w.terms {
            let k = kernel_pair(f, st, s, t, order)?;
            let coeff = (a * &b.conj()).to_c64();
            acc = acc + Approx::new(k.value * coeff, k.err * coeff.norm());
        }
    }
    Ok(acc)
}

/// Upper bound on the norm of the exact vector a truncated `w` stands for,
/// from `‖K_{(g,D)}‖ ≤ √C ‖D‖₁`; falls back to the Gram norm without `C`.
fn norm_bound(f: &LocalSuperfunction, st: &mut Straightener<'_>, w: &KernelVector, order: usize) -> Result<f64> {
    if let Some(c) = f.bound() {
        let weight: f64 = w.terms.iter().map(|(s, a)| a.abs_f64() * s.d.norm1()).sum();
        return Ok(weight * c.sqrt() + w.error);
    }
    let sq = pairing_with(f, st, w, w, order)?;
    Ok((sq.value.norm() + sq.err).sqrt() + w.error)
}

/// `(u, w)`, linear in `u` and conjugate-linear in `w`, with error bound
/// including the norm errors carried by both vectors.
pub fn pairing(f: &LocalSuperfunction, u: &KernelVector, w: &KernelVector, order: usize) -> Result<Approx> {
    let mut st = Straightener::new(f.algebra());
    let mut p = pairing_with(f, &mut st, u, w, order)?;
    if u.error > 0.0 || w.error > 0.0 {
        let nu = norm_bound(f, &mut st, u, order)?;
        let nw = norm_bound(f, &mut st, w, order)?;
        p = p.with_extra_err(u.error * nw + w.error * nu);
    }
    Ok(p)
}

/// `w(t) = Σ c_s f̌(t s*)`, evaluated pointwise.
pub fn evaluate(f: &LocalSuperfunction, w: &KernelVector, t: &MonoidElement, order: usize) -> Result<Approx> {
    let mut st = Straightener::new(f.algebra());
    let mut acc = Approx::zero();
    for (s, c) in &w.terms {
        let ss = s_star_with(&mut st, s)?;
        let p = s_mul_with(&mut st, t, &ss)?;
        let v = f_check_with(f, &mut st, &p, order)?;
        let c = c.to_c64();
        acc = acc + Approx::new(v.value * c, v.err * c.norm());
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct Gram {
    pub matrix: CMatrix,
    pub entry_error: f64,
}

/// `G_ij = (K_{sᵢ}, K_{s_j}) = f̌(s_j sᵢ*)`.
pub fn gram(f: &LocalSuperfunction, samples: &[MonoidElement], order: usize) -> Result<Gram> {
    let mut st = Straightener::new(f.algebra());
    let n = samples.len();
    let mut matrix = CMatrix::zeros(n, n);
    let mut entry_error = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let v = kernel_pair(f, &mut st, &samples[i], &samples[j], order)?;
            matrix[(i, j)] = v.value;
            entry_error = entry_error.max(v.err);
        }
    }
    Ok(Gram { matrix, entry_error })
}

/// `Σ_{Σrᵢ ≤ budget} ∏ Fᵢ^{rᵢ}/rᵢ!` over an ordered list of factors, where
/// `None` marks a factor inserted once without exponentiation.
fn ordered_exp_product(st: &mut Straightener<'_>, factors: &[Option<EnvElement>], fixed: &EnvElement, budget: usize) -> EnvElement {
    fn go(
        st: &mut Straightener<'_>,
        factors: &[Option<EnvElement>],
        fixed: &EnvElement,
        prefix: &EnvElement,
        budget: usize,
        out: &mut EnvElement,
    ) {
        let Some((first, rest)) = factors.split_first() else {
            out.add_scaled(prefix, &Cx::one());
            return;
        };
        match first {
            None => {
                let p = st.product(prefix, fixed);
                go(st, rest, fixed, &p, budget, out);
            }
            Some(h) => {
                let mut cur = prefix.clone();
                for r in 0..=budget {
                    if r > 0 {
                        cur = st.product(&cur, h).scale(&Cx::from_ratio(1, r as i64));
                    }
                    if cur.is_zero() {
                        break;
                    }
                    go(st, rest, fixed, &cur, budget - r, out);
                }
            }
        }
    }
    let mut out = EnvElement::zero();
    go(st, factors, fixed, &EnvElement::one(), budget, &mut out);
    out
}

/// `π(exp h) w = Σ_{r ≤ R} ρ(h)ʳ w / r!`, carrying a norm tail bound
/// `Σ|c_s| ‖D_s‖₁ √C · Σ_{r>R} ‖h‖₁ʳ/r!`.
pub fn pi_exp_apply(f: &LocalSuperfunction, h: &GVector, w: &KernelVector, order: usize) -> Result<KernelVector> {
    let alg = f.algebra();
    GroupWord::exp(alg, h.clone())?;
    if h.is_zero() {
        return Ok(w.clone());
    }
    let mut st = Straightener::new(alg);
    let hs = EnvElement::from_gvector(&alg.star_g(h)?);
    let e = ordered_exp_product(&mut st, &[Some(hs)], &EnvElement::one(), order);
    let mut out = right_env(&mut st, w, &e);
    let weight: f64 = w.terms.iter().map(|(s, c)| c.abs_f64() * s.d.norm1()).sum();
    let c = f.bound().unwrap_or(f64::INFINITY);
    out.error += weight * c.sqrt() * exp_tail(h.norm1(), order);
    Ok(out)
}

/// `π(g)` for a word, applying factors right to left.
pub fn pi_apply(f: &LocalSuperfunction, g: &GroupWord, w: &KernelVector, order: usize) -> Result<KernelVector> {
    let mut out = w.clone();
    for h in g.factors().iter().rev() {
        out = pi_exp_apply(f, h, &out, order)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub max_deviation: f64,
    /// Sum of the error bounds attached to the worst comparison.
    pub error_bound: f64,
    pub checks: usize,
    pub worst: Option<String>,
    pub passed: bool,
}

impl IdentityReport {
    fn new() -> Self {
        IdentityReport { max_deviation: 0.0, error_bound: 0.0, checks: 0, worst: None, passed: true }
    }

    fn record(&mut self, lhs: Approx, rhs: Approx, label: impl FnOnce() -> String) {
        self.checks += 1;
        let dev = (lhs.value - rhs.value).norm();
        if dev > self.max_deviation || self.worst.is_none() {
            self.max_deviation = self.max_deviation.max(dev);
            self.error_bound = lhs.err + rhs.err;
            self.worst = Some(label());
        }
    }

    fn finish(mut self, tol: f64) -> Self {
        self.passed = self.max_deviation <= tol;
        self
    }
}

/// `(ρ(x)K_s, K_t) = (K_s, ρ(x*)K_t)`. The left side is `f̌(t (s(1,x*))*)`;
/// the right side is computed as `conj (ρ(x*)K_t, K_s)`, so a kernel that is
/// not Hermitian shows up as a deviation.
pub fn validate_star_rep(
    f: &LocalSuperfunction,
    samples: &[MonoidElement],
    basis: &[GVector],
    tol: f64,
    order: usize,
) -> Result<IdentityReport> {
    let alg = f.algebra();
    let mut st = Straightener::new(alg);
    let mut rep = IdentityReport::new();
    for x in basis {
        let xs = EnvElement::from_gvector(&alg.star_g(x)?);
        let xss = EnvElement::from_gvector(&alg.star_g(&alg.star_g(x)?)?);
        for (i, s) in samples.iter().enumerate() {
            let rho_s = MonoidElement::new(s.g.clone(), st.product(&s.d, &xs));
            for (j, t) in samples.iter().enumerate() {
                let lhs = kernel_pair(f, &mut st, &rho_s, t, order)?;
                let rho_t = MonoidElement::new(t.g.clone(), st.product(&t.d, &xss));
                let rhs = kernel_pair(f, &mut st, &rho_t, s, order)?.conj();
                rep.record(lhs, rhs, || format!("x = {x:?}, s = #{i}, t = #{j}"));
            }
        }
    }
    Ok(rep.finish(tol))
}

/// `(ρ(x)ρ(y)K_s, K_t) − B(a,b)(ρ(y)ρ(x)K_s, K_t) = (ρ([x,y])K_s, K_t)`.
pub fn validate_bracket(
    f: &LocalSuperfunction,
    samples: &[MonoidElement],
    pairs: &[(GVector, GVector)],
    tol: f64,
    order: usize,
) -> Result<IdentityReport> {
    let alg = f.algebra();
    let mut rep = IdentityReport::new();
    for (x, y) in pairs {
        let a = alg.homogeneous_degree(x).ok_or(Error::NotHomogeneous)?;
        let b = alg.homogeneous_degree(y).ok_or(Error::NotHomogeneous)?;
        let bsign = sign(a, b).to_cx();
        let xy = alg.bracket(x, y);
        for (i, s) in samples.iter().enumerate() {
            let ks = KernelVector::kernel(alg, s);
            let xy_s = rho_apply(alg, x, &rho_apply(alg, y, &ks)?)?;
            let yx_s = rho_apply(alg, y, &rho_apply(alg, x, &ks)?)?;
            let lhs_vec = xy_s.add(alg, &yx_s.scale(&-bsign.clone()));
            let rhs_vec = if xy.is_zero() { KernelVector::zero() } else { rho_apply(alg, &xy, &ks)? };
            for (j, t) in samples.iter().enumerate() {
                let kt = KernelVector::kernel(alg, t);
                let lhs = pairing(f, &lhs_vec, &kt, order)?;
                let rhs = pairing(f, &rhs_vec, &kt, order)?;
                rep.record(lhs, rhs, || format!("x = {x:?}, y = {y:?}, s = #{i}, t = #{j}"));
            }
        }
    }
    Ok(rep.finish(tol))
}

/// `(π(g)ρ(x)π(g)⁻¹K_s, K_t) = (ρ(Ad(g)x)K_s, K_t)`. The left side expands
/// all exponentials with a joint order cutoff `Σ rᵢ ≤ R`, which reproduces
/// `Ad(g)` exactly once `R` reaches the nilpotency order.
pub fn validate_equivariance(
    f: &LocalSuperfunction,
    g: &GroupWord,
    x: &GVector,
    samples: &[MonoidElement],
    order: usize,
    tol: f64,
) -> Result<IdentityReport> {
    let alg = f.algebra();
    GroupWord::new(alg, g.factors().to_vec())?;
    let mut st = Straightener::new(alg);
    let xs = EnvElement::from_gvector(&alg.star_g(x)?);
    // π(g⁻¹) appends h₁^{a₁}⋯h_k^{a_k}, then x*, then π(g) appends
    // (−h_k)^{b_k}⋯(−h₁)^{b₁}.
    let mut factors: Vec<Option<EnvElement>> = g.factors().iter().map(EnvElement::from_gvector).map(Some).collect();
    factors.push(None);
    factors.extend(g.factors().iter().rev().map(|h| Some(EnvElement::from_gvector(&h.neg()))));
    let e = ordered_exp_product(&mut st, &factors, &xs, order);

    let ad = ad_group(alg, g)?;
    let moved = ad.apply(x);
    let c = f.bound().unwrap_or(f64::INFINITY);
    let tail = c * x.norm1() * exp_tail(2.0 * g.norm1(), order) + ad.error_bound * c;

    let mut rep = IdentityReport::new();
    for (i, s) in samples.iter().enumerate() {
        let ks = KernelVector::kernel(alg, s);
        let mut lhs_vec = right_env(&mut st, &ks, &e);
        let scale: f64 = s.d.norm1();
        lhs_vec.error = tail.sqrt() * scale;
        let rhs_vec = if moved.is_zero() { KernelVector::zero() } else { rho_apply(alg, &moved, &ks)? };
        for (j, t) in samples.iter().enumerate() {
            let kt = KernelVector::kernel(alg, t);
            let lhs = pairing_with(f, &mut st, &lhs_vec, &kt, order)?;
            let lhs = lhs.with_extra_err(tail * scale * t.d.norm1());
            let rhs = pairing_with(f, &mut st, &rhs_vec, &kt, order)?;
            rep.record(lhs, rhs, || format!("s = #{i}, t = #{j}"));
        }
    }
    Ok(rep.finish(tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::superfunc::{check_positive_definite, Domain};
    use num::complex::Complex64;

    fn gaussian(n_f: usize) -> LocalSuperfunction {
        fixtures::gaussian_functional(n_f, Domain::Unrestricted)
    }

    #[test]
    fn unit_gram_is_lambda_one() {
        let f = gaussian(4);
        let g = gram(&f, &[MonoidElement::unit()], 4).unwrap();
        assert_eq!(g.matrix[(0, 0)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn two_point_gram_matches_posdef_report() {
        let f = gaussian(40);
        let a = f.algebra().clone();
        let h = a.basis_vector("h").unwrap().scale(&Cx::from_ratio(1, 2));
        let samples = vec![MonoidElement::unit(), MonoidElement::group(GroupWord::exp(&a, h).unwrap())];
        let g = gram(&f, &samples, 36).unwrap();
        let r = check_positive_definite(&f, &samples, 1e-12, 1e-10, 36).unwrap();
        assert!((&g.matrix - &r.matrix).norm() < 1e-12);
    }

    #[test]
    fn rho_examples() {
        let a = fixtures::toy_with_even();
        let x = a.basis_vector("x").unwrap();
        let k1 = KernelVector::kernel(&a, &MonoidElement::unit());
        let got = rho_apply(&a, &x, &k1).unwrap();
        let xs = EnvElement::from_gvector(&a.star_g(&x).unwrap());
        assert_eq!(got, KernelVector::kernel(&a, &MonoidElement::env(xs)));

        let h = a.basis_vector("h").unwrap();
        let d = EnvElement::generator(a.index_of("y").unwrap());
        let kd = KernelVector::kernel(&a, &MonoidElement::env(d.clone()));
        let got = rho_apply(&a, &h, &kd).unwrap();
        let minus_dh = crate::enveloping::nf_product(&a, &d, &EnvElement::from_gvector(&h)).scale(&Cx::from_int(-1));
        assert_eq!(got, KernelVector::kernel(&a, &MonoidElement::env(minus_dh)));
    }

    #[test]
    fn kernel_degrees() {
        let a = fixtures::toy();
        let k1 = KernelVector::kernel(&a, &MonoidElement::unit());
        assert_eq!(kernel_degree(&a, &k1), Grading::Pure(crate::grading::Degree::zero(2)));
        let kx = KernelVector::kernel(&a, &MonoidElement::env(EnvElement::generator(a.index_of("x").unwrap())));
        assert_eq!(kernel_degree(&a, &kx), Grading::Pure(crate::grading::Degree::new(&[0, 1]).unwrap()));
        assert_eq!(kernel_degree(&a, &k1.add(&a, &kx)), Grading::Mixed);
    }

    #[test]
    fn pi_exp_reproduces_gaussian() {
        let f = gaussian(32);
        let a = f.algebra().clone();
        let k1 = KernelVector::kernel(&a, &MonoidElement::unit());
        let h = a.basis_vector("h").unwrap();
        let w = pi_exp_apply(&f, &h, &k1, 30).unwrap();
        let p = pairing(&f, &w, &k1, 30).unwrap();
        assert!((p.value.re - (-0.5f64).exp()).abs() < 1e-12);
        assert!(p.err < 1e-6);
        assert_eq!(pi_exp_apply(&f, &GVector::zero(1), &k1, 30).unwrap(), k1);
    }

    #[test]
    fn star_rep_and_bracket_on_gaussian() {
        let f = gaussian(24);
        let a = f.algebra().clone();
        let h = a.basis_vector("h").unwrap();
        let samples: Vec<MonoidElement> = [0i64, 1, -2]
            .iter()
            .map(|&k| MonoidElement::group(GroupWord::exp(&a, h.scale(&Cx::from_ratio(k, 4))).unwrap()))
            .collect();
        let r = validate_star_rep(&f, &samples, std::slice::from_ref(&h), 1e-9, 20).unwrap();
        assert!(r.passed, "{r:?}");
        let r = validate_bracket(&f, &samples, &[(h.clone(), h.clone())], 1e-9, 20).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn non_hermitian_table_is_flagged() {
        let a = fixtures::gaussian_line();
        let mut table = BTreeMap::new();
        table.insert(vec![], Cx::one());
        table.insert(vec![0], Cx::from_ratio(1, 3));
        table.insert(vec![0, 0], Cx::from_ratio(1, 2));
        let f = LocalSuperfunction::state(a.clone(), table, 4, 2.0, Domain::Unrestricted).unwrap();
        let h = a.basis_vector("h").unwrap();
        let samples = vec![MonoidElement::unit(), MonoidElement::env(EnvElement::generator(0))];
        let r = validate_star_rep(&f, &samples, &[h], 1e-9, 0).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn equivariance_identity_word() {
        let f = gaussian(12);
        let a = f.algebra().clone();
        let h = a.basis_vector("h").unwrap();
        let r = validate_equivariance(&f, &GroupWord::identity(), &h, &[MonoidElement::unit()], 4, 1e-12).unwrap();
        assert!(r.passed);
        assert_eq!(r.max_deviation, 0.0);
    }

    #[test]
    fn reproducing_property() {
        let f = gaussian(24);
        let a = f.algebra().clone();
        let h = a.basis_vector("h").unwrap();
        let s = MonoidElement::group(GroupWord::exp(&a, h.scale(&Cx::from_ratio(1, 3))).unwrap());
        let t = MonoidElement::env(EnvElement::generator(0));
        let mut w = KernelVector::kernel(&a, &s).scale(&Cx::new(Cx::from_int(2).re, Cx::from_int(-1).re));
        w = w.add(&a, &KernelVector::kernel(&a, &MonoidElement::unit()));
        let direct = evaluate(&f, &w, &t, 20).unwrap();
        let paired = pairing(&f, &w, &KernelVector::kernel(&a, &t), 20).unwrap();
        assert!((direct.value - paired.value).norm() < 1e-12);
    }
}
