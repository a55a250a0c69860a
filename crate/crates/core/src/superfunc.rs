//! Local superfunctions on a neighborhood of the identity.
//!
//! Two backends are supported. A [`StateFunctional`] stores the Taylor data
//! `λ(D) = f(D)(1)` on PBW monomials and evaluates `f̌(g, D)` through the
//! left-invariant exponential series. A [`CoefficientForm`] stores `f` as a
//! truncated series in the odd variables with polynomial coefficients in the
//! even exponential coordinates, and requires an abelian even part.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::complex::Complex64;
use nalgebra::DVector;
use num::One;

use crate::enveloping::{pbw_words, word_degree, word_names, EnvElement, Straightener, Word};
use crate::error::{Error, Result};
use crate::groupword::{abelian_coordinates, canonicalize, gw_inverse, gw_mul, GroupWord};
use crate::liesuper::LieSuperalgebra;
use crate::linalg::{hermitian_deviation, hermitian_eigenvalues, CMatrix};
use crate::poly::Poly;
use crate::prerep::{validate_prerep, FiniteDimPreRep};
use crate::scalar::{ratio_to_f64, Approx, Cx};
use crate::smonoid::{s_mul_with, s_star_with, MonoidElement};
use crate::superdomain::{FormalVariable, FormalVariableSet, TruncatedSeries};

/// Where the superfunction is declared. Samples for positive-definiteness
/// must lie in `U`; evaluation is admitted on `V ⊇ UU⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    Unrestricted,
    /// `V` is the box `|xᵢ| ≤ half_widths[i]` in exponential coordinates of
    /// an abelian g₀, and `U` is the half-size box.
    AbelianBox { half_widths: Vec<f64> },
    /// `U` is this explicit list of words; `V = {p⁻¹q : p, q ∈ U}`.
    Words(Vec<GroupWord>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateFunctional {
    /// Values on PBW words; absent words of length `≤ n_f` are zero.
    pub table: BTreeMap<Word, Cx>,
    pub n_f: usize,
    pub c: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientForm {
    /// Variables are the basis elements of nonzero degree; coefficients are
    /// polynomials in the degree-zero coordinates.
    pub series: TruncatedSeries,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Backend {
    State(StateFunctional),
    Coefficient(CoefficientForm),
}

#[derive(Clone, Debug)]
pub struct LocalSuperfunction {
    alg: LieSuperalgebra,
    backend: Backend,
    domain: Domain,
}

#[derive(Clone, Debug)]
pub struct GramReport {
    pub matrix: CMatrix,
    /// Largest error bound over the entries.
    pub entry_error: f64,
    pub hermitian_deviation: f64,
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    pub condition_i_violations: Vec<Vec<String>>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniformBoundReport {
    pub max: f64,
    pub argmax: Option<(Vec<String>, usize)>,
    pub bound: f64,
    pub exceeds: bool,
}

fn factorial(k: u32) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

fn multi_factorial(mu: &[u32]) -> BigRational {
    BigRational::from_integer(mu.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k)))
}

/// `Σ_{m>r} ν^m/m!`, summed from the first omitted term.
pub fn exp_tail(nu: f64, r: usize) -> f64 {
    if nu <= 0.0 {
        return 0.0;
    }
    let m0 = r + 1;
    let log_first = m0 as f64 * nu.ln() - (1..=m0).map(|j| (j as f64).ln()).sum::<f64>();
    let mut term = log_first.exp();
    let mut sum = 0.0;
    let mut m = m0;
    while term > 0.0 && term > sum * 1e-18 {
        sum += term;
        m += 1;
        term *= nu / m as f64;
        if m > m0 + 10_000 {
            break;
        }
    }
    sum * (1.0 + 1e-12)
}

/// Splits a PBW word into exponents over the degree-zero basis elements and
/// over the remaining ones, in basis order.
fn split_word(alg: &LieSuperalgebra, w: &[usize]) -> (Vec<u32>, Vec<u32>) {
    let even = alg.even_indices();
    let odd = alg.odd_indices();
    let mut mu = vec![0u32; even.len()];
    let mut nu = vec![0u32; odd.len()];
    for &i in w {
        if let Some(p) = even.iter().position(|&e| e == i) {
            mu[p] += 1;
        } else if let Some(p) = odd.iter().position(|&o| o == i) {
            nu[p] += 1;
        }
    }
    (mu, nu)
}

fn join_word(alg: &LieSuperalgebra, mu: &[u32], nu: &[u32]) -> Word {
    let mut w = Vec::new();
    for (p, &i) in alg.even_indices().iter().enumerate() {
        w.extend(std::iter::repeat_n(i, mu[p] as usize));
    }
    for (p, &i) in alg.odd_indices().iter().enumerate() {
        w.extend(std::iter::repeat_n(i, nu[p] as usize));
    }
    w
}

/// Formal variables for the coefficient backend of `alg`.
pub fn odd_variables(alg: &LieSuperalgebra, truncation: u32) -> Result<FormalVariableSet> {
    let vars = alg
        .odd_indices()
        .into_iter()
        .map(|i| FormalVariable { name: alg.name(i).to_string(), degree: alg.degree(i) })
        .collect();
    FormalVariableSet::new(vars, truncation)
}

fn real_coordinate(c: &Cx) -> Option<f64> {
    c.is_real().then(|| ratio_to_f64(&c.re))
}

impl LocalSuperfunction {
    /// State-functional backend. Every stored word must be a PBW word of
    /// length `≤ n_f` and satisfy `|λ| ≤ C`.
    pub fn state(alg: LieSuperalgebra, table: BTreeMap<Word, Cx>, n_f: usize, c: f64, domain: Domain) -> Result<Self> {
        if c.is_nan() || c <= 0.0 {
            return Err(Error::Schema { field: "C".into(), message: format!("uniform bound must be positive, got {c}") });
        }
        for (w, v) in &table {
            if w.iter().any(|&i| i >= alg.dim()) {
                return Err(Error::Schema { field: "entries".into(), message: "word index out of range".into() });
            }
            let single = EnvElement::monomial(w.clone(), Cx::one());
            if !single.is_normal(&alg) {
                return Err(Error::Schema {
                    field: "entries".into(),
                    message: format!("word {:?} is not in PBW order", word_names(&alg, w)),
                });
            }
            if w.len() > n_f {
                return Err(Error::Schema {
                    field: "entries".into(),
                    message: format!("word {:?} longer than N_f = {n_f}", word_names(&alg, w)),
                });
            }
            let m = v.abs_f64();
            if m > c {
                return Err(Error::UniformBound { word: word_names(&alg, w).join(" "), value: m, bound: c });
            }
        }
        let table = table.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let f = LocalSuperfunction { alg, backend: Backend::State(StateFunctional { table, n_f, c }), domain };
        f.check_domain_shape()?;
        Ok(f)
    }

    /// Coefficient backend; g₀ must be abelian and the series variables must
    /// be exactly the basis elements of nonzero degree.
    pub fn coefficient(alg: LieSuperalgebra, series: TruncatedSeries, domain: Domain) -> Result<Self> {
        if !alg.even_part_is_abelian() {
            return Err(Error::NonAbelian);
        }
        let expected = odd_variables(&alg, series.vars().truncation())?;
        if *series.vars() != expected || series.coords() != alg.even_indices().len() {
            return Err(Error::VariableMismatch);
        }
        if matches!(domain, Domain::Words(_)) {
            return Err(Error::Schema { field: "domain".into(), message: "coefficient forms need a box domain".into() });
        }
        let f = LocalSuperfunction { alg, backend: Backend::Coefficient(CoefficientForm { series }), domain };
        f.check_domain_shape()?;
        Ok(f)
    }

    fn check_domain_shape(&self) -> Result<()> {
        match &self.domain {
            Domain::AbelianBox { half_widths } => {
                if !self.alg.even_part_is_abelian() {
                    return Err(Error::NonAbelian);
                }
                if half_widths.len() != self.alg.even_indices().len() {
                    return Err(Error::Dimension(format!(
                        "box has {} half-widths, g₀ has dimension {}",
                        half_widths.len(),
                        self.alg.even_indices().len()
                    )));
                }
                Ok(())
            }
            Domain::Words(ws) => {
                for w in ws {
                    GroupWord::new(&self.alg, w.factors().to_vec())?;
                }
                Ok(())
            }
            Domain::Unrestricted => Ok(()),
        }
    }

    pub fn algebra(&self) -> &LieSuperalgebra {
        &self.alg
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// The uniform-bound constant (`None` for the coefficient backend).
    pub fn bound(&self) -> Option<f64> {
        match &self.backend {
            Backend::State(s) => Some(s.c),
            Backend::Coefficient(_) => None,
        }
    }

    /// `λ(w) = f(w)(1)` for a PBW word.
    pub fn lambda(&self, w: &[usize]) -> Result<Cx> {
        match &self.backend {
            Backend::State(s) => {
                if w.len() > s.n_f {
                    return Err(Error::FiltrationExhausted { needed: w.len(), available: s.n_f });
                }
                Ok(s.table.get(w).cloned().unwrap_or_else(Cx::zero))
            }
            Backend::Coefficient(c) => {
                let zero = vec![Cx::zero(); self.alg.even_indices().len()];
                Ok(coefficient_value(&self.alg, c, w, &zero))
            }
        }
    }

    /// `λ` extended linearly to a normal-form element.
    pub fn lambda_env(&self, d: &EnvElement) -> Result<Cx> {
        let mut acc = Cx::zero();
        for (w, c) in d.terms() {
            let v = self.lambda(w)?;
            if !v.is_zero() {
                acc += &(c * &v);
            }
        }
        Ok(acc)
    }

    fn box_contains(&self, g: &GroupWord, scale: f64) -> Result<bool> {
        let Domain::AbelianBox { half_widths } = &self.domain else { return Ok(true) };
        let x = abelian_coordinates(&self.alg, g)?;
        Ok(x.iter().zip(half_widths).all(|(c, w)| real_coordinate(c).is_some_and(|v| v.abs() <= w * scale)))
    }

    /// Membership of a sample group element in `U`.
    pub fn in_u(&self, g: &GroupWord) -> Result<bool> {
        match &self.domain {
            Domain::Unrestricted => Ok(true),
            Domain::AbelianBox { .. } => self.box_contains(g, 0.5),
            Domain::Words(ws) => {
                let cg = canonicalize(&self.alg, g);
                Ok(ws.iter().any(|w| canonicalize(&self.alg, w) == cg))
            }
        }
    }

    /// Membership of an evaluation point in `V`.
    pub fn in_v(&self, g: &GroupWord) -> Result<bool> {
        match &self.domain {
            Domain::Unrestricted => Ok(true),
            Domain::AbelianBox { .. } => self.box_contains(g, 1.0),
            Domain::Words(ws) => {
                let cg = canonicalize(&self.alg, g);
                if g.is_empty() || cg.is_empty() {
                    return Ok(true);
                }
                for p in ws {
                    for q in ws {
                        if canonicalize(&self.alg, &gw_mul(&gw_inverse(p), q)) == cg {
                            return Ok(true);
                        }
                    }
                }
                Ok(false)
            }
        }
    }

    /// Stored monomials of nonzero degree with nonzero value.
    pub fn condition_i_violations(&self) -> Vec<Vec<String>> {
        match &self.backend {
            Backend::State(s) => s
                .table
                .keys()
                .filter(|w| !word_degree(&self.alg, w).is_zero())
                .map(|w| word_names(&self.alg, w))
                .collect(),
            Backend::Coefficient(c) => c
                .series
                .terms()
                .filter(|(nu, p)| {
                    !p.is_zero() && !word_degree(&self.alg, &join_word(&self.alg, &vec![0; c.series.coords()], nu)).is_zero()
                })
                .map(|(nu, _)| word_names(&self.alg, &join_word(&self.alg, &vec![0; c.series.coords()], nu)))
                .collect(),
        }
    }
}

/// `ν!·(∂^μ f_ν)(x)` for the word `x^μ ξ^ν`.
fn coefficient_value(alg: &LieSuperalgebra, c: &CoefficientForm, w: &[usize], x: &[Cx]) -> Cx {
    let (mu, nu) = split_word(alg, w);
    let f = c.series.coeff(&nu);
    if f.is_zero() {
        return Cx::zero();
    }
    f.derivative(&mu).eval(x).scale(&multi_factorial(&nu))
}

/// Left-multiplies by `h₁^{r₁}⋯h_k^{r_k}/∏rᵢ!` over all exponents with
/// `Σrᵢ ≤ budget` and accumulates `λ` of each product.
fn series_sum(
    f: &LocalSuperfunction,
    st: &mut Straightener<'_>,
    hs: &[EnvElement],
    x: &EnvElement,
    budget: usize,
    acc: &mut Cx,
) -> Result<()> {
    let Some((last, rest)) = hs.split_last() else {
        *acc += &f.lambda_env(x)?;
        return Ok(());
    };
    let mut cur = x.clone();
    for r in 0..=budget {
        if r > 0 {
            cur = st.product(last, &cur).scale(&Cx::from_ratio(1, r as i64));
        }
        if cur.is_zero() {
            break;
        }
        series_sum(f, st, rest, &cur, budget - r, acc)?;
    }
    Ok(())
}

/// `f̌(g, D)` with reported truncation error.
pub fn f_check(f: &LocalSuperfunction, s: &MonoidElement, order: usize) -> Result<Approx> {
    let mut st = Straightener::new(&f.alg);
    f_check_with(f, &mut st, s, order)
}

pub(crate) fn f_check_with(
    f: &LocalSuperfunction,
    st: &mut Straightener<'_>,
    s: &MonoidElement,
    order: usize,
) -> Result<Approx> {
    let g = canonicalize(&f.alg, &s.g);
    if !f.in_v(&g)? {
        return Err(Error::OutsideDomain(format!("{:?}", g.factors())));
    }
    let d = st.normalize(&s.d);
    match &f.backend {
        Backend::State(sf) => {
            let needed = if g.is_empty() { 0 } else { order } + d.filtration_degree();
            if needed > sf.n_f {
                return Err(Error::FiltrationExhausted { needed, available: sf.n_f });
            }
            let hs: Vec<EnvElement> = g.factors().iter().map(EnvElement::from_gvector).collect();
            let mut acc = Cx::zero();
            series_sum(f, st, &hs, &d, if g.is_empty() { 0 } else { order }, &mut acc)?;
            let value = acc.to_c64();
            let tail = if g.is_empty() { 0.0 } else { sf.c * d.norm1() * exp_tail(g.norm1(), order) };
            Ok(Approx::new(value, tail + 2.0 * f64::EPSILON * value.norm()))
        }
        Backend::Coefficient(c) => {
            let x = abelian_coordinates(&f.alg, &g)?;
            let mut acc = Cx::zero();
            for (w, coeff) in d.terms() {
                acc += &(coeff * &coefficient_value(&f.alg, c, w, &x));
            }
            let value = acc.to_c64();
            Ok(Approx::new(value, 2.0 * f64::EPSILON * value.norm()))
        }
    }
}

/// Gram matrix `G_ij = f̌(sᵢ* s_j)` with Hermitian and PSD certification.
pub fn check_positive_definite(
    f: &LocalSuperfunction,
    samples: &[MonoidElement],
    tol_h: f64,
    tol_psd: f64,
    order: usize,
) -> Result<GramReport> {
    for s in samples {
        if !f.in_u(&s.g)? {
            return Err(Error::OutsideDomain(format!("sample {:?} is not in U", s.g.factors())));
        }
    }
    let mut st = Straightener::new(&f.alg);
    let n = samples.len();
    let stars = samples.iter().map(|s| s_star_with(&mut st, s)).collect::<Result<Vec<_>>>()?;
    let mut matrix = CMatrix::zeros(n, n);
    let mut entry_error = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let p = s_mul_with(&mut st, &stars[i], &samples[j])?;
            let v = f_check_with(f, &mut st, &p, order)?;
            matrix[(i, j)] = v.value;
            entry_error = entry_error.max(v.err);
        }
    }
    Ok(gram_report(matrix, entry_error, f.condition_i_violations(), tol_h, tol_psd))
}

pub(crate) fn gram_report(
    matrix: CMatrix,
    entry_error: f64,
    condition_i_violations: Vec<Vec<String>>,
    tol_h: f64,
    tol_psd: f64,
) -> GramReport {
    let dev = hermitian_deviation(&matrix);
    let eigenvalues = if matrix.nrows() == 0 { Vec::new() } else { hermitian_eigenvalues(&matrix) };
    let min_eigenvalue = eigenvalues.first().copied().unwrap_or(0.0);
    let passed = dev <= tol_h && min_eigenvalue >= -tol_psd && condition_i_violations.is_empty();
    GramReport { matrix, entry_error, hermitian_deviation: dev, eigenvalues, min_eigenvalue, condition_i_violations, passed }
}

/// One term `a · ∂^μ ∂/∂e*_ν` of a differential-operator descriptor.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialTerm {
    pub mu: Vec<u32>,
    pub nu: Vec<u32>,
    pub coeff: Cx,
}

impl PartialTerm {
    pub fn odd_order(&self) -> u32 {
        self.nu.iter().sum()
    }
}

/// `|f|_{Z,∂} = max_{p∈Z} |∂f(p)|`; zero on an empty grid.
pub fn seminorm(f: &LocalSuperfunction, grid: &[Vec<Cx>], partial: &[PartialTerm]) -> Result<f64> {
    let Backend::Coefficient(c) = &f.backend else { return Err(Error::NonAbelian) };
    let n_even = c.series.coords();
    let n_odd = c.series.vars().len();
    for t in partial {
        if t.mu.len() != n_even || t.nu.len() != n_odd {
            return Err(Error::Dimension("operator descriptor does not match the variables".into()));
        }
    }
    let mut best = 0.0f64;
    for p in grid {
        if p.len() != n_even {
            return Err(Error::Dimension(format!("grid point has {} coordinates, expected {n_even}", p.len())));
        }
        if let Domain::AbelianBox { half_widths } = &f.domain {
            let inside = p.iter().zip(half_widths).all(|(x, w)| real_coordinate(x).is_some_and(|v| v.abs() <= *w));
            if !inside {
                return Err(Error::OutsideDomain(format!("grid point {p:?}")));
            }
        }
        let mut acc = Cx::zero();
        for t in partial {
            let fi = c.series.coeff(&t.nu);
            if fi.is_zero() {
                continue;
            }
            let v = fi.derivative(&t.mu).eval(p).scale(&multi_factorial(&t.nu));
            acc += &(&t.coeff * &v);
        }
        best = best.max(acc.abs_f64());
    }
    Ok(best)
}

/// Sup of `|f(D)(x)|` over PBW monomials of length `≤ budget` and the given
/// points, compared against `bound`. Finite evidence only.
pub fn uniform_bound_check(
    f: &LocalSuperfunction,
    budget: usize,
    points: &[GroupWord],
    order: usize,
    bound: f64,
) -> Result<UniformBoundReport> {
    let mut st = Straightener::new(&f.alg);
    let mut max = 0.0f64;
    let mut argmax = None;
    for w in pbw_words(&f.alg, budget) {
        let d = EnvElement::monomial(w.clone(), Cx::one());
        for (pi, g) in points.iter().enumerate() {
            let v = f_check_with(f, &mut st, &MonoidElement::new(g.clone(), d.clone()), order)?;
            let m = v.value.norm();
            if m > max {
                max = m;
                argmax = Some((word_names(&f.alg, &w), pi));
            }
        }
    }
    Ok(UniformBoundReport { max, argmax, bound, exceeds: max > bound })
}

/// The state functional `λ(x^μ ξ^ν) = ν!·(∂^μ f_ν)(0)` on all PBW words of
/// length `≤ n_f`.
pub fn coefficient_to_functional(f: &LocalSuperfunction, n_f: usize) -> Result<LocalSuperfunction> {
    let Backend::Coefficient(_) = &f.backend else { return Err(Error::NonAbelian) };
    let mut table = BTreeMap::new();
    let mut c = 0.0f64;
    for w in pbw_words(&f.alg, n_f) {
        let v = f.lambda(&w)?;
        if !v.is_zero() {
            c = c.max(v.abs_f64());
            table.insert(w, v);
        }
    }
    let c = if c > 0.0 { c } else { 1.0 };
    LocalSuperfunction::state(f.alg.clone(), table, n_f, c, f.domain.clone())
}

/// Inverse of [`coefficient_to_functional`] on Taylor data: `f_ν` is the
/// polynomial with `∂^μ f_ν(0) = λ(x^μ ξ^ν)/ν!`.
pub fn functional_s_iso(f: &LocalSuperfunction) -> Result<LocalSuperfunction> {
    let Backend::State(sf) = &f.backend else { return Err(Error::Schema { field: "backend".into(), message: "expected a state functional".into() }) };
    if !f.alg.even_part_is_abelian() {
        return Err(Error::NonAbelian);
    }
    let vars = odd_variables(&f.alg, sf.n_f as u32)?;
    let n_even = f.alg.even_indices().len();
    let mut grouped: BTreeMap<Vec<u32>, Vec<(Vec<u32>, Cx)>> = BTreeMap::new();
    for (w, v) in &sf.table {
        let (mu, nu) = split_word(&f.alg, w);
        let v = v.scale(&multi_factorial(&nu).recip());
        grouped.entry(nu).or_default().push((mu, v));
    }
    let mut series = TruncatedSeries::zero(vars, n_even);
    for (nu, vals) in grouped {
        series.add_term(nu, Poly::from_taylor(n_even, vals))?;
    }
    let domain = match &f.domain {
        Domain::Words(_) => Domain::Unrestricted,
        d => d.clone(),
    };
    LocalSuperfunction::coefficient(f.alg.clone(), series, domain)
}

/// `f̌(t s*)`, the kernel value `(K_s, K_t)`.
pub fn kernel(f: &LocalSuperfunction, s: &MonoidElement, t: &MonoidElement, order: usize) -> Result<Approx> {
    let mut st = Straightener::new(&f.alg);
    let ss = s_star_with(&mut st, s)?;
    let p = s_mul_with(&mut st, t, &ss)?;
    f_check_with(f, &mut st, &p, order)
}

/// Matrix coefficient `λ(D) = (ρ(D)v, v)` of a valid pre-representation at a
/// homogeneous vector, on all PBW words of length `≤ n_f`. Entries are the
/// exact values of the computed floats; `C` is the largest modulus.
pub fn matrix_coefficient_functional(
    rep: &FiniteDimPreRep,
    v: &DVector<Complex64>,
    n_f: usize,
    tol: f64,
) -> Result<LocalSuperfunction> {
    let report = validate_prerep(rep, tol)?;
    if !report.passed {
        return Err(Error::InvalidPrerep("representation fails validation".into()));
    }
    if v.len() != rep.space.dim() {
        return Err(Error::Dimension(format!("vector of length {} in a space of dimension {}", v.len(), rep.space.dim())));
    }
    let degs = rep.space.coordinate_degrees();
    let mut support = v.iter().zip(&degs).filter(|(x, _)| x.norm() > 0.0).map(|(_, d)| *d);
    if let Some(first) = support.next() {
        if support.any(|d| d != first) {
            return Err(Error::NotHomogeneous);
        }
    }
    let alg = &rep.algebra;
    let p = rep.space.ordinary_form();
    let pv = (&p * v).adjoint();
    let mut table = BTreeMap::new();
    let mut c = 0.0f64;
    for w in pbw_words(alg, n_f) {
        if !word_degree(alg, &w).is_zero() {
            continue;
        }
        let mut x = v.clone();
        for &i in w.iter().rev() {
            x = &rep.rho[i] * x;
        }
        let value = (&pv * x)[(0, 0)];
        if value == Complex64::new(0.0, 0.0) {
            continue;
        }
        c = c.max(value.norm());
        table.insert(w, exact_value(value)?);
    }
    let c = if c > 0.0 { c } else { 1.0 };
    LocalSuperfunction::state(alg.clone(), table, n_f, c, Domain::Unrestricted)
}

/// Converts a float value to an exact table entry.
pub fn exact_value(z: Complex64) -> Result<Cx> {
    Cx::from_c64(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::liesuper::GVector;

    fn gaussian(n_f: usize) -> LocalSuperfunction {
        fixtures::gaussian_functional(n_f, Domain::Unrestricted)
    }

    fn at(alg: &LieSuperalgebra, t: Cx, d: EnvElement) -> MonoidElement {
        let h = alg.basis_vector("h").unwrap().scale(&t);
        MonoidElement::new(GroupWord::exp(alg, h).unwrap(), d)
    }

    #[test]
    fn exp_tail_matches_direct_sum() {
        let direct: f64 = (6..40).map(|m| 2f64.powi(m) / (1..=m).map(f64::from).product::<f64>()).sum();
        let t = exp_tail(2.0, 5);
        assert!(t >= direct && t - direct < 1e-11 * direct);
        assert_eq!(exp_tail(0.0, 3), 0.0);
    }

    #[test]
    fn gaussian_value_at_one() {
        let f = gaussian(32);
        let s = at(f.algebra(), Cx::one(), EnvElement::one());
        let v = f_check(&f, &s, 30).unwrap();
        let oracle = (-0.5f64).exp();
        assert!((v.value.re - oracle).abs() <= v.err + 1e-15);
        assert!((v.value.re - oracle).abs() < 1e-12);
    }

    #[test]
    fn gaussian_second_derivative() {
        let f = gaussian(34);
        let h = EnvElement::generator(0);
        let h2 = h.clone();
        let mut st = Straightener::new(f.algebra());
        let d = st.product(&h, &h2);
        let s = at(f.algebra(), Cx::from_ratio(3, 10), d);
        let v = f_check(&f, &s, 30).unwrap();
        let oracle = (0.09 - 1.0) * (-0.045f64).exp();
        assert!((v.value.re - oracle).abs() < 1e-12, "{} vs {oracle}", v.value.re);
    }

    #[test]
    fn identity_returns_lambda_one() {
        let f = gaussian(4);
        let v = f_check(&f, &MonoidElement::unit(), 30).unwrap();
        assert_eq!(v.value, Complex64::new(1.0, 0.0));
        assert!(v.err < 1e-15);
    }

    #[test]
    fn filtration_exhaustion() {
        let f = gaussian(10);
        let s = at(f.algebra(), Cx::one(), EnvElement::one());
        assert!(matches!(f_check(&f, &s, 30), Err(Error::FiltrationExhausted { .. })));
    }

    #[test]
    fn two_point_gram() {
        let f = gaussian(40);
        let a = f.algebra().clone();
        let samples = vec![at(&a, Cx::zero(), EnvElement::one()), at(&a, Cx::from_ratio(1, 2), EnvElement::one())];
        let r = check_positive_definite(&f, &samples, 1e-12, 1e-10, 36).unwrap();
        let off = (-0.125f64).exp();
        assert!((r.matrix[(0, 1)].re - off).abs() < 1e-12);
        assert!((r.min_eigenvalue - (1.0 - off)).abs() < 1e-10);
        assert!(r.passed);
    }

    #[test]
    fn single_unit_sample() {
        let f = gaussian(4);
        let r = check_positive_definite(&f, &[MonoidElement::unit()], 1e-12, 1e-10, 4).unwrap();
        assert_eq!(r.matrix[(0, 0)], Complex64::new(1.0, 0.0));
        assert!(r.passed);
    }

    #[test]
    fn corrupted_table_flags_nonzero_degree_entry() {
        let a = fixtures::toy_with_even();
        let mut table = BTreeMap::new();
        table.insert(vec![], Cx::one());
        table.insert(vec![a.index_of("x").unwrap()], Cx::from_ratio(1, 10));
        let f = LocalSuperfunction::state(a, table, 4, 2.0, Domain::Unrestricted).unwrap();
        let r = check_positive_definite(&f, &[MonoidElement::unit()], 1e-12, 1e-10, 4).unwrap();
        assert_eq!(r.condition_i_violations, vec![vec!["x".to_string()]]);
        assert!(!r.passed);
    }

    #[test]
    fn load_rejects_entries_above_bound() {
        let a = fixtures::gaussian_line();
        let mut table = BTreeMap::new();
        table.insert(vec![0, 0, 0, 0], Cx::from_int(3));
        assert!(matches!(
            LocalSuperfunction::state(a, table, 4, 2.0, Domain::Unrestricted),
            Err(Error::UniformBound { .. })
        ));
    }

    fn abelian_form(terms: Vec<(Vec<u32>, Poly)>) -> LocalSuperfunction {
        let a = fixtures::abelian();
        let vars = odd_variables(&a, 3).unwrap();
        let mut s = TruncatedSeries::zero(vars, 2);
        for (nu, p) in terms {
            s.add_term(nu, p).unwrap();
        }
        LocalSuperfunction::coefficient(a, s, Domain::AbelianBox { half_widths: vec![2.0, 2.0] }).unwrap()
    }

    #[test]
    fn seminorm_examples() {
        let grid = vec![vec![Cx::zero(), Cx::zero()], vec![Cx::one(), Cx::from_ratio(-1, 2)]];
        let d_e = vec![PartialTerm { mu: vec![0, 0], nu: vec![1], coeff: Cx::one() }];
        let only_empty = abelian_form(vec![(vec![0], Poly::monomial(vec![1, 0], Cx::from_int(5)))]);
        assert_eq!(seminorm(&only_empty, &grid, &d_e).unwrap(), 0.0);
        let c = Cx::from_ratio(-7, 4);
        let with_e = abelian_form(vec![(vec![1], Poly::constant(2, c.clone()))]);
        assert_eq!(seminorm(&with_e, &grid, &d_e).unwrap(), 1.75);
        assert_eq!(seminorm(&with_e, &[], &d_e).unwrap(), 0.0);
    }

    #[test]
    fn polynomial_taylor_data() {
        // p(x₁, x₂) = 2 + 3x₁² − x₁x₂
        let mut p = Poly::zero(2);
        p.add_term(vec![0, 0], Cx::from_int(2));
        p.add_term(vec![2, 0], Cx::from_int(3));
        p.add_term(vec![1, 1], Cx::from_int(-1));
        let f = abelian_form(vec![(vec![0], p.clone())]);
        let lam = coefficient_to_functional(&f, 4).unwrap();
        let a = lam.algebra().clone();
        let (h1, h2) = (a.index_of("h1").unwrap(), a.index_of("h2").unwrap());
        assert_eq!(lam.lambda(&[]).unwrap(), Cx::from_int(2));
        assert_eq!(lam.lambda(&[h1, h1]).unwrap(), Cx::from_int(6));
        assert_eq!(lam.lambda(&[h1, h2]).unwrap(), Cx::from_int(-1));
        assert_eq!(lam.lambda(&[h2]).unwrap(), Cx::zero());
        let back = functional_s_iso(&lam).unwrap();
        let Backend::Coefficient(c) = back.backend() else { panic!() };
        assert_eq!(c.series.coeff(&[0]), p);
    }

    #[test]
    fn zero_form_gives_zero_functional() {
        let f = abelian_form(vec![]);
        let lam = coefficient_to_functional(&f, 3).unwrap();
        let Backend::State(s) = lam.backend() else { panic!() };
        assert!(s.table.is_empty());
        let pts = vec![GroupWord::identity()];
        let r = uniform_bound_check(&lam, 3, &pts, 0, 1.0).unwrap();
        assert_eq!(r.max, 0.0);
    }

    #[test]
    fn coefficient_backend_evaluates_derivatives() {
        // f_∅ = x₁³: f(h1)(x) = 3x₁².
        let f = abelian_form(vec![(vec![0], Poly::monomial(vec![3, 0], Cx::one()))]);
        let a = f.algebra().clone();
        let h = GVector::basis(a.dim(), a.index_of("h1").unwrap()).scale(&Cx::from_ratio(1, 2));
        let s = MonoidElement::new(GroupWord::exp(&a, h).unwrap(), EnvElement::generator(a.index_of("h1").unwrap()));
        let v = f_check(&f, &s, 0).unwrap();
        assert_eq!(v.value, Complex64::new(0.75, 0.0));
        let far = GVector::basis(a.dim(), 0).scale(&Cx::from_int(3));
        let s = MonoidElement::group(GroupWord::exp(&a, far).unwrap());
        assert!(matches!(f_check(&f, &s, 0), Err(Error::OutsideDomain(_))));
    }

    #[test]
    fn gaussian_uniform_bound_budget_six() {
        let f = gaussian(64);
        let a = f.algebra().clone();
        let pts: Vec<GroupWord> = [-1.0, -0.5, 0.0, 0.5, 1.0]
            .iter()
            .map(|&t| GroupWord::exp(&a, a.basis_vector("h").unwrap().scale(&Cx::from_f64_decimal(t).unwrap())).unwrap())
            .collect();
        let r = uniform_bound_check(&f, 6, &pts, 50, 16.0).unwrap();
        assert!((r.max - 15.0).abs() < 1e-9);
        assert!(!r.exceeds);
    }

    #[test]
    fn matrix_coefficient_examples() {
        let one = DVector::from_element(1, Complex64::new(1.0, 0.0));
        let f = matrix_coefficient_functional(&fixtures::line_rep(0.0), &one, 4, 1e-12).unwrap();
        assert_eq!(f.lambda(&[]).unwrap(), Cx::one());
        assert!(f.lambda(&[0]).unwrap().is_zero());

        let theta = 0.75;
        let f = matrix_coefficient_functional(&fixtures::line_rep(theta), &one, 6, 1e-12).unwrap();
        for r in 0..=6 {
            let oracle = Complex64::new(0.0, theta).powu(r as u32);
            assert!((f.lambda(&vec![0; r]).unwrap().to_c64() - oracle).norm() < 1e-14);
        }
    }

    #[test]
    fn matrix_coefficient_rejects_mixed_vector() {
        let v = DVector::from_element(2, Complex64::new(1.0, 0.0));
        let r = matrix_coefficient_functional(&fixtures::odd_pair_rep(), &v, 4, 1e-12);
        assert!(matches!(r, Err(Error::NotHomogeneous)));
    }

    #[test]
    fn matrix_coefficient_gram_is_psd() {
        let rep = fixtures::odd_pair_rep();
        let alg = rep.algebra.clone();
        for k in 0..2 {
            let mut v = DVector::from_element(2, Complex64::new(0.0, 0.0));
            v[k] = Complex64::new(0.6, 0.8);
            let f = matrix_coefficient_functional(&rep, &v, 12, 1e-12).unwrap();
            let x = EnvElement::from_gvector(&alg.basis_vector("x").unwrap());
            let g = GroupWord::exp(&alg, alg.basis_vector("h").unwrap().scale(&Cx::from_ratio(3, 10))).unwrap();
            let samples = vec![
                MonoidElement::unit(),
                MonoidElement::new(GroupWord::identity(), x.clone()),
                MonoidElement::group(g.clone()),
                MonoidElement::new(g, x),
            ];
            let r = check_positive_definite(&f, &samples, 1e-12, 1e-10, 8).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }
}
