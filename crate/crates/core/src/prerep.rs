//! Finite-dimensional graded Hilbert spaces and pre-representations.
//!
//! A space is a direct sum of blocks `H_c`, one per degree, with the graded
//! form `⟨u, w⟩ = wᴴ G u`. The ordinary inner product is
//! `(u, w) = wᴴ P u` with `P = ⊕ α(c) G_c`. In finite dimension the dense
//! domain is the whole space, so pre-representations and smooth unitary
//! representations are validated by the same checks.

use num::complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::{alpha, sign, Degree};
use crate::groupword::{ad_group, GroupWord};
use crate::liesuper::{GVector, LieSuperalgebra, Violation};
use crate::linalg::{expm, hermitian_deviation, hermitian_eigenvalues, max_abs, solve, CMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct GradedHermitianSpace {
    /// Blocks in order of appearance in the coordinate vector.
    blocks: Vec<(Degree, usize)>,
    /// Full matrix of the graded form.
    inner: CMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InnerViolation {
    /// Axiom iv: distinct degrees are orthogonal.
    CrossBlock { a: Degree, b: Degree, max: f64 },
    /// Axiom ii: `⟨w,v⟩ = B(a,a) conj⟨v,w⟩`.
    Symmetry { degree: Degree, deviation: f64 },
    /// Axiom iii: `α(a)⟨v,v⟩ ≥ 0`.
    Positivity { degree: Degree, min_eigenvalue: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InnerReport {
    pub violations: Vec<InnerViolation>,
}

impl InnerReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl GradedHermitianSpace {
    pub fn new(blocks: Vec<(Degree, usize)>, inner: CMatrix) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.1).sum();
        if inner.nrows() != n || inner.ncols() != n {
            return Err(Error::Dimension(format!("inner product is {}x{}, blocks sum to {n}", inner.nrows(), inner.ncols())));
        }
        if let Some(w) = blocks.first().map(|b| b.0.width()) {
            if let Some(b) = blocks.iter().find(|b| b.0.width() != w) {
                return Err(Error::DegreeLength(w, b.0.width()));
            }
        }
        for (i, (d, _)) in blocks.iter().enumerate() {
            if blocks[..i].iter().any(|(e, _)| e == d) {
                return Err(Error::InvalidDegree(format!("block {d} declared twice")));
            }
        }
        Ok(GradedHermitianSpace { blocks, inner })
    }

    /// Block-diagonal space from per-degree form matrices.
    pub fn from_blocks(blocks: Vec<(Degree, CMatrix)>) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.1.nrows()).sum();
        let mut inner = CMatrix::zeros(n, n);
        let mut off = 0;
        let mut shape = Vec::new();
        for (d, m) in blocks {
            if m.nrows() != m.ncols() {
                return Err(Error::Dimension(format!("block {d} is not square")));
            }
            inner.view_mut((off, off), (m.nrows(), m.nrows())).copy_from(&m);
            off += m.nrows();
            shape.push((d, m.nrows()));
        }
        GradedHermitianSpace::new(shape, inner)
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn blocks(&self) -> &[(Degree, usize)] {
        &self.blocks
    }

    pub fn inner(&self) -> &CMatrix {
        &self.inner
    }

    pub fn inner_mut(&mut self) -> &mut CMatrix {
        &mut self.inner
    }

    /// Degree of every coordinate.
    pub fn coordinate_degrees(&self) -> Vec<Degree> {
        self.blocks.iter().flat_map(|&(d, k)| std::iter::repeat_n(d, k)).collect()
    }

    fn block_range(&self, idx: usize) -> std::ops::Range<usize> {
        let start: usize = self.blocks[..idx].iter().map(|b| b.1).sum();
        start..start + self.blocks[idx].1
    }

    /// The ordinary form `P = ⊕ α(c) G_c` (cross blocks of `G` ignored).
    pub fn ordinary_form(&self) -> CMatrix {
        let n = self.dim();
        let mut p = CMatrix::zeros(n, n);
        for (k, &(d, _)) in self.blocks.iter().enumerate() {
            let r = self.block_range(k);
            let a = alpha(d).to_c64();
            for i in r.clone() {
                for j in r.clone() {
                    p[(i, j)] = a * self.inner[(i, j)];
                }
            }
        }
        p
    }

    /// `diag(B(a, c))` over coordinates of degree `c`.
    fn sign_diagonal(&self, a: Degree) -> CMatrix {
        let degs = self.coordinate_degrees();
        CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            degs.len(),
            degs.iter().map(|&c| Complex64::new(sign(a, c).to_i64() as f64, 0.0)),
        ))
    }

    /// Support check: entries of `T` from degree `c` to anything other than
    /// `c + a`; returns the largest such entry.
    pub fn degree_defect(&self, t: &CMatrix, a: Degree) -> f64 {
        let degs = self.coordinate_degrees();
        let mut m = 0.0f64;
        for i in 0..t.nrows() {
            for j in 0..t.ncols() {
                if degs[i] != degs[j] + a {
                    m = m.max(t[(i, j)].norm());
                }
            }
        }
        m
    }
}

/// Checks the four axioms of a graded inner product, with tolerance `tol`.
pub fn validate_inner(space: &GradedHermitianSpace, tol: f64) -> InnerReport {
    let mut violations = Vec::new();
    let g = &space.inner;
    for (p, &(a, _)) in space.blocks.iter().enumerate() {
        for (q, &(b, _)) in space.blocks.iter().enumerate() {
            if p == q {
                continue;
            }
            let (rp, rq) = (space.block_range(p), space.block_range(q));
            let mut m = 0.0f64;
            for i in rp {
                for j in rq.clone() {
                    m = m.max(g[(i, j)].norm());
                }
            }
            if m > tol {
                violations.push(InnerViolation::CrossBlock { a, b, max: m });
            }
        }
    }
    for (k, &(d, n)) in space.blocks.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let r = space.block_range(k);
        let m = g.view((r.start, r.start), (n, n)).into_owned();
        let s = sign(d, d).to_i64() as f64;
        let dev = max_abs(&(&m - m.adjoint() * Complex64::new(s, 0.0)));
        if dev > tol {
            violations.push(InnerViolation::Symmetry { degree: d, deviation: dev });
        }
        let p = m * alpha(d).to_c64();
        let min = hermitian_eigenvalues(&p).first().copied().unwrap_or(0.0);
        if min < -tol {
            violations.push(InnerViolation::Positivity { degree: d, min_eigenvalue: min });
        }
    }
    InnerReport { violations }
}

/// `T†`, defined by `⟨v, Tw⟩ = B(a,b)⟨T†v, w⟩` for `v ∈ H_b`:
/// `T† = G⁻¹ Tᴴ G S_a` with `S_a = diag B(a, ·)` acting on `v`.
pub fn dagger(space: &GradedHermitianSpace, t: &CMatrix, a: Degree) -> Result<CMatrix> {
    check_square(space, t)?;
    let rhs = t.adjoint() * &space.inner * space.sign_diagonal(a);
    solve(&space.inner, &rhs).map_err(|_| Error::DegenerateInner("graded form is singular".into()))
}

/// Ordinary adjoint `T* = P⁻¹ Tᴴ P`.
pub fn star_op(space: &GradedHermitianSpace, t: &CMatrix) -> Result<CMatrix> {
    check_square(space, t)?;
    let p = space.ordinary_form();
    solve(&p, &(t.adjoint() * &p)).map_err(|_| Error::DegenerateInner("ordinary form is singular".into()))
}

fn check_square(space: &GradedHermitianSpace, t: &CMatrix) -> Result<()> {
    if t.nrows() != space.dim() || t.ncols() != space.dim() {
        return Err(Error::Dimension(format!("operator is {}x{}, space has dimension {}", t.nrows(), t.ncols(), space.dim())));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct FiniteDimPreRep {
    pub algebra: LieSuperalgebra,
    pub space: GradedHermitianSpace,
    /// `ρ(x_i)` for every basis element, in basis order.
    pub rho: Vec<CMatrix>,
    /// `(h, π(exp h))`.
    pub group_gens: Vec<(GVector, CMatrix)>,
}

/// Which sign the odd star compatibility holds with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StarConvention {
    /// `ρ(x)* = −ᾱ(a)ρ(x)`, equivalently `ρ(x)† = −ρ(x)`.
    Skew,
    /// `ρ(x)* = ᾱ(a)ρ(x)`.
    Plus,
    Both,
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrerepReport {
    pub algebra_violations: Vec<Violation>,
    pub inner: InnerReport,
    /// Largest entry of any `ρ(x)` outside its degree-shifted blocks.
    pub rho_grading: f64,
    /// Largest entry of any `π` matrix outside the diagonal blocks.
    pub pi_grading: f64,
    /// `max ‖π*π − I‖`.
    pub pi_unitarity: f64,
    /// `max ‖π(exp h) − e^{ρ(h)}‖`.
    pub pi_integration: f64,
    /// `ρ([x,y]) = ρ(x)ρ(y) − B(a,b)ρ(y)ρ(x)`.
    pub bracket: f64,
    /// `‖ρ(h)* + ρ(h)‖` over `h ∈ g₀`.
    pub even_skew: f64,
    /// Star compatibility under `ρ* = −ᾱρ`.
    pub star_skew: f64,
    /// Star compatibility under `ρ* = ᾱρ`.
    pub star_plus: f64,
    pub convention: StarConvention,
    /// `π(g)ρ(x)π(g)⁻¹ = ρ(Ad(g)x)` on the declared generators.
    pub equivariance: f64,
    /// Error bound of the adjoint action used for equivariance.
    pub ad_error_bound: f64,
    pub passed: bool,
}

impl FiniteDimPreRep {
    pub fn new(algebra: LieSuperalgebra, space: GradedHermitianSpace, rho: Vec<CMatrix>, group_gens: Vec<(GVector, CMatrix)>) -> Result<Self> {
        if rho.len() != algebra.dim() {
            return Err(Error::Dimension(format!("{} ρ matrices for a {}-dimensional algebra", rho.len(), algebra.dim())));
        }
        for m in rho.iter().chain(group_gens.iter().map(|g| &g.1)) {
            check_square(&space, m)?;
        }
        if let Some(&(d, _)) = space.blocks().first() {
            if d.width() != algebra.width() {
                return Err(Error::DegreeLength(algebra.width(), d.width()));
            }
        }
        for (index, (h, _)) in group_gens.iter().enumerate() {
            if h.dim() != algebra.dim() || !algebra.is_even(h) {
                return Err(Error::NotInEvenPart { index });
            }
        }
        Ok(FiniteDimPreRep { algebra, space, rho, group_gens })
    }

    /// `ρ(v) = Σ vᵢ ρ(xᵢ)`.
    pub fn rho_of(&self, v: &GVector) -> CMatrix {
        let n = self.space.dim();
        let mut m = CMatrix::zeros(n, n);
        for (i, c) in v.support() {
            m += &self.rho[i] * c.to_c64();
        }
        m
    }
}

fn op_norm_bound(m: &CMatrix) -> f64 {
    crate::linalg::norm1(m)
}

/// Checks grading, the bracket, skewness, star compatibility, equivariance,
/// unitarity and integration of the declared group generators. Star
/// compatibility is evaluated under both signs;
/// only the skew form `ρ† = −ρ` counts towards `passed`.
pub fn validate_prerep(p: &FiniteDimPreRep, tol: f64) -> Result<PrerepReport> {
    let alg = &p.algebra;
    let space = &p.space;
    let n = space.dim();
    let algebra_violations = alg.validate().violations;
    let inner = validate_inner(space, tol);
    let zero = Degree::zero(alg.width());
    let id = CMatrix::identity(n, n);

    let mut rho_grading = 0.0f64;
    for (i, r) in p.rho.iter().enumerate() {
        rho_grading = rho_grading.max(space.degree_defect(r, alg.degree(i)));
    }

    let mut bracket = 0.0f64;
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let s = sign(alg.degree(i), alg.degree(j)).to_i64() as f64;
            let lhs = p.rho_of(alg.structure(i, j));
            let rhs = &p.rho[i] * &p.rho[j] - &p.rho[j] * &p.rho[i] * Complex64::new(s, 0.0);
            bracket = bracket.max(max_abs(&(lhs - rhs)));
        }
    }

    let (mut even_skew, mut star_skew, mut star_plus) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..alg.dim() {
        let r = &p.rho[i];
        let rs = star_op(space, r)?;
        let a = alpha(alg.degree(i)).conj().to_c64();
        star_skew = star_skew.max(max_abs(&(&rs + r * a)));
        star_plus = star_plus.max(max_abs(&(&rs - r * a)));
        if alg.degree(i) == zero {
            even_skew = even_skew.max(max_abs(&(&rs + r)));
        }
    }
    let convention = match (star_skew <= tol, star_plus <= tol) {
        (true, true) => StarConvention::Both,
        (true, false) => StarConvention::Skew,
        (false, true) => StarConvention::Plus,
        (false, false) => StarConvention::Neither,
    };

    let (mut pi_grading, mut pi_unitarity, mut pi_integration, mut equivariance, mut ad_error_bound) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (h, u) in &p.group_gens {
        pi_grading = pi_grading.max(space.degree_defect(u, zero));
        let us = star_op(space, u)?;
        pi_unitarity = pi_unitarity.max(max_abs(&(&us * u - &id)));
        pi_integration = pi_integration.max(max_abs(&(u - expm(&p.rho_of(h)))));
        let ad = ad_group(alg, &GroupWord::exp(alg, h.clone())?)?;
        ad_error_bound = ad_error_bound.max(ad.error_bound);
        let uinv = solve(u, &id).map_err(|_| Error::InvalidPrerep("group matrix is singular".into()))?;
        let rho_norm = p.rho.iter().map(op_norm_bound).fold(0.0, f64::max);
        for j in 0..alg.dim() {
            let lhs = u * &p.rho[j] * &uinv;
            let rhs = p.rho_of(&ad.image(j));
            let dev = max_abs(&(lhs - rhs)) - ad.error_bound * rho_norm;
            equivariance = equivariance.max(dev.max(0.0));
        }
    }

    let passed = algebra_violations.is_empty()
        && inner.is_valid()
        && [rho_grading, pi_grading, pi_unitarity, pi_integration, bracket, even_skew, star_skew, equivariance]
            .iter()
            .all(|&d| d <= tol);
    Ok(PrerepReport {
        algebra_violations,
        inner,
        rho_grading,
        pi_grading,
        pi_unitarity,
        pi_integration,
        bracket,
        even_skew,
        star_skew,
        star_plus,
        convention,
        equivariance,
        ad_error_bound,
        passed,
    })
}

/// In finite dimension smooth unitary representations and
/// pre-representations satisfy the same identities.
pub fn validate_smooth_rep(p: &FiniteDimPreRep, tol: f64) -> Result<PrerepReport> {
    validate_prerep(p, tol)
}

/// `π(exp h) = e^{ρ(h)}`, checked for skewness before and unitarity after.
pub fn integrate_rho(p: &FiniteDimPreRep, h: &GVector, tol: f64) -> Result<CMatrix> {
    if !p.algebra.is_even(h) {
        return Err(Error::NotInEvenPart { index: 0 });
    }
    let r = p.rho_of(h);
    let rs = star_op(&p.space, &r)?;
    let dev = max_abs(&(&rs + &r));
    if dev > tol {
        return Err(Error::NotSkew(dev));
    }
    let u = expm(&r);
    let n = p.space.dim();
    let unit = max_abs(&(star_op(&p.space, &u)? * &u - CMatrix::identity(n, n)));
    if unit > tol.max(1e-12) {
        return Err(Error::InvalidPrerep(format!("integrated operator is not unitary (deviation {unit:e})")));
    }
    Ok(u)
}

/// Hermitian deviation of the ordinary form, exposed for reports.
pub fn ordinary_form_deviation(space: &GradedHermitianSpace) -> f64 {
    hermitian_deviation(&space.ordinary_form())
}
