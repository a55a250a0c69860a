//! Small reference algebras used by the tests, benchmarks and CLI examples.

use crate::grading::Degree;
use crate::liesuper::{BracketSpec, GVector, LieSuperalgebra};
use crate::linalg::{expm, CMatrix};
use crate::prerep::{FiniteDimPreRep, GradedHermitianSpace};
use std::collections::BTreeMap;

use nalgebra::DVector;
use num::complex::Complex64;

use crate::scalar::Cx;
use crate::superfunc::{Domain, LocalSuperfunction};

fn deg(c: &[u8]) -> Degree {
    Degree::new(c).expect("fixture degree")
}

fn build(n: usize, basis: &[(&str, &[u8])], brackets: Vec<BracketSpec>) -> LieSuperalgebra {
    let basis = basis.iter().map(|(name, d)| (name.to_string(), deg(d))).collect();
    LieSuperalgebra::new(n, basis, brackets).expect("fixture algebra")
}

/// Abelian: two even generators `h1, h2` and one odd `e` (n = 1).
pub fn abelian() -> LieSuperalgebra {
    build(1, &[("h1", &[0]), ("h2", &[0]), ("e", &[1])], vec![])
}

/// Z₂² toy: `x ∈ g_(0,1)`, `y ∈ g_(1,0)`, `z ∈ g_(1,1)`, `[x,y] = z`, `z` central.
pub fn toy() -> LieSuperalgebra {
    build(
        2,
        &[("x", &[0, 1]), ("y", &[1, 0]), ("z", &[1, 1])],
        vec![BracketSpec::new("x", "y", &[("z", Cx::one())])],
    )
}

/// The toy algebra with an extra central even element `h`.
pub fn toy_with_even() -> LieSuperalgebra {
    build(
        2,
        &[("h", &[0, 0]), ("x", &[0, 1]), ("y", &[1, 0]), ("z", &[1, 1])],
        vec![BracketSpec::new("x", "y", &[("z", Cx::one())])],
    )
}

/// Nilpotent even part `[t,w] = v` extended by an odd `q` with `[q,q] = v`.
pub fn nilpotent() -> LieSuperalgebra {
    build(
        1,
        &[("t", &[0]), ("w", &[0]), ("v", &[0]), ("q", &[1])],
        vec![
            BracketSpec::new("t", "w", &[("v", Cx::one())]),
            BracketSpec::new("q", "q", &[("v", Cx::one())]),
        ],
    )
}

/// One-dimensional `g = ℝh` (n = 1, no odd part).
pub fn gaussian_line() -> LieSuperalgebra {
    build(1, &[("h", &[0])], vec![])
}

/// `h ∈ g_(0,0)`, `x ∈ g_(0,1)` with `[x,x] = −2h`: the smallest algebra
/// with a nontrivial graded unitary representation.
pub fn odd_pair() -> LieSuperalgebra {
    build(
        2,
        &[("h", &[0, 0]), ("x", &[0, 1])],
        vec![BracketSpec::new("x", "x", &[("h", Cx::from_int(-2))])],
    )
}

/// Euclidean `e(2)`: `[h,x] = y`, `[h,y] = −x`; `ad h` is not nilpotent.
pub fn rotation() -> LieSuperalgebra {
    build(
        1,
        &[("h", &[0]), ("x", &[0]), ("y", &[0])],
        vec![
            BracketSpec::new("h", "x", &[("y", Cx::one())]),
            BracketSpec::new("h", "y", &[("x", Cx::from_int(-1))]),
        ],
    )
}

/// `λ(hʳ) = φ^{(r)}(0)` for `φ(x) = e^{−x²/2}` on [`gaussian_line`], with
/// `C` the largest stored modulus.
pub fn gaussian_functional(n_f: usize, domain: Domain) -> LocalSuperfunction {
    let mut table = BTreeMap::new();
    let mut value = Cx::one();
    let mut c = 1.0f64;
    for r in (0..=n_f).step_by(2) {
        if r > 0 {
            value = &value * &Cx::from_int(-(r as i64 - 1));
        }
        c = c.max(value.abs_f64());
        table.insert(vec![0; r], value.clone());
    }
    LocalSuperfunction::state(gaussian_line(), table, n_f, c, domain).expect("gaussian functional")
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn diag(entries: &[Complex64]) -> CMatrix {
    CMatrix::from_diagonal(&DVector::from_row_slice(entries))
}

fn gens(alg: &LieSuperalgebra, rho: &[CMatrix], names: &[&str]) -> Vec<(GVector, CMatrix)> {
    names
        .iter()
        .map(|n| {
            let i = alg.index_of(n).expect("fixture generator");
            (GVector::basis(alg.dim(), i), expm(&rho[i]))
        })
        .collect()
}

/// `ρ(h) = iθ` on `ℂ`, with `π(exp h) = e^{iθ}`.
pub fn line_rep(theta: f64) -> FiniteDimPreRep {
    let alg = gaussian_line();
    let space = GradedHermitianSpace::from_blocks(vec![(deg(&[0]), CMatrix::identity(1, 1))]).expect("fixture space");
    let rho = vec![diag(&[c(0.0, theta)])];
    let g = gens(&alg, &rho, &["h"]);
    FiniteDimPreRep::new(alg, space, rho, g).expect("fixture rep")
}

/// [`odd_pair`] on `ℂ_(0,0) ⊕ ℂ_(0,1)`: `ρ(h) = i`, `ρ(x) = [[0,1],[−i,0]]`,
/// graded form `1 ⊕ (−i)`.
pub fn odd_pair_rep() -> FiniteDimPreRep {
    let alg = odd_pair();
    let space = GradedHermitianSpace::from_blocks(vec![
        (deg(&[0, 0]), CMatrix::identity(1, 1)),
        (deg(&[0, 1]), diag(&[c(0.0, -1.0)])),
    ])
    .expect("fixture space");
    let rho = vec![
        diag(&[c(0.0, 1.0), c(0.0, 1.0)]),
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, -1.0), c(0.0, 0.0)]),
    ];
    let g = gens(&alg, &rho, &["h"]);
    FiniteDimPreRep::new(alg, space, rho, g).expect("fixture rep")
}

/// [`rotation`] on `ℂ²`: `ρ(h) = diag(i, 2i)`, translations act trivially.
pub fn rotation_rep() -> FiniteDimPreRep {
    let alg = rotation();
    let space = GradedHermitianSpace::from_blocks(vec![(deg(&[0]), CMatrix::identity(2, 2))]).expect("fixture space");
    let z = CMatrix::zeros(2, 2);
    let rho = vec![diag(&[c(0.0, 1.0), c(0.0, 2.0)]), z.clone(), z];
    let g = gens(&alg, &rho, &["h", "x"]);
    FiniteDimPreRep::new(alg, space, rho, g).expect("fixture rep")
}

/// [`nilpotent`] on `ℂ_0 ⊕ ℂ_1` with commuting diagonal `ρ(t)`, `ρ(w)` and
/// `ρ(v) = ρ(q) = 0`.
pub fn nilpotent_rep() -> FiniteDimPreRep {
    let alg = nilpotent();
    let space = GradedHermitianSpace::from_blocks(vec![
        (deg(&[0]), CMatrix::identity(1, 1)),
        (deg(&[1]), diag(&[c(0.0, -1.0)])),
    ])
    .expect("fixture space");
    let z = CMatrix::zeros(2, 2);
    let rho = vec![diag(&[c(0.0, 1.0), c(0.0, 2.0)]), diag(&[c(0.0, 0.5), c(0.0, -1.0)]), z.clone(), z];
    let g = gens(&alg, &rho, &["t", "w"]);
    FiniteDimPreRep::new(alg, space, rho, g).expect("fixture rep")
}
