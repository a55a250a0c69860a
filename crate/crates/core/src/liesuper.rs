//! Z₂ⁿ-Lie superalgebras given by structure constants.
//!
//! The basis is stored in a fixed total order: degree (lexicographic) first,
//! declaration order second. That order is the PBW order used by
//! [`crate::enveloping`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::{alpha, sign, Degree, Sign};
use crate::linalg::ExactMatrix;
use crate::scalar::Cx;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: Degree,
}

/// A declared bracket `[left, right] = Σ coeff · target`.
#[derive(Clone, Debug)]
pub struct BracketSpec {
    pub left: String,
    pub right: String,
    pub coeffs: Vec<(String, Cx)>,
}

impl BracketSpec {
    pub fn new(left: &str, right: &str, coeffs: &[(&str, Cx)]) -> Self {
        BracketSpec {
            left: left.into(),
            right: right.into(),
            coeffs: coeffs.iter().map(|(n, c)| (n.to_string(), c.clone())).collect(),
        }
    }
}

/// A vector of `g_ℂ` in coordinates of the algebra's basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GVector {
    pub coeffs: Vec<Cx>,
}

impl fmt::Debug for GVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl GVector {
    pub fn zero(dim: usize) -> Self {
        GVector { coeffs: vec![Cx::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coeffs[i] = Cx::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Cx::is_zero)
    }

    pub fn add(&self, other: &GVector) -> GVector {
        GVector { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &GVector) -> GVector {
        GVector { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Cx) -> GVector {
        GVector { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> GVector {
        GVector { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    /// Sum of coefficient moduli.
    pub fn norm1(&self) -> f64 {
        self.coeffs.iter().map(Cx::abs_f64).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Cx)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

/// Tolerances for summing `Exp(ad h)` when `ad h` is not nilpotent.
#[derive(Clone, Copy, Debug)]
pub struct AdOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for AdOptions {
    fn default() -> Self {
        AdOptions { tol: 1e-17, max_iter: 400 }
    }
}

#[derive(Clone, Debug)]
pub struct LieSuperalgebra {
    n: usize,
    basis: Vec<BasisElement>,
    /// `table[i][j] = [x_i, x_j]`.
    table: Vec<Vec<GVector>>,
    index: HashMap<String, usize>,
    pub ad_options: AdOptions,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `c[i][j][k] ≠ 0` while `deg x_k ≠ deg x_i + deg x_j`.
    DegreeAdditivity { i: String, j: String, k: String },
    /// `[x_i, x_j] + B(a,b)[x_j, x_i] ≠ 0`.
    SkewSymmetry { i: String, j: String, defect: Vec<String> },
    /// Graded Jacobi identity fails on a basis triple.
    Jacobi { i: String, j: String, k: String, defect: Vec<String> },
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// All structure constants are real, so the star map on `g_ℂ` extends to
    /// an antiautomorphism of the enveloping algebra.
    pub real_structure_constants: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl LieSuperalgebra {
    /// Builds an algebra from a basis and declared brackets.
    ///
    /// A bracket `[x, y]` declared without its mirror `[y, x]` gets the mirror
    /// filled in by graded skew-symmetry. When both are declared they are
    /// kept verbatim, so inconsistent data surfaces in [`Self::validate`].
    pub fn new(n: usize, basis: Vec<(String, Degree)>, brackets: Vec<BracketSpec>) -> Result<Self> {
        let mut order: Vec<usize> = (0..basis.len()).collect();
        for (name, d) in &basis {
            if d.width() != n {
                return Err(Error::Schema {
                    field: format!("basis.{name}.degree"),
                    message: format!("width {} but algebra has n = {n}", d.width()),
                });
            }
        }
        order.sort_by_key(|&k| (basis[k].1.bits(), k));
        let sorted: Vec<BasisElement> = order
            .iter()
            .map(|&k| BasisElement { name: basis[k].0.clone(), degree: basis[k].1 })
            .collect();
        let mut index = HashMap::new();
        for (k, b) in sorted.iter().enumerate() {
            if index.insert(b.name.clone(), k).is_some() {
                return Err(Error::Schema {
                    field: "basis".into(),
                    message: format!("duplicate basis name {:?}", b.name),
                });
            }
        }
        let dim = sorted.len();
        let mut declared: BTreeMap<(usize, usize), GVector> = BTreeMap::new();
        for spec in brackets {
            let i = *index.get(&spec.left).ok_or_else(|| Error::UnknownBasis(spec.left.clone()))?;
            let j = *index.get(&spec.right).ok_or_else(|| Error::UnknownBasis(spec.right.clone()))?;
            let mut v = GVector::zero(dim);
            for (name, c) in &spec.coeffs {
                let k = *index.get(name).ok_or_else(|| Error::UnknownBasis(name.clone()))?;
                v.coeffs[k] += c;
            }
            if declared.insert((i, j), v).is_some() {
                return Err(Error::Schema {
                    field: "brackets".into(),
                    message: format!("bracket [{}, {}] declared twice", spec.left, spec.right),
                });
            }
        }
        let mut table = vec![vec![GVector::zero(dim); dim]; dim];
        for (&(i, j), v) in &declared {
            table[i][j] = v.clone();
            if i != j && !declared.contains_key(&(j, i)) {
                let s = sign(sorted[i].degree, sorted[j].degree);
                table[j][i] = v.scale(&(-s.to_cx()));
            }
        }
        Ok(LieSuperalgebra { n, basis: sorted, table, index, ad_options: AdOptions::default() })
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn degree(&self, i: usize) -> Degree {
        self.basis[i].degree
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownBasis(name.into()))
    }

    /// `[x_i, x_j]` as stored.
    pub fn structure(&self, i: usize, j: usize) -> &GVector {
        &self.table[i][j]
    }

    /// Overwrites one structure constant. Intended for mutation testing.
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, c: Cx) {
        self.table[i][j].coeffs[k] = c;
    }

    /// Indices of degree-zero basis elements (spanning g₀).
    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].degree.is_zero()).collect()
    }

    /// Indices spanning g₁ = ⊕_{a≠0} g_a.
    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.basis[i].degree.is_zero()).collect()
    }

    /// A basis element whose square reduces in the enveloping algebra.
    pub fn is_self_odd(&self, i: usize) -> bool {
        sign(self.basis[i].degree, self.basis[i].degree) == Sign::Minus
    }

    pub fn basis_vector(&self, name: &str) -> Result<GVector> {
        Ok(GVector::basis(self.dim(), self.index_of(name)?))
    }

    /// Vector from `(name, coefficient)` pairs.
    pub fn vector(&self, terms: &[(&str, Cx)]) -> Result<GVector> {
        let mut v = GVector::zero(self.dim());
        for (name, c) in terms {
            v.coeffs[self.index_of(name)?] += c;
        }
        Ok(v)
    }

    /// Common degree of the support; `None` when mixed. The zero vector
    /// reports degree zero.
    pub fn homogeneous_degree(&self, v: &GVector) -> Option<Degree> {
        let mut deg = None;
        for (i, _) in v.support() {
            let d = self.basis[i].degree;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or_else(|| Degree::zero(self.n)))
    }

    pub fn is_even(&self, v: &GVector) -> bool {
        v.support().all(|(i, _)| self.basis[i].degree.is_zero())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, u: &GVector, v: &GVector) -> GVector {
        let mut out = GVector::zero(self.dim());
        for (i, a) in u.support() {
            for (j, b) in v.support() {
                let ab = a * b;
                for (k, c) in self.table[i][j].support() {
                    out.coeffs[k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// Matrix of `[h, ·]` in the basis; column `j` holds `[h, x_j]`.
    pub fn ad_matrix(&self, h: &GVector) -> ExactMatrix {
        let d = self.dim();
        let mut m = ExactMatrix::zeros(d, d);
        for j in 0..d {
            let col = self.bracket(h, &GVector::basis(d, j));
            for (i, c) in col.coeffs.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }

    /// Phase `−ᾱ(a)` by which the star map scales a basis element of degree `a`.
    pub fn star_factor(&self, i: usize) -> Cx {
        alpha(self.basis[i].degree).conj().neg().to_cx()
    }

    /// The conjugate-linear star `x* = −ᾱ(a) x` on a homogeneous vector.
    pub fn star_g(&self, x: &GVector) -> Result<GVector> {
        let a = self.homogeneous_degree(x).ok_or(Error::NotHomogeneous)?;
        let f = alpha(a).conj().neg().to_cx();
        Ok(GVector { coeffs: x.coeffs.iter().map(|c| &c.conj() * &f).collect() })
    }

    fn describe(&self, v: &GVector) -> Vec<String> {
        v.support().map(|(k, c)| format!("{}*{}", c, self.basis[k].name)).collect()
    }

    /// Checks degree additivity, graded skew-symmetry and the graded Jacobi
    /// identity on every basis pair and triple.
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim();
        let mut violations = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let target = self.basis[i].degree + self.basis[j].degree;
                for (k, _) in self.table[i][j].support() {
                    if self.basis[k].degree != target {
                        violations.push(Violation::DegreeAdditivity {
                            i: self.name(i).into(),
                            j: self.name(j).into(),
                            k: self.name(k).into(),
                        });
                    }
                }
            }
        }
        for i in 0..d {
            for j in i..d {
                let s = sign(self.basis[i].degree, self.basis[j].degree).to_cx();
                let defect = self.table[i][j].add(&self.table[j][i].scale(&s));
                if !defect.is_zero() {
                    violations.push(Violation::SkewSymmetry {
                        i: self.name(i).into(),
                        j: self.name(j).into(),
                        defect: self.describe(&defect),
                    });
                }
            }
        }
        let e = |k| GVector::basis(d, k);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let (a, b, c) = (self.degree(i), self.degree(j), self.degree(k));
                    let lhs = self.bracket(&x, &self.bracket(&y, &z));
                    let first = self.bracket(&self.bracket(&x, &y), &z);
                    // [x,[y,z]] = [[x,y],z] + B(a,b)[y,[x,z]], with [x,z] = −B(a,c)[z,x].
                    let s = -(sign(a, b) * sign(a, c)).to_cx();
                    let second = self.bracket(&y, &self.bracket(&z, &x)).scale(&s);
                    let defect = lhs.sub(&first).sub(&second);
                    if !defect.is_zero() {
                        violations.push(Violation::Jacobi {
                            i: self.name(i).into(),
                            j: self.name(j).into(),
                            k: self.name(k).into(),
                            defect: self.describe(&defect),
                        });
                    }
                }
            }
        }
        let real_structure_constants =
            self.table.iter().flatten().all(|v| v.coeffs.iter().all(Cx::is_real));
        ValidationReport { violations, real_structure_constants }
    }

    /// The degree-zero part is abelian.
    pub fn even_part_is_abelian(&self) -> bool {
        let ev = self.even_indices();
        ev.iter().all(|&i| ev.iter().all(|&j| self.table[i][j].is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn abelian_is_valid() {
        assert!(fixtures::abelian().validate().is_valid());
    }

    #[test]
    fn toy_is_valid_and_bracket_reads_constants() {
        let a = fixtures::toy();
        let rep = a.validate();
        assert!(rep.is_valid(), "{:?}", rep.violations);
        let x = a.basis_vector("x").unwrap();
        let y = a.basis_vector("y").unwrap();
        let z = a.basis_vector("z").unwrap();
        assert_eq!(a.bracket(&x, &y), z);
        assert_eq!(a.bracket(&y, &x), z.neg());
        assert!(a.bracket(&x, &x).is_zero());
        assert!(a.bracket(&x, &GVector::zero(a.dim())).is_zero());
    }

    #[test]
    fn wrong_sign_mirror_is_a_skew_violation() {
        let d = |c: &[u8]| Degree::new(c).unwrap();
        let basis = vec![("x".into(), d(&[0, 1])), ("y".into(), d(&[1, 0])), ("z".into(), d(&[1, 1]))];
        let a = LieSuperalgebra::new(
            2,
            basis,
            vec![
                BracketSpec::new("x", "y", &[("z", Cx::one())]),
                BracketSpec::new("y", "x", &[("z", Cx::one())]),
            ],
        )
        .unwrap();
        let rep = a.validate();
        assert!(rep.violations.iter().any(|v| matches!(v, Violation::SkewSymmetry { .. })));
    }

    #[test]
    fn basis_sorted_by_degree_then_declaration() {
        let a = fixtures::nilpotent();
        let names: Vec<&str> = a.basis().iter().map(|b| b.name.as_str()).collect();
        assert_eq!(names, vec!["t", "w", "v", "q"]);
    }

    #[test]
    fn star_examples() {
        let a = fixtures::toy_with_even();
        let h = a.basis_vector("h").unwrap();
        assert_eq!(a.star_g(&h).unwrap(), h.neg());
        let x = a.basis_vector("x").unwrap();
        assert_eq!(a.star_g(&x).unwrap(), x.scale(&Cx::i()));
        let z = a.basis_vector("z").unwrap();
        assert_eq!(a.star_g(&z).unwrap(), z);
        let mixed = x.add(&h);
        assert!(a.star_g(&mixed).is_err());
        // conjugate-linear and involutive
        let c: Cx = "2-3i".parse().unwrap();
        let cx = x.scale(&c);
        assert_eq!(a.star_g(&cx).unwrap(), a.star_g(&x).unwrap().scale(&c.conj()));
        assert_eq!(a.star_g(&a.star_g(&cx).unwrap()).unwrap(), cx);
    }

    #[test]
    fn ad_examples() {
        let a = fixtures::nilpotent();
        assert!(a.ad_matrix(&GVector::zero(a.dim())).is_zero());
        let t = a.basis_vector("t").unwrap();
        let m = a.ad_matrix(&t);
        let (iw, iv) = (a.index_of("w").unwrap(), a.index_of("v").unwrap());
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let expect = if (i, j) == (iv, iw) { Cx::one() } else { Cx::zero() };
                assert_eq!(m[(i, j)], expect);
            }
        }
        assert!(m.mul(&m).is_zero());
    }

    #[test]
    fn unknown_names_rejected() {
        let d = Degree::zero(1);
        let r = LieSuperalgebra::new(1, vec![("h".into(), d)], vec![BracketSpec::new("h", "k", &[])]);
        assert!(matches!(r, Err(Error::UnknownBasis(_))));
    }

    #[test]
    fn jacobi_with_nested_brackets() {
        assert!(crate::fixtures::rotation().validate().is_valid());
        let d = Degree::zero(1);
        let basis = ["a", "b", "c"].iter().map(|n| (n.to_string(), d)).collect();
        let alg = LieSuperalgebra::new(
            1,
            basis,
            vec![BracketSpec::new("a", "b", &[("a", Cx::one())]), BracketSpec::new("b", "c", &[("b", Cx::one())])],
        )
        .unwrap();
        let r = alg.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Jacobi { .. })));
    }
}
