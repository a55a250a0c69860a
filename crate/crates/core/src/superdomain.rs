//! Truncated Z₂ⁿ-graded formal power series `C[x][[ξ¹,…,ξ^q]]`, cut off at
//! total odd-variable degree `N`. Completeness statements are checked at
//! truncation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::grading::{sign, Degree, Sign};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalVariable {
    pub name: String,
    pub degree: Degree,
}

/// Formal variables in canonical order (by degree, then declaration index)
/// together with the truncation bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalVariableSet {
    vars: Vec<FormalVariable>,
    truncation: u32,
}

impl FormalVariableSet {
    pub fn new(mut vars: Vec<FormalVariable>, truncation: u32) -> Result<Self> {
        let width = vars.first().map(|v| v.degree.width());
        for v in &vars {
            if v.degree.is_zero() {
                return Err(Error::InvalidDegree(format!("formal variable {} has degree zero", v.name)));
            }
            if Some(v.degree.width()) != width {
                return Err(Error::DegreeLength(width.unwrap_or(0), v.degree.width()));
            }
        }
        vars.sort_by_key(|v| v.degree.bits());
        Ok(FormalVariableSet { vars, truncation })
    }

    pub fn vars(&self) -> &[FormalVariable] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// True when `ξᵢ² = 0`.
    pub fn is_nilpotent(&self, i: usize) -> bool {
        let d = self.vars[i].degree;
        sign(d, d).is_minus()
    }

    /// Whether `μ` is an admissible exponent under truncation.
    pub fn admits(&self, mu: &[u32]) -> bool {
        mu.len() == self.len()
            && mu.iter().sum::<u32>() <= self.truncation
            && mu.iter().enumerate().all(|(i, &k)| k <= 1 || !self.is_nilpotent(i))
    }
}

/// `Σ f_μ(x) ξ^μ` with polynomial coefficients in `coords` even variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    vars: FormalVariableSet,
    coords: usize,
    terms: BTreeMap<Vec<u32>, Poly>,
}

impl TruncatedSeries {
    pub fn zero(vars: FormalVariableSet, coords: usize) -> Self {
        TruncatedSeries { vars, coords, terms: BTreeMap::new() }
    }

    pub fn one(vars: FormalVariableSet, coords: usize) -> Self {
        let mut s = TruncatedSeries::zero(vars, coords);
        let mu = vec![0; s.vars.len()];
        s.add_term(mu, Poly::constant(coords, crate::scalar::Cx::one())).expect("unit");
        s
    }

    /// The single variable `ξᵢ`.
    pub fn variable(vars: FormalVariableSet, coords: usize, i: usize) -> Self {
        let mut s = TruncatedSeries::zero(vars, coords);
        let mut mu = vec![0; s.vars.len()];
        mu[i] = 1;
        if s.vars.admits(&mu) {
            s.add_term(mu, Poly::constant(coords, crate::scalar::Cx::one())).expect("variable");
        }
        s
    }

    pub fn vars(&self) -> &FormalVariableSet {
        &self.vars
    }

    pub fn coords(&self) -> usize {
        self.coords
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mu: &[u32]) -> Poly {
        self.terms.get(mu).cloned().unwrap_or_else(|| Poly::zero(self.coords))
    }

    /// Adds `c·ξ^μ`; exponents beyond truncation are rejected.
    pub fn add_term(&mut self, mu: Vec<u32>, c: Poly) -> Result<()> {
        if !self.vars.admits(&mu) {
            return Err(Error::Schema { field: "mu".into(), message: format!("exponent {mu:?} not admissible") });
        }
        if c.nvars() != self.coords {
            return Err(Error::Dimension(format!("coefficient has {} coordinates, expected {}", c.nvars(), self.coords)));
        }
        let sum = self.coeff(&mu).add(&c);
        if sum.is_zero() {
            self.terms.remove(&mu);
        } else {
            self.terms.insert(mu, sum);
        }
        Ok(())
    }

    fn compatible(&self, other: &TruncatedSeries) -> Result<()> {
        if self.vars != other.vars || self.coords != other.coords {
            return Err(Error::VariableMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let neg = other.scale(&Poly::constant(self.coords, crate::scalar::Cx::from_int(-1)));
        self.add(&neg)
    }

    /// Multiplies every coefficient by an even function.
    pub fn scale(&self, c: &Poly) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.vars.clone(), self.coords);
        for (mu, a) in &self.terms {
            out.add_term(mu.clone(), a.mul(c)).expect("same exponents");
        }
        out
    }

    /// `f mod J^k`: drops every term with `|μ| ≥ k`.
    pub fn residue(&self, k: u32) -> TruncatedSeries {
        let mut out = self.clone();
        out.terms.retain(|mu, _| mu.iter().sum::<u32>() < k);
        out
    }
}

/// Sign of `ξ^μ ξ^ν` relative to the canonical monomial `ξ^{μ+ν}`; `None`
/// when a nilpotent variable would be squared.
fn monomial_sign(vars: &FormalVariableSet, mu: &[u32], nu: &[u32]) -> Option<Sign> {
    let mut s = Sign::Plus;
    for i in 0..mu.len() {
        if vars.is_nilpotent(i) && mu[i] + nu[i] > 1 {
            return None;
        }
        for (j, n) in nu.iter().enumerate().take(i) {
            if (mu[i] * n) % 2 == 1 {
                s = s * sign(vars.vars[i].degree, vars.vars[j].degree);
            }
        }
    }
    Some(s)
}

/// Graded-commutative product, truncated at the bound `N`.
pub fn series_mul(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    f.compatible(g)?;
    let mut out = TruncatedSeries::zero(f.vars.clone(), f.coords);
    let n = f.vars.truncation;
    for (mu, a) in &f.terms {
        let dm: u32 = mu.iter().sum();
        for (nu, b) in &g.terms {
            if dm + nu.iter().sum::<u32>() > n {
                continue;
            }
            let Some(s) = monomial_sign(&f.vars, mu, nu) else { continue };
            let e: Vec<u32> = mu.iter().zip(nu).map(|(x, y)| x + y).collect();
            let c = a.mul(b).scale(&s.to_cx());
            out.add_term(e, c)?;
        }
    }
    Ok(out)
}

/// Minimal total exponent over nonzero terms; `None` stands for ∞.
pub fn j_valuation(f: &TruncatedSeries) -> Option<u32> {
    f.terms.keys().map(|mu| mu.iter().sum()).min()
}

/// `[f mod J¹, …, f mod J^k]`.
pub fn residue_tower(f: &TruncatedSeries, k: u32) -> Result<Vec<TruncatedSeries>> {
    if k > f.vars.truncation + 1 {
        return Err(Error::Schema {
            field: "k".into(),
            message: format!("tower depth {k} exceeds truncation + 1 = {}", f.vars.truncation + 1),
        });
    }
    Ok((1..=k).map(|m| f.residue(m)).collect())
}

/// Inverse of [`residue_tower`]: checks compatibility of consecutive
/// residues and returns the deepest one.
pub fn reconstruct(tower: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    let last = tower.last().ok_or(Error::InconsistentTower(0))?;
    for (idx, r) in tower.iter().enumerate() {
        let level = idx as u32 + 1;
        if r.vars != last.vars || r.coords != last.coords {
            return Err(Error::InconsistentTower(idx + 1));
        }
        if j_valuation_max(r).is_some_and(|m| m >= level) {
            return Err(Error::InconsistentTower(idx + 1));
        }
        if let Some(next) = tower.get(idx + 1) {
            if &next.residue(level) != r {
                return Err(Error::InconsistentTower(idx + 1));
            }
        }
    }
    Ok(last.clone())
}

fn j_valuation_max(f: &TruncatedSeries) -> Option<u32> {
    f.terms.keys().map(|mu| mu.iter().sum()).max()
}

/// Limit of a J-adically Cauchy sequence at truncation. At every level
/// `n ≤ N+1` some tail of length at least two must agree modulo `Jⁿ`.
pub fn cauchy_limit(seq: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    let last = seq.last().ok_or_else(|| Error::Dimension("empty sequence".into()))?;
    for s in seq {
        s.compatible(last)?;
    }
    if seq.len() == 1 {
        return Ok(last.clone());
    }
    let (i, k) = (seq.len() - 2, seq.len() - 1);
    let diff = seq[i].sub(&seq[k])?;
    if let Some(v) = j_valuation(&diff) {
        return Err(Error::NotCauchy { level: v + 1, i, k });
    }
    Ok(last.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cx;

    fn vars(degs: &[&[u8]], n: u32) -> FormalVariableSet {
        let v = degs
            .iter()
            .enumerate()
            .map(|(i, d)| FormalVariable { name: format!("e{}", i + 1), degree: Degree::new(d).unwrap() })
            .collect();
        FormalVariableSet::new(v, n).unwrap()
    }

    fn xi(vs: &FormalVariableSet, name: &str) -> TruncatedSeries {
        TruncatedSeries::variable(vs.clone(), 0, vs.index_of(name).unwrap())
    }

    #[test]
    fn commuting_degrees() {
        let vs = vars(&[&[0, 1], &[1, 0]], 4);
        let (a, b) = (xi(&vs, "e1"), xi(&vs, "e2"));
        assert_eq!(series_mul(&b, &a).unwrap(), series_mul(&a, &b).unwrap());
    }

    #[test]
    fn odd_square_vanishes() {
        let vs = vars(&[&[1]], 4);
        let a = xi(&vs, "e1");
        assert!(series_mul(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn anticommuting_degrees() {
        let vs = vars(&[&[1], &[1]], 4);
        let (a, b) = (xi(&vs, "e1"), xi(&vs, "e2"));
        let ab = series_mul(&a, &b).unwrap();
        let ba = series_mul(&b, &a).unwrap();
        assert_eq!(ab.add(&ba).unwrap(), TruncatedSeries::zero(vs, 0));
    }

    #[test]
    fn valuation_examples() {
        let vs = vars(&[&[0, 1], &[1, 0]], 4);
        let one = TruncatedSeries::one(vs.clone(), 0);
        let (a, b) = (xi(&vs, "e1"), xi(&vs, "e2"));
        assert_eq!(j_valuation(&one.add(&a).unwrap()), Some(0));
        assert_eq!(j_valuation(&series_mul(&a, &b).unwrap()), Some(2));
        assert_eq!(j_valuation(&TruncatedSeries::zero(vs, 0)), None);
    }

    #[test]
    fn tower_example() {
        let vs = vars(&[&[0, 1], &[1, 0]], 2);
        let one = TruncatedSeries::one(vs.clone(), 0);
        let ab = series_mul(&xi(&vs, "e1"), &xi(&vs, "e2")).unwrap();
        let f = one.add(&ab).unwrap();
        let tower = residue_tower(&f, 3).unwrap();
        assert_eq!(tower, vec![one.clone(), one, f.clone()]);
        assert_eq!(reconstruct(&tower).unwrap(), f);
        let mut bad = tower.clone();
        bad.swap(0, 2);
        assert!(reconstruct(&bad).is_err());
    }

    #[test]
    fn geometric_partial_sums_stabilize() {
        // Degree (1,1) satisfies B(d,d) = +1, so powers survive.
        let vs = vars(&[&[1, 1], &[1, 1]], 5);
        let p = series_mul(&xi(&vs, "e1"), &xi(&vs, "e2")).unwrap();
        let mut seq = Vec::new();
        let mut partial = TruncatedSeries::one(vs.clone(), 0);
        let mut power = TruncatedSeries::one(vs.clone(), 0);
        for _ in 0..5 {
            seq.push(partial.clone());
            power = series_mul(&power, &p).unwrap();
            partial = partial.add(&power).unwrap();
        }
        seq.push(partial);
        let lim = cauchy_limit(&seq).unwrap();
        let mut expected = TruncatedSeries::zero(vs.clone(), 0);
        for j in 0..=2u32 {
            expected.add_term(vec![j, j], Poly::constant(0, Cx::one())).unwrap();
        }
        assert_eq!(lim, expected);
    }

    #[test]
    fn alternating_is_not_cauchy() {
        let vs = vars(&[&[1]], 2);
        let one = TruncatedSeries::one(vs.clone(), 0);
        let a = xi(&vs, "e1");
        let seq = vec![one.clone(), a.clone(), one, a];
        match cauchy_limit(&seq) {
            Err(Error::NotCauchy { level, i, k }) => assert_eq!((level, i, k), (1, 2, 3)),
            other => panic!("expected NotCauchy, got {other:?}"),
        }
    }
}
