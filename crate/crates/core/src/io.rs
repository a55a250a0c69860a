//! JSON file formats.
//!
//! Every document carries `schema_version`. Exact scalars are strings such
//! as `"3/4"`, `"-1/2+2/3*i"` or `"i"`; plain JSON numbers are read as the
//! decimal they print as. Degrees are arrays of 0/1. Algebra vectors are
//! either maps from basis names to scalars or arrays in the algebra's
//! basis order.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use nalgebra::DVector;
use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::enveloping::{normal_form, word_names, EnvElement, Word};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::groupword::GroupWord;
use crate::liesuper::{BracketSpec, GVector, LieSuperalgebra};
use crate::linalg::CMatrix;
use crate::poly::Poly;
use crate::prerep::{FiniteDimPreRep, GradedHermitianSpace};
use crate::scalar::Cx;
use crate::smonoid::MonoidElement;
use crate::superdomain::{FormalVariable, FormalVariableSet, TruncatedSeries};
use crate::superfunc::{Backend, Domain, LocalSuperfunction, PartialTerm};

pub const SCHEMA_VERSION: u32 = 1;

fn schema(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema { field: field.into(), message: message.into() }
}

fn check_version(v: Option<u32>, what: &str) -> Result<()> {
    match v {
        None | Some(SCHEMA_VERSION) => Ok(()),
        Some(other) => Err(schema(format!("{what}.schema_version"), format!("unsupported version {other}, expected {SCHEMA_VERSION}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Text(String),
    Number(f64),
}

impl ScalarRepr {
    pub fn to_cx(&self, field: &str) -> Result<Cx> {
        match self {
            ScalarRepr::Text(s) => s.parse().map_err(|e: Error| schema(field, e.to_string())),
            ScalarRepr::Number(x) => Cx::from_f64_decimal(*x).map_err(|e| schema(field, e.to_string())),
        }
    }
}

impl From<&Cx> for ScalarRepr {
    fn from(c: &Cx) -> Self {
        ScalarRepr::Text(c.to_string())
    }
}

/// A float complex entry: a number, `[re, im]`, or an exact scalar string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexRepr {
    Number(f64),
    Pair([f64; 2]),
    Text(String),
}

impl ComplexRepr {
    pub fn to_c64(&self, field: &str) -> Result<Complex64> {
        Ok(match self {
            ComplexRepr::Number(x) => Complex64::new(*x, 0.0),
            ComplexRepr::Pair([re, im]) => Complex64::new(*re, *im),
            ComplexRepr::Text(s) => s.parse::<Cx>().map_err(|e| schema(field, e.to_string()))?.to_c64(),
        })
    }
}

impl From<Complex64> for ComplexRepr {
    fn from(z: Complex64) -> Self {
        ComplexRepr::Pair([z.re, z.im])
    }
}

pub fn matrix_from_rows(rows: &[Vec<ComplexRepr>], field: &str) -> Result<CMatrix> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    let mut out = CMatrix::zeros(n, m);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != m {
            return Err(schema(format!("{field}[{i}]"), format!("row has {} entries, expected {m}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            out[(i, j)] = e.to_c64(&format!("{field}[{i}][{j}]"))?;
        }
    }
    Ok(out)
}

pub fn matrix_to_rows(m: &CMatrix) -> Vec<Vec<ComplexRepr>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)].into()).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisRepr {
    pub name: String,
    pub degree: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketRepr {
    pub i: String,
    pub j: String,
    pub coeffs: BTreeMap<String, ScalarRepr>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub n: usize,
    pub basis: Vec<BasisRepr>,
    #[serde(default)]
    pub brackets: Vec<BracketRepr>,
}

impl AlgebraFile {
    pub fn build(&self) -> Result<LieSuperalgebra> {
        check_version(self.schema_version, "algebra")?;
        let mut basis = Vec::new();
        for (k, b) in self.basis.iter().enumerate() {
            let d = Degree::new(&b.degree).map_err(|e| schema(format!("basis[{k}].degree"), e.to_string()))?;
            basis.push((b.name.clone(), d));
        }
        let mut brackets = Vec::new();
        for (k, br) in self.brackets.iter().enumerate() {
            let mut coeffs = Vec::new();
            for (name, c) in &br.coeffs {
                coeffs.push((name.clone(), c.to_cx(&format!("brackets[{k}].coeffs.{name}"))?));
            }
            let refs: Vec<(&str, Cx)> = coeffs.iter().map(|(n, c)| (n.as_str(), c.clone())).collect();
            brackets.push(BracketSpec::new(&br.i, &br.j, &refs));
        }
        LieSuperalgebra::new(self.n, basis, brackets)
    }

    /// The declared brackets of `alg`, one entry per nonzero ordered pair.
    pub fn from_algebra(alg: &LieSuperalgebra) -> Self {
        let basis = alg.basis().iter().map(|b| BasisRepr { name: b.name.clone(), degree: b.degree.components() }).collect();
        let mut brackets = Vec::new();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let v = alg.structure(i, j);
                if v.is_zero() {
                    continue;
                }
                let coeffs = v.support().map(|(k, c)| (alg.name(k).to_string(), c.into())).collect();
                brackets.push(BracketRepr { i: alg.name(i).into(), j: alg.name(j).into(), coeffs });
            }
        }
        AlgebraFile { schema_version: Some(SCHEMA_VERSION), n: alg.width(), basis, brackets }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvTerm {
    pub word: Vec<String>,
    pub coeff: ScalarRepr,
}

fn word_indices(alg: &LieSuperalgebra, names: &[String], field: &str) -> Result<Word> {
    names.iter().map(|n| alg.index_of(n).map_err(|e| schema(field, e.to_string()))).collect()
}

/// A word in any order is read as the product of its letters and brought
/// to PBW normal form.
pub fn env_from_terms(alg: &LieSuperalgebra, terms: &[EnvTerm], field: &str) -> Result<EnvElement> {
    let mut d = EnvElement::zero();
    for (k, t) in terms.iter().enumerate() {
        let f = format!("{field}[{k}]");
        d.add_term(word_indices(alg, &t.word, &format!("{f}.word"))?, t.coeff.to_cx(&format!("{f}.coeff"))?);
    }
    Ok(normal_form(alg, &d))
}

pub fn env_to_terms(alg: &LieSuperalgebra, d: &EnvElement) -> Vec<EnvTerm> {
    d.terms().map(|(w, c)| EnvTerm { word: word_names(alg, w), coeff: c.into() }).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VectorRepr {
    Named(BTreeMap<String, ScalarRepr>),
    Dense(Vec<ScalarRepr>),
}

impl VectorRepr {
    pub fn to_gvector(&self, alg: &LieSuperalgebra, field: &str) -> Result<GVector> {
        let mut v = GVector::zero(alg.dim());
        match self {
            VectorRepr::Named(m) => {
                for (name, c) in m {
                    let i = alg.index_of(name).map_err(|e| schema(field, e.to_string()))?;
                    v = v.add(&GVector::basis(alg.dim(), i).scale(&c.to_cx(&format!("{field}.{name}"))?));
                }
            }
            VectorRepr::Dense(xs) => {
                if xs.len() != alg.dim() {
                    return Err(schema(field, format!("{} coordinates for a {}-dimensional algebra", xs.len(), alg.dim())));
                }
                for (i, c) in xs.iter().enumerate() {
                    v = v.add(&GVector::basis(alg.dim(), i).scale(&c.to_cx(&format!("{field}[{i}]"))?));
                }
            }
        }
        Ok(v)
    }

    pub fn from_gvector(alg: &LieSuperalgebra, v: &GVector) -> Self {
        VectorRepr::Named(v.support().map(|(i, c)| (alg.name(i).to_string(), c.into())).collect())
    }
}

pub fn word_from_repr(alg: &LieSuperalgebra, factors: &[VectorRepr], field: &str) -> Result<GroupWord> {
    let vs = factors
        .iter()
        .enumerate()
        .map(|(k, f)| f.to_gvector(alg, &format!("{field}[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    GroupWord::new(alg, vs)
}

pub fn word_to_repr(alg: &LieSuperalgebra, g: &GroupWord) -> Vec<VectorRepr> {
    g.factors().iter().map(|v| VectorRepr::from_gvector(alg, v)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonoidRepr {
    #[serde(default)]
    pub g: Vec<VectorRepr>,
    #[serde(rename = "D", default = "unit_env")]
    pub d: Vec<EnvTerm>,
}

fn unit_env() -> Vec<EnvTerm> {
    vec![EnvTerm { word: vec![], coeff: ScalarRepr::Text("1".into()) }]
}

impl MonoidRepr {
    pub fn build(&self, alg: &LieSuperalgebra, field: &str) -> Result<MonoidElement> {
        Ok(MonoidElement::new(word_from_repr(alg, &self.g, &format!("{field}.g"))?, env_from_terms(alg, &self.d, &format!("{field}.D"))?))
    }

    pub fn from_element(alg: &LieSuperalgebra, s: &MonoidElement) -> Self {
        MonoidRepr { g: word_to_repr(alg, &s.g), d: env_to_terms(alg, &s.d) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplesFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub samples: Vec<MonoidRepr>,
}

impl SamplesFile {
    pub fn build(&self, alg: &LieSuperalgebra) -> Result<Vec<MonoidElement>> {
        check_version(self.schema_version, "samples")?;
        self.samples.iter().enumerate().map(|(k, s)| s.build(alg, &format!("samples[{k}]"))).collect()
    }
}

/// A single group word, `{"word": [vector, …]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub word: Vec<VectorRepr>,
}

/// A single enveloping-algebra element, `{"env": [term, …]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub env: Vec<EnvTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariableRepr {
    pub name: String,
    pub degree: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub x: Vec<u32>,
    pub c: ScalarRepr,
}

/// A series coefficient: a constant, or a polynomial in the even coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyRepr {
    Constant(ScalarRepr),
    Terms(Vec<PolyTerm>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub mu: Vec<u32>,
    pub coeff: PolyRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub vars: Vec<VariableRepr>,
    pub truncation: u32,
    #[serde(default)]
    pub coords: usize,
    #[serde(default)]
    pub terms: Vec<SeriesTerm>,
}

impl SeriesFile {
    pub fn build(&self) -> Result<TruncatedSeries> {
        check_version(self.schema_version, "series")?;
        let mut vars = Vec::new();
        for (k, v) in self.vars.iter().enumerate() {
            let degree = Degree::new(&v.degree).map_err(|e| schema(format!("vars[{k}].degree"), e.to_string()))?;
            vars.push(FormalVariable { name: v.name.clone(), degree });
        }
        let set = FormalVariableSet::new(vars, self.truncation)?;
        // Exponents in the file follow the declared variable order; the set
        // stores variables sorted by degree.
        let perm: Vec<usize> = self.vars.iter().map(|v| set.index_of(&v.name).expect("declared variable")).collect();
        let mut series = TruncatedSeries::zero(set, self.coords);
        for (k, t) in self.terms.iter().enumerate() {
            let field = format!("terms[{k}]");
            if t.mu.len() != perm.len() {
                return Err(schema(format!("{field}.mu"), format!("{} exponents for {} variables", t.mu.len(), perm.len())));
            }
            let mut mu = vec![0; perm.len()];
            for (i, &e) in t.mu.iter().enumerate() {
                mu[perm[i]] = e;
            }
            let poly = match &t.coeff {
                PolyRepr::Constant(c) => Poly::constant(self.coords, c.to_cx(&format!("{field}.coeff"))?),
                PolyRepr::Terms(ps) => {
                    let mut p = Poly::zero(self.coords);
                    for (j, pt) in ps.iter().enumerate() {
                        if pt.x.len() != self.coords {
                            return Err(schema(format!("{field}.coeff[{j}].x"), format!("{} exponents for {} coordinates", pt.x.len(), self.coords)));
                        }
                        p.add_term(pt.x.clone(), pt.c.to_cx(&format!("{field}.coeff[{j}].c"))?);
                    }
                    p
                }
            };
            series.add_term(mu, poly).map_err(|e| schema(field, e.to_string()))?;
        }
        Ok(series)
    }

    pub fn from_series(s: &TruncatedSeries) -> Self {
        let vars = s.vars().vars().iter().map(|v| VariableRepr { name: v.name.clone(), degree: v.degree.components() }).collect();
        let terms = s
            .terms()
            .map(|(mu, p)| {
                let coeff = if s.coords() == 0 {
                    PolyRepr::Constant((&p.coeff(&[])).into())
                } else {
                    PolyRepr::Terms(p.terms().map(|(x, c)| PolyTerm { x: x.clone(), c: c.into() }).collect())
                };
                SeriesTerm { mu: mu.clone(), coeff }
            })
            .collect();
        SeriesFile { schema_version: Some(SCHEMA_VERSION), vars, truncation: s.vars().truncation(), coords: s.coords(), terms }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainRepr {
    Unrestricted,
    AbelianBox { half_widths: Vec<f64> },
    Words { words: Vec<Vec<VectorRepr>> },
}

impl DomainRepr {
    pub fn build(&self, alg: &LieSuperalgebra) -> Result<Domain> {
        Ok(match self {
            DomainRepr::Unrestricted => Domain::Unrestricted,
            DomainRepr::AbelianBox { half_widths } => Domain::AbelianBox { half_widths: half_widths.clone() },
            DomainRepr::Words { words } => Domain::Words(
                words
                    .iter()
                    .enumerate()
                    .map(|(k, w)| word_from_repr(alg, w, &format!("domain.words[{k}]")))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    pub fn from_domain(alg: &LieSuperalgebra, d: &Domain) -> Self {
        match d {
            Domain::Unrestricted => DomainRepr::Unrestricted,
            Domain::AbelianBox { half_widths } => DomainRepr::AbelianBox { half_widths: half_widths.clone() },
            Domain::Words(ws) => DomainRepr::Words { words: ws.iter().map(|w| word_to_repr(alg, w)).collect() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub word: Vec<String>,
    pub value: ScalarRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionalKind {
    State,
    Coefficient,
}

/// Either an inline algebra or a path relative to the referring file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSource {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra_ref: Option<String>,
}

impl AlgebraSource {
    fn resolve(&self, base: Option<&Path>) -> Result<LieSuperalgebra> {
        match (&self.algebra, &self.algebra_ref) {
            (Some(a), None) => a.build(),
            (None, Some(r)) => {
                let path = base.and_then(Path::parent).map_or_else(|| PathBuf::from(r), |dir| dir.join(r));
                load_algebra(&path)
            }
            (Some(_), Some(_)) => Err(schema("algebra", "give either algebra or algebra_ref, not both")),
            (None, None) => Err(schema("algebra", "missing algebra or algebra_ref")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionalFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub kind: FunctionalKind,
    #[serde(flatten)]
    pub source: AlgebraSource,
    #[serde(rename = "N_f", default, skip_serializing_if = "Option::is_none")]
    pub n_f: Option<usize>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<TableEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesFile>,
    #[serde(default = "unrestricted")]
    pub domain: DomainRepr,
}

fn unrestricted() -> DomainRepr {
    DomainRepr::Unrestricted
}

impl FunctionalFile {
    pub fn build(&self, base: Option<&Path>) -> Result<LocalSuperfunction> {
        check_version(self.schema_version, "functional")?;
        let alg = self.source.resolve(base)?;
        let domain = self.domain.build(&alg)?;
        match self.kind {
            FunctionalKind::State => {
                let n_f = self.n_f.ok_or_else(|| schema("N_f", "required for a state functional"))?;
                let c = self.c.ok_or_else(|| schema("C", "required for a state functional"))?;
                let mut table = BTreeMap::new();
                for (k, e) in self.entries.iter().enumerate() {
                    let w = word_indices(&alg, &e.word, &format!("entries[{k}].word"))?;
                    if table.insert(w, e.value.to_cx(&format!("entries[{k}].value"))?).is_some() {
                        return Err(schema(format!("entries[{k}].word"), "word listed twice"));
                    }
                }
                LocalSuperfunction::state(alg, table, n_f, c, domain)
            }
            FunctionalKind::Coefficient => {
                let s = self.series.as_ref().ok_or_else(|| schema("series", "required for a coefficient form"))?;
                LocalSuperfunction::coefficient(alg, s.build()?, domain)
            }
        }
    }

    /// Writes `f` with its algebra inlined.
    pub fn from_functional(f: &LocalSuperfunction) -> Self {
        let alg = f.algebra();
        let source = AlgebraSource { algebra: Some(AlgebraFile::from_algebra(alg)), algebra_ref: None };
        let domain = DomainRepr::from_domain(alg, f.domain());
        match f.backend() {
            Backend::State(sf) => FunctionalFile {
                schema_version: Some(SCHEMA_VERSION),
                kind: FunctionalKind::State,
                source,
                n_f: Some(sf.n_f),
                c: Some(sf.c),
                entries: sf.table.iter().map(|(w, v)| TableEntry { word: word_names(alg, w), value: v.into() }).collect(),
                series: None,
                domain,
            },
            Backend::Coefficient(cf) => FunctionalFile {
                schema_version: Some(SCHEMA_VERSION),
                kind: FunctionalKind::Coefficient,
                source,
                n_f: None,
                c: None,
                entries: vec![],
                series: Some(SeriesFile::from_series(&cf.series)),
                domain,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockRepr {
    pub degree: Vec<u8>,
    /// Matrix of the graded form on this block.
    pub inner: Vec<Vec<ComplexRepr>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceRepr {
    pub blocks: Vec<BlockRepr>,
    /// Optional full form matrix including cross-degree entries; when
    /// present it replaces the block-diagonal assembly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full_inner: Option<Vec<Vec<ComplexRepr>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupGenRepr {
    pub h: VectorRepr,
    pub matrix: Vec<Vec<ComplexRepr>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrerepFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    #[serde(flatten)]
    pub source: AlgebraSource,
    pub space: SpaceRepr,
    /// Basis names absent here act as zero.
    pub rho: BTreeMap<String, Vec<Vec<ComplexRepr>>>,
    #[serde(default)]
    pub group_gens: Vec<GroupGenRepr>,
}

impl PrerepFile {
    pub fn build(&self, base: Option<&Path>) -> Result<FiniteDimPreRep> {
        check_version(self.schema_version, "prerep")?;
        let alg = self.source.resolve(base)?;
        let mut blocks = Vec::new();
        for (k, b) in self.space.blocks.iter().enumerate() {
            let d = Degree::new(&b.degree).map_err(|e| schema(format!("space.blocks[{k}].degree"), e.to_string()))?;
            blocks.push((d, matrix_from_rows(&b.inner, &format!("space.blocks[{k}].inner"))?));
        }
        let mut space = GradedHermitianSpace::from_blocks(blocks)?;
        if let Some(full) = &self.space.full_inner {
            let m = matrix_from_rows(full, "space.full_inner")?;
            space = GradedHermitianSpace::new(space.blocks().to_vec(), m)?;
        }
        let n = space.dim();
        let mut rho = vec![CMatrix::zeros(n, n); alg.dim()];
        for (name, rows) in &self.rho {
            let i = alg.index_of(name).map_err(|e| schema(format!("rho.{name}"), e.to_string()))?;
            rho[i] = matrix_from_rows(rows, &format!("rho.{name}"))?;
        }
        let mut gens = Vec::new();
        for (k, g) in self.group_gens.iter().enumerate() {
            let h = g.h.to_gvector(&alg, &format!("group_gens[{k}].h"))?;
            gens.push((h, matrix_from_rows(&g.matrix, &format!("group_gens[{k}].matrix"))?));
        }
        FiniteDimPreRep::new(alg, space, rho, gens)
    }

    pub fn from_prerep(p: &FiniteDimPreRep) -> Self {
        let alg = &p.algebra;
        let g = p.space.inner();
        let mut off = 0;
        let mut blocks = Vec::new();
        for &(d, k) in p.space.blocks() {
            let m = g.view((off, off), (k, k)).into_owned();
            blocks.push(BlockRepr { degree: d.components(), inner: matrix_to_rows(&m) });
            off += k;
        }
        let block_diag = GradedHermitianSpace::from_blocks(
            p.space.blocks().iter().zip(&blocks).map(|(&(d, _), b)| (d, matrix_from_rows(&b.inner, "").expect("own output"))).collect(),
        )
        .expect("own blocks");
        let full_inner = (block_diag.inner() != g).then(|| matrix_to_rows(g));
        PrerepFile {
            schema_version: Some(SCHEMA_VERSION),
            source: AlgebraSource { algebra: Some(AlgebraFile::from_algebra(alg)), algebra_ref: None },
            space: SpaceRepr { blocks, full_inner },
            rho: (0..alg.dim()).map(|i| (alg.name(i).to_string(), matrix_to_rows(&p.rho[i]))).collect(),
            group_gens: p.group_gens.iter().map(|(h, m)| GroupGenRepr { h: VectorRepr::from_gvector(alg, h), matrix: matrix_to_rows(m) }).collect(),
        }
    }
}

/// A vector in a prerep's space, `{"vector": [entry, …]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateVectorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub vector: Vec<ComplexRepr>,
}

impl StateVectorFile {
    pub fn build(&self) -> Result<DVector<Complex64>> {
        check_version(self.schema_version, "vector")?;
        let xs = self.vector.iter().enumerate().map(|(k, e)| e.to_c64(&format!("vector[{k}]"))).collect::<Result<Vec<_>>>()?;
        Ok(DVector::from_vec(xs))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialRepr {
    pub mu: Vec<u32>,
    pub nu: Vec<u32>,
    pub coeff: ScalarRepr,
}

/// Grid points in even coordinates and a differential-operator descriptor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeminormFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub points: Vec<Vec<ScalarRepr>>,
    pub partial: Vec<PartialRepr>,
}

impl SeminormFile {
    pub fn build(&self) -> Result<(Vec<Vec<Cx>>, Vec<PartialTerm>)> {
        check_version(self.schema_version, "seminorm")?;
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(k, p)| p.iter().enumerate().map(|(i, x)| x.to_cx(&format!("points[{k}][{i}]"))).collect())
            .collect::<Result<Vec<Vec<Cx>>>>()?;
        let partial = self
            .partial
            .iter()
            .enumerate()
            .map(|(k, t)| Ok(PartialTerm { mu: t.mu.clone(), nu: t.nu.clone(), coeff: t.coeff.to_cx(&format!("partial[{k}].coeff"))? }))
            .collect::<Result<Vec<_>>>()?;
        Ok((points, partial))
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| schema(path.display().to_string(), format!("line {} column {}: {e}", e.line(), e.column())))
}

pub fn load_algebra(path: &Path) -> Result<LieSuperalgebra> {
    read_json::<AlgebraFile>(path)?.build()
}

pub fn load_functional(path: &Path) -> Result<LocalSuperfunction> {
    read_json::<FunctionalFile>(path)?.build(Some(path))
}

pub fn load_prerep(path: &Path) -> Result<FiniteDimPreRep> {
    read_json::<PrerepFile>(path)?.build(Some(path))
}

pub fn load_samples(path: &Path, alg: &LieSuperalgebra) -> Result<Vec<MonoidElement>> {
    read_json::<SamplesFile>(path)?.build(alg)
}

pub fn load_series(path: &Path) -> Result<TruncatedSeries> {
    read_json::<SeriesFile>(path)?.build()
}

pub fn load_word(path: &Path, alg: &LieSuperalgebra) -> Result<GroupWord> {
    let f: WordFile = read_json(path)?;
    check_version(f.schema_version, "word")?;
    word_from_repr(alg, &f.word, "word")
}

pub fn load_env(path: &Path, alg: &LieSuperalgebra) -> Result<EnvElement> {
    let f: EnvFile = read_json(path)?;
    check_version(f.schema_version, "env")?;
    env_from_terms(alg, &f.env, "env")
}
