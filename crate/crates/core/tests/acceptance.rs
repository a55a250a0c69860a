//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::DVector;
use num::complex::Complex64;
use rand::Rng;
use zsuper_core::enveloping::{nf_product, normal_form, star_env};
use zsuper_core::extend::{extend_value, verify_restriction};
use zsuper_core::fixtures;
use zsuper_core::gns::{validate_bracket, validate_star_rep};
use zsuper_core::grading::{alpha, beta};
use zsuper_core::poly::Poly;
use zsuper_core::prerep::validate_prerep;
use zsuper_core::smonoid::{s_mul, s_star};
use zsuper_core::superdomain::{
    j_valuation, reconstruct, residue_tower, series_mul, FormalVariable, FormalVariableSet, TruncatedSeries,
};
use zsuper_core::superfunc::{
    check_positive_definite, matrix_coefficient_functional, odd_variables, seminorm, Domain, PartialTerm,
};
use zsuper_core::{
    Cx, Degree, EnvElement, FiniteDimPreRep, GVector, GradedHermitianSpace, LieSuperalgebra,
    LocalSuperfunction, MonoidElement,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(limit: Duration, took: Duration) -> Result<(), String> {
    if took < limit {
        Ok(())
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn gaussian(n_f: usize) -> LocalSuperfunction {
    fixtures::gaussian_functional(n_f, Domain::Unrestricted)
}

fn h_power(k: usize) -> EnvElement {
    EnvElement::monomial(vec![0; k], Cx::one())
}

fn gaussian_extension() -> Outcome {
    let start = Instant::now();
    let f = gaussian(32);
    let a = f.algebra().clone();
    let mut worst = 0.0f64;
    for t in [-1.5, -1.0, -0.5, 0.5, 1.0, 1.5] {
        let v = extend_value(&f, &common::exp_named(&a, "h", t), &EnvElement::one(), 30).map_err(|e| e.to_string())?;
        worst = worst.max((v.value - Complex64::new((-t * t / 2.0f64).exp(), 0.0)).norm());
    }
    within(Duration::from_secs(1), start.elapsed())?;
    ensure(worst <= 1e-8, format!("max |ȟ − e^(−t²/2)| = {worst:.2e} in {:?}", start.elapsed()))
}

fn restriction_agreement() -> Outcome {
    let start = Instant::now();
    let f = gaussian(34);
    let a = f.algebra().clone();
    let mut samples = Vec::new();
    for t in [-0.8, -0.4, 0.0, 0.4, 0.8] {
        for k in 0..3 {
            samples.push(MonoidElement::new(common::exp_named(&a, "h", t), h_power(k)));
        }
    }
    let r = verify_restriction(&f, &samples, 30, 1e-8).map_err(|e| e.to_string())?;
    within(Duration::from_secs(1), start.elapsed())?;
    let ok = r.passed && r.max_deviation <= r.combined_bound && r.max_bound <= 1e-8;
    ensure(ok, format!("deviation {:.2e}, largest bound {:.2e}, {} samples in {:?}", r.max_deviation, r.max_bound, r.samples, start.elapsed()))
}

fn gaussian_gram() -> Outcome {
    let f = gaussian(64);
    let a = f.algebra().clone();
    let samples: Vec<MonoidElement> =
        [-1.0, -0.6, -0.2, 0.2, 0.6, 1.0].iter().map(|&t| MonoidElement::group(common::exp_named(&a, "h", t))).collect();
    let g = check_positive_definite(&f, &samples, 1e-12, 1e-10, 60).map_err(|e| e.to_string())?;
    let ok = g.min_eigenvalue >= -1e-10 && g.hermitian_deviation <= 1e-12;
    ensure(ok, format!("min eigenvalue {:.3e}, Hermitian deviation {:.1e}", g.min_eigenvalue, g.hermitian_deviation))
}

fn algebras() -> Vec<(&'static str, LieSuperalgebra)> {
    vec![("abelian", fixtures::abelian()), ("toy", fixtures::toy()), ("nilpotent", fixtures::nilpotent())]
}

fn pbw_associativity() -> Outcome {
    let start = Instant::now();
    let mut r = common::rng(4);
    for (name, a) in algebras() {
        for trial in 0..500 {
            let [u, v, w] = [0; 3].map(|_| normal_form(&a, &common::env(&mut r, &a, 3, 3)));
            let left = nf_product(&a, &nf_product(&a, &u, &v), &w);
            let right = nf_product(&a, &u, &nf_product(&a, &v, &w));
            if left != right {
                return Err(format!("{name} trial {trial}: (uv)w ≠ u(vw)"));
            }
        }
    }
    within(Duration::from_secs(10), start.elapsed())?;
    Ok(format!("1500 triples exact in {:?}", start.elapsed()))
}

fn involution_laws() -> Outcome {
    let mut r = common::rng(5);
    for (name, a) in algebras() {
        for trial in 0..500 {
            let u = normal_form(&a, &common::env(&mut r, &a, 3, 3));
            let v = normal_form(&a, &common::env(&mut r, &a, 3, 3));
            if star_env(&a, &star_env(&a, &u)) != u {
                return Err(format!("{name} trial {trial}: (D*)* ≠ D"));
            }
            if star_env(&a, &nf_product(&a, &u, &v)) != nf_product(&a, &star_env(&a, &v), &star_env(&a, &u)) {
                return Err(format!("{name} trial {trial}: (D₁D₂)* ≠ D₂*D₁*"));
            }
        }
    }
    Ok("1500 pairs exact".into())
}

fn monoid_laws() -> Outcome {
    let mut r = common::rng(6);
    let a = fixtures::nilpotent();
    let err = |e: zsuper_core::Error| e.to_string();
    for trial in 0..500 {
        let (s1, s2) = (common::monoid(&mut r, &a), common::monoid(&mut r, &a));
        if s_star(&a, &s_star(&a, &s1).map_err(err)?).map_err(err)?.canonical(&a) != s1.canonical(&a) {
            return Err(format!("trial {trial}: (s*)* ≠ s"));
        }
        let l = s_star(&a, &s_mul(&a, &s1, &s2).map_err(err)?).map_err(err)?;
        let rr = s_mul(&a, &s_star(&a, &s2).map_err(err)?, &s_star(&a, &s1).map_err(err)?).map_err(err)?;
        if l.canonical(&a) != rr.canonical(&a) {
            return Err(format!("trial {trial}: (s₁s₂)* ≠ s₂*s₁*"));
        }
    }
    Ok("500 trials exact".into())
}

fn basis(a: &LieSuperalgebra) -> Vec<GVector> {
    (0..a.dim()).map(|i| GVector::basis(a.dim(), i)).collect()
}

fn pairs(a: &LieSuperalgebra) -> Vec<(GVector, GVector)> {
    let b = basis(a);
    b.iter().flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone()))).collect()
}

fn gns_deviation(f: &LocalSuperfunction, samples: &[MonoidElement], order: usize) -> Result<f64, String> {
    let a = f.algebra();
    let s = validate_star_rep(f, samples, &basis(a), 1e-9, order).map_err(|e| e.to_string())?;
    let b = validate_bracket(f, samples, &pairs(a), 1e-9, order).map_err(|e| e.to_string())?;
    Ok(s.max_deviation.max(b.max_deviation))
}

fn coordinate_vectors(rep: &FiniteDimPreRep) -> Vec<DVector<Complex64>> {
    let n = rep.space.dim();
    let mut out: Vec<DVector<Complex64>> = (0..n)
        .map(|i| DVector::from_fn(n, |j, _| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }))
        .collect();
    let degs = rep.space.coordinate_degrees();
    if n > 1 && degs[0] == degs[1] {
        let mut v = DVector::zeros(n);
        v[0] = Complex64::new(0.6, 0.0);
        v[1] = Complex64::new(0.0, 0.8);
        out.push(v);
    }
    out
}

fn gns_identities() -> Outcome {
    let f = gaussian(40);
    let a = f.algebra().clone();
    let samples: Vec<MonoidElement> = [(-0.5, 0), (0.0, 1), (0.5, 2), (0.3, 1)]
        .iter()
        .map(|&(t, k)| MonoidElement::new(common::exp_named(&a, "h", t), h_power(k)))
        .collect();
    let mut worst = gns_deviation(&f, &samples, 30)?;
    let mut functionals = 1;
    let reps = [fixtures::line_rep(0.7), fixtures::odd_pair_rep(), fixtures::rotation_rep(), fixtures::nilpotent_rep()];
    for rep in &reps {
        let a = &rep.algebra;
        let h0 = a.basis().iter().position(|b| b.degree.is_zero()).expect("even element");
        let mut samples = vec![MonoidElement::unit()];
        samples.extend((0..a.dim()).map(|i| MonoidElement::env(EnvElement::generator(i))));
        samples.push(MonoidElement::new(common::exp_named(a, a.name(h0), 0.3), EnvElement::generator(a.dim() - 1)));
        for v in coordinate_vectors(rep) {
            let f = matrix_coefficient_functional(rep, &v, 16, 1e-10).map_err(|e| e.to_string())?;
            worst = worst.max(gns_deviation(&f, &samples, 12)?);
            functionals += 1;
        }
    }
    ensure(worst <= 1e-9, format!("max deviation {worst:.2e} over {functionals} functionals"))
}

fn flagged(rep: &FiniteDimPreRep) -> bool {
    validate_prerep(rep, 1e-10).map(|r| !r.passed).unwrap_or(true)
}

fn bumps() -> [Complex64; 4] {
    [Complex64::new(0.1, 0.0), Complex64::new(-0.1, 0.0), Complex64::new(0.0, 0.1), Complex64::new(0.0, -0.1)]
}

/// Every single-entry mutation of one representation, labelled. `None`
/// marks a mutation the space constructor already refuses.
fn mutations(rep: &FiniteDimPreRep) -> Vec<(String, Option<FiniteDimPreRep>)> {
    let mut out = Vec::new();
    let n = rep.space.dim();
    for (i, m) in rep.rho.iter().enumerate() {
        for (r, c) in (0..n).flat_map(|r| (0..n).map(move |c| (r, c))) {
            for d in bumps() {
                let mut bad = rep.clone();
                bad.rho[i][(r, c)] = m[(r, c)] + d;
                out.push((format!("ρ({})[{r},{c}] += {d}", rep.algebra.name(i)), Some(bad)));
            }
        }
    }
    for (g, (_, m)) in rep.group_gens.iter().enumerate() {
        for (r, c) in (0..n).flat_map(|r| (0..n).map(move |c| (r, c))) {
            for d in bumps() {
                let mut bad = rep.clone();
                bad.group_gens[g].1[(r, c)] = m[(r, c)] + d;
                out.push((format!("π#{g}[{r},{c}] += {d}"), Some(bad)));
            }
        }
    }
    let dim = rep.algebra.dim();
    for (i, j, k) in (0..dim).flat_map(|i| (0..dim).flat_map(move |j| (0..dim).map(move |k| (i, j, k)))) {
        let mut bad = rep.clone();
        let c = &rep.algebra.structure(i, j).coeffs[k] + &Cx::one();
        bad.algebra.set_constant(i, j, k, c);
        out.push((format!("[{},{}] += {}", rep.algebra.name(i), rep.algebra.name(j), rep.algebra.name(k)), Some(bad)));
    }
    // Grading blocks: relabel one block, or couple two different blocks.
    let blocks = rep.space.blocks().to_vec();
    for b in 0..blocks.len() {
        for bit in 0..rep.algebra.width() {
            let mut relabelled = blocks.clone();
            let flipped: Vec<u8> = relabelled[b].0.components().iter().enumerate().map(|(j, x)| if j == bit { 1 - x } else { *x }).collect();
            relabelled[b].0 = Degree::new(&flipped).expect("same width");
            let bad = GradedHermitianSpace::new(relabelled, rep.space.inner().clone()).ok().map(|space| {
                let mut bad = rep.clone();
                bad.space = space;
                bad
            });
            out.push((format!("block {b} degree bit {bit} flipped"), bad));
        }
    }
    let degs = rep.space.coordinate_degrees();
    for (r, c) in (0..n).flat_map(|r| (0..n).map(move |c| (r, c))) {
        if degs[r] != degs[c] {
            for d in bumps() {
                let mut bad = rep.clone();
                let old = bad.space.inner()[(r, c)];
                bad.space.inner_mut()[(r, c)] = old + d;
                out.push((format!("inner[{r},{c}] += {d} across blocks"), Some(bad)));
            }
        }
    }
    out
}

fn prerep_soundness() -> Outcome {
    let reps = [("line", fixtures::line_rep(0.7)), ("odd_pair", fixtures::odd_pair_rep()), ("rotation", fixtures::rotation_rep())];
    let mut total = 0;
    let mut missed = Vec::new();
    for (name, rep) in &reps {
        if flagged(rep) {
            return Err(format!("valid representation {name} rejected"));
        }
        for (label, bad) in mutations(rep) {
            total += 1;
            if !bad.as_ref().is_none_or(flagged) {
                missed.push(format!("{name}: {label}"));
            }
        }
    }
    let detail = format!("3 valid reps pass, {}/{total} mutations flagged", total - missed.len());
    if missed.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; missed {missed:?}"))
    }
}

fn z2_vars() -> FormalVariableSet {
    let vars = [[0, 1], [1, 0], [1, 1], [0, 1]]
        .iter()
        .enumerate()
        .map(|(i, d)| FormalVariable { name: format!("e{i}"), degree: Degree::new(d).unwrap() })
        .collect();
    FormalVariableSet::new(vars, 4).unwrap()
}

fn random_series(r: &mut impl Rng, vars: &FormalVariableSet, coords: usize, min_order: u32) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(vars.clone(), coords);
    for _ in 0..r.random_range(1..=6) {
        let mu: Vec<u32> = (0..vars.len()).map(|_| r.random_range(0..=2)).collect();
        if vars.admits(&mu) && mu.iter().sum::<u32>() >= min_order {
            let mut p = Poly::zero(coords);
            p.add_term((0..coords).map(|_| r.random_range(0..=2)).collect(), common::nonzero_scalar(r));
            s.add_term(mu, p).unwrap();
        }
    }
    s
}

fn superdomain() -> Outcome {
    let mut r = common::rng(9);
    let vars = z2_vars();
    for trial in 0..100 {
        let f = random_series(&mut r, &vars, 1, 0);
        let tower = residue_tower(&f, 5).map_err(|e| e.to_string())?;
        if reconstruct(&tower).map_err(|e| e.to_string())? != f {
            return Err(format!("round trip {trial}"));
        }
        let g = random_series(&mut r, &vars, 1, 0);
        let fg = series_mul(&f, &g).map_err(|e| e.to_string())?;
        if let (Some(a), Some(b), Some(c)) = (j_valuation(&f), j_valuation(&g), j_valuation(&fg)) {
            if c < a + b {
                return Err(format!("valuation {c} < {a} + {b} in trial {trial}"));
            }
        }
    }
    let a = fixtures::toy_with_even();
    let odd = odd_variables(&a, 3).map_err(|e| e.to_string())?;
    let grid: Vec<Vec<Cx>> = [-2, -1, 0, 1, 2].iter().map(|&x| vec![Cx::from_ratio(x, 2)]).collect();
    for trial in 0..100 {
        let k = r.random_range(1..=3);
        let g = random_series(&mut r, &odd, 1, k);
        let Some(val) = j_valuation(&g) else { continue };
        let f = LocalSuperfunction::coefficient(a.clone(), g, Domain::AbelianBox { half_widths: vec![1.0] }).map_err(|e| e.to_string())?;
        for order in 0..val {
            let mut nu = vec![0u32; odd.len()];
            for slot in nu.iter_mut().take(order as usize) {
                *slot = 1;
            }
            let partial = [PartialTerm { mu: vec![r.random_range(0..=2)], nu, coeff: Cx::one() }];
            let v = seminorm(&f, &grid, &partial).map_err(|e| e.to_string())?;
            if v != 0.0 {
                return Err(format!("seminorm {v} with valuation {val} > odd order {order} in trial {trial}"));
            }
        }
    }
    Ok("100 round trips, valuation superadditive, seminorm annihilation".into())
}

fn sign_tables() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        for a in Degree::all(n) {
            let u = a.components().iter().filter(|&&c| c == 1).count();
            let expected = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_2 * u as f64);
            if (alpha(a).to_c64() - expected).norm() > 1e-15 {
                return Err(format!("α{a}"));
            }
            for b in Degree::all(n) {
                let dot: u32 = a.components().iter().zip(b.components()).map(|(x, y)| (x * y) as u32).sum();
                let expected = if dot.is_multiple_of(2) { 1 } else { -1 };
                if beta(a, b).map_err(|e| e.to_string())?.to_i64() != expected {
                    return Err(format!("B({a},{b})"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs for n ≤ 4"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Gaussian extension", gaussian_extension),
        ("restriction agreement", restriction_agreement),
        ("PSD certification", gaussian_gram),
        ("PBW associativity", pbw_associativity),
        ("involution laws", involution_laws),
        ("monoid laws", monoid_laws),
        ("GNS identities", gns_identities),
        ("prerep validator soundness", prerep_soundness),
        ("superdomain", superdomain),
        ("sign tables", sign_tables),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
