use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zsuper_core::enveloping::{nf_product, normal_form, star_env, truncate, word_names};
use zsuper_core::extend::{extend_value, global_posdef_check, verify_restriction};
use zsuper_core::gns::{gram, validate_bracket, validate_equivariance, validate_star_rep, IdentityReport};
use zsuper_core::groupword::{ad_env, ad_group};
use zsuper_core::io::{self, FunctionalFile, SeriesFile};
use zsuper_core::liesuper::LieSuperalgebra;
use zsuper_core::prerep::validate_prerep;
use zsuper_core::superdomain::{j_valuation, reconstruct, residue_tower, series_mul};
use zsuper_core::superfunc::{check_positive_definite, matrix_coefficient_functional, seminorm, uniform_bound_check, GramReport};
use zsuper_core::{Approx, CMatrix, EnvElement, GVector, LocalSuperfunction};

#[derive(Parser)]
#[command(name = "zsuper", version, about = "Graded Lie superalgebras, positive-definite superfunctions and their extensions")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Opts {
    /// Truncation order R of group-element series.
    #[arg(long, global = true, env = "ZSUPER_ORDER", default_value_t = 30)]
    order: usize,
    /// Tolerance for identity checks.
    #[arg(long, global = true, env = "ZSUPER_TOL", default_value_t = 1e-9)]
    tol: f64,
    /// Tolerance on the minimum Gram eigenvalue (and Hermitian deviation).
    #[arg(long = "tol-psd", global = true, env = "ZSUPER_TOL_PSD", default_value_t = 1e-10)]
    tol_psd: f64,
    /// Filtration truncation for enveloping-algebra output.
    #[arg(long, global = true)]
    truncate: Option<usize>,
    /// Write the JSON report (or generated file) here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesOp {
    Mul,
    Add,
    Sub,
    Residue,
    Valuation,
    Tower,
}

#[derive(Subcommand)]
enum Command {
    /// Degree additivity, graded skew-symmetry and Jacobi on all basis triples.
    ValidateAlgebra { algebra: PathBuf },
    /// PBW normal form of an element, or of the product with `--right`.
    Nf {
        algebra: PathBuf,
        env: PathBuf,
        #[arg(long)]
        right: Option<PathBuf>,
    },
    /// The antilinear antiautomorphism on the enveloping algebra.
    Star { algebra: PathBuf, env: PathBuf },
    /// Ad of a group word on the basis, or on an element with `--env`.
    Ad {
        algebra: PathBuf,
        word: PathBuf,
        #[arg(long)]
        env: Option<PathBuf>,
    },
    /// Truncated formal series operations.
    Series {
        #[arg(value_enum)]
        op: SeriesOp,
        first: PathBuf,
        second: Option<PathBuf>,
        /// Residue level or tower depth.
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Gram certification of a local superfunction on samples in U.
    CheckPosdef {
        functional: PathBuf,
        #[arg(long)]
        samples: PathBuf,
    },
    /// Gram matrix of the reproducing kernel on samples.
    Gram {
        functional: PathBuf,
        #[arg(long)]
        samples: PathBuf,
    },
    /// Star-representation, bracket and (with `--word`) equivariance identities.
    ValidateGns {
        functional: PathBuf,
        #[arg(long)]
        samples: PathBuf,
        #[arg(long)]
        word: Option<PathBuf>,
    },
    /// Value of the global extension at (word, element).
    Extend {
        functional: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        env: Option<PathBuf>,
    },
    /// Extension versus local evaluation on samples in U.
    VerifyExtension {
        functional: PathBuf,
        #[arg(long)]
        samples: PathBuf,
    },
    /// Gram certification of the extension on arbitrary group elements.
    GlobalPosdef {
        functional: PathBuf,
        #[arg(long)]
        samples: PathBuf,
    },
    /// Graded inner product axioms and pre-representation conditions.
    ValidatePrerep { prerep: PathBuf },
    /// Matrix-coefficient state functional of a valid pre-representation.
    MakeFunctional {
        prerep: PathBuf,
        #[arg(long)]
        vector: PathBuf,
        #[arg(long = "n-f", default_value_t = 8)]
        n_f: usize,
    },
    /// Seminorm of a coefficient-form superfunction over a grid.
    Seminorm {
        functional: PathBuf,
        #[arg(long)]
        spec: PathBuf,
    },
    /// Largest |f(D)(p)| over PBW monomials up to `--budget`, against `--bound`.
    UniformBound {
        functional: PathBuf,
        #[arg(long)]
        word: Vec<PathBuf>,
        #[arg(long)]
        budget: usize,
        #[arg(long)]
        bound: f64,
    },
}

struct Outcome {
    passed: bool,
    report: Value,
    summary: Vec<String>,
    /// A generated document written to `--out` instead of the report.
    document: Option<Value>,
}

impl Outcome {
    fn new(passed: bool, report: Value, summary: Vec<String>) -> Self {
        Outcome { passed, report, summary, document: None }
    }
}

fn approx_json(a: &Approx) -> Value {
    json!({"re": a.value.re, "im": a.value.im, "error_bound": a.err})
}

fn matrix_json(m: &CMatrix) -> Value {
    serde_json::to_value(io::matrix_to_rows(m)).expect("matrix serializes")
}

fn env_json(alg: &LieSuperalgebra, d: &EnvElement) -> Value {
    serde_json::to_value(io::env_to_terms(alg, d)).expect("env serializes")
}

fn env_text(alg: &LieSuperalgebra, d: &EnvElement) -> String {
    if d.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = d
        .terms()
        .map(|(w, c)| if w.is_empty() { format!("({c})") } else { format!("({c})*{}", word_names(alg, w).join("*")) })
        .collect();
    terms.join(" + ")
}

fn gram_json(r: &GramReport) -> Value {
    json!({
        "matrix": matrix_json(&r.matrix),
        "entry_error": r.entry_error,
        "hermitian_deviation": r.hermitian_deviation,
        "eigenvalues": r.eigenvalues,
        "min_eigenvalue": r.min_eigenvalue,
        "condition_i_violations": r.condition_i_violations,
        "passed": r.passed,
    })
}

fn gram_summary(r: &GramReport) -> Vec<String> {
    let mut s = vec![
        format!("samples: {}", r.matrix.nrows()),
        format!("hermitian deviation: {:e}", r.hermitian_deviation),
        format!("min eigenvalue: {:e}", r.min_eigenvalue),
        format!("entry error bound: {:e}", r.entry_error),
    ];
    for w in &r.condition_i_violations {
        s.push(format!("nonzero value on a word of nonzero degree: lambda({}) != 0", w.join(" ")));
    }
    s
}

fn identity_json(r: &IdentityReport) -> Value {
    json!({
        "max_deviation": r.max_deviation,
        "error_bound": r.error_bound,
        "checks": r.checks,
        "worst": r.worst,
        "passed": r.passed,
    })
}

fn env_or_one(path: &Option<PathBuf>, alg: &LieSuperalgebra) -> anyhow::Result<EnvElement> {
    Ok(match path {
        Some(p) => io::load_env(p, alg)?,
        None => EnvElement::one(),
    })
}

fn functional(path: &Path) -> anyhow::Result<LocalSuperfunction> {
    io::load_functional(path).with_context(|| format!("loading functional {}", path.display()))
}

fn basis_vectors(alg: &LieSuperalgebra) -> Vec<GVector> {
    (0..alg.dim()).map(|i| GVector::basis(alg.dim(), i)).collect()
}

fn run(cmd: &Command, o: &Opts) -> anyhow::Result<Outcome> {
    Ok(match cmd {
        Command::ValidateAlgebra { algebra } => {
            let alg = io::load_algebra(algebra)?;
            let r = alg.validate();
            let mut summary = vec![format!("dimension {} over Z2^{}", alg.dim(), alg.width())];
            summary.extend(r.violations.iter().map(|v| format!("violation: {}", serde_json::to_string(v).expect("violation serializes"))));
            Outcome::new(r.is_valid(), serde_json::to_value(&r)?, summary)
        }
        Command::Nf { algebra, env, right } => {
            let alg = io::load_algebra(algebra)?;
            let u = io::load_env(env, &alg)?;
            let mut d = match right {
                Some(p) => nf_product(&alg, &u, &io::load_env(p, &alg)?),
                None => normal_form(&alg, &u),
            };
            if let Some(n) = o.truncate {
                d = truncate(&d, n);
            }
            Outcome::new(true, json!({"result": env_json(&alg, &d)}), vec![env_text(&alg, &d)])
        }
        Command::Star { algebra, env } => {
            let alg = io::load_algebra(algebra)?;
            let d = star_env(&alg, &io::load_env(env, &alg)?);
            Outcome::new(true, json!({"result": env_json(&alg, &d)}), vec![env_text(&alg, &d)])
        }
        Command::Ad { algebra, word, env } => {
            let alg = io::load_algebra(algebra)?;
            let g = io::load_word(word, &alg)?;
            match env {
                Some(p) => {
                    let (d, bound) = ad_env(&alg, &g, &io::load_env(p, &alg)?)?;
                    Outcome::new(true, json!({"result": env_json(&alg, &d), "error_bound": bound}), vec![env_text(&alg, &d), format!("error bound: {bound:e}")])
                }
                None => {
                    let ad = ad_group(&alg, &g)?;
                    let images: Vec<Value> = (0..alg.dim())
                        .map(|j| json!({"x": alg.name(j), "image": io::VectorRepr::from_gvector(&alg, &ad.image(j))}))
                        .collect();
                    let mut summary: Vec<String> = (0..alg.dim()).map(|j| format!("Ad {} = {}", alg.name(j), env_text(&alg, &EnvElement::from_gvector(&ad.image(j))))).collect();
                    summary.push(format!("exact: {}, error bound: {:e}", ad.is_exact(), ad.error_bound));
                    Outcome::new(true, json!({"images": images, "exact": ad.is_exact(), "error_bound": ad.error_bound}), summary)
                }
            }
        }
        Command::Series { op, first, second, k } => {
            let f = io::load_series(first)?;
            let other = || -> anyhow::Result<_> {
                let Some(p) = second else { bail!("this operation needs a second series") };
                Ok(io::load_series(p)?)
            };
            let series_out = |s| serde_json::to_value(SeriesFile::from_series(s)).expect("series serializes");
            match op {
                SeriesOp::Mul | SeriesOp::Add | SeriesOp::Sub => {
                    let g = other()?;
                    let r = match op {
                        SeriesOp::Mul => series_mul(&f, &g)?,
                        SeriesOp::Add => f.add(&g)?,
                        _ => f.sub(&g)?,
                    };
                    let v = j_valuation(&r);
                    Outcome::new(true, json!({"result": series_out(&r), "j_valuation": v}), vec![format!("terms: {}", r.terms().count()), format!("j-valuation: {v:?}")])
                }
                SeriesOp::Residue => {
                    let r = f.residue(*k);
                    Outcome::new(true, json!({"result": series_out(&r)}), vec![format!("terms: {}", r.terms().count())])
                }
                SeriesOp::Valuation => {
                    let v = j_valuation(&f);
                    Outcome::new(true, json!({"j_valuation": v}), vec![format!("j-valuation: {v:?}")])
                }
                SeriesOp::Tower => {
                    let tower = residue_tower(&f, *k)?;
                    let back = reconstruct(&tower)?;
                    let round_trip = back == f.residue(*k);
                    let levels: Vec<Value> = tower.iter().map(series_out).collect();
                    Outcome::new(round_trip, json!({"levels": levels, "round_trip": round_trip}), vec![format!("levels: {}", tower.len()), format!("round trip exact: {round_trip}")])
                }
            }
        }
        Command::CheckPosdef { functional: fp, samples } => {
            let f = functional(fp)?;
            let s = io::load_samples(samples, f.algebra())?;
            let r = check_positive_definite(&f, &s, o.tol_psd, o.tol_psd, o.order)?;
            Outcome::new(r.passed, gram_json(&r), gram_summary(&r))
        }
        Command::Gram { functional: fp, samples } => {
            let f = functional(fp)?;
            let s = io::load_samples(samples, f.algebra())?;
            let g = gram(&f, &s, o.order)?;
            Outcome::new(true, json!({"matrix": matrix_json(&g.matrix), "entry_error": g.entry_error}), vec![format!("{}x{} matrix, entry error bound {:e}", g.matrix.nrows(), g.matrix.ncols(), g.entry_error)])
        }
        Command::ValidateGns { functional: fp, samples, word } => {
            let f = functional(fp)?;
            let alg = f.algebra();
            let s = io::load_samples(samples, alg)?;
            let basis = basis_vectors(alg);
            let star = validate_star_rep(&f, &s, &basis, o.tol, o.order)?;
            let pairs: Vec<_> = basis.iter().flat_map(|x| basis.iter().map(move |y| (x.clone(), y.clone()))).collect();
            let bracket = validate_bracket(&f, &s, &pairs, o.tol, o.order)?;
            let mut passed = star.passed && bracket.passed;
            let mut report = json!({"star_rep": identity_json(&star), "bracket": identity_json(&bracket)});
            let mut summary = vec![
                format!("star rep: max deviation {:e} over {} checks", star.max_deviation, star.checks),
                format!("bracket: max deviation {:e} over {} checks", bracket.max_deviation, bracket.checks),
            ];
            if let Some(w) = word {
                let g = io::load_word(w, alg)?;
                let mut worst: Option<IdentityReport> = None;
                for x in &basis {
                    let r = validate_equivariance(&f, &g, x, &s, o.order, o.tol)?;
                    passed &= r.passed;
                    if worst.as_ref().is_none_or(|w| r.max_deviation > w.max_deviation) {
                        worst = Some(r);
                    }
                }
                if let Some(r) = worst {
                    summary.push(format!("equivariance: max deviation {:e}", r.max_deviation));
                    report["equivariance"] = identity_json(&r);
                }
            }
            report["passed"] = json!(passed);
            Outcome::new(passed, report, summary)
        }
        Command::Extend { functional: fp, word, env } => {
            let f = functional(fp)?;
            let g = io::load_word(word, f.algebra())?;
            let d = env_or_one(env, f.algebra())?;
            let v = extend_value(&f, &g, &d, o.order)?;
            Outcome::new(true, json!({"value": approx_json(&v), "order": o.order}), vec![format!("value: {} (error bound {:e})", v.value, v.err)])
        }
        Command::VerifyExtension { functional: fp, samples } => {
            let f = functional(fp)?;
            let s = io::load_samples(samples, f.algebra())?;
            let r = verify_restriction(&f, &s, o.order, o.tol)?;
            Outcome::new(
                r.passed,
                json!({
                    "max_deviation": r.max_deviation,
                    "combined_bound": r.combined_bound,
                    "max_bound": r.max_bound,
                    "samples": r.samples,
                    "passed": r.passed,
                }),
                vec![
                    format!("samples: {}", r.samples),
                    format!("max deviation: {:e}", r.max_deviation),
                    format!("combined tail bound at worst sample: {:e}", r.combined_bound),
                ],
            )
        }
        Command::GlobalPosdef { functional: fp, samples } => {
            let f = functional(fp)?;
            let s = io::load_samples(samples, f.algebra())?;
            let r = global_posdef_check(&f, &s, o.tol_psd, o.tol_psd, o.order)?;
            Outcome::new(r.passed, gram_json(&r), gram_summary(&r))
        }
        Command::ValidatePrerep { prerep } => {
            let p = io::load_prerep(prerep)?;
            let r = validate_prerep(&p, o.tol)?;
            let summary = vec![
                format!("algebra violations: {}", r.algebra_violations.len()),
                format!("inner product violations: {}", r.inner.violations.len()),
                format!("grading defect: rho {:e}, pi {:e}", r.rho_grading, r.pi_grading),
                format!("pi unitarity {:e}, integration {:e}", r.pi_unitarity, r.pi_integration),
                format!("bracket {:e}, even skewness {:e}", r.bracket, r.even_skew),
                format!("star: skew form {:e}, plus form {:e} ({:?})", r.star_skew, r.star_plus, r.convention),
                format!("equivariance {:e}", r.equivariance),
            ];
            Outcome::new(r.passed, serde_json::to_value(&r)?, summary)
        }
        Command::MakeFunctional { prerep, vector, n_f } => {
            let p = io::load_prerep(prerep)?;
            let v = io::read_json::<io::StateVectorFile>(vector)?.build()?;
            let f = matrix_coefficient_functional(&p, &v, *n_f, o.tol)?;
            let file = serde_json::to_value(FunctionalFile::from_functional(&f))?;
            let entries = file["entries"].as_array().map_or(0, Vec::len);
            let mut out = Outcome::new(true, json!({"entries": entries, "N_f": n_f}), vec![format!("{entries} nonzero entries up to length {n_f}")]);
            out.document = Some(file);
            out
        }
        Command::Seminorm { functional: fp, spec } => {
            let f = functional(fp)?;
            let (points, partial) = io::read_json::<io::SeminormFile>(spec)?.build()?;
            let v = seminorm(&f, &points, &partial)?;
            Outcome::new(true, json!({"seminorm": v, "points": points.len()}), vec![format!("seminorm: {v:e}")])
        }
        Command::UniformBound { functional: fp, word, budget, bound } => {
            let f = functional(fp)?;
            let points = word.iter().map(|p| io::load_word(p, f.algebra())).collect::<Result<Vec<_>, _>>()?;
            let points = if points.is_empty() { vec![Default::default()] } else { points };
            let r = uniform_bound_check(&f, *budget, &points, o.order, *bound)?;
            Outcome::new(
                !r.exceeds,
                json!({"max": r.max, "argmax": r.argmax, "bound": r.bound, "exceeds": r.exceeds}),
                vec![format!("max |f(D)(p)|: {} against bound {}", r.max, r.bound)],
            )
        }
    })
}

fn emit(out: &Outcome, o: &Opts, name: &str) -> anyhow::Result<()> {
    let text = match o.format {
        Format::Json => serde_json::to_string_pretty(&json!({"command": name, "passed": out.passed, "report": out.report}))?,
        Format::Text => {
            let mut lines = vec![format!("{name}: {}", if out.passed { "PASS" } else { "FAIL" })];
            lines.extend(out.summary.iter().map(|l| format!("  {l}")));
            lines.join("\n")
        }
    };
    println!("{text}");
    if let Some(path) = &o.out {
        let doc = match &out.document {
            Some(d) => d.clone(),
            None => json!({"schema_version": io::SCHEMA_VERSION, "command": name, "passed": out.passed, "report": out.report}),
        };
        std::fs::write(path, serde_json::to_string_pretty(&doc)? + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::ValidateAlgebra { .. } => "validate-algebra",
        Command::Nf { .. } => "nf",
        Command::Star { .. } => "star",
        Command::Ad { .. } => "ad",
        Command::Series { .. } => "series",
        Command::CheckPosdef { .. } => "check-posdef",
        Command::Gram { .. } => "gram",
        Command::ValidateGns { .. } => "validate-gns",
        Command::Extend { .. } => "extend",
        Command::VerifyExtension { .. } => "verify-extension",
        Command::GlobalPosdef { .. } => "global-posdef",
        Command::ValidatePrerep { .. } => "validate-prerep",
        Command::MakeFunctional { .. } => "make-functional",
        Command::Seminorm { .. } => "seminorm",
        Command::UniformBound { .. } => "uniform-bound",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match run(&cli.command, &cli.opts).and_then(|out| emit(&out, &cli.opts, name).map(|_| out.passed)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
