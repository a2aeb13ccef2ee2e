use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use tensorion_core::construct::{dixon, from_spec};
use tensorion_core::coset::{self, audit, parse_manifest};
use tensorion_core::derivations::{derivations_for, DerivationChoice, LieSubalgebra};
use tensorion_core::jordan::{build_herm, involution_gamma, jordan_identity_check, GammaFlavor, HermError, HermProduct, Involution};
use tensorion_core::lie::{center_lie, derived_algebra, killing_summary, verify_jacobi, JacobiMode};
use tensorion_core::profile::{center, nucleus, structural_profile};
use tensorion_core::rational::Rational;
use tensorion_core::report::{ReportSet, Source, Status, VerificationReport};
use tensorion_core::tits::{build_tits, TitsConfig};
use tensorion_core::AlgebraTable;

use crate::cache::Cache;
use crate::config::RunConfig;
use crate::pipeline;

#[derive(Parser, Debug)]
#[command(name = "tensorion", version, about = "Exact algebra over C⊗H⊗O, Hermitian Jordan algebras and Tits constructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiplication tables of Hurwitz algebras and their tensor products.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Hermitian 3×3 matrices over a coefficient algebra.
    #[command(subcommand)]
    Jordan(JordanCmd),
    /// Derivation algebra of a table.
    Derive(DeriveArgs),
    #[command(subcommand)]
    Tits(TitsCmd),
    #[command(subcommand)]
    Lie(LieCmd),
    #[command(subcommand)]
    Coset(CosetCmd),
    /// Build everything and write report.json and summary.txt.
    Reproduce(ReproduceArgs),
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    Build {
        /// Factors joined by `*`, e.g. `C*H*O`.
        #[arg(long)]
        spec: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Structural profile, nucleus and center of a stored table.
    Inspect { file: PathBuf },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum InvolutionArg {
    Conj,
    Gamma,
    GammaTilde,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProductArg {
    Jordan,
    Raw,
}

#[derive(Subcommand, Debug)]
pub enum JordanCmd {
    Build {
        #[arg(long)]
        coeff: String,
        #[arg(long, value_enum, default_value = "conj")]
        involution: InvolutionArg,
        #[arg(long, value_enum, default_value = "jordan")]
        product: ProductArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Jordan identity and commutativity of a stored table.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct DeriveArgs {
    /// A stored table or an algebra spec such as `C*O`.
    #[arg(long)]
    pub algebra: String,
    #[arg(long)]
    pub out: PathBuf,
    /// Solve for every derivation instead of those acting on one tensor factor at a
    /// time. The two agree on single-factor algebras.
    #[arg(long)]
    pub full_derivations: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DerChoiceArg {
    Designated,
    Full,
}

#[derive(Args, Debug, Clone)]
pub struct JacobiArgs {
    #[arg(long, value_enum, default_value = "full")]
    pub jacobi: JacobiArg,
    /// Required with `--jacobi sample`.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 100_000)]
    pub count: u64,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum JacobiArg {
    Full,
    Sample,
}

impl JacobiArgs {
    pub fn mode(&self) -> Result<JacobiMode> {
        match (self.jacobi, self.seed) {
            (JacobiArg::Full, _) => Ok(JacobiMode::Full),
            (JacobiArg::Sample, Some(seed)) => Ok(JacobiMode::Sampled { seed, count: self.count }),
            (JacobiArg::Sample, None) => bail!("--jacobi sample requires --seed"),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum TitsCmd {
    Build {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "derA", value_enum, default_value = "designated")]
        der_a: DerChoiceArg,
        /// Coefficient algebra of the Jordan factor.
        #[arg(long = "B")]
        b: String,
        #[arg(long, value_enum, default_value = "conj")]
        involution: InvolutionArg,
        #[arg(long)]
        bullet_coeff: Option<Rational>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Antisymmetry, Jacobi and Killing form of a stored Lie table.
    Verify {
        #[arg(long)]
        algebra: PathBuf,
        #[command(flatten)]
        jacobi: JacobiArgs,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum LieCmd {
    /// Killing form, derived algebra and center of a stored Lie table.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CosetCmd {
    Audit {
        /// Defaults to the shipped manifest.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Omit wall-clock times so that reruns are byte-identical.
    #[arg(long)]
    pub canonical: bool,
    #[command(flatten)]
    pub jacobi: JacobiArgs,
    #[arg(long)]
    pub bullet_coeff: Option<Rational>,
    #[arg(long)]
    pub no_cache: bool,
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn load_table(path: &Path) -> Result<AlgebraTable> {
    let s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    AlgebraTable::from_json_str(&s).with_context(|| format!("parsing {}", path.display()))
}

/// A stored table if `arg` names a file, otherwise an algebra spec.
fn table_or_spec(arg: &str) -> Result<AlgebraTable> {
    let p = Path::new(arg);
    if p.is_file() {
        load_table(p)
    } else if arg == "T" {
        Ok(dixon())
    } else {
        Ok(from_spec(arg)?)
    }
}

fn involution(t: &AlgebraTable, arg: InvolutionArg) -> Result<Involution> {
    Ok(match arg {
        InvolutionArg::Conj => Involution::conjugation(t)?,
        InvolutionArg::Gamma => involution_gamma(t, GammaFlavor::RealDiagonal)?,
        InvolutionArg::GammaTilde => involution_gamma(t, GammaFlavor::ComplexDiagonal)?,
    })
}

/// Prints the summary and writes the report if asked; returns the exit code.
fn finish(set: ReportSet, report: Option<&Path>) -> Result<i32> {
    print!("{}", set.summary_table());
    if let Some(p) = report {
        write_json(p, &set)?;
    }
    Ok(pipeline::exit_code(&set))
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Algebra(AlgebraCmd::Build { spec, out }) => {
            let t = table_or_spec(&spec)?;
            write_json(&out, &t.to_json())?;
            println!("{}: dim {}, {} nonzero products", t.name(), t.dim(), t.nnz());
            Ok(0)
        }
        Command::Algebra(AlgebraCmd::Inspect { file }) => {
            let t = load_table(&file)?;
            let p = structural_profile(&t);
            let out = json!({
                "name": t.name(),
                "dim": t.dim(),
                "unit": t.unit().map(|u| &t.labels()[u]),
                "profile": p,
                "nucleus_dim": nucleus(&t).dim(),
                "center_dim": center(&t).dim(),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(0)
        }
        Command::Jordan(JordanCmd::Build { coeff, involution: inv, product, out }) => {
            let c = table_or_spec(&coeff)?;
            let i = involution(&c, inv)?;
            let product = match product {
                ProductArg::Jordan => HermProduct::Jordan,
                ProductArg::Raw => HermProduct::Raw,
            };
            match build_herm(&c, &i, product) {
                Ok(j) => {
                    write_json(&out, &j.to_json())?;
                    println!("{}: dim {}", j.table().name(), j.dim());
                    Ok(0)
                }
                Err(HermError::NotClosed(w)) => {
                    eprintln!("Hermitian matrices over ({}, {}) are not closed under the product", c.name(), i.name);
                    eprintln!("{}", serde_json::to_string_pretty(&*w)?);
                    Ok(1)
                }
                Err(HermError::Algebra(e)) => Err(e.into()),
            }
        }
        Command::Jordan(JordanCmd::Check { file, seed }) => {
            let t = load_table(&file)?;
            let c = jordan_identity_check(&t, seed);
            let commutative = t.is_commutative();
            println!("{}", serde_json::to_string_pretty(&json!({"commutative": commutative, "jordan_identity": c}))?);
            Ok(if c.holds && commutative { 0 } else { 1 })
        }
        Command::Derive(args) => {
            let t = table_or_spec(&args.algebra)?;
            let choice = if args.full_derivations {
                DerivationChoice::Full
            } else {
                DerivationChoice::Designated
            };
            let (d, full) = derivations_for(&t, choice)?;
            write_json(&args.out, &d.to_json())?;
            println!("der({}): dim {} (full derivation algebra: {})", t.name(), d.dim(), full.dim());
            Ok(0)
        }
        Command::Tits(TitsCmd::Build { a, der_a, b, involution: inv, bullet_coeff, out }) => {
            let a = table_or_spec(&a)?;
            let b = table_or_spec(&b)?;
            let choice = match der_a {
                DerChoiceArg::Designated => DerivationChoice::Designated,
                DerChoiceArg::Full => DerivationChoice::Full,
            };
            let (der_a, _) = derivations_for(&a, choice)?;
            let i = involution(&b, inv)?;
            let j = match build_herm(&b, &i, HermProduct::Jordan) {
                Ok(j) => j,
                Err(HermError::NotClosed(w)) => {
                    eprintln!("Hermitian matrices over ({}, {}) are not closed under the product", b.name(), i.name);
                    eprintln!("{}", serde_json::to_string_pretty(&*w)?);
                    return Ok(1);
                }
                Err(HermError::Algebra(e)) => return Err(e.into()),
            };
            let der_j: LieSubalgebra = tensorion_core::derivations::derivation_algebra(j.table())?;
            let mut cfg = TitsConfig::default();
            if let Some(c) = bullet_coeff {
                cfg.bullet_coeff = c;
            }
            let name = format!("L3({}, {})", a.name(), j.table().name());
            let built = build_tits(&name, &a, &der_a, &j, &der_j, &cfg)?;
            println!("{}", serde_json::to_string_pretty(&json!({"grading": built.grading, "closure": built.closure}))?);
            match built.algebra {
                Some(alg) => {
                    write_json(&out, &alg.to_json())?;
                    Ok(0)
                }
                None => {
                    eprintln!("rule-3 brackets leave their blocks; no table written");
                    Ok(1)
                }
            }
        }
        Command::Tits(TitsCmd::Verify { algebra, jacobi, report }) => {
            let mode = jacobi.mode()?;
            let t = load_table(&algebra)?;
            let cfg = serde_json::to_value(mode)?;
            let fp = crate::config::fingerprint(&cfg);
            let mut checks = Vec::new();
            let t0 = Instant::now();
            let anti = t.antisymmetry_violation();
            checks.push(
                VerificationReport::predicate(
                    "antisymmetry",
                    "[x,y] = −[y,x]",
                    anti.is_none(),
                    anti.is_none(),
                    anti.map(|(i, j)| json!([&t.labels()[i], &t.labels()[j]])),
                    &fp,
                )
                .with_time(t0.elapsed().as_secs_f64() * 1e3),
            );
            let t0 = Instant::now();
            let o = verify_jacobi(&t, mode, jacobi.threads);
            let w = o.witness.map(|(i, j, k)| json!([&t.labels()[i], &t.labels()[j], &t.labels()[k], &o.witness_value]));
            checks.push(
                VerificationReport::predicate("jacobi", "Jacobi identity on basis triples", o.holds(), &o, w, &fp)
                    .with_time(t0.elapsed().as_secs_f64() * 1e3),
            );
            let t0 = Instant::now();
            checks.push(
                VerificationReport::reported("killing", "Killing-form inertia", None, killing_summary(&t), &fp)
                    .with_time(t0.elapsed().as_secs_f64() * 1e3),
            );
            finish(ReportSet::new(fp, cfg, checks), report.as_deref())
        }
        Command::Lie(LieCmd::Analyze { file, report }) => {
            let t = load_table(&file)?;
            let fp = crate::config::fingerprint(&json!({}));
            let k = killing_summary(&t);
            let derived = derived_algebra(&t).dim();
            let centre = center_lie(&t).dim();
            let checks = vec![
                VerificationReport::reported("dim", "dimension", None, t.dim(), &fp),
                VerificationReport::reported("killing", "Killing-form inertia (+, −, 0)", None, &k, &fp),
                VerificationReport::reported("derived_dim", "dim [L, L]", None, derived, &fp),
                VerificationReport::reported("center_dim", "dim Z(L)", None, centre, &fp),
            ];
            finish(ReportSet::new(fp, json!({}), checks), report.as_deref())
        }
        Command::Coset(CosetCmd::Audit { manifest, report }) => {
            let m = match &manifest {
                Some(p) => parse_manifest(&std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?)?,
                None => coset::default_manifest(),
            };
            let fp = crate::config::fingerprint(&m);
            let checks = audit(&m)?
                .into_iter()
                .map(|l| {
                    let mut r = VerificationReport::compare(&l.name, &l.name, l.rhs, Source::Published, l.lhs, &fp);
                    r.status = if l.holds { Status::Pass } else { Status::Fail };
                    r
                })
                .collect();
            finish(ReportSet::new(fp, json!({"identities": m.len()}), checks), report.as_deref())
        }
        Command::Reproduce(args) => {
            let mut cfg = RunConfig {
                jacobi: args.jacobi.mode()?,
                ..RunConfig::default()
            };
            if let Some(c) = args.bullet_coeff {
                cfg.tits.bullet_coeff = c;
            }
            let mut cache = if args.no_cache {
                Cache::disabled()
            } else {
                Cache::for_output(&args.out)
            };
            let (set, stats) = pipeline::reproduce(&cfg, args.jacobi.threads, &mut cache)?;
            let set = if args.canonical { set.canonical() } else { set };
            pipeline::write_outputs(&args.out, &set)?;
            print!("{}", set.summary_table());
            eprintln!("cache: {} hits, {} misses", stats.cache_hits, stats.cache_misses);
            Ok(pipeline::exit_code(&set))
        }
    }
}
