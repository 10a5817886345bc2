//! `lieops`: exact checks of Lie algebras with operators.
//!
//! Exit codes: 0 all checks pass, 1 a verified identity violation,
//! 2 input, validation or hypothesis error.

mod files;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use lieops::brackets::OperatorTriple;
use lieops::canonical::{assoc_theta_example, bi_myb_left_right, gl_example, so_example};
use lieops::checks::{
    check_bi_myb, check_even_tempered, check_myb, check_rrho, check_theta_rho, check_xvr,
    pencil_suite,
};
use lieops::classify::{ansatz_family, classify_so3, classify_so3_with_grid};
use lieops::family::{
    build_ipair, canonical_family, check_quadratic_law, check_xvr_structure, default_samples,
    FamilyKind, QuadraticRhoFamily,
};
use lieops::sample::{bi_myb_search, random_sweep, RandomKind};
use lieops::scalar::int;
use lieops::towers::{
    rrho_tower_with, theta_tower_with, xvr_tower_with, ThetaVariant, TowerConvention,
};
use lieops::{CheckReport, Error, LieAlgebra, Matrix, Scalar};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use files::{parse_vector, write_json, AlgebraFile, FamilyFile, Inputs, OperatorFile};

#[derive(Debug, Parser)]
#[command(
    name = "lieops",
    version,
    about = "Exact checks of Lie algebras with operators"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an algebra and operator files against an identity system.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        /// Algebra file.
        algebra: PathBuf,
        /// Operator files in the order the kind expects (family file for
        /// `family`).
        operators: Vec<PathBuf>,
        /// Also require regularity (rrho).
        #[arg(long)]
        regular: bool,
        /// Also require the special identity (thetarho).
        #[arg(long)]
        special: bool,
        /// Also require the even-tempered identities (bimyb).
        #[arg(long)]
        even_tempered: bool,
    },
    /// Build a worked example, optionally writing its files.
    Example {
        #[arg(value_enum)]
        kind: ExampleKind,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Matrix file for q (default E11, or f12 for so).
        #[arg(long)]
        q: Option<PathBuf>,
        /// Directory for algebra and operator files.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run a recursion tower from a seed.
    Tower {
        #[arg(value_enum)]
        family: TowerKind,
        algebra: PathBuf,
        /// xvr: xi rho; rrho: R rho; theta: Theta rho.
        operators: Vec<PathBuf>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value = "2rho+xi2")]
        theta_variant: String,
        /// `printed` or `lucas`.
        #[arg(long, default_value = "printed")]
        convention: String,
        /// Levels below this one are reported but do not gate the exit code.
        #[arg(long, default_value_t = 0)]
        from_level: usize,
    },
    /// Build the I-pair of a quadratic family.
    Ipair {
        /// Use the qxq family on gl(n) or so(n).
        #[arg(long, value_enum, conflicts_with_all = ["algebra", "family"])]
        canonical: Option<CanonicalKind>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, requires = "family")]
        algebra: Option<PathBuf>,
        #[arg(long, requires = "algebra")]
        family: Option<PathBuf>,
        /// Print the bracket [.,.]_q for this q, e.g. "1,0,-1/2".
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// Classify equivariant ξϱ-structures.
    Classify {
        #[arg(value_enum)]
        target: ClassifyTarget,
        /// Cross-check the solution set on a rational grid.
        #[arg(long)]
        grid_check: bool,
        #[arg(long, default_value_t = 6)]
        grid_max_num: i64,
        #[arg(long, default_value_t = 6)]
        grid_max_den: i64,
        /// Write so(3) and the family at (a, b) = (0, -1) to this directory.
        #[arg(long)]
        emit_family: Option<PathBuf>,
    },
    /// Seeded randomized sweeps.
    Random {
        #[arg(value_enum)]
        kind: RandomCmdKind,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = lieops::sample::DEFAULT_MAX_NUM)]
        max_num: i64,
        #[arg(long, default_value_t = lieops::sample::DEFAULT_MAX_DEN)]
        max_den: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Xvr,
    Myb,
    Bimyb,
    Rrho,
    Thetarho,
    Pencil,
    Family,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExampleKind {
    Gl,
    So,
    BimybLr,
    AssocTheta,
    /// gl(n) with `R = 2 rho_q + xi_q^2` and `rho_q^2`.
    RrhoSeed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TowerKind {
    Xvr,
    Rrho,
    Theta,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CanonicalKind {
    Gl,
    So,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassifyTarget {
    So3,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RandomCmdKind {
    XvrGl,
    XvrSo,
    BimybLr,
    AssocTheta,
    BimybSearch,
}

struct Outcome {
    passed: bool,
    text: String,
    result: Value,
}

impl Outcome {
    fn from_report(report: &CheckReport) -> Self {
        let mut text = String::new();
        render::report_text(&mut text, report, "");
        Outcome {
            passed: report.passed(),
            text,
            result: render::report_json(report),
        }
    }
}

/// A hypothesis refusal inside `check` is an identity failure of the
/// input; its report becomes the outcome.
fn refusal_as_failure(r: lieops::Result<CheckReport>) -> Result<CheckReport> {
    match r {
        Err(Error::Precondition { what, report }) => {
            eprintln!("note: {what}");
            Ok(*report)
        }
        other => Ok(other?),
    }
}

fn expect_operators(kind: CheckKind, ops: &[PathBuf], want: usize, names: &str) -> Result<()> {
    if ops.len() != want {
        bail!(
            "check {} expects {want} file(s) after the algebra ({names}), got {}",
            format!("{kind:?}").to_lowercase(),
            ops.len()
        );
    }
    Ok(())
}

fn cmd_check(
    inputs: &mut Inputs,
    kind: CheckKind,
    algebra: &Path,
    ops: &[PathBuf],
    regular: bool,
    special: bool,
    even_tempered: bool,
) -> Result<Outcome> {
    let l = inputs.algebra(algebra)?;
    let n = l.dim();
    let mut load = |names: &str, want: usize| -> Result<Vec<Matrix>> {
        expect_operators(kind, ops, want, names)?;
        ops.iter().map(|p| inputs.operator(p, n)).collect()
    };
    let report = match kind {
        CheckKind::Xvr => {
            let m = load("xi rho", 2)?;
            check_xvr(&OperatorTriple::new(l.clone(), m[0].clone(), m[1].clone())?)?
        }
        CheckKind::Pencil => {
            let m = load("xi rho", 2)?;
            refusal_as_failure(pencil_suite(&OperatorTriple::new(
                l.clone(),
                m[0].clone(),
                m[1].clone(),
            )?))?
        }
        CheckKind::Myb => check_myb(&l, &load("R", 1)?[0])?,
        CheckKind::Bimyb => {
            let m = load("R1 R2", 2)?;
            if even_tempered {
                refusal_as_failure(check_even_tempered(&l, &m[0], &m[1]))?
            } else {
                check_bi_myb(&l, &m[0], &m[1])?
            }
        }
        CheckKind::Rrho => {
            let m = load("R rho", 2)?;
            check_rrho(&l, &m[0], &m[1], regular)?
        }
        CheckKind::Thetarho => {
            let m = load("Theta rho", 2)?;
            check_theta_rho(&l, &m[0], &m[1], special)?
        }
        CheckKind::Family => {
            expect_operators(kind, ops, 1, "family")?;
            let f = inputs.family(&ops[0], l.clone())?;
            return family_outcome(&f);
        }
    };
    Ok(Outcome::from_report(&report))
}

/// Structure check on the default samples plus the quadratic law on
/// consecutive sample pairs.
fn family_outcome(f: &QuadraticRhoFamily) -> Result<Outcome> {
    let qs = default_samples(f.dim());
    let structure = check_xvr_structure(f, &qs)?;
    let law_samples: Vec<_> = qs
        .iter()
        .zip(qs.iter().cycle().skip(1))
        .map(|(a, b)| (a.clone(), b.clone(), int(3)))
        .collect();
    let law = check_quadratic_law(f, &law_samples)?;
    let mut text = String::new();
    render::report_text(&mut text, &law, "");
    render::report_text(&mut text, &structure, "");
    text.push_str("(structure verdict verified on samples)\n");
    Ok(Outcome {
        passed: law.passed() && structure.passed(),
        text,
        result: json!({
            "family": f.name(),
            "quadratic_law": render::report_json(&law),
            "structure": render::report_json(&structure),
            "verified_on_samples": true,
        }),
    })
}

fn default_q(kind: ExampleKind, n: usize) -> Matrix {
    match kind {
        ExampleKind::So if n >= 2 => &Matrix::unit(n, 0, 1) - &Matrix::unit(n, 1, 0),
        _ => Matrix::unit(n, 0, 0),
    }
}

fn cmd_example(
    inputs: &mut Inputs,
    kind: ExampleKind,
    n: usize,
    q: Option<&PathBuf>,
    emit: Option<&PathBuf>,
) -> Result<Outcome> {
    let q = match q {
        Some(p) => inputs.matrix(p)?,
        None => default_q(kind, n),
    };
    if q.dim() != n {
        bail!("q is {}x{}, expected {n}x{n}", q.dim(), q.dim());
    }
    let (algebra, ops): (Arc<LieAlgebra>, Vec<(&str, Matrix)>) = match kind {
        ExampleKind::Gl | ExampleKind::So => {
            let (l, t) = match kind {
                ExampleKind::Gl => gl_example(n, &q)?,
                _ => so_example(n, &q)?,
            };
            (l, vec![("xi", t.xi().clone()), ("rho", t.rho().clone())])
        }
        ExampleKind::BimybLr => {
            let (l, r1, r2) = bi_myb_left_right(n, &q)?;
            (l, vec![("r1", r1), ("r2", r2)])
        }
        ExampleKind::AssocTheta => {
            let (l, theta, rho) = assoc_theta_example(n, &q)?;
            (l, vec![("theta", theta), ("rho", rho)])
        }
        ExampleKind::RrhoSeed => {
            let (l, t) = gl_example(n, &q)?;
            let r = ThetaVariant::TwoRhoPlusXi2.theta(t.xi(), t.rho());
            (l, vec![("r", r), ("rho", t.rho() * t.rho())])
        }
    };
    let mut text = format!("{} (dim {}) with q =\n{q}\n", algebra.name(), algebra.dim());
    let mut written = Vec::new();
    if let Some(dir) = emit {
        written.push(write_json(
            dir,
            "algebra.json",
            &AlgebraFile::from_algebra(&algebra),
        )?);
        written.push(write_json(
            dir,
            "q.json",
            &OperatorFile::from_matrix("q", &q),
        )?);
        for (name, m) in &ops {
            written.push(write_json(
                dir,
                &format!("{name}.json"),
                &OperatorFile::from_matrix(*name, m),
            )?);
        }
        for p in &written {
            text.push_str(&format!("wrote {}\n", p.display()));
        }
    } else {
        for (name, m) in &ops {
            text.push_str(&format!("{name} =\n{m}\n"));
        }
    }
    Ok(Outcome {
        passed: true,
        text,
        result: json!({
            "algebra": algebra.name(),
            "dim": algebra.dim(),
            "q": render::matrix(&q),
            "operators": ops.iter().map(|(name, m)| json!({"name": name, "rows": render::matrix(m)})).collect::<Vec<_>>(),
            "files": written.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        }),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_tower(
    inputs: &mut Inputs,
    family: TowerKind,
    algebra: &Path,
    ops: &[PathBuf],
    depth: usize,
    variant: &str,
    convention: &str,
    from_level: usize,
) -> Result<Outcome> {
    let variant: ThetaVariant = variant.parse()?;
    let convention: TowerConvention = convention.parse()?;
    let l = inputs.algebra(algebra)?;
    if ops.len() != 2 {
        bail!(
            "tower expects 2 operator files after the algebra, got {}",
            ops.len()
        );
    }
    let a = inputs.operator(&ops[0], l.dim())?;
    let b = inputs.operator(&ops[1], l.dim())?;
    let result = match family {
        TowerKind::Xvr => xvr_tower_with(&l, &a, &b, depth, variant, convention),
        TowerKind::Rrho => rrho_tower_with(&l, &a, &b, depth, convention),
        TowerKind::Theta => theta_tower_with(&l, &a, &b, depth, convention),
    };
    let tower = match result {
        Err(Error::Precondition { what, report }) => {
            let mut text = String::new();
            render::report_text(&mut text, &report, "  ");
            return Err(anyhow!("hypothesis not met: {what}\n{text}"));
        }
        other => other?,
    };
    let mut text = String::new();
    render::tower_text(&mut text, &tower, from_level);
    Ok(Outcome {
        passed: tower.passed_from(from_level),
        text,
        result: render::tower_json(&tower),
    })
}

fn cmd_ipair(
    inputs: &mut Inputs,
    canonical: Option<CanonicalKind>,
    n: usize,
    algebra: Option<&PathBuf>,
    family: Option<&PathBuf>,
    q: Option<&str>,
) -> Result<Outcome> {
    let f = match (canonical, algebra, family) {
        (Some(CanonicalKind::Gl), _, _) => canonical_family(FamilyKind::Gl, n)?,
        (Some(CanonicalKind::So), _, _) => canonical_family(FamilyKind::So, n)?,
        (None, Some(a), Some(p)) => {
            let l = inputs.algebra(a)?;
            inputs.family(p, l)?
        }
        _ => bail!("give either --canonical or both --algebra and --family"),
    };
    let pair = match build_ipair(&f) {
        Err(Error::Precondition { what, report }) => {
            let mut o = Outcome::from_report(&report);
            o.text = format!("{what}\n{}", o.text);
            return Ok(o);
        }
        other => other?,
    };
    let conformance = pair.conformance();
    let mut text = format!(
        "I-pair of {} on ({n}, {n}) with h1 = h2 = (q -> [.,.]_q)\n",
        f.name(),
        n = f.algebra().name()
    );
    render::report_text(&mut text, conformance, "");
    let mut result = json!({
        "family": f.name(),
        "samples": pair.samples().iter().map(render::vector).collect::<Vec<_>>(),
        "conformance": render::report_json(conformance),
    });
    if let Some(qs) = q {
        let qv = parse_vector(qs, f.dim())?;
        let b = pair.h1(&qv)?;
        text.push_str(&format!("[.,.]_q at q = {qv}:\n"));
        let mut records = Vec::new();
        for i in 0..f.dim() {
            for j in i + 1..f.dim() {
                let v = b.pair(i, j);
                text.push_str(&format!(
                    "  [{}, {}] = {v}\n",
                    f.algebra().labels()[i],
                    f.algebra().labels()[j]
                ));
                records.push(json!({"i": i, "j": j, "value": render::vector(&v)}));
            }
        }
        result["bracket"] = json!({"q": render::vector(&qv), "pairs": records});
    }
    Ok(Outcome {
        passed: conformance.passed(),
        text,
        result,
    })
}

fn cmd_classify(grid: Option<(i64, i64)>, emit: Option<&PathBuf>) -> Result<Outcome> {
    let report = match grid {
        Some((num, den)) => classify_so3_with_grid(num, den)?,
        None => classify_so3()?,
    };
    let mut text = String::new();
    render::classification_text(&mut text, &report);
    if let Some(dir) = emit {
        let f = ansatz_family(&Scalar::zero(), &-Scalar::one())?;
        let a = write_json(dir, "algebra.json", &AlgebraFile::from_algebra(f.algebra()))?;
        let p = write_json(dir, "family.json", &FamilyFile::from_family(&f))?;
        text.push_str(&format!("wrote {}\nwrote {}\n", a.display(), p.display()));
    }
    let nonempty = !matches!(report.solutions, lieops::poly::SolutionSet::Empty);
    let grid_ok = report.grid.as_ref().is_none_or(|g| g.agrees());
    Ok(Outcome {
        passed: nonempty && report.all_verified() && grid_ok,
        text,
        result: render::classification_json(&report),
    })
}

fn cmd_random(
    kind: RandomCmdKind,
    n: usize,
    samples: usize,
    seed: u64,
    max_num: i64,
    max_den: i64,
) -> Result<Outcome> {
    let kind = match kind {
        RandomCmdKind::BimybSearch => {
            let r = bi_myb_search(samples, seed)?;
            let mut text = String::new();
            render::search_text(&mut text, &r);
            return Ok(Outcome {
                passed: true,
                text,
                result: render::search_json(&r),
            });
        }
        RandomCmdKind::XvrGl => RandomKind::XvrGl,
        RandomCmdKind::XvrSo => RandomKind::XvrSo,
        RandomCmdKind::BimybLr => RandomKind::BiMybLr,
        RandomCmdKind::AssocTheta => RandomKind::AssocTheta,
    };
    let r = random_sweep(kind, n, samples, seed, max_num, max_den)?;
    let mut text = String::new();
    render::sweep_text(&mut text, &r);
    if let Some(f) = &r.first_failure {
        let replay = serde_json::to_string(&OperatorFile::from_matrix("q", &f.q))?;
        text.push_str(&format!("replay q: {replay}\n"));
    }
    Ok(Outcome {
        passed: r.all_passed(),
        text,
        result: render::sweep_json(&r),
    })
}

fn run(cli: &Cli, inputs: &mut Inputs) -> Result<(String, Outcome)> {
    let outcome = match &cli.command {
        Command::Check {
            kind,
            algebra,
            operators,
            regular,
            special,
            even_tempered,
        } => (
            format!("check {kind:?}").to_lowercase(),
            cmd_check(
                inputs,
                *kind,
                algebra,
                operators,
                *regular,
                *special,
                *even_tempered,
            )?,
        ),
        Command::Example { kind, n, q, emit } => (
            format!("example {kind:?}").to_lowercase(),
            cmd_example(inputs, *kind, *n, q.as_ref(), emit.as_ref())?,
        ),
        Command::Tower {
            family,
            algebra,
            operators,
            depth,
            theta_variant,
            convention,
            from_level,
        } => (
            format!("tower {family:?}").to_lowercase(),
            cmd_tower(
                inputs,
                *family,
                algebra,
                operators,
                *depth,
                theta_variant,
                convention,
                *from_level,
            )?,
        ),
        Command::Ipair {
            canonical,
            n,
            algebra,
            family,
            q,
        } => (
            "ipair".to_string(),
            cmd_ipair(
                inputs,
                *canonical,
                *n,
                algebra.as_ref(),
                family.as_ref(),
                q.as_deref(),
            )?,
        ),
        Command::Classify {
            target: ClassifyTarget::So3,
            grid_check,
            grid_max_num,
            grid_max_den,
            emit_family,
        } => (
            "classify so3".to_string(),
            cmd_classify(
                grid_check.then_some((*grid_max_num, *grid_max_den)),
                emit_family.as_ref(),
            )?,
        ),
        Command::Random {
            kind,
            n,
            samples,
            seed,
            max_num,
            max_den,
        } => (
            format!("random {kind:?}").to_lowercase(),
            cmd_random(*kind, *n, *samples, *seed, *max_num, *max_den)?,
        ),
    };
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut inputs = Inputs::default();
    match run(&cli, &mut inputs) {
        Ok((command, outcome)) => {
            match cli.report {
                ReportFormat::Text => print!("{}", outcome.text),
                ReportFormat::Structured => {
                    let doc =
                        render::envelope(&command, &inputs.digests, outcome.passed, outcome.result);
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&doc).expect("serializable")
                    );
                }
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
