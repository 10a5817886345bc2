//! Text and structured renderings of the library reports.

use std::fmt::Write;

use lieops::classify::{ClassificationReport, PointCheck};
use lieops::poly::SolutionSet;
use lieops::report::IdentityCheck;
use lieops::sample::{BiMybSearchReport, SweepReport};
use lieops::scalar::format_scalar;
use lieops::towers::TowerReport;
use lieops::{CheckReport, CheckRole, Matrix, Scalar, Vector, Verdict};
use serde_json::{json, Value};

use crate::files::InputDigest;

pub fn scalar(s: &Scalar) -> Value {
    Value::String(format_scalar(s))
}

pub fn vector(v: &Vector) -> Value {
    Value::Array(v.coords().iter().map(scalar).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(
        m.rows()
            .map(|r| Value::Array(r.iter().map(scalar).collect()))
            .collect(),
    )
}

fn role(r: CheckRole) -> &'static str {
    match r {
        CheckRole::Gating => "gating",
        CheckRole::Informational => "informational",
    }
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn check_json(c: &IdentityCheck) -> Value {
    let mut v = json!({
        "id": c.id,
        "statement": c.statement,
        "role": role(c.role),
        "status": if c.passed() { "pass" } else { "fail" },
    });
    if let Verdict::Fail(w) = &c.verdict {
        v["witness"] = json!({ "indices": w.indices, "residual": vector(&w.residual) });
    }
    v
}

pub fn report_json(r: &CheckReport) -> Value {
    json!({
        "kind": r.kind.as_str(),
        "passed": r.passed(),
        "checks": r.checks.iter().map(check_json).collect::<Vec<_>>(),
    })
}

pub fn report_text(out: &mut String, r: &CheckReport, indent: &str) {
    let _ = writeln!(out, "{indent}{}: {}", r.kind.as_str(), status(r.passed()));
    for c in &r.checks {
        let tag = match c.role {
            CheckRole::Gating => "",
            CheckRole::Informational => " (info)",
        };
        let _ = write!(
            out,
            "{indent}  {} {}{tag}: {}",
            status(c.passed()),
            c.id,
            c.statement
        );
        if let Verdict::Fail(w) = &c.verdict {
            let _ = write!(out, "\n{indent}       witness {w}");
        }
        out.push('\n');
    }
}

pub fn tower_json(t: &TowerReport) -> Value {
    json!({
        "family": t.family.as_str(),
        "depth": t.depth,
        "theta_variant": t.theta_variant.map(|v| v.as_str()),
        "convention": t.convention.as_str(),
        "levels": t.levels.iter().map(|l| json!({
            "n": l.n,
            "passed": l.passed(),
            "operators": l.operators.iter().map(|(name, m)| json!({"name": name, "rows": matrix(m)})).collect::<Vec<_>>(),
            "reports": l.reports.iter().map(report_json).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn tower_text(out: &mut String, t: &TowerReport, from_level: usize) {
    let _ = write!(
        out,
        "tower {} depth {} convention {}",
        t.family.as_str(),
        t.depth,
        t.convention.as_str()
    );
    if let Some(v) = t.theta_variant {
        let _ = write!(out, " theta {}", v.as_str());
    }
    out.push('\n');
    let _ = writeln!(out, "  n  operators                  verdicts");
    for l in &t.levels {
        let ops: Vec<&str> = l.operators.iter().map(|(n, _)| n.as_str()).collect();
        let verdicts: Vec<String> = l
            .reports
            .iter()
            .map(|r| {
                let failed = r
                    .checks
                    .iter()
                    .filter(|c| c.role == CheckRole::Gating && !c.passed())
                    .map(|c| c.id.as_str())
                    .collect::<Vec<_>>();
                if failed.is_empty() {
                    format!("{} PASS", r.kind.as_str())
                } else {
                    format!("{} FAIL [{}]", r.kind.as_str(), failed.join(","))
                }
            })
            .collect();
        let gate = if l.n < from_level { " (not gated)" } else { "" };
        let _ = writeln!(
            out,
            "  {:<2} {:<26} {}{gate}",
            l.n,
            ops.join(", "),
            verdicts.join("; ")
        );
    }
}

fn point(a: &Scalar, b: &Scalar) -> String {
    format!("({}, {})", format_scalar(a), format_scalar(b))
}

fn solutions_json(s: &SolutionSet) -> Value {
    match s {
        SolutionSet::Empty => json!({"type": "empty"}),
        SolutionSet::Plane => json!({"type": "plane"}),
        SolutionSet::Points { points, complete } => json!({
            "type": "points",
            "points": points.iter().map(|(a, b)| json!([scalar(a), scalar(b)])).collect::<Vec<_>>(),
            "complete": complete,
        }),
        SolutionSet::Curve { poly, param } => json!({
            "type": "curve",
            "polynomial": poly.to_string(),
            "a_of_b": param.to_string(),
        }),
        SolutionSet::Unresolved => json!({"type": "unresolved"}),
    }
}

fn point_json(p: &PointCheck) -> Value {
    json!({"a": scalar(&p.a), "b": scalar(&p.b), "passed": p.passed, "failed": p.failed})
}

pub fn classification_json(r: &ClassificationReport) -> Value {
    let mut v = json!({
        "ansatz": r.ansatz,
        "samples": r.samples.iter().map(vector).collect::<Vec<_>>(),
        "constraints": r.constraints.iter().map(|c| json!({
            "identity": c.identity,
            "sample": c.sample,
            "indices": c.indices,
            "component": c.component,
            "polynomial": c.poly.to_string(),
        })).collect::<Vec<_>>(),
        "distinct_constraints": r.distinct.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "groebner_basis": r.groebner.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "solutions": solutions_json(&r.solutions),
        "verified": r.verified.iter().map(point_json).collect::<Vec<_>>(),
        "contains_canonical": r.contains_canonical,
        "canonical_is_hat_qxq": r.canonical_is_hat_qxq,
        "unique": r.unique,
    });
    if let Some(g) = &r.grid {
        v["grid"] = json!({
            "max_num": g.max_num,
            "max_den": g.max_den,
            "points_tested": g.points_tested,
            "passing": g.passing.iter().map(|(a, b)| json!([scalar(a), scalar(b)])).collect::<Vec<_>>(),
            "agrees": g.agrees(),
            "disagreements": g.disagreements.iter().map(|(a, b)| json!([scalar(a), scalar(b)])).collect::<Vec<_>>(),
        });
    }
    v
}

pub fn classification_text(out: &mut String, r: &ClassificationReport) {
    let _ = writeln!(out, "ansatz: {}", r.ansatz);
    let _ = writeln!(
        out,
        "constraints: {} nonzero residual coordinates over {} samples, {} distinct up to scaling:",
        r.constraints.len(),
        r.samples.len(),
        r.distinct.len()
    );
    for p in &r.distinct {
        let _ = writeln!(out, "  {p} = 0");
    }
    let gb: Vec<String> = r.groebner.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(out, "groebner basis (lex a > b): [{}]", gb.join(", "));
    let _ = writeln!(out, "solution set: {}", r.solutions);
    for p in &r.verified {
        let _ = write!(
            out,
            "  re-verified {}: {}",
            point(&p.a, &p.b),
            status(p.passed)
        );
        if !p.failed.is_empty() {
            let _ = write!(out, " [{}]", p.failed.join(","));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "contains (0, -1): {}", r.contains_canonical);
    let _ = writeln!(
        out,
        "(0, -1) equals the hat-map qxq family: {}",
        r.canonical_is_hat_qxq
    );
    let _ = writeln!(out, "solution set is exactly {{(0, -1)}}: {}", r.unique);
    if let Some(g) = &r.grid {
        let pts: Vec<String> = g.passing.iter().map(|(a, b)| point(a, b)).collect();
        let _ = writeln!(
            out,
            "grid check |num| <= {}, den <= {}: {} points, {} pass: {}",
            g.max_num,
            g.max_den,
            g.points_tested,
            g.passing.len(),
            pts.join(" ")
        );
        let _ = writeln!(out, "grid agrees with elimination: {}", g.agrees());
    }
}

pub fn sweep_json(r: &SweepReport) -> Value {
    let mut v = json!({
        "kind": r.kind.as_str(),
        "n": r.n,
        "seed": r.seed,
        "samples": r.samples,
        "passed": r.passed,
    });
    if let Some(f) = &r.first_failure {
        v["first_failure"] = json!({
            "index": f.index,
            "q": matrix(&f.q),
            "report": report_json(&f.report),
        });
    }
    v
}

pub fn sweep_text(out: &mut String, r: &SweepReport) {
    let _ = writeln!(
        out,
        "random {} n={} seed={}: {}/{} pass",
        r.kind.as_str(),
        r.n,
        r.seed,
        r.passed,
        r.samples
    );
    if let Some(f) = &r.first_failure {
        let _ = writeln!(out, "first failure at sample {}, q = {}", f.index, f.q);
        report_text(out, &f.report, "  ");
    }
}

pub fn search_json(r: &BiMybSearchReport) -> Value {
    json!({
        "samples": r.samples,
        "seed": r.seed,
        "product_matches": r.product_matches,
        "bi_myb": r.bi_myb,
        "even_tempered": r.even_tempered,
        "found": r.found,
    })
}

pub fn search_text(out: &mut String, r: &BiMybSearchReport) {
    let _ = writeln!(
        out,
        "bi-mYB search on so(3), seed {}: {} samples, {} with R1 R2 = rho_q, {} bi-mYB, {} even-tempered, {} presentations found",
        r.seed,
        r.samples,
        r.product_matches,
        r.bi_myb,
        r.even_tempered,
        r.found.len()
    );
}

/// The self-describing document printed by `--report structured`.
pub fn envelope(command: &str, inputs: &[InputDigest], passed: bool, result: Value) -> Value {
    json!({
        "tool": "lieops",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "inputs": inputs.iter().map(|d| json!({"path": d.path, "sha256": d.sha256})).collect::<Vec<_>>(),
        "passed": passed,
        "result": result,
    })
}
