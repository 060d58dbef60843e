//! Subcommand implementations.

use std::time::Instant;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use qmdecide_core::exact::factor::is_irreducible_over_q;
use qmdecide_core::honda_tate::{
    enumerate_weil, roots_on_circle, tate_invariants_with_cap, totally_real_classify, GroundField, WeilPoly,
};
use qmdecide_core::nf::NumberField;
use qmdecide_core::places::{arch_places, places_above_p_with_cap, ArchKind};
use qmdecide_core::qm::{
    qm_decide_direct_yu_with, qm_decide_with, qm_surface_over_q, revalidate, yu_feasible, QmDecision, QmOptions,
    YuBlock, YuFactor, YuInstance,
};
use qmdecide_core::{Error, IntPoly};

use crate::problem::{int_poly, Problem, ProblemFile};
use crate::report::{class_map, int_poly_strs, rat_str, DecisionOut, Report};

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CertificationFailed(_) => 3,
            Error::InternalInconsistency(_) | Error::OracleDisagreement(_) => 4,
            _ => 2,
        };
        CliError { code, message: e.to_string() }
    }
}

pub fn input_error(msg: impl Into<String>) -> CliError {
    CliError { code: 2, message: msg.into() }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum PathMode {
    Auto,
    Cases,
    Yu,
    Both,
}

impl PathMode {
    fn as_str(&self) -> &'static str {
        match self {
            PathMode::Auto => "auto",
            PathMode::Cases => "cases",
            PathMode::Yu => "yu",
            PathMode::Both => "both",
        }
    }
}

pub fn parse_poly(s: &str) -> CliResult<IntPoly> {
    let cs = s
        .split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| input_error(format!("cannot parse coefficient list {s:?}")))?;
    Ok(int_poly(&cs)?)
}

fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{path}: {e}")))
}

fn ms(t: Instant) -> String {
    t.elapsed().as_millis().to_string()
}

pub fn cmd_weil(q: u64, poly: Option<&str>, enumerate: Option<usize>, output: Option<&str>) -> CliResult<Report> {
    let t = Instant::now();
    let ground = GroundField::from_q(q)?;
    let mut r = match (poly, enumerate) {
        (Some(p), None) => {
            let h = parse_poly(p)?;
            if !h.is_monic() {
                return Err(input_error("polynomial must be monic"));
            }
            let irreducible = is_irreducible_over_q(&h);
            let on_circle = roots_on_circle(q, &h);
            Report::new(
                "weil",
                json!({
                    "q": q,
                    "poly": int_poly_strs(&h),
                    "irreducible": irreducible,
                    "roots_on_circle": on_circle,
                    "valid": irreducible && on_circle,
                }),
            )
        }
        (None, Some(d)) => {
            let ws = enumerate_weil(&ground, d, d.max(qmdecide_core::honda_tate::DEFAULT_ENUMERATION_CAP))?;
            let lines: Vec<String> = ws.iter().map(qmdecide_core::corpus::format_corpus_line).collect();
            if let Some(path) = output {
                let mut text = lines.join("\n");
                text.push('\n');
                std::fs::write(path, text).map_err(|e| input_error(format!("{path}: {e}")))?;
            }
            Report::new("weil", json!({ "q": q, "degree": d, "count": lines.len(), "polynomials": lines }))
        }
        _ => return Err(input_error("give exactly one of --poly and --enumerate")),
    };
    r.timings.insert("total_ms".into(), ms(t));
    Ok(r)
}

pub fn cmd_places(poly: &str, p: Option<u64>, cap: Option<u32>) -> CliResult<Report> {
    let t = Instant::now();
    let k = NumberField::new(parse_poly(poly)?)?;
    let places: Vec<Value> = match p {
        Some(p) => places_above_p_with_cap(&k, p, cap)?
            .iter()
            .map(|w| {
                json!({
                    "label": w.label().to_string(),
                    "e": w.e,
                    "f": w.f,
                    "local_factor": int_poly_strs(&w.local_factor),
                })
            })
            .collect(),
        None => arch_places(&k)
            .iter()
            .map(|a| match &a.kind {
                ArchKind::Real(root) => json!({
                    "label": a.label().to_string(),
                    "kind": "real",
                    "interval": [rat_str(&root.lo), rat_str(&root.hi)],
                }),
                ArchKind::Complex => json!({ "label": a.label().to_string(), "kind": "complex" }),
            })
            .collect(),
    };
    let mut r = Report::new(
        "places",
        json!({ "field": int_poly_strs(k.defining_poly()), "p": p, "places": places }),
    );
    r.timings.insert("total_ms".into(), ms(t));
    Ok(r)
}

pub fn cmd_endalg(q: u64, poly: &str, cap: Option<u32>) -> CliResult<Report> {
    let t = Instant::now();
    let w = WeilPoly::new(GroundField::from_q(q)?, parse_poly(poly)?)?;
    let ea = tate_invariants_with_cap(&w, cap)?;
    let kind = totally_real_classify(&w)?;
    let mut r = Report::new(
        "endalg",
        json!({
            "q": q,
            "poly": int_poly_strs(&w.h),
            "invariants": class_map(&ea.invariants),
            "c": ea.c,
            "d": w.degree(),
            "dim": ea.dim,
            "classification": kind.name(),
        }),
    );
    r.timings.insert("total_ms".into(), ms(t));
    Ok(r)
}

fn problem_summary(pf: &ProblemFile, pr: &Problem) -> Value {
    let factors: Vec<Value> = pr
        .class
        .factors
        .iter()
        .map(|f| {
            json!({
                "h": int_poly_strs(&f.endalg.weil.h),
                "m": f.m,
                "dim": f.endalg.dim,
                "c": f.endalg.c,
            })
        })
        .collect();
    json!({
        "ground": { "p": pf.ground.p, "r": pf.ground.r },
        "factors": factors,
        "total_dim": pr.class.total_dim(),
        "field_E": int_poly_strs(pr.field.defining_poly()),
        "algebra_D": pr.algebra.ramified().iter().map(|l| l.to_string()).collect::<Vec<_>>(),
    })
}

fn checked(d: QmDecision, pr: &Problem) -> CliResult<QmDecision> {
    revalidate(&d, &pr.class, &pr.field, &pr.algebra)?;
    Ok(d)
}

pub fn qm_one(text: &str, mode: PathMode, cap: Option<u32>) -> CliResult<Report> {
    let t = Instant::now();
    let pf = ProblemFile::from_json(text)?;
    let pr = pf.build(cap)?;
    let opts = QmOptions { precision_cap: cap };
    let mut summary = problem_summary(&pf, &pr);
    summary["path_mode"] = json!(mode.as_str());
    let mut r = Report::new("qm", summary);
    let (primary, oracle) = match mode {
        PathMode::Auto | PathMode::Cases => {
            (checked(qm_decide_with(&pr.class, &pr.field, &pr.algebra, &opts)?, &pr)?, None)
        }
        PathMode::Yu => (checked(qm_decide_direct_yu_with(&pr.class, &pr.field, &pr.algebra, &opts)?, &pr)?, None),
        PathMode::Both => {
            let t1 = Instant::now();
            let a = checked(qm_decide_with(&pr.class, &pr.field, &pr.algebra, &opts)?, &pr)?;
            r.timings.insert("cases_ms".into(), ms(t1));
            let t2 = Instant::now();
            let b = checked(qm_decide_direct_yu_with(&pr.class, &pr.field, &pr.algebra, &opts)?, &pr)?;
            r.timings.insert("yu_ms".into(), ms(t2));
            if a.verdict != b.verdict {
                return Err(Error::OracleDisagreement(format!(
                    "case analysis says {} via {}, direct Yu says {}",
                    a.verdict, a.path, b.verdict
                ))
                .into());
            }
            (a, Some(b))
        }
    };
    r.decision = Some(DecisionOut::from_decision(&primary));
    if let Some(b) = oracle {
        r.result["oracle"] = serde_json::to_value(DecisionOut::from_decision(&b)).expect("decision serializes");
    }
    r.timings.insert("total_ms".into(), ms(t));
    Ok(r)
}

/// Runs every problem file; reports come back in input order.
pub fn cmd_qm(paths: &[String], mode: PathMode, jobs: usize, cap: Option<u32>) -> CliResult<Vec<Report>> {
    let texts = paths.iter().map(|p| read_file(p)).collect::<CliResult<Vec<_>>>()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| input_error(format!("thread pool: {e}")))?;
    let results: Vec<CliResult<Report>> =
        pool.install(|| texts.par_iter().map(|t| qm_one(t, mode, cap)).collect());
    results.into_iter().collect()
}

pub fn cmd_surface(path: &str, cap: Option<u32>) -> CliResult<Report> {
    let t = Instant::now();
    let pf = ProblemFile::from_json(&read_file(path)?)?;
    let pr = pf.build(cap)?;
    if pr.field.degree() != 1 {
        return Err(input_error("surface problems live over Q; omit field_E"));
    }
    let d = qm_surface_over_q(&pr.class, &pr.algebra)?;
    let y = qm_decide_direct_yu_with(&pr.class, &pr.field, &pr.algebra, &QmOptions { precision_cap: cap })?;
    if d.verdict != y.verdict {
        return Err(Error::OracleDisagreement(format!(
            "surface criterion says {} via {}, direct Yu says {}",
            d.verdict, d.path, y.verdict
        ))
        .into());
    }
    let mut r = Report::new("surface", problem_summary(&pf, &pr));
    r.result["case"] = json!(d.path.as_str().trim_start_matches("appendix-"));
    r.decision = Some(DecisionOut::from_decision(&d));
    r.timings.insert("total_ms".into(), ms(t));
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct YuFactorIn {
    m: u64,
    d_dim: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct YuBlockIn {
    v_dim: u64,
    delta_dim: u64,
    factors: Vec<YuFactorIn>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct YuIn {
    blocks: Vec<YuBlockIn>,
}

pub fn cmd_yu(path: &str) -> CliResult<Report> {
    let t = Instant::now();
    let raw: YuIn = serde_json::from_str(&read_file(path)?).map_err(|e| input_error(format!("Yu instance: {e}")))?;
    let inst = YuInstance {
        blocks: raw
            .blocks
            .into_iter()
            .map(|b| YuBlock {
                v_dim: b.v_dim,
                delta_dim: b.delta_dim,
                factors: b.factors.into_iter().map(|f| YuFactor { m: f.m, d_dim: f.d_dim }).collect(),
            })
            .collect(),
    };
    let out = yu_feasible(&inst)?;
    let mut r = Report::new(
        "yu",
        json!({ "feasible": out.feasible, "steps": out.steps, "witness": out.witness }),
    );
    r.timings.insert("total_ms".into(), ms(t));
    Ok(r)
}
