//! Command implementations behind the `hyperdiag` binary.
//!
//! Each command returns an [`Outcome`] instead of printing, so the exit-code
//! contract and the exact output bytes can be tested directly.

use serde::{Deserialize, Serialize};

use hyperdiag::autgrp::{symmetry_group, AutError, DiagAut, SymGroup};
use hyperdiag::classify::{
    badr_bars_divisors, classify_with_fix, theorem11_divisors, zheng_integers, ClassifiedCase, ClassifyError,
    ClassifyOptions, Rationality,
};
use hyperdiag::geometry::{fixed_locus, smoothness, FixedLocusReport, GaloisVerdict, Smoothness, SmoothnessOptions};
use hyperdiag::harness::{audit_theorem, AuditClaim, AuditOptions, AuditReport, HarnessError, DEFAULT_GROUP_CAP};
use hyperdiag::poly::{HomogPoly, Monomial, PolyError};
use hyperdiag::CycloNum;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub json: bool,
    /// Largest symmetry group an audit enumerates per support.
    pub cap: Option<u128>,
    /// Largest Macaulay block, in matrix entries, that will be ranked.
    pub macaulay_cap: Option<u64>,
    pub skip_smoothness: bool,
}

impl Flags {
    fn macaulay(&self) -> SmoothnessOptions {
        let mut o = SmoothnessOptions::default();
        if let Some(c) = self.macaulay_cap {
            o.max_block_entries = c;
        }
        o
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn classify_exit(e: &ClassifyError) -> i32 {
    match e {
        ClassifyError::VertexViolatesSmoothness { .. } => EXIT_SINGULAR,
        _ => EXIT_INPUT,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub polynomial: String,
    pub automorphism: String,
    pub num_vars: usize,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutSummary {
    pub order: u64,
    /// Number of distinct eigenvalues.
    pub r: usize,
    pub eigenspace_dims: Vec<usize>,
    pub multiplier: CycloNum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub input: InputEcho,
    /// `None` when the check was skipped.
    pub smoothness: Option<Smoothness>,
    pub automorphism: AutSummary,
    pub fixed_locus: FixedLocusReport,
    pub classification: ClassifiedCase,
}

impl AnalyzeReport {
    pub fn to_text(&self) -> String {
        let c = &self.classification;
        let oc = &c.order_case;
        let mut s = String::new();
        s.push_str(&format!("polynomial: {}\n", self.input.polynomial));
        s.push_str(&format!("automorphism: {}\n", self.input.automorphism));
        s.push_str(&format!("n = {}, d = {}\n", oc.n, oc.d));
        match &self.smoothness {
            Some(Smoothness::Smooth { method, .. }) => s.push_str(&format!("smoothness: smooth ({method:?})\n")),
            Some(other) => s.push_str(&format!("smoothness: {other:?}\n")),
            None => s.push_str("smoothness: skipped\n"),
        }
        let a = &self.automorphism;
        s.push_str(&format!(
            "order: {}, r = {}, eigenspaces {:?}, multiplier {}\n",
            a.order, a.r, a.eigenspace_dims, a.multiplier
        ));
        let fl = &self.fixed_locus;
        let codim = fl.codim.map_or("empty".to_string(), |c| c.to_string());
        let line = match fl.contains_line.as_option() {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unknown",
        };
        s.push_str(&format!("fixed locus: codim {codim}, contains line: {line}"));
        if let Some(p) = fl.point_count {
            s.push_str(&format!(", {p} points"));
        }
        s.push('\n');
        for sl in &fl.slices {
            let dim = sl.dim.map_or("empty".to_string(), |d| format!("dim {d}"));
            s.push_str(&format!(
                "  P(W{:?}) eigenvalue exp {}: proj dim {}, {}{}\n",
                sl.coords,
                sl.eigen_exp,
                sl.proj_dim,
                dim,
                if sl.restriction_zero { ", contained in X" } else { "" }
            ));
        }
        s.push_str(&format!("type: {}\n", oc.normal_type()));
        s.push_str(&format!("branch: {}\n", oc.branch_label()));
        s.push_str(&format!(
            "divisor claims: {:?} ({})\n",
            oc.divisor_claims,
            if oc.claim_holds() { "holds" } else { "VIOLATED" }
        ));
        match c.rationality.cited() {
            Some(id) => s.push_str(&format!("rationality: {} by {id}\n", rationality_kind(&c.rationality))),
            None => s.push_str("rationality: unknown\n"),
        }
        match &c.galois {
            GaloisVerdict::Galois(g) => s.push_str(&format!(
                "galois: projection from {:?} to {:?} of degree {}{}\n",
                g.center,
                g.target,
                g.degree,
                if g.galois_point { ", a Galois point" } else { "" }
            )),
            GaloisVerdict::NotByThisCriterion => s.push_str("galois: not detected by the eigenvalue-block criterion\n"),
        }
        if let Some(p) = &c.galois_power {
            s.push_str(&format!("galois power: g^{}\n", p.k));
        }
        for w in &c.warnings {
            s.push_str(&format!("warning [{}]: {}\n", w.key, w.message));
        }
        s
    }
}

fn rationality_kind(r: &Rationality) -> &'static str {
    match r {
        Rationality::Rational { .. } => "rational",
        Rationality::Conditional { .. } => "conditional",
        Rationality::Unknown => "unknown",
    }
}

/// Builds the full analysis report, or an exit code with a diagnostic.
pub fn analyze(poly_text: &str, aut_text: &str, flags: &Flags) -> Result<AnalyzeReport, Outcome> {
    let f = HomogPoly::parse(poly_text, None).map_err(|e| Outcome::fail(EXIT_INPUT, format!("polynomial: {e}")))?;
    let g: DiagAut = aut_text.parse().map_err(|e: AutError| Outcome::fail(EXIT_INPUT, format!("automorphism: {e}")))?;
    let f = if g.num_vars() > f.num_vars() {
        HomogPoly::parse(poly_text, Some(g.num_vars())).map_err(|e| Outcome::fail(EXIT_INPUT, e))?
    } else {
        f
    };
    if g.num_vars() != f.num_vars() {
        return Err(Outcome::fail(
            EXIT_INPUT,
            format!("automorphism acts on {} coordinates, polynomial has {}", g.num_vars(), f.num_vars()),
        ));
    }
    let smooth = if flags.skip_smoothness {
        None
    } else {
        let s = smoothness(&f, &flags.macaulay());
        match &s {
            Smoothness::Singular { witness, .. } => {
                let w = witness.as_ref().map_or("unknown".to_string(), |w| {
                    format!("[{}]", w.iter().map(CycloNum::to_string).collect::<Vec<_>>().join(":"))
                });
                return Err(Outcome::fail(EXIT_SINGULAR, format!("X is singular at {w}")));
            }
            Smoothness::Inconclusive { reason, .. } => {
                return Err(Outcome::fail(EXIT_CAP, format!("smoothness inconclusive: {reason}")));
            }
            Smoothness::Smooth { .. } => {}
        }
        Some(s)
    };
    let multiplier = g.multiplier(&f).map_err(|e| Outcome::fail(EXIT_INPUT, e))?;
    let fix = fixed_locus(&f, &g).map_err(|e| Outcome::fail(EXIT_INPUT, e))?;
    let opts = ClassifyOptions { smooth_verified: smooth.is_some(), macaulay: flags.macaulay() };
    let classification = classify_with_fix(&f, &g, &fix, &opts).map_err(|e| Outcome::fail(classify_exit(&e), e))?;
    let es = g.eigen_structure();
    Ok(AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        input: InputEcho {
            polynomial: f.to_string(),
            automorphism: g.to_string(),
            num_vars: f.num_vars(),
            degree: f.degree(),
        },
        smoothness: smooth,
        automorphism: AutSummary { order: g.order_in_pgl(), r: es.r, eigenspace_dims: es.partition, multiplier },
        fixed_locus: fix,
        classification,
    })
}

pub fn cmd_analyze(poly_text: &str, aut_text: &str, flags: &Flags) -> Outcome {
    match analyze(poly_text, aut_text, flags) {
        Ok(r) => Outcome::ok(if flags.json { to_json(&r) } else { r.to_text() }),
        Err(o) => o,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetriesReport {
    pub schema_version: u32,
    pub support: Vec<String>,
    pub structure: String,
    pub order: u128,
    pub cyclic: bool,
    pub group: SymGroup,
}

/// Accepts a polynomial or a monomial list such as `{X0^3*X1, X1^3*X2}`.
pub fn parse_support(text: &str) -> Result<Vec<Monomial>, PolyError> {
    let t = text.trim().trim_start_matches('{').trim_end_matches('}');
    let joined = t.split(',').map(str::trim).collect::<Vec<_>>().join(" + ");
    let f = HomogPoly::parse(&joined, None)?;
    Ok(f.support().cloned().collect())
}

pub fn cmd_symmetries(text: &str, flags: &Flags) -> Outcome {
    let support = match parse_support(text) {
        Ok(s) if s.is_empty() => return Outcome::fail(EXIT_INPUT, "empty support"),
        Ok(s) => s,
        Err(e) => return Outcome::fail(EXIT_INPUT, e),
    };
    let group = match symmetry_group(&support) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(EXIT_INPUT, e),
    };
    let report = SymmetriesReport {
        schema_version: SCHEMA_VERSION,
        support: support.iter().map(Monomial::to_string).collect(),
        structure: group.structure_string(),
        order: group.order(),
        cyclic: group.is_cyclic(),
        group,
    };
    if flags.json {
        return Outcome::ok(to_json(&report));
    }
    let mut s = format!("{}\norder {}\n", report.structure, report.order);
    for g in &report.group.generators {
        s.push_str(&format!("generator {g} of order {}\n", g.order_in_pgl()));
    }
    Outcome::ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimLists {
    pub codim1: Vec<u64>,
    pub codim2: Vec<u64>,
    /// The condition attached to codimension-one orders dividing `d - 2`.
    pub codim1_side_condition: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub schema_version: u32,
    pub n: u64,
    pub d: u64,
    /// Plane-curve list, present for `n = 1`.
    pub plane_curve: Option<Vec<u64>>,
    pub zheng: Vec<u64>,
    /// Fixed-locus lists, present for `n ≥ 2`.
    pub codim: Option<CodimLists>,
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn cmd_bounds(n: u64, d: u64, flags: &Flags) -> Outcome {
    if (n, d) == (2, 4) {
        return Outcome::fail(EXIT_INPUT, "(n,d)=(2,4) excluded");
    }
    let report = match bounds(n, d) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(EXIT_INPUT, e),
    };
    if flags.json {
        return Outcome::ok(to_json(&report));
    }
    let mut s = format!("n = {n}, d = {d}\n");
    s.push_str(&format!("plane curves: {}\n", report.plane_curve.as_deref().map_or("—".to_string(), join)));
    s.push_str(&format!("general list: {}\n", join(&report.zheng)));
    match &report.codim {
        Some(c) => {
            s.push_str(&format!("codim 1: {} ({})\n", join(&c.codim1), c.codim1_side_condition));
            s.push_str(&format!("codim 2: {}\n", join(&c.codim2)));
        }
        None => s.push_str("codim 1: —\ncodim 2: —\n"),
    }
    Outcome::ok(s)
}

pub fn bounds(n: u64, d: u64) -> Result<BoundsReport, ClassifyError> {
    let plane_curve = if n == 1 { Some(badr_bars_divisors(d)?) } else { None };
    let zheng = zheng_integers(n, d)?.into_iter().collect();
    let codim = if n >= 2 {
        Some(CodimLists {
            codim1: theorem11_divisors(n, d, 1)?,
            codim2: theorem11_divisors(n, d, 2)?,
            codim1_side_condition: "an order ≥ 3 dividing d-2 forces n = 2".into(),
        })
    } else {
        None
    };
    Ok(BoundsReport { schema_version: SCHEMA_VERSION, n, d, plane_curve, zheng, codim })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEnvelope {
    pub schema_version: u32,
    #[serde(flatten)]
    pub report: AuditReport,
}

pub fn cmd_audit(n: u64, d: u64, claim: &str, flags: &Flags) -> Outcome {
    let claim: AuditClaim = match claim.parse() {
        Ok(c) => c,
        Err(e) => return Outcome::fail(EXIT_INPUT, e),
    };
    let opts = AuditOptions { group_cap: flags.cap.unwrap_or(DEFAULT_GROUP_CAP), macaulay: flags.macaulay() };
    let report = match audit_theorem(n, d, claim, &opts) {
        Ok(r) => r,
        Err(e @ HarnessError::CapExceeded { .. }) => return Outcome::fail(EXIT_CAP, e),
        Err(e) => return Outcome::fail(EXIT_INPUT, e),
    };
    let code = if !report.violations.is_empty() {
        EXIT_INPUT
    } else if report.partial {
        EXIT_CAP
    } else {
        EXIT_OK
    };
    let stdout = if flags.json {
        to_json(&AuditEnvelope { schema_version: SCHEMA_VERSION, report })
    } else {
        report.summary_table()
    };
    Outcome { code, stdout, stderr: String::new() }
}
