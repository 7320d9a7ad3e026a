//! Exhaustive desk-scale audits over delta supports, plus brute-force oracles.
//!
//! A delta support on `k` variables is a map `σ: {0..k} → {0..k}`; variable
//! `i` contributes the monomial `X_i^{d-1} X_{σ(i)}`, which is `X_i^d` when
//! `σ(i) = i`. The audited family is every such support up to relabeling,
//! with all coefficients equal to one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::autgrp::{symmetry_group, AutError, DiagAut};
use crate::classify::{
    bounds::{codim_one_side_condition, divides_some, theorem11_divisors},
    check_range, classify_order, ClassifyError, NormalType,
};
use crate::geometry::{fixed_locus, smoothness, GeometryError, Smoothness, SmoothnessOptions};
use crate::poly::{HomogPoly, Monomial};

pub const MAX_DELTA_VARS: usize = 6;
pub const DEFAULT_GROUP_CAP: u128 = 100_000;
pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("{what} exceeds the cap of {cap}")]
    CapExceeded { what: String, cap: u128 },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaSupport {
    pub num_vars: usize,
    pub degree: u32,
    /// `sigma[i]` is the partner of variable `i`; a fixed point is a pure power.
    pub sigma: Vec<usize>,
}

impl DeltaSupport {
    pub fn new(degree: u32, sigma: Vec<usize>) -> Self {
        DeltaSupport { num_vars: sigma.len(), degree, sigma }
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        let k = self.num_vars;
        (0..k)
            .map(|i| {
                let mut e = vec![0u32; k];
                e[i] += self.degree - 1;
                e[self.sigma[i]] += 1;
                Monomial(e)
            })
            .collect()
    }

    /// The sum of the support monomials.
    pub fn polynomial(&self) -> HomogPoly {
        HomogPoly::from_terms(self.num_vars, self.monomials().into_iter().map(|m| (m, 1i64.into())))
            .expect("homogeneous by construction")
    }

    pub fn id(&self) -> String {
        let s: Vec<String> = self.sigma.iter().map(usize::to_string).collect();
        format!("σ=({})", s.join(","))
    }
}

impl fmt::Display for DeltaSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.id(), self.polynomial())
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Lexicographically smallest relabeling `π σ π^{-1}` of a functional digraph.
pub fn canonical_digraph(sigma: &[usize]) -> Vec<usize> {
    let k = sigma.len();
    permutations(k)
        .into_iter()
        .map(|pi| {
            let mut c = vec![0; k];
            for i in 0..k {
                c[pi[i]] = pi[sigma[i]];
            }
            c
        })
        .min()
        .unwrap_or_default()
}

/// All delta supports on `n + 2` variables up to relabeling, sorted by `σ`.
pub fn delta_supports(n: usize, d: u32) -> Result<Vec<DeltaSupport>, HarnessError> {
    let k = n + 2;
    if k > MAX_DELTA_VARS {
        return Err(HarnessError::CapExceeded { what: format!("{k} variables"), cap: MAX_DELTA_VARS as u128 });
    }
    let perms = permutations(k);
    let mut seen = BTreeSet::new();
    let total = k.pow(k as u32);
    for code in 0..total {
        let mut sigma = vec![0; k];
        let mut c = code;
        for s in sigma.iter_mut() {
            *s = c % k;
            c /= k;
        }
        let canon = perms
            .iter()
            .map(|pi| {
                let mut out = vec![0; k];
                for i in 0..k {
                    out[pi[i]] = pi[sigma[i]];
                }
                out
            })
            .min()
            .expect("k ≥ 1");
        seen.insert(canon);
    }
    Ok(seen.into_iter().map(|s| DeltaSupport::new(d, s)).collect())
}

/// Determinant by fraction-free elimination.
fn det_i128(mut a: Vec<Vec<i128>>) -> Result<i128, HarnessError> {
    let n = a.len();
    let overflow = || HarnessError::CapExceeded { what: "determinant".into(), cap: i128::MAX as u128 };
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .ok_or_else(overflow)?;
                a[i][j] = x / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

/// Differences `m_k - m_0` restricted to all but the last coordinate.
fn reduced_matrix(support: &[Monomial]) -> Vec<Vec<i128>> {
    let k = support[0].num_vars();
    support[1..].iter().map(|m| (0..k - 1).map(|i| m.0[i] as i128 - support[0].0[i] as i128).collect()).collect()
}

/// Modulus `L` such that every symmetry has eigenvalues that are `L`-th roots
/// of unity once the last one is normalized to 1, together with the raw search
/// size `L^{k-1}`.
pub fn brute_force_cost(support: &[Monomial]) -> Result<(u64, u128), HarnessError> {
    let k = support[0].num_vars();
    let a = reduced_matrix(support);
    if a.len() != k - 1 {
        return Err(HarnessError::CapExceeded { what: "non-square support".into(), cap: 0 });
    }
    let l = det_i128(a)?.unsigned_abs();
    if l == 0 {
        return Err(AutError::InfiniteGroup { dim: 1 }.into());
    }
    let l =
        u64::try_from(l).map_err(|_| HarnessError::CapExceeded { what: "modulus".into(), cap: u64::MAX as u128 })?;
    Ok((l, (l as u128).saturating_pow((k - 1) as u32)))
}

/// Every diagonal symmetry of a square support, by depth-first search over
/// exponent vectors modulo `L` with last exponent zero. Each monomial
/// equation is checked as soon as all of its variables are assigned.
pub fn brute_force_group(support: &[Monomial], node_cap: u64) -> Result<Vec<DiagAut>, HarnessError> {
    let k = support[0].num_vars();
    let (l, _) = brute_force_cost(support)?;
    // The last exponent is fixed, so a monomial's character is known once its
    // other variables are assigned.
    let level_of = |m: &Monomial| (0..k - 1).rev().find(|&i| m.0[i] > 0).unwrap_or(0);
    let reference = (0..support.len()).min_by_key(|&s| level_of(&support[s])).expect("nonempty");
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); k - 1];
    for s in (0..support.len()).filter(|&s| s != reference) {
        ready[level_of(&support[s]).max(level_of(&support[reference]))].push(s);
    }
    let ctx = Search { k, l, support, reference, ready, cap: node_cap };
    let mut x = vec![0u64; k];
    let mut out = Vec::new();
    let mut nodes = 0u64;
    if k == 1 {
        out.push(DiagAut::new(l, x).expect("valid"));
    } else {
        ctx.rec(0, &mut x, &mut out, &mut nodes)?;
    }
    Ok(out)
}

struct Search<'a> {
    k: usize,
    l: u64,
    support: &'a [Monomial],
    reference: usize,
    /// `ready[j]` holds the monomials whose equation against the reference
    /// can be checked once variable `j` is assigned.
    ready: Vec<Vec<usize>>,
    cap: u64,
}

impl Search<'_> {
    fn character(&self, s: usize, x: &[u64]) -> u64 {
        let l = self.l as u128;
        self.support[s].0.iter().zip(x).fold(0u128, |acc, (&e, &v)| (acc + e as u128 * v as u128) % l) as u64
    }

    fn rec(&self, j: usize, x: &mut Vec<u64>, out: &mut Vec<DiagAut>, nodes: &mut u64) -> Result<(), HarnessError> {
        *nodes += 1;
        if *nodes > self.cap {
            return Err(HarnessError::CapExceeded { what: "brute-force search nodes".into(), cap: self.cap as u128 });
        }
        for v in 0..self.l {
            x[j] = v;
            let c0 = self.character(self.reference, x);
            if self.ready[j].iter().all(|&s| self.character(s, x) == c0) {
                if j + 2 == self.k {
                    out.push(DiagAut::new(self.l, x.clone()).expect("valid"));
                } else {
                    self.rec(j + 1, x, out, nodes)?;
                }
            }
        }
        x[j] = 0;
        Ok(())
    }
}

/// Largest `PGL` order among brute-force symmetries of the delta polynomial,
/// optionally only those whose fixed locus has the given codimension.
pub fn brute_force_max_order(support: &DeltaSupport, codim_filter: Option<usize>) -> Result<u64, HarnessError> {
    let f = support.polynomial();
    let mut best = 1;
    for g in brute_force_group(&support.monomials(), DEFAULT_NODE_CAP)? {
        if let Some(c) = codim_filter {
            if fixed_locus(&f, &g)?.codim != Some(c) {
                continue;
            }
        }
        best = best.max(g.order_in_pgl());
    }
    Ok(best)
}

/// The threefold `X_0^d + X_1^d + X_2^d + X_0 X_3^{d-1} + X_1 X_4^{d-1}` with
/// `g = diag(ζ^d, ζ^d, ζ, 1, 1)`, `ζ` of order `d(d-1)`.
pub fn example_witness(d: u32) -> (HomogPoly, DiagAut) {
    assert!(d >= 3, "degree must be at least 3");
    let e = d - 1;
    let f = HomogPoly::parse(&format!("X0^{d} + X1^{d} + X2^{d} + X0*X3^{e} + X1*X4^{e}"), Some(5)).expect("valid");
    let level = u64::from(d * e);
    let g = DiagAut::new(level, vec![d.into(), d.into(), 1, 0, 0]).expect("valid");
    (f, g)
}

/// The statement an audit checks on every examined case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuditClaim {
    /// Codimension-one fixed locus: order divides `d`, `d-1` or `d-2`.
    CodimOneOrders,
    /// Codimension-two fixed locus: the `n`-dependent order list.
    CodimTwoOrders,
    /// Branch claims for one normal form, any codimension.
    TypeBranches(NormalType),
}

impl AuditClaim {
    pub const ALL: [AuditClaim; 8] = [
        AuditClaim::CodimOneOrders,
        AuditClaim::CodimTwoOrders,
        AuditClaim::TypeBranches(NormalType::I),
        AuditClaim::TypeBranches(NormalType::II),
        AuditClaim::TypeBranches(NormalType::III),
        AuditClaim::TypeBranches(NormalType::IV),
        AuditClaim::TypeBranches(NormalType::V),
        AuditClaim::TypeBranches(NormalType::VI),
    ];

    pub fn key(self) -> &'static str {
        match self {
            AuditClaim::CodimOneOrders => "thm-1.1-codim1",
            AuditClaim::CodimTwoOrders => "thm-1.1-codim2",
            AuditClaim::TypeBranches(NormalType::I) => "thm-3.3",
            AuditClaim::TypeBranches(NormalType::II) => "thm-3.7",
            AuditClaim::TypeBranches(NormalType::III) => "thm-3.12",
            AuditClaim::TypeBranches(NormalType::IV) => "thm-3.14",
            AuditClaim::TypeBranches(NormalType::V) => "thm-3.18",
            AuditClaim::TypeBranches(NormalType::VI) => "thm-3.21",
            AuditClaim::TypeBranches(NormalType::OutOfScope(_)) => "out-of-scope",
        }
    }

    fn codim(self) -> Option<usize> {
        match self {
            AuditClaim::CodimOneOrders => Some(1),
            AuditClaim::CodimTwoOrders => Some(2),
            AuditClaim::TypeBranches(_) => None,
        }
    }
}

impl fmt::Display for AuditClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for AuditClaim {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        AuditClaim::ALL.into_iter().find(|c| c.key() == s).ok_or_else(|| {
            let keys: Vec<&str> = AuditClaim::ALL.iter().map(|c| c.key()).collect();
            format!("unknown claim {s:?}; expected one of {}", keys.join(", "))
        })
    }
}

impl Serialize for AuditClaim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.key())
    }
}

impl<'de> Deserialize<'de> for AuditClaim {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditOptions {
    /// Largest symmetry group enumerated per support.
    pub group_cap: u128,
    pub macaulay: SmoothnessOptions,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { group_cap: DEFAULT_GROUP_CAP, macaulay: SmoothnessOptions::default() }
    }
}

/// One examined `(F, g)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub support: String,
    pub element: DiagAut,
    pub order: u64,
    pub normal_type: NormalType,
    pub codim: Option<usize>,
    pub branch: String,
    pub claim: Vec<u64>,
    pub pass: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedSupport {
    pub support: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxOrderWitness {
    pub order: u64,
    pub support: String,
    pub element: DiagAut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n: u64,
    pub d: u64,
    pub claim: AuditClaim,
    pub family: String,
    pub supports_total: usize,
    pub supports_smooth: usize,
    pub supports_singular: usize,
    /// Supports not fully examined because a cap was hit.
    pub skipped: Vec<SkippedSupport>,
    pub partial: bool,
    pub cases_examined: usize,
    pub records: Vec<AuditRecord>,
    pub violations: Vec<AuditRecord>,
    /// Keyed by normal-type name.
    pub max_order_by_type: BTreeMap<String, MaxOrderWitness>,
}

impl AuditReport {
    pub fn max_order(&self) -> u64 {
        self.max_order_by_type.values().map(|w| w.order).max().unwrap_or(1)
    }

    /// Plain-text table: one line per normal type plus totals.
    pub fn summary_table(&self) -> String {
        let mut s = format!(
            "audit {} n={} d={}: {} supports ({} smooth, {} singular, {} skipped), {} cases, {} violations{}\n",
            self.claim,
            self.n,
            self.d,
            self.supports_total,
            self.supports_smooth,
            self.supports_singular,
            self.skipped.len(),
            self.cases_examined,
            self.violations.len(),
            if self.partial { " [partial]" } else { "" }
        );
        s.push_str(&format!("family: {}\n", self.family));
        s.push_str("type      max order  support            element\n");
        for (t, w) in &self.max_order_by_type {
            s.push_str(&format!("{:<9} {:>9}  {:<18} {}\n", t, w.order, w.support, w.element));
        }
        for v in &self.violations {
            s.push_str(&format!(
                "VIOLATION {} {} order {} {} [{}] claim {:?}: {}\n",
                v.support,
                v.element,
                v.order,
                v.normal_type,
                v.branch,
                v.claim,
                v.failures.join("; ")
            ));
        }
        s
    }
}

enum SupportOutcome {
    Singular,
    Skipped(SkippedSupport),
    Examined(Vec<AuditRecord>),
}

fn examine_case(
    claim: AuditClaim,
    n: u64,
    d: u64,
    support: &DeltaSupport,
    f: &HomogPoly,
    g: DiagAut,
) -> Result<Option<AuditRecord>, HarnessError> {
    if g.is_scalar() {
        return Ok(None);
    }
    let fix = fixed_locus(f, &g)?;
    if let Some(c) = claim.codim() {
        if fix.codim != Some(c) {
            return Ok(None);
        }
    }
    let order = g.order_in_pgl();
    let case = match classify_order(f, &g, &fix) {
        Ok(c) => c,
        Err(ClassifyError::VertexViolatesSmoothness { vertex }) => {
            return Ok(Some(AuditRecord {
                support: support.id(),
                element: g,
                order,
                normal_type: NormalType::OutOfScope(crate::classify::ScopeReason::Identity),
                codim: fix.codim,
                branch: "-".into(),
                claim: vec![],
                pass: false,
                failures: vec![format!("vertex P{vertex} singular on a certified smooth X")],
            }))
        }
        Err(e) => return Err(e.into()),
    };
    let t = case.normal_type();
    if let AuditClaim::TypeBranches(want) = claim {
        if t != want {
            return Ok(None);
        }
    }
    let mut failures = Vec::new();
    if let Some(c) = claim.codim() {
        let list = theorem11_divisors(n, d, c as u8)?;
        if !divides_some(order, &list) {
            failures.push(format!("order {order} divides none of {list:?}"));
        }
        if c == 1 && !codim_one_side_condition(n, d, order) {
            failures.push(format!("order {order} ≥ 3 divides d-2 with n = {n}"));
        }
    }
    if !t.in_scope() {
        failures.push(format!("{t} despite codimension {:?}", fix.codim));
    } else if !case.claim_holds() {
        failures.push(format!("order {order} divides no branch claim {:?}", case.divisor_claims));
    }
    if !case.multiplier_consistent {
        failures.push(format!("multiplier {} outside the forced relations", case.multiplier_t));
    }
    if t == NormalType::IV && order >= 2 && (d - 2).is_multiple_of(order) && n != 4 {
        failures.push(format!("Type IV order {order} divides d-2 with n = {n}"));
    }
    Ok(Some(AuditRecord {
        support: support.id(),
        branch: case.branch_label(),
        claim: case.divisor_claims.clone(),
        element: g,
        order,
        normal_type: t,
        codim: fix.codim,
        pass: failures.is_empty(),
        failures,
    }))
}

fn examine_support(
    claim: AuditClaim,
    n: u64,
    d: u64,
    support: &DeltaSupport,
    opts: &AuditOptions,
) -> Result<SupportOutcome, HarnessError> {
    let f = support.polynomial();
    match smoothness(&f, &opts.macaulay) {
        Smoothness::Smooth { .. } => {}
        Smoothness::Singular { .. } => return Ok(SupportOutcome::Singular),
        Smoothness::Inconclusive { reason, .. } => {
            return Ok(SupportOutcome::Skipped(SkippedSupport { support: support.id(), reason }))
        }
    }
    let group = symmetry_group(&support.monomials())?;
    let elements = match group.elements(opts.group_cap) {
        Ok(it) => it,
        Err(AutError::EnumerationCapExceeded { order, cap }) => {
            return Ok(SupportOutcome::Skipped(SkippedSupport {
                support: support.id(),
                reason: format!("symmetry group of order {order} exceeds cap {cap}"),
            }))
        }
        Err(e) => return Err(e.into()),
    };
    let mut records = Vec::new();
    for g in elements {
        if let Some(r) = examine_case(claim, n, d, support, &f, g)? {
            records.push(r);
        }
    }
    Ok(SupportOutcome::Examined(records))
}

/// Runs `claim` over every smooth delta support on `n + 2` variables of degree `d`.
pub fn audit_theorem(n: u64, d: u64, claim: AuditClaim, opts: &AuditOptions) -> Result<AuditReport, HarnessError> {
    check_range(n, d)?;
    let supports = delta_supports(n as usize, d as u32)?;
    let outcomes: Vec<SupportOutcome> =
        supports.par_iter().map(|s| examine_support(claim, n, d, s, opts)).collect::<Result<_, _>>()?;
    let mut report = AuditReport {
        n,
        d,
        claim,
        family: format!(
            "delta supports on {} variables of degree {d} (coefficients 1, up to relabeling), smooth members only",
            n + 2
        ),
        supports_total: supports.len(),
        supports_smooth: 0,
        supports_singular: 0,
        skipped: Vec::new(),
        partial: false,
        cases_examined: 0,
        records: Vec::new(),
        violations: Vec::new(),
        max_order_by_type: BTreeMap::new(),
    };
    for o in outcomes {
        match o {
            SupportOutcome::Singular => report.supports_singular += 1,
            SupportOutcome::Skipped(s) => {
                report.partial = true;
                report.skipped.push(s);
            }
            SupportOutcome::Examined(rs) => {
                report.supports_smooth += 1;
                report.records.extend(rs);
            }
        }
    }
    report.records.sort_by(|a, b| (&a.support, &a.element).cmp(&(&b.support, &b.element)));
    report.cases_examined = report.records.len();
    report.violations = report.records.iter().filter(|r| !r.pass).cloned().collect();
    for r in &report.records {
        let key = format!("{:?}", r.normal_type);
        let better = report.max_order_by_type.get(&key).is_none_or(|w| r.order > w.order);
        if better {
            report.max_order_by_type.insert(
                key,
                MaxOrderWitness { order: r.order, support: r.support.clone(), element: r.element.clone() },
            );
        }
    }
    Ok(report)
}
