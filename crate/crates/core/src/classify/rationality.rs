//! Sufficient conditions for `X/⟨g⟩` to be rational, and Galois projections.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::branches::NormalType;
use crate::autgrp::DiagAut;
use crate::geometry::{
    galois_by_theorem, smoothness, FixedLocusReport, GaloisSplit, GaloisVerdict, GeometryError, LineContainment,
    SmoothnessOptions,
};
use crate::poly::HomogPoly;

/// Theorems the dispatcher can cite, with stable string keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// Order bounds under a codimension hypothesis on `Fix(g)`.
    OrderBounds,
    /// Codimension one with order `d-2`, `d-1` or `d`.
    CodimOneNearDegree,
    /// Codimension one with order `k(d-1)` or `kd`.
    CodimOneMultiple,
    /// The eigenspace projection is Galois with group `⟨g⟩`.
    GaloisProjection,
    /// Surfaces, order `d-1`, a non-rational fixed curve.
    DegreeMinusOneNonRationalCurve,
    /// `n ≥ 3`, order `d-1`, codimension one.
    DegreeMinusOneCodimOne,
    /// Order `d`, codimension one: the quotient is `P^n`.
    DegreeQuotientProjectiveSpace,
    /// Surfaces, order `d-2`, fixed curve.
    SurfaceDegreeMinusTwo,
    /// Surfaces, order `d-1`, fixed line.
    SurfaceDegreeMinusOneLine,
    /// Surfaces, order `d`, at least `d+3` isolated fixed points.
    SurfaceDegreeManyPoints,
    TypeOne,
    TypeTwo,
    TypeThree,
    TypeFour,
    TypeFive,
    TypeSix,
    /// Galois point for order `k(d-1)` on threefolds when `Fix(g)` has no line.
    CorrectedGaloisPoint,
}

impl TheoremId {
    pub const ALL: [TheoremId; 17] = [
        TheoremId::OrderBounds,
        TheoremId::CodimOneNearDegree,
        TheoremId::CodimOneMultiple,
        TheoremId::GaloisProjection,
        TheoremId::DegreeMinusOneNonRationalCurve,
        TheoremId::DegreeMinusOneCodimOne,
        TheoremId::DegreeQuotientProjectiveSpace,
        TheoremId::SurfaceDegreeMinusTwo,
        TheoremId::SurfaceDegreeMinusOneLine,
        TheoremId::SurfaceDegreeManyPoints,
        TheoremId::TypeOne,
        TheoremId::TypeTwo,
        TheoremId::TypeThree,
        TheoremId::TypeFour,
        TheoremId::TypeFive,
        TheoremId::TypeSix,
        TheoremId::CorrectedGaloisPoint,
    ];

    pub fn key(self) -> &'static str {
        match self {
            TheoremId::OrderBounds => "thm-1.1",
            TheoremId::CodimOneNearDegree => "thm-1.2-i",
            TheoremId::CodimOneMultiple => "thm-1.2-ii",
            TheoremId::GaloisProjection => "thm-2.3",
            TheoremId::DegreeMinusOneNonRationalCurve => "thm-2.5-i-b",
            TheoremId::DegreeMinusOneCodimOne => "thm-2.5-i-c",
            TheoremId::DegreeQuotientProjectiveSpace => "thm-2.5-ii-b",
            TheoremId::SurfaceDegreeMinusTwo => "thm-2.8-a",
            TheoremId::SurfaceDegreeMinusOneLine => "thm-2.8-b",
            TheoremId::SurfaceDegreeManyPoints => "thm-2.8-c",
            TheoremId::TypeOne => "thm-3.3",
            TheoremId::TypeTwo => "thm-3.7",
            TheoremId::TypeThree => "thm-3.12",
            TheoremId::TypeFour => "thm-3.14",
            TheoremId::TypeFive => "thm-3.18",
            TheoremId::TypeSix => "thm-3.21",
            TheoremId::CorrectedGaloisPoint => "thm-4.5-corrected",
        }
    }

    /// The theorem covering a normal form.
    pub fn for_type(t: NormalType) -> Option<TheoremId> {
        Some(match t {
            NormalType::I => TheoremId::TypeOne,
            NormalType::II => TheoremId::TypeTwo,
            NormalType::III => TheoremId::TypeThree,
            NormalType::IV => TheoremId::TypeFour,
            NormalType::V => TheoremId::TypeFive,
            NormalType::VI => TheoremId::TypeSix,
            NormalType::OutOfScope(_) => return None,
        })
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        TheoremId::ALL.into_iter().find(|t| t.key() == s).ok_or_else(|| format!("unknown theorem key {s:?}"))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.key())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Rationality {
    /// `X/⟨g⟩` is rational by `by`; `fired` lists every applicable theorem.
    Rational {
        by: TheoremId,
        fired: Vec<TheoremId>,
    },
    /// As `Rational`, but smoothness of `X` was assumed rather than certified.
    Conditional {
        by: TheoremId,
        fired: Vec<TheoremId>,
    },
    Unknown,
}

impl Rationality {
    pub fn cited(&self) -> Option<TheoremId> {
        match self {
            Rationality::Rational { by, .. } | Rationality::Conditional { by, .. } => Some(*by),
            Rationality::Unknown => None,
        }
    }
}

/// A diagnostic attached to a classified case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Note {
    pub key: String,
    pub message: String,
}

impl Note {
    pub fn new(key: &str, message: impl Into<String>) -> Self {
        Note { key: key.to_string(), message: message.into() }
    }
}

/// `g^k` for the smallest proper `k` making an eigenspace projection Galois.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisPower {
    pub k: u64,
    pub split: GaloisSplit,
}

pub fn galois_power(f: &HomogPoly, g: &DiagAut) -> Result<Option<GaloisPower>, GeometryError> {
    let m = g.order_in_pgl();
    for k in (2..m).filter(|k| m.is_multiple_of(*k)) {
        if let GaloisVerdict::Galois(split) = galois_by_theorem(f, &g.pow(k))? {
            return Ok(Some(GaloisPower { k, split }));
        }
    }
    Ok(None)
}

pub struct RationalityInput<'a> {
    pub f: &'a HomogPoly,
    pub g: &'a DiagAut,
    pub fix: &'a FixedLocusReport,
    pub normal_type: NormalType,
    pub galois: &'a GaloisVerdict,
    pub smooth_verified: bool,
    pub macaulay: SmoothnessOptions,
}

fn multiple_of(m: u64, base: u64) -> bool {
    base > 0 && m.is_multiple_of(base) && m / base >= 2
}

/// Every applicable sufficient condition, in citation priority order.
pub fn fired_theorems(inp: &RationalityInput<'_>) -> Vec<TheoremId> {
    let n = inp.f.num_vars() as u64 - 2;
    let d = u64::from(inp.f.degree());
    let m = inp.g.order_in_pgl();
    let codim = inp.fix.codim;
    let codim1 = codim == Some(1);
    let mut out = Vec::new();

    if d >= 4 && m == d && codim1 {
        out.push(TheoremId::DegreeQuotientProjectiveSpace);
    }
    if matches!(inp.galois, GaloisVerdict::Galois(_)) {
        out.push(TheoremId::GaloisProjection);
    }
    let type_fires = match inp.normal_type {
        NormalType::I => m == d || m + 1 == d,
        NormalType::II => m >= 3 && (m == d || m + 1 == d || m + 2 == d),
        NormalType::III | NormalType::V => multiple_of(m, d) || multiple_of(m, d - 1),
        NormalType::IV => m + 1 == d || m + 2 == d,
        NormalType::VI | NormalType::OutOfScope(_) => false,
    };
    if type_fires {
        out.extend(TheoremId::for_type(inp.normal_type));
    }
    if codim1 && m >= 3 && (m == d || m + 1 == d || m + 2 == d) {
        out.push(TheoremId::CodimOneNearDegree);
    }
    if codim1 && (multiple_of(m, d) || multiple_of(m, d - 1)) {
        out.push(TheoremId::CodimOneMultiple);
    }
    if d >= 4 && m + 1 == d && n >= 3 && codim1 {
        out.push(TheoremId::DegreeMinusOneCodimOne);
    }
    if n == 2 && d >= 4 && m + 1 == d && has_smooth_plane_curve(inp) {
        out.push(TheoremId::DegreeMinusOneNonRationalCurve);
    }
    if n == 2 && d >= 5 {
        if m + 2 == d && codim1 {
            out.push(TheoremId::SurfaceDegreeMinusTwo);
        }
        if m + 1 == d && inp.fix.contains_line == LineContainment::Contained {
            out.push(TheoremId::SurfaceDegreeMinusOneLine);
        }
        if m == d && codim == Some(2) && inp.fix.point_count.is_some_and(|c| c >= d + 3) {
            out.push(TheoremId::SurfaceDegreeManyPoints);
        }
    }
    out
}

/// A fixed plane meeting `X` in a smooth curve of degree `d ≥ 4`, which has
/// positive genus.
fn has_smooth_plane_curve(inp: &RationalityInput<'_>) -> bool {
    inp.fix.slices.iter().any(|s| {
        s.proj_dim == 2 && !s.restriction_zero && smoothness(&inp.f.restrict_to(&s.coords), &inp.macaulay).is_smooth()
    })
}

pub fn rationality_verdict(inp: &RationalityInput<'_>) -> Rationality {
    let fired = fired_theorems(inp);
    match fired.first() {
        None => Rationality::Unknown,
        Some(&by) if inp.smooth_verified => Rationality::Rational { by, fired },
        Some(&by) => Rationality::Conditional { by, fired },
    }
}

/// Notes on the Galois-point statement for threefolds with order `k(d-1)`.
pub fn galois_point_notes(f: &HomogPoly, g: &DiagAut, fix: &FixedLocusReport) -> Vec<Note> {
    let n = f.num_vars() as u64 - 2;
    let d = u64::from(f.degree());
    let m = g.order_in_pgl();
    if n != 3 || fix.codim != Some(2) || !multiple_of(m, d - 1) {
        return Vec::new();
    }
    let k = m / (d - 1);
    match fix.contains_line {
        LineContainment::Contained => vec![Note::new(
            TheoremId::CorrectedGaloisPoint.key(),
            format!(
                "ord(g) = {k}(d-1) with Fix(g) of codimension two containing a line: \
                 the Galois-point criterion does not apply"
            ),
        )],
        LineContainment::NotContained => vec![Note::new(
            "galois-point-claimed",
            format!(
                "ord(g) = {k}(d-1), Fix(g) of codimension two with no line: X has a Galois point with group <g^{k}>"
            ),
        )],
        LineContainment::Unknown => vec![Note::new(
            "line-containment-unknown",
            "could not decide whether Fix(g) contains a line; Galois-point criterion undecided",
        )],
    }
}
