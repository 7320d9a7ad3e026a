//! Geometry of a hypersurface `X = V(F) ⊂ P^{n+1}` under a diagonal automorphism:
//! smoothness, fixed loci, and linear projections.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::autgrp::DiagAut;
use crate::cyclo::CycloNum;
use crate::poly::{HomogPoly, PolyError};

pub mod smooth;
mod upoly;

pub use smooth::{smoothness, vertex_screen, MacaulayStats, Method, Smoothness, SmoothnessOptions};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("not an automorphism of X: {0}")]
    NotAnAutomorphism(PolyError),
    #[error("the two coordinate sets must partition 0..{0}")]
    InvalidSplit(usize),
    #[error("automorphism acts on {got} coordinates, polynomial has {expected}")]
    ArityMismatch { expected: usize, got: usize },
}

/// `X ∩ P(W)` for one eigenspace `W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slice {
    pub coords: Vec<usize>,
    /// Eigenvalue exponent at the automorphism's level.
    pub eigen_exp: u64,
    /// `dim P(W)`.
    pub proj_dim: usize,
    /// `F|_W ≡ 0`, i.e. `P(W) ⊂ X`.
    pub restriction_zero: bool,
    /// Dimension of the slice, `None` when empty.
    pub dim: Option<usize>,
}

/// Tri-state answer to "does `Fix(g)` contain a line?", serialized as `true`/`false`/`null`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineContainment {
    Contained,
    NotContained,
    Unknown,
}

impl LineContainment {
    pub fn as_option(self) -> Option<bool> {
        match self {
            LineContainment::Contained => Some(true),
            LineContainment::NotContained => Some(false),
            LineContainment::Unknown => None,
        }
    }
}

impl Serialize for LineContainment {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.as_option().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LineContainment {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match Option::<bool>::deserialize(d)? {
            Some(true) => LineContainment::Contained,
            Some(false) => LineContainment::NotContained,
            None => LineContainment::Unknown,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedLocusReport {
    pub slices: Vec<Slice>,
    /// `n - dim Fix(g)`, `None` when `Fix(g)` is empty.
    pub codim: Option<usize>,
    pub contains_line: LineContainment,
    /// Number of fixed points when `Fix(g)` is finite.
    pub point_count: Option<u64>,
}

impl FixedLocusReport {
    pub fn dim(&self) -> Option<usize> {
        self.slices.iter().filter_map(|s| s.dim).max()
    }

    pub fn is_finite(&self) -> bool {
        self.slices.iter().all(|s| s.dim.unwrap_or(0) == 0)
    }
}

fn check_aut(f: &HomogPoly, g: &DiagAut) -> Result<u64, GeometryError> {
    if g.num_vars() != f.num_vars() {
        return Err(GeometryError::ArityMismatch { expected: f.num_vars(), got: g.num_vars() });
    }
    g.multiplier_exp(f).map_err(GeometryError::NotAnAutomorphism)
}

/// Decomposes `Fix(g) ⊂ X` into its eigenspace slices.
pub fn fixed_locus(f: &HomogPoly, g: &DiagAut) -> Result<FixedLocusReport, GeometryError> {
    check_aut(f, g)?;
    let n = f.num_vars();
    let es = g.eigen_structure();
    let mut slices = Vec::new();
    for b in &es.blocks {
        let others: Vec<usize> = (0..n).filter(|i| !b.coords.contains(i)).collect();
        let restriction_zero = f.restrict(&others).is_zero();
        let proj_dim = b.coords.len() - 1;
        let dim = match (restriction_zero, proj_dim) {
            (true, k) => Some(k),
            (false, 0) => None,
            (false, k) => Some(k - 1),
        };
        slices.push(Slice { coords: b.coords.clone(), eigen_exp: b.exp, proj_dim, restriction_zero, dim });
    }
    let dim_x = n.saturating_sub(2);
    let max_dim = slices.iter().filter_map(|s| s.dim).max();
    let codim = max_dim.map(|k| dim_x - k);

    let contains_line = if slices.iter().any(|s| s.restriction_zero && s.proj_dim >= 1) {
        LineContainment::Contained
    } else if slices.iter().all(|s| s.dim.unwrap_or(0) == 0) {
        LineContainment::NotContained
    } else {
        let coordinate_line = slices.iter().filter(|s| s.proj_dim >= 2).any(|s| {
            s.coords.iter().enumerate().any(|(a, &p)| {
                s.coords[a + 1..].iter().any(|&q| {
                    let others: Vec<usize> = (0..n).filter(|&i| i != p && i != q).collect();
                    f.restrict(&others).is_zero()
                })
            })
        });
        if coordinate_line {
            LineContainment::Contained
        } else {
            LineContainment::Unknown
        }
    };

    let point_count = if slices.iter().all(|s| s.dim.unwrap_or(0) == 0) {
        let mut count = 0u64;
        for s in &slices {
            match (s.proj_dim, s.restriction_zero) {
                (0, true) => count += 1,
                (1, false) => count += binary_form_roots(&f.restrict_to(&s.coords)) as u64,
                _ => {}
            }
        }
        Some(count)
    } else {
        None
    };

    Ok(FixedLocusReport { slices, codim, contains_line, point_count })
}

/// Distinct points of `P^1` on which a nonzero binary form vanishes.
pub fn binary_form_roots(f: &HomogPoly) -> usize {
    assert_eq!(f.num_vars(), 2);
    let d = f.degree() as usize;
    let mut coeffs = vec![CycloNum::zero(); d + 1];
    for (m, c) in f.terms() {
        coeffs[m.exps()[0] as usize] = c.clone();
    }
    // Roots with X1 = 0 correspond to a missing X0^d term.
    let at_infinity = usize::from(coeffs[d].is_zero());
    at_infinity + upoly::distinct_roots(&coeffs)
}

/// Whether the coordinate subspace spanned by `coords` lies in `X`.
pub fn span_contained(f: &HomogPoly, coords: &[usize]) -> bool {
    let others: Vec<usize> = (0..f.num_vars()).filter(|i| !coords.contains(i)).collect();
    f.restrict(&others).is_zero()
}

/// Degree of the projection of `X` from the span of `center` to the span of `target`:
/// `d - 2` if both spans lie in `X`, `d - 1` if exactly one does, `d` otherwise.
pub fn projection_degree(f: &HomogPoly, center: &[usize], target: &[usize]) -> Result<u32, GeometryError> {
    let n = f.num_vars();
    let mut all: Vec<usize> = center.iter().chain(target).copied().collect();
    all.sort_unstable();
    if all != (0..n).collect::<Vec<_>>() || center.is_empty() || target.is_empty() {
        return Err(GeometryError::InvalidSplit(n));
    }
    let contained = usize::from(span_contained(f, center)) + usize::from(span_contained(f, target));
    Ok(f.degree().saturating_sub(contained as u32))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisSplit {
    /// Coordinates spanning the center of projection.
    pub center: Vec<usize>,
    /// Coordinates spanning the target space.
    pub target: Vec<usize>,
    /// Degree of the projection, equal to the order of the automorphism.
    pub degree: u32,
    /// The center is a single point.
    pub galois_point: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GaloisVerdict {
    /// The projection is Galois with group `⟨g⟩`, so `X/⟨g⟩` is rational.
    Galois(GaloisSplit),
    NotByThisCriterion,
}

/// Two eigenvalues, with order equal to the degree of the projection between
/// the two eigenspaces, make that projection Galois with group `⟨g⟩`.
pub fn galois_by_theorem(f: &HomogPoly, g: &DiagAut) -> Result<GaloisVerdict, GeometryError> {
    check_aut(f, g)?;
    let es = g.eigen_structure();
    if es.r != 2 {
        return Ok(GaloisVerdict::NotByThisCriterion);
    }
    let (a, b) = (&es.blocks[0].coords, &es.blocks[1].coords);
    let m = g.order_in_pgl();
    let degree = projection_degree(f, a, b)?;
    if u64::from(degree) != m {
        return Ok(GaloisVerdict::NotByThisCriterion);
    }
    let (ca, cb) = (span_contained(f, a), span_contained(f, b));
    let (center, target) = match (ca, cb) {
        (true, false) => (a, b),
        (false, true) => (b, a),
        _ if b.len() < a.len() => (b, a),
        _ => (a, b),
    };
    Ok(GaloisVerdict::Galois(GaloisSplit {
        center: center.clone(),
        target: target.clone(),
        degree,
        galois_point: center.len() == 1,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> HomogPoly {
        HomogPoly::parse(s, Some(n)).unwrap()
    }

    fn witness(d: u32) -> (HomogPoly, DiagAut) {
        let f = p(&format!("X0^{d} + X1^{d} + X2^{d} + X0*X3^{} + X1*X4^{}", d - 1, d - 1), 5);
        let g = DiagAut::new((d * (d - 1)) as u64, vec![d as u64, d as u64, 1, 0, 0]).unwrap();
        (f, g)
    }

    #[test]
    fn fermat_reflection_has_codim_one() {
        let f = p("X0^5 + X1^5 + X2^5 + X3^5", 4);
        let g = DiagAut::new(5, vec![1, 0, 0, 0]).unwrap();
        let fl = fixed_locus(&f, &g).unwrap();
        assert_eq!(fl.codim, Some(1));
        assert_eq!(fl.point_count, None);
    }

    #[test]
    fn example_witness_locus() {
        for d in 3..=5 {
            let (f, g) = witness(d);
            let fl = fixed_locus(&f, &g).unwrap();
            assert_eq!(fl.codim, Some(2));
            assert_eq!(fl.contains_line, LineContainment::Contained);
            let dims: Vec<_> = fl.slices.iter().map(|s| s.dim).collect();
            assert_eq!(dims, vec![Some(0), None, Some(1)]);
        }
    }

    #[test]
    fn surface_with_finitely_many_fixed_points() {
        let f = p("X0^5 + X1^5 + X2^5 + X3^5", 4);
        let g = DiagAut::new(5, vec![1, 2, 0, 0]).unwrap();
        let fl = fixed_locus(&f, &g).unwrap();
        assert_eq!(fl.contains_line, LineContainment::NotContained);
        assert_eq!(fl.point_count, Some(5));
    }

    #[test]
    fn not_an_automorphism() {
        let f = p("X0^3 + X1^3 + X2^3", 3);
        let g = DiagAut::new(2, vec![1, 0, 0]).unwrap();
        assert!(matches!(fixed_locus(&f, &g), Err(GeometryError::NotAnAutomorphism(_))));
    }

    #[test]
    fn projection_degrees() {
        let (f, _) = witness(4);
        assert_eq!(projection_degree(&f, &[0, 1, 2], &[3, 4]).unwrap(), 3);
        let fermat = p("X0^4 + X1^4 + X2^4 + X3^4", 4);
        assert_eq!(projection_degree(&fermat, &[0], &[1, 2, 3]).unwrap(), 4);
        assert!(projection_degree(&fermat, &[0], &[1, 2]).is_err());
    }

    #[test]
    fn galois_cases() {
        let fermat = p("X0^5 + X1^5 + X2^5 + X3^5", 4);
        let g = DiagAut::new(5, vec![1, 0, 0, 0]).unwrap();
        let GaloisVerdict::Galois(s) = galois_by_theorem(&fermat, &g).unwrap() else { panic!() };
        assert_eq!((s.center, s.degree, s.galois_point), (vec![0], 5, true));
        let (f, g) = witness(4);
        assert_eq!(galois_by_theorem(&f, &g).unwrap(), GaloisVerdict::NotByThisCriterion);
        let GaloisVerdict::Galois(s) = galois_by_theorem(&f, &g.pow(4)).unwrap() else { panic!() };
        assert_eq!((s.center, s.degree), (vec![3, 4], 3));
        let id = DiagAut::identity(4);
        assert_eq!(galois_by_theorem(&fermat, &id).unwrap(), GaloisVerdict::NotByThisCriterion);
    }
}
