//! Normal-form typing, vertex incidence, and the per-branch divisor lists.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::ClassifyError;
use crate::autgrp::DiagAut;
use crate::geometry::FixedLocusReport;
use crate::poly::HomogPoly;

/// The six diagonal normal forms, named by the non-unit part of the
/// normalized automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NormalType {
    /// `(a, 1, …, 1)`.
    I,
    /// `(a, a, 1, …, 1)`.
    II,
    /// `(a, b, 1, …, 1)`.
    III,
    /// `(a, a, a, 1, …, 1)`.
    IV,
    /// `(a, a, c, 1, …, 1)`.
    V,
    /// `(a, b, c, 1, …, 1)`.
    VI,
    OutOfScope(ScopeReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScopeReason {
    /// `g` is the identity of `PGL`.
    Identity,
    EmptyFixedLocus,
    /// `Fix(g)` has codimension at least three.
    CodimensionAboveTwo,
}

impl NormalType {
    pub fn in_scope(self) -> bool {
        !matches!(self, NormalType::OutOfScope(_))
    }

    /// Number of non-unit coordinates.
    pub fn width(self) -> usize {
        match self {
            NormalType::I => 1,
            NormalType::II | NormalType::III => 2,
            NormalType::IV | NormalType::V | NormalType::VI => 3,
            NormalType::OutOfScope(_) => 0,
        }
    }

    /// Permutations of the non-unit coordinates that preserve the normal form.
    fn symmetries(self) -> Vec<Vec<usize>> {
        match self {
            NormalType::II | NormalType::III | NormalType::V => {
                let mut v = vec![vec![0, 1], vec![1, 0]];
                if self == NormalType::V {
                    v.iter_mut().for_each(|p| p.push(2));
                }
                v
            }
            NormalType::IV | NormalType::VI => {
                vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]]
            }
            NormalType::I => vec![vec![0]],
            NormalType::OutOfScope(_) => vec![vec![]],
        }
    }
}

impl fmt::Display for NormalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalType::OutOfScope(r) => {
                let r = match r {
                    ScopeReason::Identity => "identity",
                    ScopeReason::EmptyFixedLocus => "empty fixed locus",
                    ScopeReason::CodimensionAboveTwo => "codimension above two",
                };
                write!(f, "out of scope ({r})")
            }
            t => write!(f, "Type {t:?}"),
        }
    }
}

/// `g` rewritten in the coordinates of its normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub normal_type: NormalType,
    /// Normalized automorphism: eigenvalue 1 on the chosen fixed component.
    pub aut: DiagAut,
    /// New coordinate `k` is old coordinate `perm[k]`.
    pub perm: Vec<usize>,
}

/// Picks the fixed component of largest dimension and puts `g` in the normal
/// form whose unit eigenspace contains it.
pub fn normal_form(g: &DiagAut, fix: &FixedLocusReport) -> NormalForm {
    let out = |reason| NormalForm {
        normal_type: NormalType::OutOfScope(reason),
        aut: g.clone(),
        perm: (0..g.num_vars()).collect(),
    };
    if g.is_scalar() {
        return out(ScopeReason::Identity);
    }
    let Some(codim) = fix.codim else {
        return out(ScopeReason::EmptyFixedLocus);
    };
    if codim > 2 {
        return out(ScopeReason::CodimensionAboveTwo);
    }
    let best = fix
        .slices
        .iter()
        .filter(|s| s.dim.is_some())
        .max_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.coords.len().cmp(&b.coords.len()))
                .then((a.eigen_exp == 0).cmp(&(b.eigen_exp == 0)))
                .then(b.coords[0].cmp(&a.coords[0]))
        })
        .expect("codim is set, so some slice is nonempty");
    let nz = g.normalize_with_unit(&best.coords);
    let sizes: Vec<usize> = nz.blocks.iter().map(Vec::len).collect();
    let normal_type = match sizes.as_slice() {
        [1] => NormalType::I,
        [2] => NormalType::II,
        [1, 1] => NormalType::III,
        [3] => NormalType::IV,
        [2, 1] => NormalType::V,
        [1, 1, 1] => NormalType::VI,
        _ => return out(ScopeReason::CodimensionAboveTwo),
    };
    NormalForm { normal_type, aut: nz.aut, perm: nz.perm }
}

/// Where the distinguished vertex `P_i` sends its near-power monomial `X_i^{d-1} X_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Partner {
    /// `j` is another non-unit coordinate.
    Vertex(usize),
    /// `j` is a unit coordinate.
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexState {
    /// `X_i^d` occurs, so `P_i ∉ X`.
    Off,
    /// `P_i ∈ X`, smooth there through `X_i^{d-1} X_j`.
    On(Partner),
}

impl VertexState {
    fn code(self, width: usize) -> (u8, usize) {
        match self {
            VertexState::Off => (0, 0),
            VertexState::On(Partner::Vertex(j)) => (1, j),
            VertexState::On(Partner::Outside) => (1, width),
        }
    }

    fn is_on(self) -> bool {
        matches!(self, VertexState::On(_))
    }
}

/// States of `P_0, …, P_{m-1}` after the relabeling allowed by the normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Incidence {
    pub vertices: Vec<VertexState>,
    /// Canonical vertex `k` is normal-form coordinate `relabel[k]`.
    pub relabel: Vec<usize>,
}

impl Incidence {
    /// Human-readable branch name, e.g. `X∩{P0,P1,P2} = {P1,P2}; (i,j) = (0,out)`.
    pub fn label(&self) -> String {
        let names: Vec<String> = (0..self.vertices.len()).map(|k| format!("P{k}")).collect();
        let on: Vec<&str> =
            self.vertices.iter().zip(&names).filter(|(v, _)| v.is_on()).map(|(_, s)| s.as_str()).collect();
        let mut s = format!("X∩{{{}}} = {{{}}}", names.join(","), on.join(","));
        let partners: Vec<String> = self
            .vertices
            .iter()
            .filter_map(|v| match v {
                VertexState::On(Partner::Vertex(j)) => Some(j.to_string()),
                VertexState::On(Partner::Outside) => Some("out".to_string()),
                VertexState::Off => None,
            })
            .collect();
        if !partners.is_empty() {
            let letters = ["i", "j", "k"];
            s.push_str(&format!("; ({}) = ({})", letters[..partners.len()].join(","), partners.join(",")));
        }
        s
    }
}

/// Reads the vertex states off `F` written in normal-form coordinates and
/// brings them to the canonical representative under the allowed relabelings.
pub fn incidence_case(f_normal: &HomogPoly, normal_type: NormalType) -> Result<Incidence, VertexError> {
    let m = normal_type.width();
    let profile = f_normal.support_queries();
    let mut raw = Vec::with_capacity(m);
    for (p, v) in profile.vertices.iter().take(m).enumerate() {
        let state = if v.pure_power {
            VertexState::Off
        } else {
            match v.partners.first() {
                Some(&j) if j < m => VertexState::On(Partner::Vertex(j)),
                Some(_) => VertexState::On(Partner::Outside),
                None => return Err(VertexError(p)),
            }
        };
        raw.push(state);
    }
    let mut best: Option<(Vec<(u8, usize)>, Incidence)> = None;
    for sigma in normal_type.symmetries() {
        let mut inv = vec![0; m];
        for (k, &s) in sigma.iter().enumerate() {
            inv[s] = k;
        }
        let vertices: Vec<VertexState> = sigma
            .iter()
            .map(|&s| match raw[s] {
                VertexState::On(Partner::Vertex(j)) => VertexState::On(Partner::Vertex(inv[j])),
                other => other,
            })
            .collect();
        let key: Vec<(u8, usize)> =
            vertices.iter().map(|v| (u8::from(v.is_on()), 0)).chain(vertices.iter().map(|v| v.code(m))).collect();
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, Incidence { vertices, relabel: sigma }));
        }
    }
    Ok(best.expect("at least the identity").1)
}

/// Normal-form coordinate of a vertex on `X` with no near-power monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexError(pub usize);

/// Exponent relations the multiplier must satisfy on a smooth hypersurface,
/// checked against the normalized automorphism.
pub fn multiplier_consistent(normal_type: NormalType, n: u64, aut: &DiagAut, t_exp: u64) -> bool {
    let e = aut.exps();
    match normal_type {
        NormalType::I | NormalType::III => t_exp == 0,
        NormalType::II => t_exp == 0 || (n == 2 && t_exp == e[0]),
        NormalType::IV => n <= 4 && t_exp == e[0],
        NormalType::V => (n <= 3 && t_exp == e[0]) || (n == 2 && t_exp == e[2]),
        NormalType::VI => n == 2 && e[..3].contains(&t_exp),
        NormalType::OutOfScope(_) => true,
    }
}

/// Integers one of which the order must divide in the given branch. An empty
/// list means the branch cannot occur on a smooth hypersurface.
pub fn divisor_claims(
    n: u64,
    d: u64,
    normal_type: NormalType,
    incidence: &Incidence,
) -> Result<Vec<u64>, ClassifyError> {
    super::bounds::check_range(n, d)?;
    use Partner::{Outside as Out, Vertex as B};
    use VertexState::{Off, On};
    let q = d * d - 3 * d + 3;
    let v = incidence.vertices.as_slice();
    let list = match normal_type {
        NormalType::I => match v {
            [Off] => vec![d],
            _ => vec![d - 1],
        },
        NormalType::II => {
            let generic = || if n == 2 { vec![d, d - 1] } else { vec![d] };
            match v {
                [Off, Off] | [Off, On(B(0))] | [On(B(1)), On(B(0))] => generic(),
                [On(Out), On(Out)] => {
                    if n == 2 {
                        vec![d - 1, d - 2]
                    } else {
                        vec![d - 1]
                    }
                }
                _ => vec![],
            }
        }
        NormalType::III => match v {
            [Off, Off] => vec![d],
            [Off, On(_)] => vec![(d - 1) * d],
            [On(B(1)), On(B(0))] => vec![(d - 2) * d],
            [On(B(1)), On(Out)] | [On(Out), On(B(0))] => vec![(d - 1) * (d - 1)],
            [On(Out), On(Out)] => vec![d - 1],
            _ => vec![],
        },
        NormalType::IV => {
            let top = v.iter().filter(|s| !matches!(s, On(Out))).count();
            let low = v.len() - top;
            match (top, low) {
                _ if n > 4 => vec![],
                (_, 0) => vec![d - 1],
                (0, _) if n == 4 => vec![d - 2],
                _ => vec![],
            }
        }
        NormalType::V => match n {
            2 => vec![(d - 1) * d, (d - 1) * (d - 1), (d - 2) * d],
            3 => type_v_claims(d, q, v),
            _ => vec![],
        },
        NormalType::VI => {
            if n == 2 {
                type_vi_claims(d, q, v)
            } else {
                vec![]
            }
        }
        NormalType::OutOfScope(_) => vec![],
    };
    Ok(list)
}

fn type_v_claims(d: u64, q: u64, v: &[VertexState]) -> Vec<u64> {
    use Partner::{Outside as Out, Vertex as B};
    use VertexState::{Off, On};
    let low_block = |p: Partner| matches!(p, B(0) | B(1));
    match *v {
        [Off, Off, Off] => vec![(d - 1) * d],
        [Off, Off, On(p)] if low_block(p) => vec![d - 1],
        [Off, Off, On(_)] => vec![(d - 1) * (d - 1)],
        [Off, On(B(0)), Off] => vec![(d - 1) * d],
        [Off, On(B(0)), On(p)] if low_block(p) => vec![d - 1],
        [Off, On(B(0)), On(_)] => vec![(d - 1) * (d - 1)],
        [On(B(1)), On(B(0)), Off] => vec![(d - 1) * d],
        [On(B(2)), On(B(2)), Off] => vec![(d - 1) * (d - 1)],
        [On(Out), On(Out), Off] => vec![(d - 2) * d],
        [On(B(1)), On(B(0)), On(p)] if low_block(p) => vec![d - 1],
        [On(B(1)), On(B(0)), On(_)] => vec![(d - 1) * (d - 1)],
        [On(B(2)), On(B(2)), On(p)] if low_block(p) => vec![(d - 2) * (d - 1)],
        [On(B(2)), On(B(2)), On(_)] => vec![q],
        [On(Out), On(Out), On(_)] => vec![(d - 2) * (d - 1)],
        _ => vec![],
    }
}

fn type_vi_claims(d: u64, q: u64, v: &[VertexState]) -> Vec<u64> {
    use Partner::{Outside as Out, Vertex as B};
    use VertexState::{Off, On};
    let (d1, d2) = (d - 1, d - 2);
    match *v {
        [Off, Off, Off] => vec![d1 * d],
        [Off, Off, On(B(_))] => vec![d1 * d1 * d],
        [Off, Off, On(Out)] => vec![d1 * d1 * d, d2 * d],
        [Off, On(i), On(j)] => match (i, j) {
            (B(0), B(0)) => vec![d1 * d1],
            (B(0), B(1)) | (B(2), B(0)) => vec![d1 * d1 * d1],
            (B(0), Out) | (Out, B(0)) => vec![d1 * d1 * d1, d2 * d1 * d],
            (B(2), B(1)) => vec![d2 * d1 * d],
            (B(2), Out) | (Out, B(1)) => vec![d1 * d1 * d1, q * d, d2 * d1 * d],
            (Out, Out) => vec![d1 * d1, d2 * d1 * d],
            _ => vec![],
        },
        [On(B(1)), On(j), On(k)] => match (j, k) {
            (B(0), B(0)) | (B(0), B(1)) | (B(2), B(1)) => vec![d2 * d1 * d1],
            (B(0), Out) => vec![d2 * d1 * d1, d2 * d],
            (B(2), B(0)) => vec![q * d1],
            (B(2), Out) | (Out, B(0)) | (Out, Out) => vec![q * d1, d2 * d1 * d1],
            (Out, B(1)) => vec![q * d1, d2 * d1],
            _ => vec![],
        },
        [On(Out), On(Out), On(Out)] => vec![d2 * d1],
        _ => vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fixed_locus;

    fn setup(f: &str, vars: usize, level: u64, exps: Vec<u64>) -> (HomogPoly, NormalForm, Incidence) {
        let f = HomogPoly::parse(f, Some(vars)).unwrap();
        let g = DiagAut::new(level, exps).unwrap();
        let fix = fixed_locus(&f, &g).unwrap();
        let nf = normal_form(&g, &fix);
        let fp = f.permute(&nf.perm);
        let inc = incidence_case(&fp, nf.normal_type).unwrap();
        (fp, nf, inc)
    }

    #[test]
    fn fermat_reflection_is_type_one_off() {
        let (_, nf, inc) = setup("X0^3+X1^3+X2^3+X3^3", 4, 3, vec![1, 0, 0, 0]);
        assert_eq!(nf.normal_type, NormalType::I);
        assert_eq!(inc.vertices, vec![VertexState::Off]);
        assert_eq!(divisor_claims(2, 3, nf.normal_type, &inc).unwrap(), vec![3]);
    }

    #[test]
    fn klein_quartic_partners() {
        use Partner::Vertex;
        let f = HomogPoly::parse("X0^3*X1 + X1^3*X2 + X2^3*X0", None).unwrap();
        let inc = incidence_case(&f, NormalType::VI).unwrap();
        let on = |j| VertexState::On(Vertex(j));
        assert_eq!(inc.vertices, vec![on(1), on(2), on(0)]);
        assert_eq!(inc.label(), "X∩{P0,P1,P2} = {P0,P1,P2}; (i,j,k) = (1,2,0)");
    }

    #[test]
    fn klein_quartic_plus_fourth_power_is_type_six() {
        let (_, nf, inc) = setup("X0^3*X1 + X1^3*X2 + X2^3*X0 + X3^4", 4, 7, vec![1, 4, 2, 0]);
        assert_eq!(nf.normal_type, NormalType::VI);
        assert_eq!(nf.perm, vec![1, 2, 3, 0]);
        use Partner::*;
        assert_eq!(inc.vertices, vec![VertexState::Off, VertexState::On(Vertex(2)), VertexState::On(Outside)]);
    }

    #[test]
    fn witness_is_type_five_all_off() {
        let (_, nf, inc) = setup("X0^4+X1^4+X2^4+X0*X3^3+X1*X4^3", 5, 12, vec![4, 4, 1, 0, 0]);
        assert_eq!(nf.normal_type, NormalType::V);
        assert_eq!(inc.vertices, vec![VertexState::Off; 3]);
        assert_eq!(inc.label(), "X∩{P0,P1,P2} = {}");
        assert_eq!(divisor_claims(3, 4, nf.normal_type, &inc).unwrap(), vec![12]);
    }

    #[test]
    fn single_on_vertex_moves_to_the_end() {
        let (_, nf, inc) = setup("X0^3*X2 + X1^4 + X2^4 + X3^4", 4, 12, vec![4, 3, 0, 0]);
        assert_eq!(nf.normal_type, NormalType::III);
        assert_eq!(inc.vertices, vec![VertexState::Off, VertexState::On(Partner::Outside)]);
        assert_eq!(inc.relabel, vec![1, 0]);
    }

    #[test]
    fn scalar_is_out_of_scope() {
        let f = HomogPoly::parse("X0^3+X1^3+X2^3", None).unwrap();
        let g = DiagAut::new(3, vec![1, 1, 1]).unwrap();
        let nf = normal_form(&g, &fixed_locus(&f, &g).unwrap());
        assert_eq!(nf.normal_type, NormalType::OutOfScope(ScopeReason::Identity));
    }

    #[test]
    fn type_six_full_list_matches_union() {
        let (d, q) = (5u64, 13u64);
        let mut all = std::collections::BTreeSet::new();
        use Partner::*;
        use VertexState::*;
        let states = [Off, On(Vertex(0)), On(Vertex(1)), On(Vertex(2)), On(Outside)];
        for a in states {
            for b in states {
                for c in states {
                    all.extend(type_vi_claims(d, q, &[a, b, c]));
                }
            }
        }
        let expected = [16 * 5, 64, 13 * 5, 13 * 4, 3 * 4 * 5, 3 * 16, 20, 15, 12, 16];
        for x in &all {
            assert!(expected.iter().any(|e| e % x == 0), "{x}");
        }
        for x in [80u64, 64, 65, 52, 60, 48] {
            assert!(all.contains(&x), "{x}");
        }
    }
}
