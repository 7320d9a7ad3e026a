//! Smoothness certificates.
//!
//! `X = V(F)` is smooth iff the partials `∂_0F, …, ∂_{N-1}F` have no common
//! projective zero, iff `(G_i) ↦ Σ G_i ∂_iF` is onto the degree
//! `e = N(d-2)+1` part of the polynomial ring. The matrix of that map splits
//! into blocks by the characters of the support's diagonal symmetry group,
//! and each block is ranked exactly.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::autgrp::CharacterLattice;
use crate::cyclo::CycloNum;
use crate::poly::{HomogPoly, Monomial};

pub const DEFAULT_MAX_BLOCK_ENTRIES: u64 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmoothnessOptions {
    /// Largest `rows × columns` of a single Macaulay block that will be ranked.
    pub max_block_entries: u64,
}

impl Default for SmoothnessOptions {
    fn default() -> Self {
        SmoothnessOptions { max_block_entries: DEFAULT_MAX_BLOCK_ENTRIES }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Degree 0 or 1, or the zero polynomial.
    Trivial,
    VertexScreen,
    MacaulayRank,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MacaulayStats {
    /// Target degree `e`.
    pub degree: u32,
    /// `dim S_e`.
    pub rows: u64,
    pub columns: u64,
    pub blocks: u64,
    pub largest_block_entries: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Smoothness {
    Smooth {
        method: Method,
        stats: Option<MacaulayStats>,
    },
    /// `witness` is a singular point when one is known.
    Singular {
        method: Method,
        witness: Option<Vec<CycloNum>>,
    },
    Inconclusive {
        method: Method,
        reason: String,
        stats: Option<MacaulayStats>,
    },
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth { .. })
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, Smoothness::Singular { .. })
    }

    pub fn method(&self) -> Method {
        match self {
            Smoothness::Smooth { method, .. }
            | Smoothness::Singular { method, .. }
            | Smoothness::Inconclusive { method, .. } => *method,
        }
    }
}

fn coordinate_point(n: usize, i: usize) -> Vec<CycloNum> {
    (0..n).map(|j| if i == j { CycloNum::one() } else { CycloNum::zero() }).collect()
}

/// Coordinate points `P_i ∈ X` at which `X` is visibly singular: neither
/// `X_i^d` nor any `X_i^{d-1}X_j` occurs.
pub fn vertex_screen(f: &HomogPoly) -> Option<usize> {
    f.support_queries().vertices.iter().position(|v| !v.pure_power && v.partners.is_empty())
}

pub fn smoothness(f: &HomogPoly, opts: &SmoothnessOptions) -> Smoothness {
    let n = f.num_vars();
    let d = f.degree();
    if f.is_zero() {
        return Smoothness::Singular { method: Method::Trivial, witness: (n > 0).then(|| coordinate_point(n, 0)) };
    }
    if d <= 1 {
        return Smoothness::Smooth { method: Method::Trivial, stats: None };
    }
    if let Some(i) = vertex_screen(f) {
        return Smoothness::Singular { method: Method::VertexScreen, witness: Some(coordinate_point(n, i)) };
    }
    let e = n as u32 * (d - 2) + 1;
    macaulay_at_degree(f, e, opts)
}

/// All exponent vectors of total degree `deg` in `n` variables, in lex order.
pub(crate) fn monomials(n: usize, deg: u32) -> Vec<Monomial> {
    fn rec(n: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(deg);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=deg).rev() {
            prefix.push(a);
            rec(n, deg - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, deg, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

fn add_exps(a: &Monomial, b: &Monomial) -> Monomial {
    Monomial(a.exps().iter().zip(b.exps()).map(|(x, y)| x + y).collect())
}

struct Block {
    rows: Vec<Monomial>,
    /// `(i, m')` standing for the column `m' · ∂_iF`.
    cols: Vec<(usize, Monomial)>,
}

/// Surjectivity of the Jacobian map onto degree `e`. For `e` above the
/// socle degree `N(d-2)` this decides smoothness; below it the answer is
/// always "not onto".
pub fn macaulay_at_degree(f: &HomogPoly, e: u32, opts: &SmoothnessOptions) -> Smoothness {
    let n = f.num_vars();
    let d = f.degree();
    assert!(d >= 2 && e + 1 >= d && !f.is_zero(), "needs a nonzero form of degree >= 2");
    let support: Vec<Monomial> = f.support().cloned().collect();
    let lattice = CharacterLattice::of_support(&support).expect("nonempty support");
    let partials: Vec<HomogPoly> = (0..n).map(|i| f.partial(i)).collect();

    let mut blocks: BTreeMap<Vec<i64>, Block> = BTreeMap::new();
    let rows = monomials(n, e);
    let total_rows = rows.len() as u64;
    for m in rows {
        blocks.entry(lattice.key(&m)).or_insert_with(|| Block { rows: Vec::new(), cols: Vec::new() }).rows.push(m);
    }
    let mut total_cols = 0u64;
    let shifts = monomials(n, e - (d - 1));
    for (i, g) in partials.iter().enumerate() {
        let Some(lead) = g.support().next() else { continue };
        for m in &shifts {
            let key = lattice.key(&add_exps(m, lead));
            if let Some(b) = blocks.get_mut(&key) {
                b.cols.push((i, m.clone()));
                total_cols += 1;
            }
        }
    }
    let largest = blocks.values().map(|b| b.rows.len() as u64 * b.cols.len() as u64).max().unwrap_or(0);
    let stats = MacaulayStats {
        degree: e,
        rows: total_rows,
        columns: total_cols,
        blocks: blocks.len() as u64,
        largest_block_entries: largest,
    };

    let mut order: Vec<&Block> = blocks.values().collect();
    order.sort_by_key(|b| b.rows.len() * b.cols.len());
    let mut over_cap = false;
    for b in order {
        if b.cols.len() < b.rows.len() {
            return Smoothness::Singular { method: Method::MacaulayRank, witness: None };
        }
        if b.rows.len() as u64 * b.cols.len() as u64 > opts.max_block_entries {
            over_cap = true;
            continue;
        }
        if !block_is_onto(b, &partials) {
            return Smoothness::Singular { method: Method::MacaulayRank, witness: None };
        }
    }
    if over_cap {
        let reason =
            format!("largest Macaulay block has {largest} entries, above the cap of {}", opts.max_block_entries);
        return Smoothness::Inconclusive { method: Method::MacaulayRank, reason, stats: Some(stats) };
    }
    Smoothness::Smooth { method: Method::MacaulayRank, stats: Some(stats) }
}

type SparseCol = Vec<(usize, CycloNum)>;

/// Exact column-echelon rank test: does the block reach full row rank?
fn block_is_onto(b: &Block, partials: &[HomogPoly]) -> bool {
    let index: HashMap<&Monomial, usize> = b.rows.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut pivots: HashMap<usize, SparseCol> = HashMap::new();
    for (i, shift) in &b.cols {
        let mut col: SparseCol = partials[*i].terms().map(|(m, c)| (index[&add_exps(shift, m)], c.clone())).collect();
        col.sort_by_key(|(r, _)| *r);
        while let Some((r, c)) = col.first().cloned() {
            match pivots.get(&r) {
                Some(p) => col = axpy(&col, &c, p),
                None => {
                    let inv = c.inv().expect("nonzero pivot");
                    let normalized = col.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
                    pivots.insert(r, normalized);
                    break;
                }
            }
        }
        if pivots.len() == b.rows.len() {
            return true;
        }
    }
    pivots.len() == b.rows.len()
}

/// `col - c·p` for sorted sparse columns.
fn axpy(col: &SparseCol, c: &CycloNum, p: &SparseCol) -> SparseCol {
    let mut out = Vec::with_capacity(col.len() + p.len());
    let (mut a, mut b) = (col.iter().peekable(), p.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some((ra, xa)), Some((rb, xb))) => {
                if ra < rb {
                    out.push((*ra, xa.clone()));
                    a.next();
                } else if rb < ra {
                    out.push((*rb, -(c * xb)));
                    b.next();
                } else {
                    let v = xa - &(c * xb);
                    if !v.is_zero() {
                        out.push((*ra, v));
                    }
                    a.next();
                    b.next();
                }
            }
            (Some((ra, xa)), None) => {
                out.push((*ra, xa.clone()));
                a.next();
            }
            (None, Some((rb, xb))) => {
                out.push((*rb, -(c * xb)));
                b.next();
            }
            (None, None) => return out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> HomogPoly {
        HomogPoly::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(4, 7).len(), 120);
        assert_eq!(monomials(3, 0).len(), 1);
    }

    #[test]
    fn fermat_cubic_surface() {
        let s = smoothness(&p("X0^3 + X1^3 + X2^3 + X3^3", 4), &SmoothnessOptions::default());
        match s {
            Smoothness::Smooth { method: Method::MacaulayRank, stats: Some(st) } => {
                assert_eq!(st.degree, 5);
                assert_eq!(st.rows, 56);
            }
            other => panic!("{other:?}"),
        }
        let f = p("X0^3 + X1^3 + X2^3 + X3^3", 4);
        let Smoothness::Smooth { stats: Some(st), .. } = macaulay_at_degree(&f, 7, &SmoothnessOptions::default())
        else {
            panic!()
        };
        assert_eq!((st.degree, st.rows), (7, 120));
        // Degree 4 is the socle degree: X0X1X2X3 is not in the Jacobian ideal.
        assert!(macaulay_at_degree(&f, 4, &SmoothnessOptions::default()).is_singular());
    }

    #[test]
    fn cone_is_singular_at_vertex() {
        let s = smoothness(&p("X0^3 + X1^3 + X2^3", 4), &SmoothnessOptions::default());
        let Smoothness::Singular { method: Method::VertexScreen, witness: Some(w) } = s else { panic!("{s:?}") };
        let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        assert_eq!(w, ["0", "0", "0", "1"]);
    }

    #[test]
    fn hesse_pencil() {
        // x^3 + y^3 + z^3 + t·xyz is singular iff t^3 = -27; every vertex passes the screen.
        let g = p("X0^3 + X1^3 + X2^3 - 3*X0*X1*X2", 3);
        assert!(vertex_screen(&g).is_none());
        assert!(smoothness(&g, &SmoothnessOptions::default()).is_singular());
        let h = p("X0^3 + X1^3 + X2^3 + X0*X1*X2", 3);
        assert!(smoothness(&h, &SmoothnessOptions::default()).is_smooth());
    }

    #[test]
    fn klein_quartic_is_smooth() {
        let f = p("X0^3*X1 + X1^3*X2 + X2^3*X0", 3);
        assert!(smoothness(&f, &SmoothnessOptions::default()).is_smooth());
    }

    #[test]
    fn cap_gives_inconclusive() {
        let f = p("X0^3 + X1^3 + X2^3 + X3^3 + X0*X1*X2 + X1*X2*X3 + X0*X1*X3 + 2*X0*X2*X3", 4);
        let s = smoothness(&f, &SmoothnessOptions { max_block_entries: 10 });
        assert!(matches!(s, Smoothness::Inconclusive { .. }), "{s:?}");
    }
}
