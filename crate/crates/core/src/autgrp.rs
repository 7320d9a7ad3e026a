//! Diagonal automorphisms and the diagonal symmetry group of a monomial support.
//!
//! A diagonal automorphism `diag(ζ_N^{e_0}, …, ζ_N^{e_{n+1}})` is stored as
//! the level `N` and the exponents `e_i mod N`. The level is always the
//! smallest one that expresses all entries.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclo::{Cursor, CycloError, CycloNum};
use crate::poly::{HomogPoly, Monomial, PolyError};

pub mod snf;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutError {
    #[error("empty support")]
    EmptySupport,
    #[error("diagonal symmetry group is infinite (torus of dimension {dim})")]
    InfiniteGroup { dim: usize },
    #[error("group of order {order} exceeds enumeration cap {cap}")]
    EnumerationCapExceeded { order: u128, cap: u128 },
    #[error("integer overflow in Smith normal form")]
    Overflow,
    #[error("support monomials have different numbers of variables")]
    ArityMismatch,
    #[error("{0}")]
    Parse(String),
    #[error("level must be positive and at least one coordinate is required")]
    Invalid,
}

impl From<CycloError> for AutError {
    fn from(e: CycloError) -> Self {
        AutError::Parse(e.to_string())
    }
}

/// `diag(ζ_N^{e_0}, …)` acting on `X_i ↦ ζ_N^{e_i} X_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagAut {
    level: u64,
    exps: Vec<u64>,
}

/// Eigenspace decomposition of a diagonal automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenStructure {
    /// Number of distinct eigenvalues.
    pub r: usize,
    /// Eigenspace dimensions, largest first.
    pub partition: Vec<usize>,
    /// Eigenspaces ordered by their smallest coordinate.
    pub blocks: Vec<EigenBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenBlock {
    /// Exponent of the eigenvalue at the automorphism's level.
    pub exp: u64,
    pub coords: Vec<usize>,
}

/// Result of moving an automorphism to block normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalized {
    /// The rescaled and permuted automorphism: non-unit blocks first, unit block last.
    pub aut: DiagAut,
    /// New coordinate `k` is old coordinate `perm[k]`.
    pub perm: Vec<usize>,
    /// Old coordinates of the eigenspace sent to eigenvalue 1.
    pub unit: Vec<usize>,
    /// Old coordinates of the remaining eigenspaces, in normalized order.
    pub blocks: Vec<Vec<usize>>,
}

impl DiagAut {
    pub fn new(level: u64, exps: Vec<u64>) -> Result<Self, AutError> {
        if level == 0 || exps.is_empty() {
            return Err(AutError::Invalid);
        }
        let mut g = level;
        for e in &exps {
            g = g.gcd(&(e % level));
        }
        let level2 = level / g;
        let exps = exps.iter().map(|e| (e % level) / g).collect();
        Ok(DiagAut { level: level2, exps })
    }

    pub fn from_signed(level: u64, exps: &[i64]) -> Result<Self, AutError> {
        if level == 0 {
            return Err(AutError::Invalid);
        }
        DiagAut::new(level, exps.iter().map(|e| e.rem_euclid(level as i64) as u64).collect())
    }

    pub fn identity(num_vars: usize) -> Self {
        DiagAut { level: 1, exps: vec![0; num_vars] }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn eigenvalues(&self) -> Vec<CycloNum> {
        self.exps.iter().map(|&e| CycloNum::root_of_unity(self.level, e as i64).expect("level > 0")).collect()
    }

    /// Exponent `Σ m_i e_i mod N` of the scalar by which the monomial is multiplied.
    pub fn character(&self, m: &Monomial) -> u64 {
        let n = self.level as u128;
        let s: u128 = m.exps().iter().zip(&self.exps).map(|(&a, &e)| a as u128 * e as u128).sum();
        (s % n) as u64
    }

    /// Exponent of `t` with `F(gX) = ζ_N^t F(X)` (0 for the zero polynomial).
    pub fn multiplier_exp(&self, f: &HomogPoly) -> Result<u64, PolyError> {
        let mut first: Option<(&Monomial, u64)> = None;
        for m in f.support() {
            let c = self.character(m);
            match first {
                None => first = Some((m, c)),
                Some((m0, c0)) if c0 != c => {
                    return Err(PolyError::NotSemiInvariant { first: m0.clone(), second: m.clone() })
                }
                _ => {}
            }
        }
        Ok(first.map_or(0, |(_, c)| c))
    }

    pub fn multiplier(&self, f: &HomogPoly) -> Result<CycloNum, PolyError> {
        let e = self.multiplier_exp(f)?;
        Ok(CycloNum::root_of_unity(self.level, e as i64).expect("level > 0"))
    }

    /// Order of the image in `PGL`.
    pub fn order_in_pgl(&self) -> u64 {
        let e0 = self.exps[0];
        let mut g = self.level;
        for &e in &self.exps {
            g = g.gcd(&((e + self.level - e0) % self.level));
        }
        self.level / g
    }

    /// Representative of the same `PGL` element with last exponent zero.
    pub fn pgl_canonical(&self) -> Self {
        let last = *self.exps.last().expect("nonempty");
        self.shifted(last)
    }

    /// Multiplies by the scalar `ζ_N^{-s}`.
    pub fn shifted(&self, s: u64) -> Self {
        let n = self.level;
        DiagAut::new(n, self.exps.iter().map(|&e| (e + n - s % n) % n).collect()).expect("valid")
    }

    pub fn same_in_pgl(&self, other: &Self) -> bool {
        self.pgl_canonical() == other.pgl_canonical()
    }

    pub fn pow(&self, k: u64) -> Self {
        let n = self.level as u128;
        DiagAut::new(self.level, self.exps.iter().map(|&e| ((e as u128 * k as u128) % n) as u64).collect())
            .expect("valid")
    }

    pub fn compose(&self, other: &Self) -> Self {
        let l = self.level.lcm(&other.level);
        let (a, b) = (l / self.level, l / other.level);
        let exps = self.exps.iter().zip(&other.exps).map(|(&x, &y)| (x * a + y * b) % l).collect();
        DiagAut::new(l, exps).expect("valid")
    }

    /// Conjugates by a coordinate permutation: new coordinate `k` is old `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        DiagAut::new(self.level, perm.iter().map(|&p| self.exps[p]).collect()).expect("valid")
    }

    pub fn is_scalar(&self) -> bool {
        self.exps.iter().all(|&e| e == self.exps[0])
    }

    pub fn eigen_structure(&self) -> EigenStructure {
        let mut blocks: Vec<EigenBlock> = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match blocks.iter_mut().find(|b| b.exp == e) {
                Some(b) => b.coords.push(i),
                None => blocks.push(EigenBlock { exp: e, coords: vec![i] }),
            }
        }
        let mut partition: Vec<usize> = blocks.iter().map(|b| b.coords.len()).collect();
        partition.sort_unstable_by(|a, b| b.cmp(a));
        EigenStructure { r: blocks.len(), partition, blocks }
    }

    /// Block normal form with the largest eigenspace sent to eigenvalue 1.
    /// Ties prefer an eigenspace that already has eigenvalue 1, then the one
    /// with the smallest coordinate.
    pub fn normalize(&self) -> Normalized {
        let es = self.eigen_structure();
        let best = (0..es.blocks.len())
            .max_by(|&a, &b| {
                let (ba, bb) = (&es.blocks[a], &es.blocks[b]);
                ba.coords
                    .len()
                    .cmp(&bb.coords.len())
                    .then((ba.exp == 0).cmp(&(bb.exp == 0)))
                    .then(bb.coords[0].cmp(&ba.coords[0]))
            })
            .expect("at least one block");
        self.normalize_with_unit(&es.blocks[best].coords)
    }

    /// Block normal form with the eigenspace containing `unit` sent to
    /// eigenvalue 1. Other eigenspaces are ordered by size (largest first), then
    /// by smallest coordinate.
    pub fn normalize_with_unit(&self, unit: &[usize]) -> Normalized {
        let es = self.eigen_structure();
        let ui = es.blocks.iter().position(|b| b.coords.contains(&unit[0])).expect("coordinate in range");
        let unit_block = es.blocks[ui].clone();
        let mut rest: Vec<Vec<usize>> =
            es.blocks.iter().enumerate().filter(|&(i, _)| i != ui).map(|(_, b)| b.coords.clone()).collect();
        rest.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        let perm: Vec<usize> = rest.iter().flatten().chain(unit_block.coords.iter()).copied().collect();
        let aut = self.shifted(unit_block.exp).permute(&perm);
        Normalized { aut, perm, unit: unit_block.coords, blocks: rest }
    }
}

impl fmt::Display for DiagAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("diag(")?;
        for (i, &e) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => write!(f, "z{}", self.level)?,
                _ => write!(f, "z{}^{e}", self.level)?,
            }
        }
        f.write_str(")")
    }
}

impl FromStr for DiagAut {
    type Err = AutError;

    /// Accepts `diag(e_0, …)` or a bare comma-separated list; each entry is any
    /// scalar expression that evaluates to a root of unity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = match t.strip_prefix("diag") {
            Some(rest) => rest
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| AutError::Parse("expected diag(...)".into()))?,
            None => t,
        };
        let mut roots = Vec::new();
        for part in inner.split(',') {
            let mut cur = Cursor::new(part);
            let x = cur.expr()?;
            if !cur.at_end() {
                return Err(AutError::Parse(format!("unexpected input in entry '{}'", part.trim())));
            }
            let (m, k) = x
                .as_root_of_unity()
                .ok_or_else(|| AutError::Parse(format!("'{}' is not a root of unity", part.trim())))?;
            roots.push((m, k));
        }
        let level = roots.iter().fold(1u64, |l, &(m, _)| l.lcm(&m));
        DiagAut::new(level, roots.iter().map(|&(m, k)| k * (level / m)).collect())
    }
}

impl Serialize for DiagAut {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DiagAut {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The exponent lattice of a support: monomials `m`, `m'` of equal degree are
/// scaled identically by every diagonal symmetry iff they share a key.
#[derive(Debug, Clone)]
pub struct CharacterLattice {
    num_vars: usize,
    /// Nonzero Smith invariants, including ones.
    diag: Vec<i128>,
    v: Vec<Vec<i128>>,
}

impl CharacterLattice {
    pub fn of_support(support: &[Monomial]) -> Result<Self, AutError> {
        let first = support.first().ok_or(AutError::EmptySupport)?;
        let n = first.num_vars();
        if support.iter().any(|m| m.num_vars() != n) {
            return Err(AutError::ArityMismatch);
        }
        let rows: Vec<Vec<i128>> = support[1..]
            .iter()
            .map(|m| m.exps().iter().zip(first.exps()).map(|(&a, &b)| a as i128 - b as i128).collect())
            .collect();
        let s = snf::smith(&rows, n)?;
        Ok(CharacterLattice { num_vars: n, diag: s.diag, v: s.v })
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    pub fn key(&self, m: &Monomial) -> Vec<i64> {
        (0..self.num_vars)
            .filter_map(|i| {
                let y: i128 = m.exps().iter().zip(&self.v).map(|(&a, row)| a as i128 * row[i]).sum();
                match self.diag.get(i) {
                    Some(1) => None,
                    Some(&s) => Some(y.rem_euclid(s) as i64),
                    None => Some(y as i64),
                }
            })
            .collect()
    }
}

/// The group of diagonal elements of `PGL` preserving every monomial of a
/// support up to a common scalar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymGroup {
    pub num_vars: usize,
    /// Invariant factors `d_1 | d_2 | …`, all greater than 1.
    pub invariant_factors: Vec<u64>,
    /// One generator of order `d_i` per invariant factor.
    pub generators: Vec<DiagAut>,
}

pub fn symmetry_group(support: &[Monomial]) -> Result<SymGroup, AutError> {
    let lat = CharacterLattice::of_support(support)?;
    let n = lat.num_vars;
    if lat.rank() + 1 < n {
        return Err(AutError::InfiniteGroup { dim: n - 1 - lat.rank() });
    }
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    for (i, &s) in lat.diag.iter().enumerate() {
        if s == 1 {
            continue;
        }
        let exps = lat.v.iter().map(|row| row[i].rem_euclid(s) as u64).collect();
        invariant_factors.push(s as u64);
        generators.push(DiagAut::new(s as u64, exps)?.pgl_canonical());
    }
    Ok(SymGroup { num_vars: n, invariant_factors, generators })
}

impl SymGroup {
    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// Element number `index` in mixed-radix order over the generators,
    /// with last exponent zero.
    pub fn element(&self, index: u128) -> DiagAut {
        let l = self.exponent();
        let mut exps = vec![0u64; self.num_vars];
        let mut rest = index;
        for (g, &d) in self.generators.iter().zip(&self.invariant_factors) {
            let c = (rest % d as u128) as u64;
            rest /= d as u128;
            let scale = l / g.level();
            for (e, &ge) in exps.iter_mut().zip(g.exps()) {
                *e = ((*e as u128 + c as u128 * ge as u128 * scale as u128) % l as u128) as u64;
            }
        }
        DiagAut::new(l, exps).expect("valid").pgl_canonical()
    }

    /// All elements, identity first, unless the order exceeds `cap`.
    pub fn elements(&self, cap: u128) -> Result<impl Iterator<Item = DiagAut> + '_, AutError> {
        let order = self.order();
        if order > cap {
            return Err(AutError::EnumerationCapExceeded { order, cap });
        }
        Ok((0..order).map(move |i| self.element(i)))
    }

    pub fn structure_string(&self) -> String {
        if self.invariant_factors.is_empty() {
            return "1".to_string();
        }
        self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" × ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn support(s: &str) -> Vec<Monomial> {
        HomogPoly::parse(s, None).unwrap().support().cloned().collect()
    }

    #[test]
    fn orders() {
        assert_eq!(DiagAut::new(6, vec![2, 4, 0]).unwrap().order_in_pgl(), 3);
        assert_eq!(DiagAut::new(12, vec![4, 4, 1, 0, 0]).unwrap().order_in_pgl(), 12);
        assert_eq!(DiagAut::new(5, vec![3, 3, 3]).unwrap().order_in_pgl(), 1);
    }

    #[test]
    fn level_is_minimal() {
        let g = DiagAut::new(12, vec![4, 8, 0]).unwrap();
        assert_eq!((g.level(), g.exps()), (3, &[1u64, 2, 0][..]));
    }

    #[test]
    fn text_round_trip() {
        let g: DiagAut = "diag(z12^4, z12^4, z12, 1, 1)".parse().unwrap();
        assert_eq!(g, DiagAut::new(12, vec![4, 4, 1, 0, 0]).unwrap());
        assert_eq!(g.to_string(), "diag(z12^4, z12^4, z12, 1, 1)");
        let h: DiagAut = "diag(-1, z3, 1)".parse().unwrap();
        assert_eq!(h, DiagAut::new(6, vec![3, 2, 0]).unwrap());
        assert!("diag(2, 1)".parse::<DiagAut>().is_err());
    }

    #[test]
    fn eigen_structure_example() {
        let g = DiagAut::new(12, vec![4, 4, 1, 0, 0]).unwrap();
        let es = g.eigen_structure();
        assert_eq!(es.r, 3);
        assert_eq!(es.partition, vec![2, 2, 1]);
        let coords: Vec<_> = es.blocks.iter().map(|b| b.coords.clone()).collect();
        assert_eq!(coords, vec![vec![0, 1], vec![2], vec![3, 4]]);
    }

    #[test]
    fn normalize_moves_unit_block_last() {
        let g = DiagAut::new(3, vec![0, 1, 0, 0]).unwrap();
        let nf = g.normalize();
        assert_eq!(nf.aut, DiagAut::new(3, vec![1, 0, 0, 0]).unwrap());
        assert_eq!(nf.perm, vec![1, 0, 2, 3]);
        let g = DiagAut::new(12, vec![4, 4, 1, 0, 0]).unwrap();
        let nf = g.normalize();
        assert_eq!(nf.aut, g);
        assert_eq!(nf.unit, vec![3, 4]);
    }

    #[test]
    fn fermat_cubic_curve_group() {
        let g = symmetry_group(&support("X0^3 + X1^3 + X2^3")).unwrap();
        assert_eq!(g.invariant_factors, vec![3, 3]);
        assert_eq!(g.structure_string(), "Z/3 × Z/3");
    }

    #[test]
    fn klein_quartic_group_is_cyclic_of_order_seven() {
        let g = symmetry_group(&support("X0^3*X1 + X1^3*X2 + X2^3*X0")).unwrap();
        assert_eq!(g.invariant_factors, vec![7]);
    }

    #[test]
    fn chain_group() {
        let sup = support("X0^3*X1 + X1^3*X2 + X2^4");
        let g = symmetry_group(&sup).unwrap();
        assert_eq!(g.invariant_factors, vec![9]);
        let want = DiagAut::new(9, vec![1, 6, 0]).unwrap();
        assert!(g.elements(100).unwrap().any(|h| h == want));
        assert_eq!(g.generators[0].order_in_pgl(), 9);
    }

    #[test]
    fn errors() {
        assert_eq!(symmetry_group(&[]), Err(AutError::EmptySupport));
        assert!(matches!(symmetry_group(&support("X0^3 + X1^3 + 0*X2^3")), Err(AutError::InfiniteGroup { dim: 1 })));
        let g = symmetry_group(&support("X0^5 + X1^5 + X2^5 + X3^5")).unwrap();
        assert!(matches!(g.elements(100), Err(AutError::EnumerationCapExceeded { order: 125, .. })));
    }

    #[test]
    fn elements_are_distinct_and_semi_invariant() {
        let f = HomogPoly::parse("X0^4 + X1^4 + X2^4 + X0*X1*X2^2", None).unwrap();
        let sup: Vec<_> = f.support().cloned().collect();
        let g = symmetry_group(&sup).unwrap();
        let els: Vec<_> = g.elements(1000).unwrap().collect();
        let mut uniq = els.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), els.len());
        for h in &els {
            h.multiplier_exp(&f).unwrap();
        }
    }
}
