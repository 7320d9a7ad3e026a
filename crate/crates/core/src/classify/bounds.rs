//! Published lists of integers that the order of an automorphism must divide.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::ClassifyError;

fn dedup_in_order(v: Vec<u64>) -> Vec<u64> {
    let mut seen = BTreeSet::new();
    v.into_iter().filter(|x| seen.insert(*x)).collect()
}

/// Plane curves of degree `d ≥ 4`: `(d-1)d`, `(d-1)^2`, `(d-2)d`, `d^2-3d+3`.
pub fn badr_bars_divisors(d: u64) -> Result<Vec<u64>, ClassifyError> {
    if d < 4 {
        return Err(ClassifyError::UnsupportedRange { n: 1, d });
    }
    Ok(dedup_in_order(vec![(d - 1) * d, (d - 1) * (d - 1), (d - 2) * d, d * d - 3 * d + 3]))
}

/// One generated integer together with the item and parameters that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZhengEntry {
    /// Item number 1 to 5.
    pub item: u8,
    /// The exponents `a_1 < … < a_t`, for items 3 to 5.
    pub a: Vec<u32>,
    /// The exponent `b`, for item 5.
    pub b: Option<u32>,
    pub value: u64,
}

fn overflow(n: u64, d: u64) -> ClassifyError {
    ClassifyError::UnsupportedRange { n, d }
}

/// `|1 - (1-d)^a|`.
fn one_minus_power(d: u64, a: u32, n: u64) -> Result<u64, ClassifyError> {
    let base = (d - 1) as u128;
    let p = base.checked_pow(a).ok_or_else(|| overflow(n, d))?;
    // (1-d)^a = ±(d-1)^a with sign (-1)^a.
    let v = if a.is_multiple_of(2) { p - 1 } else { p + 1 };
    u64::try_from(v).map_err(|_| overflow(n, d))
}

fn subsets_with_sum_at_most(max_elem: u32, budget: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(start: u32, max_elem: u32, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        for a in start..=max_elem.min(budget) {
            cur.push(a);
            out.push(cur.clone());
            rec(a + 1, max_elem, budget - a, cur, out);
            cur.pop();
        }
    }
    rec(1, max_elem, budget, &mut Vec::new(), &mut out);
    out
}

/// Every integer produced by the five items for automorphisms of smooth
/// hypersurfaces of degree `d` in `P^{n+1}`, with its provenance.
pub fn zheng_entries(n: u64, d: u64) -> Result<Vec<ZhengEntry>, ClassifyError> {
    if n < 1 || d < 3 || n > 64 {
        return Err(ClassifyError::UnsupportedRange { n, d });
    }
    let top = (n + 2) as u32;
    let mut out = Vec::new();
    out.push(ZhengEntry { item: 1, a: vec![], b: None, value: one_minus_power(d, top, n)? / d });
    let e2 = ((d - 1) as u128).checked_pow(top - 1).ok_or_else(|| overflow(n, d))?;
    out.push(ZhengEntry { item: 2, a: vec![], b: None, value: u64::try_from(e2).map_err(|_| overflow(n, d))? });
    for a in 1..top {
        out.push(ZhengEntry { item: 3, a: vec![a], b: None, value: one_minus_power(d, a, n)? });
    }
    let lcm_of = |a: &[u32], extra: Option<u64>| -> Result<u64, ClassifyError> {
        let mut l = extra.unwrap_or(1) as u128;
        for &x in a {
            l = l.lcm(&(one_minus_power(d, x, n)? as u128));
        }
        u64::try_from(l).map_err(|_| overflow(n, d))
    };
    for s in subsets_with_sum_at_most(top, top) {
        if s.len() >= 2 {
            out.push(ZhengEntry { item: 4, value: lcm_of(&s, None)?, a: s.clone(), b: None });
        }
    }
    for s in subsets_with_sum_at_most(top, top) {
        let used: u32 = s.iter().sum();
        for b in 2..=top.saturating_sub(used) {
            let pb = ((d - 1) as u128).checked_pow(b - 1).ok_or_else(|| overflow(n, d))?;
            let pb = u64::try_from(pb).map_err(|_| overflow(n, d))?;
            out.push(ZhengEntry { item: 5, value: lcm_of(&s, Some(pb))?, a: s.clone(), b: Some(b) });
        }
    }
    Ok(out)
}

pub fn zheng_integers(n: u64, d: u64) -> Result<BTreeSet<u64>, ClassifyError> {
    Ok(zheng_entries(n, d)?.into_iter().map(|e| e.value).collect())
}

/// Shared range check for the codimension-based bounds and the classifier.
pub fn check_range(n: u64, d: u64) -> Result<(), ClassifyError> {
    if n < 2 || d < 3 || (n, d) == (2, 4) {
        return Err(ClassifyError::UnsupportedRange { n, d });
    }
    Ok(())
}

/// Integers one of which the order must divide, given the codimension (1 or 2)
/// of the fixed locus.
pub fn theorem11_divisors(n: u64, d: u64, codim: u8) -> Result<Vec<u64>, ClassifyError> {
    check_range(n, d)?;
    let q = d * d - 3 * d + 3;
    let v = match (codim, n) {
        (1, _) => vec![d, d - 1, d - 2],
        (2, 4..) => vec![(d - 1) * d, (d - 1) * (d - 1), (d - 2) * d],
        (2, 3) => vec![(d - 1) * d, (d - 1) * (d - 1), (d - 2) * d, q, (d - 2) * (d - 1)],
        (2, 2) => vec![
            (d - 1) * (d - 1) * d,
            (d - 1) * (d - 1) * (d - 1),
            q * d,
            q * (d - 1),
            (d - 2) * (d - 1) * d,
            (d - 2) * (d - 1) * (d - 1),
        ],
        _ => return Err(ClassifyError::UnsupportedRange { n, d }),
    };
    Ok(dedup_in_order(v))
}

/// The codimension-one side condition: an order `≥ 3` dividing `d - 2` forces `n = 2`.
pub fn codim_one_side_condition(n: u64, d: u64, order: u64) -> bool {
    !(order >= 3 && (d - 2).is_multiple_of(order)) || n == 2
}

pub fn divides_some(order: u64, list: &[u64]) -> bool {
    list.iter().any(|&x| x != 0 && x % order == 0)
}
