//! Dense univariate polynomials over `Q(ζ)`, just enough to count distinct roots.

use crate::cyclo::CycloNum;

/// Coefficients lowest degree first, no trailing zeros (empty = 0).
pub(crate) type UPoly = Vec<CycloNum>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(CycloNum::is_zero) {
        p.pop();
    }
    p
}

fn rem(a: &[CycloNum], b: &[CycloNum]) -> UPoly {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let inv = b[db].inv().expect("nonzero leading coefficient");
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &inv;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &(&c * bj);
        }
        r.pop();
        r = trim(r);
    }
    r
}

pub(crate) fn gcd(a: &[CycloNum], b: &[CycloNum]) -> UPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = std::mem::replace(&mut y, r);
    }
    x
}

pub(crate) fn derivative(p: &[CycloNum]) -> UPoly {
    trim(p.iter().enumerate().skip(1).map(|(k, c)| c * &CycloNum::from_int(k as i64)).collect())
}

/// Number of distinct roots over the algebraic closure of a nonzero polynomial.
pub(crate) fn distinct_roots(p: &[CycloNum]) -> usize {
    let p = trim(p.to_vec());
    assert!(!p.is_empty(), "zero polynomial");
    let deg = p.len() - 1;
    if deg == 0 {
        return 0;
    }
    let g = gcd(&p, &derivative(&p));
    deg - (g.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> UPoly {
        v.iter().map(|&c| CycloNum::from_int(c)).collect()
    }

    #[test]
    fn counts() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        assert_eq!(distinct_roots(&ints(&[2, -3, 0, 1])), 2);
        assert_eq!(distinct_roots(&ints(&[1, 0, 0, 0, 0, 1])), 5);
        assert_eq!(distinct_roots(&ints(&[0, 0, 1])), 1);
        assert_eq!(distinct_roots(&ints(&[7])), 0);
    }
}
