#![allow(dead_code)]

use hyperdiag::{CycloNum, HomogPoly, Monomial};

/// Polynomials exercised by the structural property tests.
pub const FIXTURES: &[&str] = &[
    "X0^3 + X1^3 + X2^3",
    "X0^4 + X1^4 + X2^4 + X3^4",
    "X0^5 + X1^5 + X2^5 + X3^5",
    "X0^3*X1 + X1^3*X2 + X2^3*X0",
    "X0^3*X1 + X1^3*X2 + X2^4",
    "X0^4 + X1^4 + X2^4 + X0*X3^3 + X1*X4^3",
    "X0^5 + X1^5 + X2^5 + X0*X3^4 + X1*X4^4",
    "X0^4*X1 + X1^4*X2 + X2^4*X3 + X3^4*X0",
    "2*X0^3 - 3*X0*X1*X2 + X1^3 + 1/2*X2^3",
    "X0^2*X1 + z3*X1^2*X2 + (1 + z5^2)*X2^3",
    "X0^6 + X1^6 + X2^6 + X3^6 + X4^6 + X5^6",
    "X0*X1*X2*X3 + X0^4 - X3^4",
];

pub fn fixtures() -> Vec<HomogPoly> {
    FIXTURES.iter().map(|s| HomogPoly::parse(s, None).unwrap()).collect()
}

pub fn support(text: &str) -> Vec<Monomial> {
    HomogPoly::parse(text, None).unwrap().support().cloned().collect()
}

pub fn z(n: u64, k: i64) -> CycloNum {
    CycloNum::root_of_unity(n, k).unwrap()
}
