//! Sparse homogeneous polynomials with cyclotomic coefficients.
//!
//! Text form: terms joined by `+`/`-`, each term a `*`-separated product of
//! scalar factors (see [`CycloNum`]) and variable powers `X{i}^{e}`, e.g.
//! `X0^3 + z3*X1^3 - 3/2*X0*X1*X2`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclo::{Cursor, CycloError, CycloNum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("not homogeneous: {first} has degree {first_degree} but {second} has degree {second_degree}")]
    NotHomogeneous { first: Monomial, first_degree: u32, second: Monomial, second_degree: u32 },
    #[error("variable X{index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },
    #[error("expected {expected} scalars, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("eigenvalue {index} is zero")]
    ZeroEigenvalue { index: usize },
    #[error("not semi-invariant: {first} and {second} scale differently")]
    NotSemiInvariant { first: Monomial, second: Monomial },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("empty input")]
    Empty,
}

impl From<CycloError> for PolyError {
    fn from(e: CycloError) -> Self {
        match e {
            CycloError::Syntax { offset, message } => PolyError::Syntax { offset, message },
            other => PolyError::Syntax { offset: 0, message: other.to_string() },
        }
    }
}

/// Exponent vector of a monomial. Ordered by total degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    /// `X_i^a · X_j^b` in `num_vars` variables.
    pub fn pure(num_vars: usize, parts: &[(usize, u32)]) -> Self {
        let mut e = vec![0; num_vars];
        for &(i, a) in parts {
            e[i] += a;
        }
        Monomial(e)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "X{i}")?;
            } else {
                write!(f, "X{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A homogeneous polynomial in `num_vars` variables.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogPoly {
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, CycloNum>,
}

/// Per-coordinate support data: whether `X_i^d` occurs and which `X_i^{d-1}X_j` occur.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceProfile {
    pub degree: u32,
    pub vertices: Vec<VertexIncidence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexIncidence {
    /// `X_i^d` has a nonzero coefficient, i.e. `P_i ∉ X`.
    pub pure_power: bool,
    /// All `j ≠ i` such that `X_i^{d-1} X_j` has a nonzero coefficient.
    pub partners: Vec<usize>,
}

impl HomogPoly {
    pub fn zero(num_vars: usize, degree: u32) -> Self {
        HomogPoly { num_vars, degree, terms: BTreeMap::new() }
    }

    /// Builds a polynomial from terms; like monomials are merged and zeros dropped.
    pub fn from_terms(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, CycloNum)>,
    ) -> Result<Self, PolyError> {
        let mut out: BTreeMap<Monomial, CycloNum> = BTreeMap::new();
        let mut degree: Option<(u32, Monomial)> = None;
        for (m, c) in terms {
            if m.num_vars() != num_vars {
                return Err(PolyError::ArityMismatch { expected: num_vars, got: m.num_vars() });
            }
            match &degree {
                None => degree = Some((m.degree(), m.clone())),
                Some((d, first)) if *d != m.degree() => {
                    return Err(PolyError::NotHomogeneous {
                        first: first.clone(),
                        first_degree: *d,
                        second: m.clone(),
                        second_degree: m.degree(),
                    })
                }
                _ => {}
            }
            match out.get_mut(&m) {
                Some(acc) => *acc += &c,
                None => {
                    out.insert(m, c);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        let degree = degree.map_or(0, |(d, _)| d);
        Ok(HomogPoly { num_vars, degree, terms: out })
    }

    /// Parses the text form. With `num_vars = None` the arity is one more than
    /// the largest variable index that appears.
    pub fn parse(text: &str, num_vars: Option<usize>) -> Result<Self, PolyError> {
        let mut cur = Cursor::new(text);
        if cur.at_end() {
            return Err(PolyError::Empty);
        }
        let mut raw: Vec<(Vec<u32>, CycloNum)> = Vec::new();
        let mut first = true;
        loop {
            let neg = if cur.eat('-') {
                true
            } else {
                if !cur.eat('+') && !first {
                    break;
                }
                false
            };
            first = false;
            let (exps, mut c) = parse_term(&mut cur)?;
            if neg {
                c = -c;
            }
            raw.push((exps, c));
            if cur.at_end() {
                break;
            }
        }
        if !cur.at_end() {
            return Err(PolyError::Syntax { offset: cur.pos(), message: "expected '+', '-' or end of input".into() });
        }
        let max_index = raw.iter().map(|(e, _)| e.len()).max().unwrap_or(0);
        let n = match num_vars {
            Some(n) if max_index > n => {
                return Err(PolyError::VariableOutOfRange { index: max_index - 1, num_vars: n })
            }
            Some(n) => n,
            None => max_index,
        };
        HomogPoly::from_terms(
            n,
            raw.into_iter().map(|(mut e, c)| {
                e.resize(n, 0);
                (Monomial(e), c)
            }),
        )
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycloNum)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&CycloNum> {
        self.terms.get(m)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains_key(m)
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    /// `F(λ_0 X_0, …, λ_{n+1} X_{n+1})`.
    pub fn apply_diagonal(&self, lambdas: &[CycloNum]) -> Result<Self, PolyError> {
        self.check_scalars(lambdas)?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c * &character(m, lambdas)?)))
            .collect::<Result<BTreeMap<_, _>, CycloError>>()?;
        Ok(HomogPoly { num_vars: self.num_vars, degree: self.degree, terms })
    }

    /// The `t` with `F(λX) = t·F(X)`, or the first pair of monomials that
    /// scale differently.
    pub fn semi_invariance_multiplier(&self, lambdas: &[CycloNum]) -> Result<CycloNum, PolyError> {
        self.check_scalars(lambdas)?;
        let mut first: Option<(&Monomial, CycloNum)> = None;
        for m in self.terms.keys() {
            let chi = character(m, lambdas)?;
            match &first {
                None => first = Some((m, chi)),
                Some((m0, t)) => {
                    if *t != chi {
                        return Err(PolyError::NotSemiInvariant { first: (*m0).clone(), second: m.clone() });
                    }
                }
            }
        }
        Ok(first.map_or_else(CycloNum::one, |(_, t)| t))
    }

    fn check_scalars(&self, lambdas: &[CycloNum]) -> Result<(), PolyError> {
        if lambdas.len() != self.num_vars {
            return Err(PolyError::ArityMismatch { expected: self.num_vars, got: lambdas.len() });
        }
        if let Some(index) = lambdas.iter().position(CycloNum::is_zero) {
            return Err(PolyError::ZeroEigenvalue { index });
        }
        Ok(())
    }

    pub fn support_queries(&self) -> IncidenceProfile {
        let d = self.degree;
        let vertices = (0..self.num_vars)
            .map(|i| {
                let pure_power = d > 0 && self.contains(&Monomial::pure(self.num_vars, &[(i, d)]));
                let partners = if d == 0 {
                    Vec::new()
                } else {
                    (0..self.num_vars)
                        .filter(|&j| j != i && self.contains(&Monomial::pure(self.num_vars, &[(i, d - 1), (j, 1)])))
                        .collect()
                };
                VertexIncidence { pure_power, partners }
            })
            .collect();
        IncidenceProfile { degree: d, vertices }
    }

    /// Sets the listed variables to zero (same arity).
    pub fn restrict(&self, zero_vars: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| zero_vars.iter().all(|&i| m.0[i] == 0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        HomogPoly { num_vars: self.num_vars, degree: self.degree, terms }
    }

    /// Restriction to the coordinate subspace spanned by `keep`, as a
    /// polynomial in `keep.len()` variables (renumbered in the given order).
    pub fn restrict_to(&self, keep: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.support().all(|i| keep.contains(&i)))
            .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone()))
            .collect();
        HomogPoly { num_vars: keep.len(), degree: self.degree, terms }
    }

    /// `∂F/∂X_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            terms.insert(m2, c * &CycloNum::from_int(e as i64));
        }
        HomogPoly { num_vars: self.num_vars, degree: self.degree.saturating_sub(1), terms }
    }

    /// `X_i · F`.
    pub fn mul_var(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2.0[i] += 1;
                (m2, c.clone())
            })
            .collect();
        HomogPoly { num_vars: self.num_vars, degree: self.degree + 1, terms }
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        if c.is_zero() {
            return HomogPoly::zero(self.num_vars, self.degree);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        HomogPoly { num_vars: self.num_vars, degree: self.degree, terms }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.num_vars != other.num_vars {
            return Err(PolyError::ArityMismatch { expected: self.num_vars, got: other.num_vars });
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(PolyError::DegreeMismatch(self.degree, other.degree));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut out = HomogPoly::from_terms(
            self.num_vars,
            self.terms.iter().chain(other.terms.iter()).map(|(m, c)| (m.clone(), c.clone())),
        )?;
        out.degree = degree;
        Ok(out)
    }

    /// Renames variables: new `X_k` is old `X_{perm[k]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.num_vars);
        let terms =
            self.terms.iter().map(|(m, c)| (Monomial(perm.iter().map(|&p| m.0[p]).collect()), c.clone())).collect();
        HomogPoly { num_vars: self.num_vars, degree: self.degree, terms }
    }
}

/// `Π λ_i^{e_i}` for the monomial.
pub fn character(m: &Monomial, lambdas: &[CycloNum]) -> Result<CycloNum, CycloError> {
    let mut acc = CycloNum::one();
    for (i, &e) in m.0.iter().enumerate() {
        if e > 0 {
            acc = &acc * &lambdas[i].pow(e as i64)?;
        }
    }
    Ok(acc)
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<(Vec<u32>, CycloNum), PolyError> {
    let mut exps: Vec<u32> = Vec::new();
    let mut coeff = CycloNum::one();
    loop {
        match cur.peek() {
            Some('X') | Some('x') => {
                if !cur.eat('X') {
                    cur.eat('x');
                }
                let at = cur.pos();
                let i = cur.small_uint()? as usize;
                if i > 4096 {
                    return Err(PolyError::Syntax { offset: at, message: "variable index too large".into() });
                }
                let e = if cur.eat('^') {
                    let at = cur.pos();
                    let e = cur.exponent()?;
                    u32::try_from(e)
                        .map_err(|_| PolyError::Syntax { offset: at, message: "negative exponent".into() })?
                } else {
                    1
                };
                if exps.len() <= i {
                    exps.resize(i + 1, 0);
                }
                exps[i] += e;
            }
            _ => coeff = coeff * cur.factor()?,
        }
        if !cur.eat('*') {
            return Ok((exps, coeff));
        }
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = !c.is_compound() && c.displays_negative();
            let a = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = m.degree() == 0;
            if a.is_one() && !is_const {
                write!(f, "{m}")?;
            } else if is_const {
                if a.is_compound() {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
            } else if a.is_compound() {
                write!(f, "({a})*{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogPoly[{} vars, deg {}]({self})", self.num_vars, self.degree)
    }
}

/// Serialized as `{"num_vars": .., "text": ..}`.
#[derive(Serialize, Deserialize)]
struct PolyRepr {
    num_vars: usize,
    degree: u32,
    text: String,
}

impl Serialize for HomogPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr { num_vars: self.num_vars, degree: self.degree, text: self.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomogPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        let mut p = HomogPoly::parse(&r.text, Some(r.num_vars)).map_err(serde::de::Error::custom)?;
        if p.is_zero() {
            p.degree = r.degree;
        }
        Ok(p)
    }
}
