//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! An element is stored at a *level* `N` as its coordinates in the power basis
//! `1, ζ_N, …, ζ_N^{φ(N)-1}`. Operands at different levels are embedded into
//! `Q(ζ_lcm)` first, so any two values can be combined.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

mod parse;

pub(crate) use parse::Cursor;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not a root of unity")]
    NotARoot,
    #[error("root of unity level must be positive")]
    ZeroLevel,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

/// An element of `Q(ζ_N)` in canonical power-basis form.
#[derive(Clone)]
pub struct CycloNum {
    level: u64,
    coeffs: Vec<BigRational>,
}

/// Coefficients of the N-th cyclotomic polynomial, lowest degree first.
fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_k with k a proper divisor of n.
    let mut p: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for k in 1..n {
        if n.is_multiple_of(k) {
            let q = cyclotomic_poly(k);
            p = exact_div_monic(&p, &q);
        }
    }
    let p: Vec<i64> = p.iter().map(|c| c.to_i64().expect("cyclotomic coefficient exceeds i64")).collect();
    let p = Arc::new(p);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[BigInt], den: &[i64]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Reduces a power-series coefficient vector modulo `x^N - 1` and then `Φ_N`.
fn reduce(level: u64, mut v: Vec<BigRational>) -> Vec<BigRational> {
    let n = level as usize;
    if v.len() > n {
        let extra = v.split_off(n);
        for (i, c) in extra.into_iter().enumerate() {
            if !c.is_zero() {
                v[i % n] += c;
            }
        }
    }
    let phi = cyclotomic_poly(level);
    let deg = phi.len() - 1;
    for k in (deg..v.len()).rev() {
        if v[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[k], BigRational::zero());
        for (j, &pj) in phi[..deg].iter().enumerate() {
            match pj {
                0 => {}
                1 => v[k - deg + j] -= &c,
                -1 => v[k - deg + j] += &c,
                _ => v[k - deg + j] -= &c * BigRational::from_integer(BigInt::from(pj)),
            }
        }
    }
    v.resize(deg, BigRational::zero());
    v
}

impl CycloNum {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycloNum { level: 1, coeffs: vec![q] }
    }

    /// `ζ_N^k` with `ζ_N = exp(2πi/N)`.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self, CycloError> {
        if n == 0 {
            return Err(CycloError::ZeroLevel);
        }
        let k = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = BigRational::one();
        Ok(CycloNum { level: n, coeffs: reduce(n, v) })
    }

    /// Builds `Σ c_k ζ_N^k` from arbitrary-length power coefficients.
    pub fn from_powers(n: u64, coeffs: Vec<BigRational>) -> Result<Self, CycloError> {
        if n == 0 {
            return Err(CycloError::ZeroLevel);
        }
        Ok(CycloNum { level: n, coeffs: reduce(n, coeffs) })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Power-basis coordinates at the current level (length `φ(level)`).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the value at a level that is a multiple of the current one.
    pub fn embed(&self, level: u64) -> Self {
        assert!(level.is_multiple_of(self.level), "level {level} is not a multiple of {}", self.level);
        if level == self.level {
            return self.clone();
        }
        let step = (level / self.level) as usize;
        let mut v = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = c.clone();
        }
        CycloNum { level, coeffs: reduce(level, v) }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let l = self.level.lcm(&other.level);
        (self.embed(l), other.embed(l))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if self.level != other.level {
            let (a, b) = self.common(other);
            return a.add_impl(&b, negate);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| if negate { a - b } else { a + b }).collect();
        CycloNum { level: self.level, coeffs }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.level != other.level {
            if other.coeffs.len() == 1 {
                return self.scale(&other.coeffs[0]);
            }
            if self.coeffs.len() == 1 {
                return other.scale(&self.coeffs[0]);
            }
            let (a, b) = self.common(other);
            return a.mul_impl(&b);
        }
        if self.coeffs.len() == 1 {
            return CycloNum { level: self.level, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        CycloNum { level: self.level, coeffs: reduce(self.level, v) }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNum { level: self.level, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if self.coeffs.len() == 1 {
            return Ok(CycloNum { level: self.level, coeffs: vec![self.coeffs[0].recip()] });
        }
        let phi: Vec<BigRational> =
            cyclotomic_poly(self.level).iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        let s = qpoly::inverse_mod(&self.coeffs, &phi);
        Ok(CycloNum { level: self.level, coeffs: reduce(self.level, s) })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, CycloError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycloNum::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Smallest `m ≥ 1` with `self^m = 1`.
    pub fn root_order(&self) -> Result<u64, CycloError> {
        // Every root of unity in Q(ζ_N) has order dividing lcm(N, 2).
        let m = self.level.lcm(&2);
        if !self.pow(m as i64)?.is_one() {
            return Err(CycloError::NotARoot);
        }
        let mut best = m;
        for k in divisors(m) {
            if k < best && self.pow(k as i64)?.is_one() {
                best = k;
            }
        }
        Ok(best)
    }

    /// Returns `(M, k)` with `self = ζ_M^k` when the value is a root of unity.
    /// `M` is the level itself when possible, otherwise `2·level`.
    pub fn as_root_of_unity(&self) -> Option<(u64, u64)> {
        if !self.coeffs.iter().all(|c| c.is_integer()) || self.is_zero() {
            return None;
        }
        let mut m = self.level;
        if !self.pow(m as i64).ok()?.is_one() {
            m = self.level.lcm(&2);
            if !self.pow(m as i64).ok()?.is_one() {
                return None;
            }
        }
        let here = self.embed(m);
        (0..m).find(|&k| CycloNum::root_of_unity(m, k as i64).unwrap().coeffs == here.coeffs).map(|k| (m, k))
    }

    /// Complex approximation, for diagnostics only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let a = 2.0 * std::f64::consts::PI * k as f64 / self.level as f64;
            re += c * a.cos();
            im += c * a.sin();
        }
        (re, im)
    }
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            if k * k != n {
                out.push(n / k);
            }
        }
        k += 1;
    }
    out.sort_unstable();
    out
}

/// Univariate helpers over Q used for inversion modulo `Φ_N`.
mod qpoly {
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn trim(p: &mut Vec<BigRational>) {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    fn is_zero(p: &[BigRational]) -> bool {
        p.iter().all(Zero::is_zero)
    }

    fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        let lead = b[db].clone();
        if r.len() <= db {
            return (vec![BigRational::zero()], r);
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
            q[k] = c;
        }
        r.truncate(db.max(1));
        trim(&mut r);
        (q, r)
    }

    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        v
    }

    fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let mut v = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            v[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            v[i] -= y;
        }
        trim(&mut v);
        v
    }

    /// `s` with `s·a ≡ 1 (mod m)`; `a` must be a unit modulo `m`.
    pub(super) fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        trim(&mut r0);
        trim(&mut r1);
        let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
        while !is_zero(&r1) {
            let (q, r) = divmod(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        debug_assert_eq!(r0.len(), 1, "not a unit");
        let c = r0[0].recip();
        s0.iter().map(|x| x * &c).collect()
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({self} @ level {})", self.level)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl CycloNum {
    /// True when `Display` prints more than one additive term.
    pub(crate) fn is_compound(&self) -> bool {
        self.as_rational().is_none()
            && self.as_root_of_unity().is_none()
            && self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }

    /// True when `Display` output starts with a minus sign.
    pub(crate) fn displays_negative(&self) -> bool {
        self.to_string().starts_with('-')
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return f.write_str(&fmt_rational(q));
        }
        if let Some((m, k)) = self.as_root_of_unity() {
            return match k {
                1 => write!(f, "z{m}"),
                _ => write!(f, "z{m}^{k}"),
            };
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let zeta = match k {
                0 => String::new(),
                1 => format!("z{}", self.level),
                _ => format!("z{}^{k}", self.level),
            };
            if k == 0 {
                f.write_str(&fmt_rational(&a))?;
            } else if a.is_one() {
                f.write_str(&zeta)?;
            } else {
                write!(f, "{}*{zeta}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl FromStr for CycloNum {
    type Err = CycloError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let v = cur.expr()?;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input"));
        }
        Ok(v)
    }
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                $body(self, rhs)
            }
        }
        impl std::ops::$tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                $body(&self, &rhs)
            }
        }
        impl std::ops::$tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                $body(&self, rhs)
            }
        }
    };
}

binop!(Add, add, |a: &CycloNum, b: &CycloNum| a.add_impl(b, false));
binop!(Sub, sub, |a: &CycloNum, b: &CycloNum| a.add_impl(b, true));
binop!(Mul, mul, |a: &CycloNum, b: &CycloNum| a.mul_impl(b));

impl std::ops::Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl std::ops::AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        if self.level == rhs.level {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = self.add_impl(rhs, false);
        }
    }
}

impl std::ops::SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        if self.level == rhs.level {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = self.add_impl(rhs, true);
        }
    }
}

impl From<i64> for CycloNum {
    fn from(n: i64) -> Self {
        CycloNum::from_int(n)
    }
}
