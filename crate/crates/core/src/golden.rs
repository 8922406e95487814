//! Exact arithmetic in the golden quadratic ring and field.
//!
//! Elements are stored on the basis `{1, tau}` with `tau = (1+sqrt5)/2`,
//! so `tau^2 = tau + 1` and the Galois conjugate is `tau' = 1 - tau`.
//! All comparisons reduce to the sign of `p + q*sqrt5` computed from
//! integer (or rational) arithmetic alone; no floating point is ever
//! consulted for a membership or ordering decision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

pub const TAU_F64: f64 = 1.618033988749894848;
pub const SQRT5_F64: f64 = 2.2360679774997896964;

/// Sign of `p + q*sqrt5` for i128 inputs. Falls back to big integers when
/// squaring would overflow.
fn sign_quad_i128(p: i128, q: i128) -> i8 {
    if p == 0 && q == 0 {
        return 0;
    }
    if p >= 0 && q >= 0 {
        return 1;
    }
    if p <= 0 && q <= 0 {
        return -1;
    }
    // Opposite signs: compare p^2 with 5 q^2 on the side that is positive.
    const LIM: i128 = 3_000_000_000_000_000_000; // squares stay inside i128
    if p.abs() <= LIM && q.abs() <= LIM {
        let p2 = p * p;
        let q2 = 5 * q * q;
        let cmp = p2.cmp(&q2);
        if p > 0 {
            // p > 0, q < 0: sign = sign(p^2 - 5q^2)
            match cmp {
                Ordering::Greater => 1,
                Ordering::Less => -1,
                Ordering::Equal => 0,
            }
        } else {
            match cmp {
                Ordering::Greater => -1,
                Ordering::Less => 1,
                Ordering::Equal => 0,
            }
        }
    } else {
        let bp = BigInt::from(p);
        let bq = BigInt::from(q);
        sign_quad_big(&bp, &bq)
    }
}

fn sign_quad_big(p: &BigInt, q: &BigInt) -> i8 {
    if p.is_zero() && q.is_zero() {
        return 0;
    }
    if !p.is_negative() && !q.is_negative() {
        return 1;
    }
    if !p.is_positive() && !q.is_positive() {
        return -1;
    }
    let p2 = p * p;
    let q2 = q * q * 5;
    let cmp = p2.cmp(&q2);
    if p.is_positive() {
        match cmp {
            Ordering::Greater => 1,
            Ordering::Less => -1,
            Ordering::Equal => 0,
        }
    } else {
        match cmp {
            Ordering::Greater => -1,
            Ordering::Less => 1,
            Ordering::Equal => 0,
        }
    }
}

/// Ring element `m + n*tau` with integer coefficients: a point of the
/// golden lattice `Z[tau]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GoldenInt {
    pub m: i64,
    pub n: i64,
}

impl GoldenInt {
    pub const fn new(m: i64, n: i64) -> Self {
        GoldenInt { m, n }
    }

    pub const fn zero() -> Self {
        GoldenInt { m: 0, n: 0 }
    }

    pub const fn one() -> Self {
        GoldenInt { m: 1, n: 0 }
    }

    pub const fn tau() -> Self {
        GoldenInt { m: 0, n: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0 && self.n == 0
    }

    /// Galois conjugation `m + n*tau -> m + n*tau' = (m+n) - n*tau`.
    /// This is the star map of the golden cut-and-project scheme: the
    /// physical value of the image is the internal coordinate of `self`.
    pub fn star(&self) -> GoldenInt {
        GoldenInt {
            m: self.m.checked_add(self.n).expect("star overflow"),
            n: self.n.checked_neg().expect("star overflow"),
        }
    }

    /// Real value `m + n*tau` as a float (display only; decisions use signs).
    pub fn to_f64(&self) -> f64 {
        self.m as f64 + self.n as f64 * TAU_F64
    }

    /// Value of the conjugate, i.e. the internal coordinate.
    pub fn star_f64(&self) -> f64 {
        self.star().to_f64()
    }

    /// Exact sign of the real value.
    pub fn sign(&self) -> i8 {
        // m + n*tau = (2m+n)/2 + (n/2) sqrt5
        sign_quad_i128(2 * self.m as i128 + self.n as i128, self.n as i128)
    }

    pub fn scale(&self, k: i64) -> GoldenInt {
        GoldenInt {
            m: self.m.checked_mul(k).expect("scale overflow"),
            n: self.n.checked_mul(k).expect("scale overflow"),
        }
    }

    pub fn to_rat(&self) -> GoldenRat {
        GoldenRat {
            a: Rat::from(BigInt::from(self.m)),
            b: Rat::from(BigInt::from(self.n)),
        }
    }
}

impl Add for GoldenInt {
    type Output = GoldenInt;
    fn add(self, rhs: GoldenInt) -> GoldenInt {
        GoldenInt {
            m: self.m.checked_add(rhs.m).expect("add overflow"),
            n: self.n.checked_add(rhs.n).expect("add overflow"),
        }
    }
}

impl Sub for GoldenInt {
    type Output = GoldenInt;
    fn sub(self, rhs: GoldenInt) -> GoldenInt {
        GoldenInt {
            m: self.m.checked_sub(rhs.m).expect("sub overflow"),
            n: self.n.checked_sub(rhs.n).expect("sub overflow"),
        }
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt {
            m: self.m.checked_neg().expect("neg overflow"),
            n: self.n.checked_neg().expect("neg overflow"),
        }
    }
}

impl Mul for GoldenInt {
    type Output = GoldenInt;
    fn mul(self, rhs: GoldenInt) -> GoldenInt {
        // (a + b tau)(c + d tau) = ac + bd + (ad + bc + bd) tau
        let a = self.m as i128;
        let b = self.n as i128;
        let c = rhs.m as i128;
        let d = rhs.n as i128;
        let m = a * c + b * d;
        let n = a * d + b * c + b * d;
        GoldenInt {
            m: i64::try_from(m).expect("mul overflow"),
            n: i64::try_from(n).expect("mul overflow"),
        }
    }
}

impl PartialOrd for GoldenInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (*self - *other).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.n) {
            (m, 0) => write!(f, "{m}"),
            (0, 1) => write!(f, "t"),
            (0, n) => write!(f, "{n}t"),
            (m, 1) => write!(f, "{m}+t"),
            (m, n) if n > 0 => write!(f, "{m}+{n}t"),
            (m, n) => write!(f, "{m}{n}t"),
        }
    }
}

/// Field element `a + b*tau` with rational coefficients: an element of
/// `Q(sqrt5)`. Window endpoints, radii and difference-window bounds live
/// here so that divisions stay exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GoldenRat {
    a: Rat,
    b: Rat,
}

impl GoldenRat {
    pub fn new(a: Rat, b: Rat) -> Self {
        GoldenRat { a, b }
    }

    pub fn from_int(v: i64) -> Self {
        GoldenInt::new(v, 0).to_rat()
    }

    pub fn from_rat(a: Rat) -> Self {
        GoldenRat { a, b: Rat::zero() }
    }

    pub fn tau() -> Self {
        GoldenInt::tau().to_rat()
    }

    pub fn zero() -> Self {
        GoldenRat {
            a: Rat::zero(),
            b: Rat::zero(),
        }
    }

    /// `sqrt5 = 2 tau - 1`, exactly.
    pub fn sqrt5() -> Self {
        GoldenRat {
            a: -Rat::one(),
            b: Rat::from(BigInt::from(2)),
        }
    }

    /// Coefficient of 1.
    pub fn coeff_a(&self) -> &Rat {
        &self.a
    }

    /// Coefficient of tau.
    pub fn coeff_b(&self) -> &Rat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn star(&self) -> GoldenRat {
        GoldenRat {
            a: &self.a + &self.b,
            b: -&self.b,
        }
    }

    pub fn sign(&self) -> i8 {
        // a + b tau = (2a+b)/2 + (b/2) sqrt5; denominators are positive.
        let p = &self.a + &self.a + &self.b;
        let q = &self.b;
        let pn = p.numer() * q.denom();
        let qn = q.numer() * p.denom();
        sign_quad_big(&pn, &qn)
    }

    pub fn abs(&self) -> GoldenRat {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * TAU_F64
    }

    pub fn scale_int(&self, k: i64) -> GoldenRat {
        let k = Rat::from(BigInt::from(k));
        GoldenRat {
            a: &self.a * &k,
            b: &self.b * &k,
        }
    }

    pub fn scale_rat(&self, k: &Rat) -> GoldenRat {
        GoldenRat {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    /// Field norm `a^2 + ab - b^2`; zero only for the zero element.
    fn norm(&self) -> Rat {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Exact multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> GoldenRat {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero golden element");
        GoldenRat {
            a: (&self.a + &self.b) / &n,
            b: -&self.b / &n,
        }
    }

    pub fn div(&self, rhs: &GoldenRat) -> GoldenRat {
        self * &rhs.inv()
    }

    pub fn div_int(&self, k: i64) -> GoldenRat {
        assert!(k != 0, "division by zero");
        let k = Rat::from(BigInt::from(k));
        GoldenRat {
            a: &self.a / &k,
            b: &self.b / &k,
        }
    }

    /// Largest integer `<= self`, found by exact comparisons around a
    /// float estimate (exponential bracket, then bisection).
    pub fn floor(&self) -> BigInt {
        let est = self.to_f64();
        let mut lo: BigInt;
        let mut hi: BigInt;
        if est.is_finite() {
            let g = BigInt::from(est.floor() as i64);
            // Find lo <= self < hi by widening around the estimate.
            let mut step = BigInt::one();
            if self.cmp_int(&g) == Ordering::Less {
                hi = g.clone();
                lo = &g - &step;
                while self.cmp_int(&lo) == Ordering::Less {
                    step = &step * 2;
                    lo = &lo - &step;
                }
            } else {
                lo = g.clone();
                hi = &g + &step;
                while self.cmp_int(&hi) != Ordering::Less {
                    step = &step * 2;
                    hi = &hi + &step;
                }
            }
        } else {
            panic!("floor of non-finite golden value");
        }
        // Invariant: lo <= self < hi.
        while &hi - &lo > BigInt::one() {
            let mid = (&lo + &hi) / 2;
            if self.cmp_int(&mid) == Ordering::Less {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo
    }

    pub fn ceil(&self) -> BigInt {
        let f = self.floor();
        if self.cmp_int(&f) == Ordering::Equal {
            f
        } else {
            f + 1
        }
    }

    fn cmp_int(&self, k: &BigInt) -> Ordering {
        let d = GoldenRat {
            a: &self.a - Rat::from(k.clone()),
            b: self.b.clone(),
        };
        match d.sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    /// `(m, n, den)` with `self = (m + n*tau)/den`, if all fit in i128.
    pub fn to_i128_parts(&self) -> Option<(i128, i128, i128)> {
        let da = self.a.denom();
        let db = self.b.denom();
        let g = num::Integer::gcd(da, db);
        let den: BigInt = da / &g * db;
        let m = self.a.numer() * (&den / da);
        let n = self.b.numer() * (&den / db);
        Some((m.to_i128()?, n.to_i128()?, den.to_i128()?))
    }
}

impl From<GoldenInt> for GoldenRat {
    fn from(g: GoldenInt) -> Self {
        g.to_rat()
    }
}

impl Add for &GoldenRat {
    type Output = GoldenRat;
    fn add(self, rhs: &GoldenRat) -> GoldenRat {
        GoldenRat {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &GoldenRat {
    type Output = GoldenRat;
    fn sub(self, rhs: &GoldenRat) -> GoldenRat {
        GoldenRat {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Neg for GoldenRat {
    type Output = GoldenRat;
    fn neg(self) -> GoldenRat {
        GoldenRat {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Mul for &GoldenRat {
    type Output = GoldenRat;
    fn mul(self, rhs: &GoldenRat) -> GoldenRat {
        // (a + b tau)(c + d tau) = ac + bd + (ad + bc + bd) tau
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let ad = &self.a * &rhs.b;
        let bc = &self.b * &rhs.a;
        GoldenRat {
            a: ac + &bd,
            b: ad + bc + bd,
        }
    }
}

impl PartialOrd for GoldenRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Display for GoldenRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, n, den) = rat_parts_big(self);
        let core = if n.is_zero() {
            format!("{m}")
        } else if m.is_zero() {
            format!("{n}t")
        } else if n.is_positive() {
            format!("{m}+{n}t")
        } else {
            format!("{m}{n}t")
        };
        if den.is_one() {
            write!(f, "{core}")
        } else {
            write!(f, "({core})/{den}")
        }
    }
}

// Serialize as {"m": "...", "n": "...", "den": "..."} over a common
// denominator; integers when the value is a lattice element.
impl Serialize for GoldenRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (m, n, den) = rat_parts_big(self);
        let mut st = s.serialize_struct("GoldenRat", 3)?;
        st.serialize_field("m", &m.to_string())?;
        st.serialize_field("n", &n.to_string())?;
        st.serialize_field("den", &den.to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GoldenRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Parts {
            m: RatLike,
            #[serde(default)]
            n: Option<RatLike>,
            #[serde(default)]
            den: Option<RatLike>,
        }
        let p = Parts::deserialize(d)?;
        let m = p.m.into_rat().map_err(D::Error::custom)?;
        let n = match p.n {
            Some(v) => v.into_rat().map_err(D::Error::custom)?,
            None => Rat::zero(),
        };
        let den = match p.den {
            Some(v) => v.into_rat().map_err(D::Error::custom)?,
            None => Rat::one(),
        };
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(GoldenRat {
            a: m / &den,
            b: n / &den,
        })
    }
}

/// Common-denominator parts `(m, n, den)` with `self = (m + n tau)/den`, den > 0.
pub fn rat_parts_big(v: &GoldenRat) -> (BigInt, BigInt, BigInt) {
    let da = v.a.denom();
    let db = v.b.denom();
    let g = num::Integer::gcd(da, db);
    let den: BigInt = da / &g * db;
    let m = v.a.numer() * (&den / da);
    let n = v.b.numer() * (&den / db);
    (m, n, den)
}

/// Parse `"p/q"`, an integer, or a plain decimal like `"-0.25"` into an
/// exact rational.
pub fn parse_rat(s: &str) -> std::result::Result<Rat, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
        let d: BigInt = den.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let i: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|e| format!("bad integer part: {e}"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal {s:?}"));
        }
        let f: BigInt = frac.parse().map_err(|e| format!("bad fraction part: {e}"))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = Rat::new(f, scale);
        let int_part = Rat::from(i);
        return Ok(if neg {
            int_part - frac_part
        } else {
            int_part + frac_part
        });
    }
    let n: BigInt = s.parse().map_err(|e| format!("bad integer: {e}"))?;
    Ok(Rat::from(n))
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A JSON value that stands for an exact rational: an integer, a float
/// (converted exactly from its binary value), or a string `"p/q"`.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum RatLike {
    Int(i64),
    Float(f64),
    Str(String),
}

impl RatLike {
    pub fn into_rat(self) -> std::result::Result<Rat, String> {
        match self {
            RatLike::Int(v) => Ok(Rat::from(BigInt::from(v))),
            RatLike::Float(v) => Rat::from_float(v).ok_or_else(|| format!("non-finite value {v}")),
            RatLike::Str(s) => parse_rat(&s),
        }
    }
}

/// Field-level serde adapters rendering rationals as `"p/q"` strings.
pub mod rat_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        RatLike::deserialize(d)?.into_rat().map_err(D::Error::custom)
    }
}

pub mod rat_vec_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(rat_to_string).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let raw: Vec<RatLike> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_rat().map_err(D::Error::custom))
            .collect()
    }
}

pub mod rat_mat_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Rat>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = v
            .iter()
            .map(|row| row.iter().map(rat_to_string).collect())
            .collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rat>>, D::Error> {
        let raw: Vec<Vec<RatLike>> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|r| r.into_rat().map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

pub mod rat_pairs_str {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[(Rat, Rat)],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<(String, String)> = v
            .iter()
            .map(|(a, b)| (rat_to_string(a), rat_to_string(b)))
            .collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<(Rat, Rat)>, D::Error> {
        let raw: Vec<(RatLike, RatLike)> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|(a, b)| {
                Ok((
                    a.into_rat().map_err(D::Error::custom)?,
                    b.into_rat().map_err(D::Error::custom)?,
                ))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gi(m: i64, n: i64) -> GoldenInt {
        GoldenInt::new(m, n)
    }

    #[test]
    fn star_is_galois_conjugation() {
        // (m + n tau)* = m + n tau'
        let x = gi(2, 3);
        let s = x.star();
        assert_eq!(s, gi(5, -3));
        assert!((s.to_f64() - (2.0 + 3.0 * (1.0 - TAU_F64))).abs() < 1e-12);
        assert_eq!(gi(0, 0).star(), gi(0, 0));
        // figure-two difference 3 tau + 2 has conjugate about 0.1459
        let r = gi(2, 3);
        assert!((r.star_f64() - 0.1459).abs() < 1e-4);
    }

    #[test]
    fn exact_ordering_matches_floats_on_small_elements() {
        for m in -20..20i64 {
            for n in -20..20i64 {
                let x = gi(m, n);
                let s = x.sign() as i32;
                let f = x.to_f64();
                if f.abs() > 1e-9 {
                    assert_eq!(s, f.signum() as i32, "sign mismatch at {m},{n}");
                } else {
                    assert_eq!(s, 0);
                }
            }
        }
    }

    #[test]
    fn tau_identities() {
        let tau = GoldenRat::tau();
        let one = GoldenRat::from_int(1);
        // tau^2 = tau + 1
        assert_eq!(&tau * &tau, &tau + &one);
        // tau * tau' = -1
        let prod = &tau * &tau.star();
        assert_eq!(prod, GoldenRat::from_int(-1));
        // 1/tau = tau - 1
        assert_eq!(tau.inv(), &tau - &one);
        // sqrt5^2 = 5
        let s5 = GoldenRat::sqrt5();
        assert_eq!(&s5 * &s5, GoldenRat::from_int(5));
    }

    #[test]
    fn floor_and_ceil_are_exact() {
        let tau = GoldenRat::tau();
        assert_eq!(tau.floor(), BigInt::from(1));
        assert_eq!(tau.ceil(), BigInt::from(2));
        let neg = -tau.clone();
        assert_eq!(neg.floor(), BigInt::from(-2));
        assert_eq!(GoldenRat::from_int(7).floor(), BigInt::from(7));
        assert_eq!(GoldenRat::from_int(7).ceil(), BigInt::from(7));
        let half = GoldenRat::from_rat(Rat::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(half.floor(), BigInt::from(0));
        assert_eq!(half.ceil(), BigInt::from(1));
    }

    #[test]
    fn division_round_trips() {
        let x = GoldenRat::new(
            Rat::new(BigInt::from(3), BigInt::from(7)),
            Rat::new(BigInt::from(-2), BigInt::from(5)),
        );
        let y = GoldenRat::new(Rat::from(BigInt::from(4)), Rat::new(BigInt::from(9), BigInt::from(2)));
        let q = x.div(&y);
        assert_eq!(&q * &y, x);
    }

    proptest! {
        #[test]
        fn star_additivity(m1 in -1000i64..1000, n1 in -1000i64..1000,
                           m2 in -1000i64..1000, n2 in -1000i64..1000,
                           k in -50i64..50) {
            let x = gi(m1, n1);
            let y = gi(m2, n2);
            prop_assert_eq!((x + y).star(), x.star() + y.star());
            prop_assert_eq!(x.scale(k).star(), x.star().scale(k));
        }

        #[test]
        fn sign_agrees_with_f64(m in -100000i64..100000, n in -100000i64..100000) {
            let x = gi(m, n);
            let f = x.to_f64();
            if f.abs() > 1e-6 {
                prop_assert_eq!(x.sign() as i32, f.signum() as i32);
            }
        }

        #[test]
        fn floor_bounds(m in -1000i64..1000, n in -1000i64..1000, d in 1i64..60) {
            let x = gi(m, n).to_rat().div_int(d);
            let fl = x.floor();
            let lo = GoldenRat::from_rat(Rat::from(fl.clone()));
            let hi = GoldenRat::from_rat(Rat::from(&fl + 1));
            prop_assert!(lo <= x && x < hi);
        }
    }
}
