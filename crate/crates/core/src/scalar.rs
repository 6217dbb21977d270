//! Exact arithmetic in the real field Q(√2, √3, √5).
//!
//! Every value produced from the Coxeter labels {2, 3, 4, 5, 6, ∞} lives in this
//! field. Elements are stored as rational coordinates over the basis
//! `{1, √2, √3, √5, √6, √10, √15, √30}`; since that basis is linearly independent
//! over Q, two scalars are equal exactly when their coordinate tuples are equal.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coxeter::Label;
use crate::error::{Error, Result};

/// Radicands of the basis slots. Slot `i` is indexed by a bitmask over the
/// primes (bit 0: 2, bit 1: 3, bit 2: 5), so `√a·√b` lands in slot `a ^ b`.
const RADICAND: [u32; 8] = [1, 2, 3, 6, 5, 10, 15, 30];

/// Slot order used for text output: 1, √2, √3, √5, √6, √10, √15, √30.
const DISPLAY_ORDER: [usize; 8] = [0, 1, 2, 4, 3, 5, 6, 7];

/// Initial sign-refinement precision, 2^-10 ≈ 10^-3.
const INITIAL_BITS: u64 = 10;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    c: [BigRational; 8],
}

fn basis_name(slot: usize) -> &'static str {
    ["1", "r2", "r3", "r6", "r5", "r10", "r15", "r30"][slot]
}

fn slot_of_name(name: &str) -> Option<usize> {
    (0..8).find(|&s| basis_name(s) == name)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            c: std::array::from_fn(|_| BigRational::zero()),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut s = Self::zero();
        s.c[0] = q;
        s
    }

    /// `√n` for `n` one of 2, 3, 5, 6, 10, 15, 30.
    pub fn sqrt(n: u32) -> Result<Self> {
        let slot = RADICAND
            .iter()
            .position(|&r| r == n && r != 1)
            .ok_or_else(|| Error::Parse(format!("√{n} is not a basis element")))?;
        let mut s = Self::zero();
        s.c[slot] = BigRational::one();
        Ok(s)
    }

    /// Coefficients in the order `1, √2, √3, √5, √6, √10, √15, √30`.
    pub fn coefficients(&self) -> [BigRational; 8] {
        std::array::from_fn(|i| self.c[DISPLAY_ORDER[i]].clone())
    }

    pub fn from_coefficients(coeffs: [BigRational; 8]) -> Self {
        let mut s = Self::zero();
        for (i, q) in coeffs.into_iter().enumerate() {
            s.c[DISPLAY_ORDER[i]] = q;
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Total order on coefficient tuples. Cheap, but not the numeric order.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.c.cmp(&other.c)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the scalar has no irrational part.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.c[1..].iter().all(Zero::is_zero).then_some(&self.c[0])
    }

    /// Galois conjugate flipping the sign of the prime with index `bit`.
    fn conjugate(&self, bit: usize) -> Self {
        let mut out = self.clone();
        for slot in 0..8 {
            if slot & (1 << bit) != 0 {
                out.c[slot] = -out.c[slot].clone();
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Multiply through by conjugates one prime at a time until the norm is rational.
        let conj2 = self.conjugate(0);
        let y1 = self * &conj2;
        let conj3 = y1.conjugate(1);
        let y2 = &y1 * &conj3;
        let conj5 = y2.conjugate(2);
        let y3 = &y2 * &conj5;
        let norm = y3
            .as_rational()
            .cloned()
            .ok_or_else(|| Error::Internal("field norm is not rational".into()))?;
        let numer = &(&conj2 * &conj3) * &conj5;
        Ok(numer.scale(&norm.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Scalar {
            c: std::array::from_fn(|i| &self.c[i] * q),
        }
    }

    /// Sign of the real number, decided by interval refinement of the radicals.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let denom = self
            .c
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<(usize, BigInt)> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(slot, q)| (slot, (q * BigRational::from_integer(denom.clone())).to_integer()))
            .collect();
        let mut bits = INITIAL_BITS;
        loop {
            let (lo, hi) = Self::integer_bounds(&ints, bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits += 1;
        }
    }

    /// Lower and upper bounds of `Σ n_i √r_i`, in units of `2^-bits`.
    fn integer_bounds(ints: &[(usize, BigInt)], bits: u64) -> (BigInt, BigInt) {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (slot, n) in ints {
            if *slot == 0 {
                let exact = n << bits;
                lo += &exact;
                hi += &exact;
                continue;
            }
            // floor(√r · 2^bits) < √r · 2^bits < floor + 1, since √r is irrational.
            let floor = (BigInt::from(RADICAND[*slot]) << (2 * bits)).sqrt();
            let ceil = &floor + 1;
            if n.is_positive() {
                lo += n * &floor;
                hi += n * &ceil;
            } else {
                lo += n * &ceil;
                hi += n * &floor;
            }
        }
        (lo, hi)
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        self.c
            .iter()
            .enumerate()
            .map(|(slot, q)| q.to_f64().unwrap_or(f64::NAN) * (RADICAND[slot] as f64).sqrt())
            .sum()
    }

    /// `−cos(π/m)` for a Coxeter label `m`; `−1` for `m = ∞`.
    pub fn neg_cos_pi_over(label: Label) -> Result<Self> {
        let value = match label {
            Label::Infinity => Scalar::from_integer(-1),
            Label::Finite(1) => Scalar::one(),
            Label::Finite(2) => Scalar::zero(),
            Label::Finite(3) => Scalar::from_ratio(-1, 2),
            Label::Finite(4) => Scalar::sqrt(2)?.scale(&rat(-1, 2)),
            Label::Finite(5) => (Scalar::one() + Scalar::sqrt(5)?).scale(&rat(-1, 4)),
            Label::Finite(6) => Scalar::sqrt(3)?.scale(&rat(-1, 2)),
            Label::Finite(m) => return Err(Error::UnsupportedLabel(m.to_string())),
        };
        Ok(value)
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order of the represented real numbers.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            c: std::array::from_fn(|i| &self.c[i] + &rhs.c[i]),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            c: std::array::from_fn(|i| &self.c[i] - &rhs.c[i]),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let shared = i & j;
                let mut term = a * b;
                if shared != 0 {
                    term *= BigRational::from_integer(BigInt::from(RADICAND[shared]));
                }
                out.c[i ^ j] += term;
            }
        }
        out
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a `Result`.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            c: std::array::from_fn(|i| -self.c[i].clone()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for i in 0..8 {
            if !rhs.c[i].is_zero() {
                self.c[i] += &rhs.c[i];
            }
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for i in 0..8 {
            if !rhs.c[i].is_zero() {
                self.c[i] -= &rhs.c[i];
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &slot in &DISPLAY_ORDER {
            let q = &self.c[slot];
            if q.is_zero() {
                continue;
            }
            let negative = q.is_negative();
            let mag = q.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            if slot == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(basis_name(slot))?;
            } else {
                write!(f, "{mag}*{}", basis_name(slot))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses sums like `1/2 - 1/2*r5`, `r2`, `-3*r30 + 2`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut out = Scalar::zero();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'+' if !first => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ if first => (false, rest),
                _ => return Err(Error::Parse(format!("expected '+' or '-' in {s:?}"))),
            };
            first = false;
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            let (mut coeff, slot) = parse_term(term).map_err(|e| Error::Parse(format!("{e} in {s:?}")))?;
            if negative {
                coeff = -coeff;
            }
            out.c[slot] += coeff;
            rest = tail;
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> std::result::Result<(BigRational, usize), String> {
    if term.is_empty() {
        return Err("empty term".into());
    }
    if let Some(slot) = slot_of_name(term).filter(|&s| s != 0) {
        return Ok((BigRational::one(), slot));
    }
    let (num, slot) = match term.split_once('*') {
        Some((num, name)) => {
            let slot = slot_of_name(name)
                .filter(|&s| s != 0)
                .ok_or_else(|| format!("unknown basis symbol {name:?}"))?;
            (num, slot)
        }
        None => (term, 0),
    };
    let q = match num.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| format!("bad numerator {n:?}"))?;
            let d: BigInt = d.parse().map_err(|_| format!("bad denominator {d:?}"))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(num.parse().map_err(|_| format!("bad integer {num:?}"))?),
    };
    Ok((q, slot))
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        match value {
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Scalar::from_integer)
                .ok_or_else(|| serde::de::Error::custom("scalar numbers must be integers")),
            _ => Err(serde::de::Error::custom("expected a scalar string")),
        }
    }
}
