//! Integers with an inline machine-word fast path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug)]
pub enum Int {
    S(i64),
    B(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::S(0);
    pub const ONE: Int = Int::S(1);

    fn norm(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::S(v),
            None => Int::B(b),
        }
    }

    pub fn big(&self) -> BigInt {
        match self {
            Int::S(v) => BigInt::from(*v),
            Int::B(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::S(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::S(1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::S(v) => v.signum() as i32,
            Int::B(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::S(a), Int::S(b)) if *a != i64::MIN && *b != i64::MIN => {
                Int::S(a.abs().gcd(&b.abs()))
            }
            _ => Int::norm(self.big().gcd(&other.big())),
        }
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn div_exact(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::S(a), Int::S(b)) if *b != -1 => Int::S(a / b),
            _ => Int::norm(self.big() / other.big()),
        }
    }

    pub fn divides(&self, other: &Int) -> bool {
        match (self, other) {
            (Int::S(a), Int::S(b)) if *a != -1 && *a != 0 => b % a == 0,
            _ => {
                if self.is_zero() {
                    return other.is_zero();
                }
                (other.big() % self.big()).is_zero()
            }
        }
    }

    /// Residue in `[0, p)`.
    pub fn mod_u64(&self, p: u64) -> u64 {
        match self {
            Int::S(v) => v.rem_euclid(p as i64) as u64,
            Int::B(b) => {
                let r = b.mod_floor(&BigInt::from(p));
                r.to_u64().unwrap()
            }
        }
    }

    pub fn pow(&self, e: u32) -> Int {
        let mut r = Int::ONE;
        for _ in 0..e {
            r = &r * self;
        }
        r
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::S(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::S(v as i64)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::norm(b)
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Int::S(a), Int::S(b)) => a == b,
            (Int::B(a), Int::B(b)) => a == b,
            _ => false,
        }
    }
}
impl Eq for Int {}

impl std::hash::Hash for Int {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Int::S(v) => v.hash(state),
            Int::B(b) => b.hash(state),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::S(a), Int::S(b)) => a.cmp(b),
            _ => self.big().cmp(&other.big()),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::S(v) => write!(f, "{v}"),
            Int::B(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Int::norm(BigInt::from_str(s)?))
    }
}

impl<'a> std::ops::Add<&'a Int> for &'a Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        if let (Int::S(a), Int::S(b)) = (self, rhs) {
            if let Some(v) = a.checked_add(*b) {
                return Int::S(v);
            }
        }
        Int::norm(self.big() + rhs.big())
    }
}

impl<'a> std::ops::Sub<&'a Int> for &'a Int {
    type Output = Int;
    fn sub(self, rhs: &Int) -> Int {
        if let (Int::S(a), Int::S(b)) = (self, rhs) {
            if let Some(v) = a.checked_sub(*b) {
                return Int::S(v);
            }
        }
        Int::norm(self.big() - rhs.big())
    }
}

impl<'a> std::ops::Mul<&'a Int> for &'a Int {
    type Output = Int;
    fn mul(self, rhs: &Int) -> Int {
        if let (Int::S(a), Int::S(b)) = (self, rhs) {
            if let Some(v) = a.checked_mul(*b) {
                return Int::S(v);
            }
        }
        Int::norm(self.big() * rhs.big())
    }
}

impl std::ops::Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::S(v) => match v.checked_neg() {
                Some(n) => Int::S(n),
                None => Int::norm(-BigInt::from(*v)),
            },
            Int::B(b) => Int::norm(-b),
        }
    }
}

impl std::ops::Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl std::ops::AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl std::ops::SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl std::ops::Add for Int {
    type Output = Int;
    fn add(self, rhs: Int) -> Int {
        &self + &rhs
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

impl std::ops::Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        &self * &rhs
    }
}

/// Symmetric-range CRT: combine `x mod m` with `r mod p`.
pub fn crt_sym(x: &BigInt, m: &BigInt, r: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let xm = x.mod_floor(&pb).to_u64().unwrap();
    let mm = m.mod_floor(&pb).to_u64().unwrap();
    let inv = crate::modp::inv(mm, p);
    let diff = crate::modp::sub(r, xm, p);
    let s = crate::modp::mul(diff, inv, p);
    let mut res = x + m * BigInt::from(s);
    let mp = m * &pb;
    let half: BigInt = &mp >> 1;
    res = res.mod_floor(&mp);
    if res > half {
        res -= &mp;
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes() {
        let a = Int::S(i64::MAX);
        let b = &a + &Int::ONE;
        assert!(matches!(b, Int::B(_)));
        let c = &b - &Int::ONE;
        assert_eq!(c, a);
        let d = &a * &a;
        assert_eq!(d.div_exact(&a), a);
    }

    #[test]
    fn gcd_and_mod() {
        assert_eq!(Int::S(12).gcd(&Int::S(-18)), Int::S(6));
        assert_eq!(Int::S(-7).mod_u64(5), 3);
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(big.to_string(), "123456789012345678901234567890");
        assert_eq!(big.mod_u64(10), 0);
    }
}
