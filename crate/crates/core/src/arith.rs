//! Exact arithmetic: unbounded naturals, reduced non-negative rationals,
//! the Sylvester sequence and gcd/lcm over lists.
//!
//! Every magnitude in this crate (weights, group orders, Fano indices) is a
//! [`Nat`]; volumes are [`Rat`]. Both serialize as decimal strings so values
//! beyond 64 bits survive JSON and CSV.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Rem};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-negative integer of unbounded magnitude.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Nat(BigUint);

impl Nat {
    pub fn zero() -> Self {
        Nat(BigUint::zero())
    }

    pub fn one() -> Self {
        Nat(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    /// `self - rhs`, refusing to go below zero.
    pub fn checked_sub(&self, rhs: &Nat) -> Result<Nat> {
        if rhs.0 > self.0 {
            return Err(Error::invalid(format!(
                "subtraction {} - {} would be negative",
                self, rhs
            )));
        }
        Ok(Nat(&self.0 - &rhs.0))
    }

    pub fn minus(&self, rhs: u64) -> Result<Nat> {
        self.checked_sub(&Nat::from(rhs))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, divisor: &Nat) -> Result<Nat> {
        if divisor.is_zero() {
            return Err(Error::invalid("division by zero"));
        }
        let (q, r) = self.0.div_rem(&divisor.0);
        if !r.is_zero() {
            return Err(Error::invalid(format!("{} is not divisible by {}", self, divisor)));
        }
        Ok(Nat(q))
    }

    pub fn divides(&self, other: &Nat) -> bool {
        !self.is_zero() && (&other.0 % &self.0).is_zero()
    }

    pub fn gcd(&self, other: &Nat) -> Nat {
        Nat(self.0.gcd(&other.0))
    }

    pub fn lcm(&self, other: &Nat) -> Nat {
        Nat(self.0.lcm(&other.0))
    }

    pub fn pow(&self, exp: u32) -> Nat {
        Nat(num_traits::pow(self.0.clone(), exp as usize))
    }

    pub fn is_even(&self) -> bool {
        self.0.is_even()
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat(BigUint::from(v))
    }
}

impl From<u32> for Nat {
    fn from(v: u32) -> Self {
        Nat(BigUint::from(v))
    }
}

impl From<BigUint> for Nat {
    fn from(v: BigUint) -> Self {
        Nat(v)
    }
}

impl From<Nat> for BigUint {
    fn from(v: Nat) -> Self {
        v.0
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Nat> for &Nat {
            type Output = Nat;
            fn $method(self, rhs: &Nat) -> Nat {
                Nat(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Nat> for Nat {
            type Output = Nat;
            fn $method(self, rhs: Nat) -> Nat {
                Nat(self.0 $op rhs.0)
            }
        }
        impl $trait<&Nat> for Nat {
            type Output = Nat;
            fn $method(self, rhs: &Nat) -> Nat {
                Nat(self.0 $op &rhs.0)
            }
        }
        impl $trait<u64> for &Nat {
            type Output = Nat;
            fn $method(self, rhs: u64) -> Nat {
                Nat(&self.0 $op BigUint::from(rhs))
            }
        }
        impl $trait<u64> for Nat {
            type Output = Nat;
            fn $method(self, rhs: u64) -> Nat {
                Nat(self.0 $op BigUint::from(rhs))
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Mul, mul, *);
forward_binop!(Rem, rem, %);

impl std::iter::Sum for Nat {
    fn sum<I: Iterator<Item = Nat>>(iter: I) -> Nat {
        iter.fold(Nat::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Nat> for Nat {
    fn sum<I: Iterator<Item = &'a Nat>>(iter: I) -> Nat {
        iter.fold(Nat::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Nat {
    fn product<I: Iterator<Item = Nat>>(iter: I) -> Nat {
        iter.fold(Nat::one(), |acc, x| acc * x)
    }
}

impl<'a> std::iter::Product<&'a Nat> for Nat {
    fn product<I: Iterator<Item = &'a Nat>>(iter: I) -> Nat {
        iter.fold(Nat::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Nat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::invalid(format!("not a non-negative decimal integer: {:?}", s)));
        }
        t.parse::<BigUint>()
            .map(Nat)
            .map_err(|e| Error::invalid(format!("{:?}: {}", s, e)))
    }
}

impl Serialize for Nat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Nat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A non-negative rational number, always stored reduced with a positive
/// denominator, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(Ratio<BigUint>);

impl Rat {
    pub fn new(num: Nat, den: Nat) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("rational with zero denominator"));
        }
        Ok(Rat(Ratio::new(num.0, den.0)))
    }

    pub fn from_nat(n: Nat) -> Self {
        Rat(Ratio::from_integer(n.0))
    }

    pub fn zero() -> Self {
        Rat(Ratio::zero())
    }

    pub fn numer(&self) -> Nat {
        Nat(self.0.numer().clone())
    }

    pub fn denom(&self) -> Nat {
        Nat(self.0.denom().clone())
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `1/n`.
    pub fn recip_of(n: &Nat) -> Result<Self> {
        Rat::new(Nat::one(), n.clone())
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Add<&Rat> for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        Rat(&self.0 + &rhs.0)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl Mul<&Rat> for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat(&self.0 * &rhs.0)
    }
}

impl From<Nat> for Rat {
    fn from(n: Nat) -> Self {
        Rat::from_nat(n)
    }
}

impl From<u64> for Rat {
    fn from(n: u64) -> Self {
        Rat::from_nat(Nat::from(n))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `"a"` or `"a/b"`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((n, d)) => Rat::new(n.parse()?, d.parse()?),
            None => Ok(Rat::from_nat(s.parse()?)),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RatRepr {
    num: Nat,
    den: Nat,
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RatRepr { num: self.numer(), den: self.denom() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = RatRepr::deserialize(deserializer)?;
        Rat::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}

fn sylvester_cache() -> &'static Mutex<Vec<Nat>> {
    static CACHE: OnceLock<Mutex<Vec<Nat>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Nat::from(2u64)]))
}

/// The `k`-th term of Sylvester's sequence: `s_0 = 2`,
/// `s_k = s_{k-1}(s_{k-1} - 1) + 1`. Memoized per process.
pub fn sylvester(k: usize) -> Nat {
    let mut cache = sylvester_cache().lock().unwrap_or_else(|p| p.into_inner());
    while cache.len() <= k {
        let prev = cache.last().expect("cache seeded with s_0");
        // prev >= 2, so the subtraction cannot underflow
        let next = Nat(&prev.0 * (&prev.0 - BigUint::one()) + BigUint::one());
        cache.push(next);
    }
    cache[k].clone()
}

/// `s_0 s_1 ... s_{k-1}`, which equals `s_k - 1`.
pub fn sylvester_product(k: usize) -> Nat {
    (0..k).map(sylvester).product()
}

pub fn gcd_all(xs: &[Nat]) -> Result<Nat> {
    let (first, rest) = xs
        .split_first()
        .ok_or_else(|| Error::invalid("gcd of an empty list"))?;
    let mut g = first.clone();
    for x in rest {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    Ok(g)
}

pub fn lcm_all(xs: &[Nat]) -> Result<Nat> {
    let (first, rest) = xs
        .split_first()
        .ok_or_else(|| Error::invalid("lcm of an empty list"))?;
    Ok(rest.iter().fold(first.clone(), |acc, x| acc.lcm(x)))
}

/// Machine-word gcd, used by the enumeration kernels.
pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nats(xs: &[u64]) -> Vec<Nat> {
        xs.iter().copied().map(Nat::from).collect()
    }

    #[test]
    fn sylvester_values() {
        let first: Vec<String> = (0..5).map(|k| sylvester(k).to_string()).collect();
        assert_eq!(first, ["2", "3", "7", "43", "1807"]);
        assert_eq!(sylvester(5), Nat::from(3263443u64));
        assert_eq!(sylvester(5), Nat::from(1807u64 * 1806 + 1));
    }

    #[test]
    fn sylvester_memo_is_pure() {
        let a = sylvester(9);
        let b = sylvester(9);
        assert_eq!(a, b);
        assert_eq!(sylvester_product(9), a.minus(1).unwrap());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_all(&nats(&[7])).unwrap(), Nat::from(7u64));
        assert_eq!(gcd_all(&nats(&[33, 22, 6])).unwrap(), Nat::one());
        assert_eq!(gcd_all(&nats(&[1743, 1162, 498])).unwrap(), Nat::from(83u64));
        assert!(matches!(gcd_all(&[]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_all(&nats(&[1, 1, 1])).unwrap(), Nat::one());
        assert_eq!(lcm_all(&nats(&[3, 2, 1])).unwrap(), Nat::from(6u64));
        assert_eq!(lcm_all(&nats(&[7, 5, 3, 2])).unwrap(), Nat::from(210u64));
        assert!(lcm_all(&[]).is_err());
    }

    #[test]
    fn subtraction_never_wraps() {
        let three = Nat::from(3u64);
        assert_eq!(three.minus(3).unwrap(), Nat::zero());
        assert!(matches!(three.minus(4), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rat_reduces_on_construction() {
        let r = Rat::new(Nat::from(6u64), Nat::from(4u64)).unwrap();
        assert_eq!(r.numer(), Nat::from(3u64));
        assert_eq!(r.denom(), Nat::from(2u64));
        assert_eq!(r, "3/2".parse().unwrap());
        assert!(Rat::new(Nat::one(), Nat::zero()).is_err());
    }

    #[test]
    fn exact_division() {
        assert_eq!(Nat::from(42u64).exact_div(&Nat::from(7u64)).unwrap(), Nat::from(6u64));
        assert!(Nat::from(43u64).exact_div(&Nat::from(7u64)).is_err());
    }

    #[test]
    fn parse_rejects_signs_and_garbage() {
        assert!("-3".parse::<Nat>().is_err());
        assert!("3x".parse::<Nat>().is_err());
        assert!("".parse::<Nat>().is_err());
        assert_eq!(" 12 ".parse::<Nat>().unwrap(), Nat::from(12u64));
    }

    #[test]
    fn large_values_serialize_as_strings() {
        let v: Nat = "23029100604532998144".parse().unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), "\"23029100604532998144\"");
        let r = Rat::new(Nat::from(343u64), Nat::from(6u64)).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"num":"343","den":"6"}"#);
        assert_eq!(serde_json::from_str::<Rat>(&json).unwrap(), r);
    }

    #[test]
    fn exact_beyond_ten_thousand_bits() {
        let big = Nat::from(2u64).pow(10_007);
        let sum = &big + &big;
        assert_eq!(sum.bits(), 10_009);
        assert_eq!(sum.checked_sub(&big).unwrap(), big);
    }
}
