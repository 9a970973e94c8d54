//! Exact scalars: reduced rationals and residues modulo a small prime.
//!
//! Every other module is written against [`FieldElement`] and a runtime
//! [`FieldDescriptor`], so a single code path serves both `Q` and `GF(p)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A prime modulus, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(Prime),
}

impl FieldDescriptor {
    pub fn gf(p: u64) -> Result<Self> {
        Ok(FieldDescriptor::PrimeField(Prime::new(p)?))
    }

    /// The characteristic: 0 for `Q`.
    pub fn characteristic(self) -> u32 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::PrimeField(p) => p.get(),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, FieldDescriptor::PrimeField(_))
    }

    pub fn order(self) -> Option<u32> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::PrimeField(p) => Some(p.get()),
        }
    }

    pub fn zero(self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElement {
        match self {
            FieldDescriptor::Rationals => FieldElement::Rational(BigRational::from_integer(n.into())),
            FieldDescriptor::PrimeField(p) => {
                let m = p.get() as i64;
                FieldElement::Residue {
                    value: n.rem_euclid(m) as u32,
                    modulus: p,
                }
            }
        }
    }

    /// The residue `value mod p`; panics over `Q`.
    pub fn residue(self, value: u32) -> FieldElement {
        match self {
            FieldDescriptor::PrimeField(p) => FieldElement::Residue {
                value: value % p.get(),
                modulus: p,
            },
            FieldDescriptor::Rationals => panic!("residue requested over Q"),
        }
    }

    /// Parses a scalar literal `a` or `a/b` (decimal, optional leading minus).
    pub fn parse_scalar(self, text: &str) -> Result<FieldElement> {
        let bad = || Error::ParseScalar(text.to_string());
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (parse_int(a.trim()).ok_or_else(bad)?, parse_int(b.trim()).ok_or_else(bad)?),
            None => (parse_int(t).ok_or_else(bad)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            FieldDescriptor::Rationals => Ok(FieldElement::Rational(BigRational::new(num, den))),
            FieldDescriptor::PrimeField(_) => {
                let n = self.from_bigint(&num);
                let d = self.from_bigint(&den);
                let d_inv = d.inv().map_err(|_| bad())?;
                Ok(&n * &d_inv)
            }
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> FieldElement {
        match self {
            FieldDescriptor::Rationals => FieldElement::Rational(BigRational::from_integer(n.clone())),
            FieldDescriptor::PrimeField(p) => {
                let m = BigInt::from(p.get());
                let r = ((n % &m) + &m) % &m;
                let value: u32 = r.try_into().expect("residue fits in u32");
                FieldElement::Residue { value, modulus: p }
            }
        }
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => f.write_str("Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "gfp:{}", p.get()),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        let p = t
            .strip_prefix("gfp:")
            .and_then(|rest| rest.parse::<u64>().ok())
            .ok_or_else(|| Error::ParseField(s.to_string()))?;
        FieldDescriptor::gf(p)
    }
}

/// An exact scalar in canonical form.
///
/// Rationals are kept reduced with a positive denominator (guaranteed by
/// `BigRational`); residues live in `[0, p)`. Structural equality is
/// therefore value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue { value: u32, modulus: Prime },
}

impl FieldElement {
    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            FieldElement::Rational(_) => FieldDescriptor::Rationals,
            FieldElement::Residue { modulus, .. } => FieldDescriptor::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        let (a, b) = (self.descriptor(), other.descriptor());
        if a != b {
            return Err(Error::DescriptorMismatch(a, b));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: pow_mod(*value, modulus.get() - 2, modulus.get()),
                modulus: *modulus,
            },
        })
    }

    /// Rational value; `None` for residues.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Residue { .. } => None,
        }
    }

    /// Residue value; `None` for rationals.
    pub fn as_residue(&self) -> Option<u32> {
        match self {
            FieldElement::Residue { value, .. } => Some(*value),
            FieldElement::Rational(_) => None,
        }
    }
}

fn pow_mod(base: u32, mut exp: u32, m: u32) -> u32 {
    let m = m as u64;
    let mut acc = 1u64 % m;
    let mut b = base as u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

fn mismatch(a: &FieldElement, b: &FieldElement) -> ! {
    panic!(
        "field descriptor mismatch: {} vs {}",
        a.descriptor(),
        b.descriptor()
    )
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (
                FieldElement::Residue { value: a, modulus },
                FieldElement::Residue { value: b, modulus: m2 },
            ) if modulus == m2 => FieldElement::Residue {
                value: ((*a as u64 + *b as u64) % modulus.get() as u64) as u32,
                modulus: *modulus,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (
                FieldElement::Residue { value: a, modulus },
                FieldElement::Residue { value: b, modulus: m2 },
            ) if modulus == m2 => FieldElement::Residue {
                value: ((*a as u64 * *b as u64) % modulus.get() as u64) as u32,
                modulus: *modulus,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: if *value == 0 { 0 } else { modulus.get() - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Orders by value: rationals numerically, residues by their representative
/// in `[0, p)`. Elements of different fields order rationals first.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => a.cmp(b),
            (
                FieldElement::Residue { value: a, modulus: ma },
                FieldElement::Residue { value: b, modulus: mb },
            ) => ma.cmp(mb).then(a.cmp(b)),
            (FieldElement::Rational(_), FieldElement::Residue { .. }) => Ordering::Less,
            (FieldElement::Residue { .. }, FieldElement::Rational(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// True when the rational is stored with positive denominator and coprime parts.
pub fn is_canonical_rational(r: &BigRational) -> bool {
    use num_integer::Integer;
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}
