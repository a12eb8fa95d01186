//! Exact field arithmetic over ℚ and 𝔽p.
//!
//! A [`Scalar`] carries its own field so that mixing a rational with a residue
//! is detected instead of silently coerced. The operator impls panic on mixed
//! fields (an internal invariant of every constructed object); the `checked_*`
//! methods report it as an [`Error::MixedFields`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest prime accepted for 𝔽p.
pub const MAX_PRIME: u32 = 97;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// 𝔽p for a prime `p ≤ 97`.
    pub fn prime(p: u32) -> Result<Field> {
        if !(2..=MAX_PRIME).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::Parse(format!("{p} is not a supported prime (p ≤ {MAX_PRIME})")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue { value: n.rem_euclid(p as i64) as u32, modulus: p },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => self.from_i64(n.mod_floor(&BigInt::from(p)).to_i64().unwrap()),
        }
    }

    /// `(-1)^exp` as a scalar.
    pub fn sign(self, exp: i64) -> Scalar {
        if exp.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }

    /// All elements of a finite field, in increasing residue order.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some((0..p).map(|v| Scalar::Residue { value: v, modulus: p }).collect()),
        }
    }

    pub fn size(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p as u64),
        }
    }

    /// Parse a coefficient: `"p/q"` or an integer. Over 𝔽p, `p/q` means `p·q⁻¹`.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Parse(format!("malformed coefficient {text:?}"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in coefficient {text:?}")));
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let reduce = |x: &BigInt| x.mod_floor(&BigInt::from(p)).to_i64().unwrap();
                let n = self.from_i64(reduce(&num));
                let d = self.from_i64(reduce(&den));
                let inv = d.inv().map_err(|_| Error::Parse(format!("denominator of {text:?} vanishes mod {p}")))?;
                Ok(n * inv)
            }
        }
    }
}

/// `Q` or `Fp:p`, the same spelling as `Display`.
impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        match s.trim() {
            "Q" => Ok(Field::Rational),
            t => match t.strip_prefix("Fp:").map(str::parse::<u32>) {
                Some(Ok(p)) => Field::prime(p),
                _ => Err(Error::Parse(format!("unknown field {t:?} (expected Q or Fp:p)"))),
            },
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Always in lowest terms with positive denominator (maintained by `BigRational`).
    Rational(BigRational),
    /// Residue in `[0, modulus)`.
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::MixedFields(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: ((*a as u64 + *b as u64) % *modulus as u64) as u32, modulus: *modulus }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: ((*a as u64 * *b as u64) % *modulus as u64) as u32, modulus: *modulus }
            }
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Residue { value, modulus } => {
                // Fermat: a^(p-2)
                let p = *modulus as u64;
                let (mut base, mut exp, mut acc) = (*value as u64, p - 2, 1u64);
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Scalar::Residue { value: acc as u32, modulus: *modulus }
            }
        })
    }

    /// Multiply by `(-1)^exp`.
    pub fn signed(self, exp: i64) -> Scalar {
        if exp.rem_euclid(2) == 0 {
            self
        } else {
            self.neg()
        }
    }

    /// Serialized form: `"p/q"` for rationals, the residue for 𝔽p.
    pub fn to_token(&self) -> String {
        match self {
            Scalar::Rational(r) => format!("{}/{}", r.numer(), r.denom()),
            Scalar::Residue { value, .. } => value.to_string(),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar fields agree")
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &rhs.neg()
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar fields agree")
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}
