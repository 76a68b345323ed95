//! Exact coefficient arithmetic for the two supported fields: the rationals
//! with arbitrary-precision integers, and prime fields Z/p for word-size p.
//!
//! Values are immutable; mixing elements of different fields panics, since it
//! is always a programming error (the parser and ring constructors keep every
//! computation inside a single field).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Tag identifying a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// The rational numbers.
    Rational,
    /// The prime field Z/p, p prime and p < 2^63.
    Prime(u64),
}

impl Field {
    pub fn zero(self) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::zero()),
            Field::Prime(p) => FieldElement::Prime { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::one()),
            Field::Prime(p) => FieldElement::Prime { value: 1 % p, modulus: p },
        }
    }

    pub fn from_i64(self, n: i64) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                FieldElement::Prime { value: r, modulus: p }
            }
        }
    }

    /// Builds an element from a fraction of big integers. Over Z/p the
    /// denominator is inverted; a denominator divisible by p is rejected.
    pub fn from_ratio(self, num: BigInt, den: BigInt) -> Result<FieldElement> {
        if den.is_zero() {
            return Err(Error::InvalidProblem("zero denominator".into()));
        }
        match self {
            Field::Rational => Ok(FieldElement::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pm = BigInt::from(p);
                let n = num.mod_floor_big(&pm);
                let d = den.mod_floor_big(&pm);
                let d = FieldElement::Prime { value: d, modulus: p };
                let n = FieldElement::Prime { value: n, modulus: p };
                match d.inverse() {
                    Some(di) => Ok(&n * &di),
                    None => Err(Error::InvalidProblem(format!(
                        "denominator not invertible mod {p}"
                    ))),
                }
            }
        }
    }

    /// (i!)^{-1} in the field. Over Z/p this requires i < p.
    pub fn inv_factorial(self, i: u64) -> Result<FieldElement> {
        match self {
            Field::Rational => {
                let mut f = BigInt::one();
                for k in 2..=i {
                    f *= BigInt::from(k);
                }
                Ok(FieldElement::Rational(BigRational::new(BigInt::one(), f)))
            }
            Field::Prime(p) => {
                if i >= p {
                    return Err(Error::DividedPowerUndefined(i));
                }
                let mut f: u64 = 1 % p;
                for k in 2..=i {
                    f = mul_mod(f, k % p, p);
                }
                let fe = FieldElement::Prime { value: f, modulus: p };
                fe.inverse().ok_or(Error::DividedPowerUndefined(i))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "ZZ/{p}"),
        }
    }
}

trait ModFloor {
    fn mod_floor_big(&self, m: &BigInt) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> u64 {
        use num_integer::Integer;
        let r = self.mod_floor(m);
        let (_, digits) = r.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => unreachable!("residue below word-size modulus"),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// An element of one of the supported fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Prime { value, modulus } => *value == 1 % *modulus,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<FieldElement> {
        match self {
            FieldElement::Rational(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(FieldElement::Rational(r.recip()))
                }
            }
            FieldElement::Prime { value, modulus } => {
                if *value == 0 {
                    None
                } else {
                    Some(FieldElement::Prime {
                        value: inv_mod(*value, *modulus),
                        modulus: *modulus,
                    })
                }
            }
        }
    }
}

/// Extended Euclid; requires gcd(a, p) = 1.
fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "element not invertible");
    t0.rem_euclid(p as i128) as u64
}

fn check_same(a: &FieldElement, b: &FieldElement) {
    assert_eq!(
        a.field(),
        b.field(),
        "arithmetic between elements of different fields"
    );
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        check_same(self, rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a + b)
            }
            (
                FieldElement::Prime { value: a, modulus: p },
                FieldElement::Prime { value: b, .. },
            ) => FieldElement::Prime {
                value: (a + b) % p,
                modulus: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        check_same(self, rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a - b)
            }
            (
                FieldElement::Prime { value: a, modulus: p },
                FieldElement::Prime { value: b, .. },
            ) => FieldElement::Prime {
                value: (a + p - b) % p,
                modulus: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        check_same(self, rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a * b)
            }
            (
                FieldElement::Prime { value: a, modulus: p },
                FieldElement::Prime { value: b, .. },
            ) => FieldElement::Prime {
                value: mul_mod(*a, *b, *p),
                modulus: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        let inv = rhs.inverse().expect("division by zero");
        self * &inv
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
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
            FieldElement::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl FieldElement {
    /// True if the rational value is negative. Residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_negative(),
            FieldElement::Prime { .. } => false,
        }
    }
}
