//! Exact scalars over ℚ or a prime field F_p, chosen at runtime.
//!
//! Values carry their field with them. Mixing values from two different
//! fields is a programming error and panics.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Largest modulus accepted for a prime field.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds `F_p`, rejecting composites and moduli above `2^31`.
    pub fn prime(p: u64) -> Result<Field, Error> {
        if p < 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "{p} is not a prime in [2, 2^31]"
            )));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
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
            Field::Prime(p) => Scalar::Modular {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den`, or `None` when `den` vanishes in this field.
    pub fn from_ratio(self, num: i64, den: i64) -> Option<Scalar> {
        self.from_i64(den).inv().map(|d| self.from_i64(num) * d)
    }

    /// `1/k!`, if it exists in this field.
    pub fn inverse_factorial(self, k: usize) -> Option<Scalar> {
        let mut f = self.one();
        for i in 2..=k {
            f = f * self.from_i64(i as i64);
        }
        f.inv()
    }

    /// Every element of a prime field in the order `0, 1, …, p−1`.
    ///
    /// Panics over ℚ.
    pub fn elements(self) -> Vec<Scalar> {
        match self {
            Field::Rational => panic!("ℚ cannot be enumerated"),
            Field::Prime(p) => (0..p)
                .map(|v| Scalar::Modular {
                    value: v,
                    modulus: p,
                })
                .collect(),
        }
    }

    /// Parses `"p/q"`, `"-3"` and similar. Over F_p, rationals are reduced.
    pub fn parse(self, s: &str) -> Result<Scalar, Error> {
        let bad = || Error::Parse(format!("not a scalar: {s:?}"));
        let q = BigRational::from_str(s.trim()).map_err(|_| bad())?;
        match self {
            Field::Rational => Ok(Scalar::Rational(q)),
            Field::Prime(p) => reduce_rational(&q, p).ok_or_else(bad),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce_rational(q: &BigRational, p: u64) -> Option<Scalar> {
    let pb = BigInt::from(p);
    let num = q.numer().mod_floor(&pb).to_u64()?;
    let den = q.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let field = Field::Prime(p);
    Some(
        Scalar::Modular {
            value: num,
            modulus: p,
        } * field.one().with_value(den).inv()?,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Always in lowest terms with positive denominator (maintained by `num`).
    Rational(BigRational),
    Modular {
        value: u64,
        modulus: u64,
    },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    fn with_value(&self, v: u64) -> Scalar {
        match self {
            Scalar::Modular { modulus, .. } => Scalar::Modular {
                value: v % modulus,
                modulus: *modulus,
            },
            Scalar::Rational(_) => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => (!q.is_zero()).then(|| Scalar::Rational(q.recip())),
            Scalar::Modular { value, modulus } => {
                if *value == 0 {
                    return None;
                }
                Some(Scalar::Modular {
                    value: pow_mod(*value, modulus - 2, *modulus),
                    modulus: *modulus,
                })
            }
        }
    }

    /// `self += a * b`, the inner loop of every tensor contraction.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (self, a, b) {
            (
                Scalar::Modular { value, modulus },
                Scalar::Modular {
                    value: x,
                    modulus: m1,
                },
                Scalar::Modular {
                    value: y,
                    modulus: m2,
                },
            ) => {
                assert!(*modulus == *m1 && *m1 == *m2, "field mismatch");
                *value =
                    ((*value as u128 + (*x as u128) * (*y as u128)) % (*modulus as u128)) as u64;
            }
            (Scalar::Rational(s), Scalar::Rational(x), Scalar::Rational(y)) => {
                if !x.is_zero() && !y.is_zero() {
                    *s += x * y;
                }
            }
            _ => panic!("field mismatch"),
        }
    }

    /// The canonical integer lift `0..p` of an F_p element, as a rational.
    pub fn lift(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Modular { value, .. } => {
                Scalar::Rational(BigRational::from_integer(BigInt::from(*value)))
            }
        }
    }

    /// Reduces a rational modulo `p`; `None` if `p` divides the denominator.
    pub fn reduce(&self, p: u64) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => reduce_rational(q, p),
            Scalar::Modular { modulus, .. } => (*modulus == p).then(|| self.clone()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular { .. } => None,
        }
    }

    /// Integer representative for F_p values.
    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Modular { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let m128 = m as u128;
    let mut base = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $modop:expr, $ratop:tt) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a $ratop b),
                    (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                        assert_eq!(p, q, "field mismatch");
                        let f: fn(u128, u128, u128) -> u128 = $modop;
                        Scalar::Modular { value: f(*a as u128, *b as u128, *p as u128) as u64, modulus: *p }
                    }
                    _ => panic!("field mismatch"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, |a, b, p| (a + b) % p, +);
binop!(Sub, sub, |a, b, p| (a + p - b) % p, -);
binop!(Mul, mul, |a, b, p| a * b % p, *);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (
                Scalar::Modular { value, modulus },
                Scalar::Modular {
                    value: b,
                    modulus: q,
                },
            ) => {
                assert_eq!(*modulus, *q, "field mismatch");
                *value = ((*value as u128 + *b as u128) % *modulus as u128) as u64;
            }
            _ => panic!("field mismatch"),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self += &(-rhs);
    }
}
