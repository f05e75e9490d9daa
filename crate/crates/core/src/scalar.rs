//! Exact field elements.
//!
//! Two modes are supported: arbitrary precision rationals and a prime
//! field `F_p`. A [`Field`] value fixes the mode and produces constants;
//! [`Scalar`] values carry their mode so arithmetic never needs a context.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Default modulus for the prime field mode.
pub const DEFAULT_PRIME: u64 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Default for Field {
    fn default() -> Self {
        Field::Rational
    }
}

impl Field {
    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::P {
                v: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    /// `num / den` in this field. Panics if `den` is zero in the field.
    pub fn ratio(&self, num: i64, den: i64) -> Scalar {
        self.from_i64(num).div(&self.from_i64(den))
    }

    /// Returns true when `p` is a usable prime modulus.
    pub fn is_valid(&self) -> bool {
        match *self {
            Field::Rational => true,
            Field::Prime(p) => p >= 2 && p < (1 << 31) && is_prime(p),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{}", p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    P { v: u64, p: u64 },
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::P { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::P { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::P { v, .. } => *v == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero scalar");
        match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::P { v, p } => Scalar::P {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            },
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self * &other.inv()
    }

    /// Parses `"3"`, `"-1/2"` in the given field.
    pub fn parse(field: Field, s: &str) -> Option<Scalar> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().ok()?;
        let den: BigInt = den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        match field {
            Field::Rational => Some(Scalar::Q(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    u64::try_from(r).unwrap_or(0)
                };
                let d = reduce(&den);
                if d == 0 {
                    return None;
                }
                let n = Scalar::P { v: reduce(&num), p };
                Some(n.div(&Scalar::P { v: d, p }))
            }
        }
    }

    /// Small integer value if the scalar is one (used for compact display).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(q) if q.is_integer() => i64::try_from(q.to_integer()).ok(),
            Scalar::Q(_) => None,
            Scalar::P { v, .. } => Some(*v as i64),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::P { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::P { v, .. } => write!(f, "{}", v),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $qop:tt, $pop:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a $qop b),
                    (Scalar::P { v: a, p }, Scalar::P { v: b, p: q }) => {
                        assert_eq!(p, q, "mixed prime fields");
                        let f: fn(u64, u64, u64) -> u64 = $pop;
                        Scalar::P { v: f(*a, *b, *p), p: *p }
                    }
                    _ => panic!("mixed field modes"),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +, |a, b, p| (a + b) % p);
binop!(Sub, sub, -, |a, b, p| (a + p - b) % p);
binop!(Mul, mul, *, |a, b, p| a * b % p);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(-q.clone()),
            Scalar::P { v, p } => Scalar::P {
                v: (p - v) % p,
                p: *p,
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic() {
        let f = Field::Rational;
        let half = f.ratio(1, 2);
        assert_eq!(&half + &half, f.one());
        assert_eq!(half.inv(), f.from_i64(2));
        assert_eq!(Scalar::parse(f, "-3/6"), Some(-f.ratio(1, 2)));
    }

    #[test]
    fn prime_arithmetic() {
        let f = Field::Prime(7);
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert_eq!(&f.from_i64(3) * &f.from_i64(3).inv(), f.one());
        assert_eq!(Scalar::parse(f, "1/2"), Some(f.from_i64(4)));
        assert!(Field::Prime(DEFAULT_PRIME).is_valid());
        assert!(!Field::Prime(32004).is_valid());
    }
}
