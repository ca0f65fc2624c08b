use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;

/// Descriptor of the ground field: the rationals, or Z/p for a prime p < 2^31.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn validate(&self) -> Result<(), ScalarError> {
        match self {
            Field::Rationals => Ok(()),
            Field::Prime(p) => {
                if *p >= (1 << 31) {
                    return Err(ScalarError::ModulusTooLarge(*p));
                }
                if *p < 2 || !is_prime(*p) {
                    return Err(ScalarError::NotPrime(*p));
                }
                Ok(())
            }
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

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{}", p),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum ScalarError {
    #[error("modulus {0} exceeds 2^31")]
    ModulusTooLarge(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
    #[error("mixed fields in scalar arithmetic")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (BigRational maintains this); residues live in [0, p).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod { value: 0, p },
        }
    }

    pub fn one(field: Field) -> Scalar {
        match field {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::Prime(p) => Scalar::Mod { value: 1 % p, p },
        }
    }

    pub fn from_i64(n: i64, field: Field) -> Scalar {
        match field {
            Field::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Mod { value: r, p }
            }
        }
    }

    /// a/b as a field element; panics if b maps to zero in the field.
    pub fn from_fraction(a: i64, b: i64, field: Field) -> Scalar {
        let num = Scalar::from_i64(a, field);
        let den = Scalar::from_i64(b, field);
        num.mul(&den.inv().expect("fraction denominator is zero in field"))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, p } => *value == 1 % p,
        }
    }

    fn check(&self, other: &Scalar) {
        debug_assert!(
            self.field() == other.field(),
            "scalar arithmetic across different fields"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + b) % p,
                p: *p,
            },
            _ => panic!("scalar arithmetic across different fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => panic!("scalar arithmetic across different fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rat(a) => Some(Scalar::Rat(a.recip())),
            Scalar::Mod { value, p } => {
                // Fermat: value^(p-2) mod p.
                let mut result: u128 = 1;
                let mut base: u128 = *value as u128;
                let mut e = p - 2;
                let m = *p as u128;
                while e > 0 {
                    if e & 1 == 1 {
                        result = result * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Some(Scalar::Mod {
                    value: result as u64,
                    p: *p,
                })
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        let inv = other.inv().ok_or(ScalarError::DivisionByZero)?;
        Ok(self.mul(&inv))
    }

    pub fn pow(&self, n: i64) -> Scalar {
        let field = self.field();
        if n == 0 {
            return Scalar::one(field);
        }
        let base = if n < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = Scalar::one(field);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Parses "a" or "a/b" (integers, optional sign) into the given field.
    pub fn parse(s: &str, field: Field) -> Result<Scalar, ScalarError> {
        let bad = || ScalarError::Parse(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt, ScalarError> {
            if t.is_empty() {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (parse_int(a)?, parse_int(b)?),
            None => (parse_int(s)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        match field {
            Field::Rationals => Ok(Scalar::Rat(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let to_res = |x: &BigInt| -> u64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    // r in [0, p), p < 2^31, so this fits.
                    r.to_string().parse::<u64>().unwrap()
                };
                let n = Scalar::Mod {
                    value: to_res(&num),
                    p,
                };
                let d = Scalar::Mod {
                    value: to_res(&den),
                    p,
                };
                n.div(&d).map_err(|_| bad())
            }
        }
    }

    /// Rational value as (numerator, denominator) strings, for reports.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{}", value),
        }
    }
}
