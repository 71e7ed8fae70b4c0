//! Scalar rings: prime fields `F_p` for small primes, exact rationals, and
//! 64-bit floats. One tagged union covers all three so matrices, reps, and
//! reports stay monomorphic and serialize uniformly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default tolerance for floating-point comparisons.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-9;

/// Primes allowed as moduli. The field machinery is tuned for exhaustive
/// desk-scale enumeration, so moduli stop at 61.
pub const SUPPORTED_PRIMES: [u64; 18] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
];

/// Tag naming the ring a scalar or matrix lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ring {
    /// Integers mod `p` for a supported prime `p`.
    Fp(u64),
    /// Arbitrary-precision rationals.
    Rational,
    /// IEEE 754 doubles.
    Float,
}

impl Ring {
    /// The prime field `F_p`.
    ///
    /// Errors unless `p` is a prime at most 64.
    pub fn prime_field(p: u64) -> Result<Ring> {
        if SUPPORTED_PRIMES.contains(&p) {
            Ok(Ring::Fp(p))
        } else {
            Err(Error::Field(format!(
                "modulus {p} is not a prime in the supported range (max 61)"
            )))
        }
    }

    /// True for rings where equality is decidable without a tolerance.
    pub fn is_exact(self) -> bool {
        !matches!(self, Ring::Float)
    }

    pub fn name(self) -> String {
        match self {
            Ring::Fp(p) => format!("F{p}"),
            Ring::Rational => "Q".to_string(),
            Ring::Float => "R64".to_string(),
        }
    }

    /// Inverse of [`Ring::name`].
    pub fn from_name(name: &str) -> Result<Ring> {
        match name {
            "Q" => Ok(Ring::Rational),
            "R64" => Ok(Ring::Float),
            other => {
                let p = other
                    .strip_prefix('F')
                    .and_then(|s| s.parse::<u64>().ok())
                    .ok_or_else(|| Error::Ring(format!("unknown ring {other:?}")))?;
                Ring::prime_field(p)
            }
        }
    }
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// An element of one of the three supported rings.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Fp { p: u64, value: u64 },
    Rational(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Fp { p, .. } => Ring::Fp(*p),
            Scalar::Rational(_) => Ring::Rational,
            Scalar::Float(_) => Ring::Float,
        }
    }

    pub fn zero(ring: Ring) -> Scalar {
        Scalar::from_i64(ring, 0)
    }

    pub fn one(ring: Ring) -> Scalar {
        Scalar::from_i64(ring, 1)
    }

    /// Image of an integer in the ring.
    pub fn from_i64(ring: Ring, n: i64) -> Scalar {
        match ring {
            Ring::Fp(p) => Scalar::Fp {
                p,
                value: n.rem_euclid(p as i64) as u64,
            },
            Ring::Rational => Scalar::Rational(BigRational::from(BigInt::from(n))),
            Ring::Float => Scalar::Float(n as f64),
        }
    }

    /// The rational `num/den`. Panics if `den == 0`.
    pub fn rational(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Residue `value mod p` in `F_p`.
    pub fn fp(p: u64, value: u64) -> Scalar {
        Scalar::Fp { p, value: value % p }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 0,
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 1,
            Scalar::Rational(r) => r.is_one(),
            Scalar::Float(x) => *x == 1.0,
        }
    }

    fn ring_pair(&self, rhs: &Scalar, op: &str) -> (Ring, Ring) {
        let (a, b) = (self.ring(), rhs.ring());
        assert!(
            a == b,
            "scalar {op} across rings {a} and {b}; callers must check ring agreement first"
        );
        (a, b)
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        self.ring_pair(rhs, "addition");
        match (self, rhs) {
            (Scalar::Fp { p, value: a }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                p: *p,
                value: (a + b) % p,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a + b),
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.ring_pair(rhs, "subtraction");
        match (self, rhs) {
            (Scalar::Fp { p, value: a }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                p: *p,
                value: (a + p - b) % p,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a - b),
            _ => unreachable!(),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        self.ring_pair(rhs, "multiplication");
        match (self, rhs) {
            (Scalar::Fp { p, value: a }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                p: *p,
                // p <= 61, so the product fits a u64 with room to spare.
                value: (a * b) % p,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a * b),
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Fp { p, value } => Scalar::Fp {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }

    /// Multiplicative inverse. Errors on zero (and on floats equal to zero).
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Singular("inverse of zero".to_string()));
        }
        Ok(match self {
            Scalar::Fp { p, value } => Scalar::Fp {
                p: *p,
                value: fp_inv(*value, *p),
            },
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Float(x) => Scalar::Float(1.0 / x),
        })
    }

    /// Best-effort float image, used for norms and report rendering.
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Fp { value, .. } => *value as f64,
            Scalar::Rational(r) => r.to_f64().unwrap_or_else(|| {
                let n = r.numer().to_f64().unwrap_or(f64::NAN);
                let d = r.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            }),
            Scalar::Float(x) => *x,
        }
    }

    /// Magnitude used for pivoting and tolerance checks: float absolute
    /// value, rational absolute value as float, and 0/1 for prime fields
    /// (zero against nonzero is the only meaningful distinction there).
    pub fn magnitude(&self) -> f64 {
        match self {
            Scalar::Fp { value, .. } => {
                if *value == 0 {
                    0.0
                } else {
                    1.0
                }
            }
            Scalar::Rational(r) => Scalar::Rational(r.abs()).to_f64(),
            Scalar::Float(x) => x.abs(),
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Fp { value, .. } => write!(f, "{value}"),
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Inverse mod a prime by Fermat's little theorem. `a` must be nonzero mod `p`.
fn fp_inv(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}
