use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default modulus for prime-field mode, 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Coefficient field of a ring context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldMode {
    Rational,
    Prime(u64),
}

impl FieldMode {
    pub fn zero(&self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match *self {
            FieldMode::Rational => Coeff::Q(BigRational::from_integer(BigInt::from(v))),
            FieldMode::Prime(p) => Coeff::Fp {
                v: v.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match *self {
            FieldMode::Rational => Coeff::Q(BigRational::from_integer(v.clone())),
            FieldMode::Prime(p) => Coeff::Fp {
                v: v.mod_floor(&BigInt::from(p)).to_u64().unwrap_or(0),
                p,
            },
        }
    }

    /// Maps `num/den` into the field; fails when `den` vanishes there.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match *self {
            FieldMode::Rational => Ok(Coeff::Q(BigRational::new(num.clone(), den.clone()))),
            FieldMode::Prime(_) => self.from_bigint(num).div(&self.from_bigint(den)),
        }
    }

    pub fn name(&self) -> String {
        match self {
            FieldMode::Rational => "Q".to_string(),
            FieldMode::Prime(p) => format!("Fp{p}"),
        }
    }
}

/// Exact coefficient: a reduced rational, or a residue in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn invmod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(powmod(a, p - 2, p))
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Coeff {
    pub fn mode(&self) -> FieldMode {
        match self {
            Coeff::Q(_) => FieldMode::Rational,
            Coeff::Fp { p, .. } => FieldMode::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(r) => r.is_zero(),
            Coeff::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(r) => r.is_one(),
            Coeff::Fp { v, .. } => *v == 1,
        }
    }

    fn mismatch(&self, o: &Coeff) -> Error {
        Error::ModeMismatch(self.mode().name(), o.mode().name())
    }

    pub fn checked_add(&self, o: &Coeff) -> Result<Coeff> {
        match (self, o) {
            (Coeff::Q(a), Coeff::Q(b)) => Ok(Coeff::Q(a + b)),
            (Coeff::Fp { v: a, p }, Coeff::Fp { v: b, p: q }) if p == q => Ok(Coeff::Fp {
                v: (a + b) % p,
                p: *p,
            }),
            _ => Err(self.mismatch(o)),
        }
    }

    pub fn checked_sub(&self, o: &Coeff) -> Result<Coeff> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &Coeff) -> Result<Coeff> {
        match (self, o) {
            (Coeff::Q(a), Coeff::Q(b)) => Ok(Coeff::Q(a * b)),
            (Coeff::Fp { v: a, p }, Coeff::Fp { v: b, p: q }) if p == q => Ok(Coeff::Fp {
                v: mulmod(*a, *b, *p),
                p: *p,
            }),
            _ => Err(self.mismatch(o)),
        }
    }

    pub fn div(&self, o: &Coeff) -> Result<Coeff> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.checked_mul(&o.inv()?)
    }

    pub fn inv(&self) -> Result<Coeff> {
        match self {
            Coeff::Q(r) if !r.is_zero() => Ok(Coeff::Q(r.recip())),
            Coeff::Fp { v, p } => invmod(*v, *p)
                .map(|v| Coeff::Fp { v, p: *p })
                .ok_or(Error::DivisionByZero),
            _ => Err(Error::DivisionByZero),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Q(r) => Coeff::Q(-r),
            Coeff::Fp { v, p } => Coeff::Fp {
                v: (p - v) % p,
                p: *p,
            },
        }
    }

    /// Internal arithmetic between coefficients already known to share a mode.
    pub(crate) fn add(&self, o: &Coeff) -> Coeff {
        self.checked_add(o).expect("coefficient mode mismatch")
    }

    pub(crate) fn mul(&self, o: &Coeff) -> Coeff {
        self.checked_mul(o).expect("coefficient mode mismatch")
    }

    /// True for rationals with a negative sign; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Coeff::Q(r) if r.is_negative())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Q(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coeff::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}
