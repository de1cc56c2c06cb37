//! Ground rings and exact scalar arithmetic.
//!
//! All scalars are arbitrary-precision integers reduced to a canonical
//! representative: `0..p-1` for `Fp(p)`, `0..m-1` for `Zm(m)` and the
//! integer itself over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// The coefficient ring of an algebra or complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    /// Prime field F_p.
    Fp(u64),
    /// The integers.
    Z,
    /// Z/m for m >= 2, not necessarily prime.
    Zm(u64),
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

impl Ring {
    pub fn validate(&self) -> Result<()> {
        match self {
            Ring::Fp(p) if !is_prime(*p) => Err(Error::InvalidPresentation(format!(
                "{p} is not prime; use Z/{p} for a non-prime modulus"
            ))),
            Ring::Zm(m) if *m < 2 => Err(Error::InvalidPresentation(format!(
                "modulus must be at least 2, got {m}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::Fp(_))
    }

    /// Characteristic of the ring; 0 for Z.
    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Fp(p) => *p,
            Ring::Z => 0,
            Ring::Zm(m) => *m,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Ring::Fp(p) => Some(*p),
            Ring::Zm(m) => Some(*m),
            Ring::Z => None,
        }
    }

    /// Reduce an integer to the canonical representative.
    pub fn reduce(&self, v: BigInt) -> BigInt {
        match self.modulus() {
            None => v,
            Some(m) => {
                let m = BigInt::from(m);
                let r = v.mod_floor(&m);
                r
            }
        }
    }

    pub fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(-a)
    }

    /// Multiplicative inverse of a unit; `None` when `a` is not a unit.
    pub fn inv(&self, a: &BigInt) -> Option<BigInt> {
        match self.modulus() {
            None => {
                if a.abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            Some(m) => {
                let m = BigInt::from(m);
                let e = a.extended_gcd(&m);
                if e.gcd.is_one() {
                    Some(self.reduce(e.x))
                } else {
                    None
                }
            }
        }
    }

    pub fn is_unit(&self, a: &BigInt) -> bool {
        self.inv(a).is_some()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Fp(p) => write!(f, "F{p}"),
            Ring::Z => write!(f, "Z"),
            Ring::Zm(m) => write!(f, "Z/{m}"),
        }
    }
}

/// A scalar together with its ring, reduced to the canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient {
    pub ring: Ring,
    pub value: BigInt,
}

impl Coefficient {
    pub fn new(ring: Ring, value: impl Into<BigInt>) -> Self {
        let value = ring.reduce(value.into());
        Coefficient { ring, value }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
