//! Symbolic base-field descriptors and their cyclotomic invariants.
//!
//! Nothing here performs arithmetic inside the field. Every downstream
//! computation depends on the field only through its characteristic and
//! the pair `(t, m)` attached to an odd prime `ell`:
//!
//! * `t` is the degree of `k(zeta_ell)` over `k`;
//! * `m` is the largest `d` with `zeta_{ell^d}` contained in `k(zeta_ell)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{self, euler_phi, is_prime, multiplicative_order};
use crate::error::{Error, Result};

/// `q^t - 1` must stay below `10^MAX_DIGITS`.
pub const MAX_DIGITS: usize = 200;

/// Base fields supported by the library: `Q`, `F_q` and `Q(zeta_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Rationals,
    FiniteField { p: u64, e: u32 },
    Cyclotomic(u64),
}

impl FieldDescriptor {
    pub fn finite(q: u64) -> Result<Self> {
        let (p, e) = arith::prime_power(q).ok_or_else(|| Error::InvalidField(format!("F{q}")))?;
        Ok(FieldDescriptor::FiniteField { p, e })
    }

    pub fn cyclotomic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidField("Q(zeta0)".into()));
        }
        Ok(FieldDescriptor::Cyclotomic(n))
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldDescriptor::FiniteField { p, .. } => p,
            _ => 0,
        }
    }

    /// Field size for finite fields.
    pub fn order(&self) -> Option<u64> {
        match *self {
            FieldDescriptor::FiniteField { p, e } => Some(p.pow(e)),
            _ => None,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::FiniteField { p, e } => write!(f, "F{}", p.pow(e)),
            FieldDescriptor::Cyclotomic(n) => write!(f, "Q(zeta{n})"),
        }
    }
}

fn parse_positive(digits: &str, whole: &str) -> Result<u64> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidField(whole.to_string()));
    }
    digits.parse().map_err(|_| Error::InvalidField(whole.to_string()))
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        if let Some(inner) = s.strip_prefix("Q(zeta").and_then(|r| r.strip_suffix(')')) {
            let n = parse_positive(inner, s)?;
            return FieldDescriptor::cyclotomic(n).map_err(|_| Error::InvalidField(s.into()));
        }
        if let Some(digits) = s.strip_prefix('F') {
            let q = parse_positive(digits, s)?;
            return FieldDescriptor::finite(q).map_err(|_| Error::InvalidField(s.into()));
        }
        Err(Error::InvalidField(s.to_string()))
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicInvariants {
    pub ell: u64,
    pub t: u64,
    pub m: u32,
    pub characteristic: u64,
}

/// Rejects `ell` unless it is an odd prime different from the characteristic.
pub fn check_odd_prime(field: &FieldDescriptor, ell: u64) -> Result<()> {
    if !is_prime(ell) {
        return Err(Error::InvalidPrime { value: ell, expected: "a prime" });
    }
    if ell == 2 {
        return Err(Error::InvalidPrime { value: ell, expected: "an odd prime" });
    }
    if ell == field.characteristic() {
        return Err(Error::EllIsCharacteristic(ell));
    }
    Ok(())
}

/// `q^t - 1` with the size cap applied.
fn q_power_minus_one(q: u64, t: u64) -> Result<BigInt> {
    let bits = 64 - q.leading_zeros() as u64;
    // 10^200 < 2^665, so anything with more than 665 bits is over the cap
    if t.saturating_mul(bits.saturating_sub(1)) > 665 {
        return Err(Error::CapExceeded(format!("{q}^{t} exceeds 10^{MAX_DIGITS}")));
    }
    let value = arith::big_pow(q, t);
    if value.to_string().len() > MAX_DIGITS {
        return Err(Error::CapExceeded(format!("{q}^{t} exceeds 10^{MAX_DIGITS}")));
    }
    Ok(value - BigInt::one())
}

pub fn cyclotomic_invariants(field: &FieldDescriptor, ell: u64) -> Result<CyclotomicInvariants> {
    check_odd_prime(field, ell)?;
    let characteristic = field.characteristic();
    let (t, m) = match *field {
        FieldDescriptor::Rationals => (ell - 1, 1),
        FieldDescriptor::FiniteField { p, e } => {
            let q = p.pow(e);
            let t = multiplicative_order(q % ell, ell)?;
            let m = arith::l_adic_valuation(&q_power_minus_one(q, t)?, ell)?;
            // Exponent ell - 1 gives the same valuation; checked exactly while
            // the power stays small enough to write out.
            let bits = 64 - q.leading_zeros() as u64;
            if (ell - 1).saturating_mul(bits) <= 1 << 17 {
                let long = arith::big_pow(q, ell - 1) - BigInt::one();
                let m_long = arith::l_adic_valuation(&long, ell)?;
                assert_eq!(m, m_long, "nu_ell(q^t - 1) != nu_ell(q^(ell-1) - 1) for q = {q}, ell = {ell}");
            }
            (t, m)
        }
        FieldDescriptor::Cyclotomic(n) => {
            // zeta_{ell^d} lies in Q(zeta_N), N = lcm(n, ell), iff ell^d | N
            let t = euler_phi(arith::lcm(n, ell)) / euler_phi(n);
            let m = arith::valuation_u64(n, ell)?.max(1);
            (t, m)
        }
    };
    Ok(CyclotomicInvariants { ell, t, m, characteristic })
}
