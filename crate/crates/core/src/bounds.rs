//! Upper bounds on the `ell`-part of finite subgroups, reported as exponents.
//!
//! A zero bound is a nonexistence certificate for elements of order `ell`.
//! A positive bound certifies nothing: these are one-sided estimates.

use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, is_prime, valuation_u64};
use crate::error::{Error, Result};
use crate::field::{cyclotomic_invariants, FieldDescriptor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundContext {
    #[serde(rename = "GL_Q")]
    GlQ,
    #[serde(rename = "PGL")]
    Pgl,
    Torus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound: u32,
    pub context: BoundContext,
    /// `n` for GL_n(Q), the projective dimension for PGL, `dim T` for tori.
    pub dimension: u64,
    pub field: Option<FieldDescriptor>,
    pub ell: u64,
    pub certificate: Option<String>,
}

/// Minkowski's exponent `M(n, ell) = sum_k floor(n / (ell^k (ell - 1)))`.
pub fn minkowski_bound(n: u64, ell: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if !is_prime(ell) {
        return Err(Error::InvalidPrime { value: ell, expected: "a prime" });
    }
    let mut total = 0u64;
    let mut denom = Some(ell - 1);
    while let Some(d) = denom.filter(|&d| d <= n) {
        total += n / d;
        denom = d.checked_mul(ell);
    }
    Ok(total as u32)
}

pub fn minkowski_report(n: u64, ell: u64) -> Result<BoundReport> {
    Ok(BoundReport {
        bound: minkowski_bound(n, ell)?,
        context: BoundContext::GlQ,
        dimension: n,
        field: None,
        ell,
        certificate: None,
    })
}

/// Bound for finite subgroups of `PGL_{n+1}(k)`:
/// the sum of `m + nu_ell(s)` over `2 <= s <= n + 1` with `t | s`.
pub fn pgl_bound(n: u64, field: &FieldDescriptor, ell: u64) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("projective dimension must be >= 1".into()));
    }
    let inv = cyclotomic_invariants(field, ell)?;
    let mut bound = 0u32;
    for s in 2..=n + 1 {
        if s % inv.t == 0 {
            bound += inv.m + valuation_u64(s, ell)?;
        }
    }
    let certificate = (inv.t >= n + 2).then(|| {
        format!("t = {} >= n + 2 = {}: PGL_{}({}) has no element of order {}", inv.t, n + 2, n + 1, field, ell)
    });
    Ok(BoundReport { bound, context: BoundContext::Pgl, dimension: n, field: Some(*field), ell, certificate })
}

/// Bound `m * floor(dim / phi(t))` for finite subgroups of a `dim`-dimensional torus.
pub fn torus_bound(dim: u64, field: &FieldDescriptor, ell: u64) -> Result<BoundReport> {
    if dim == 0 {
        return Err(Error::InvalidArgument("torus dimension must be positive".into()));
    }
    let inv = cyclotomic_invariants(field, ell)?;
    let capacity = dim / euler_phi(inv.t);
    let certificate =
        (capacity == 0).then(|| format!("phi(t) = {} > dim = {dim}: no torus point of order {ell}", euler_phi(inv.t)));
    Ok(BoundReport {
        bound: inv.m * capacity as u32,
        context: BoundContext::Torus,
        dimension: dim,
        field: Some(*field),
        ell,
        certificate,
    })
}

/// `true` proves that `PGL_{n+1}(k)` has no element of order `ell`.
/// `false` means only that the bound is inconclusive.
pub fn pgl_order_excluded(n: u64, field: &FieldDescriptor, ell: u64) -> Result<bool> {
    Ok(pgl_bound(n, field, ell)?.bound == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(s: &str) -> FieldDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn minkowski_examples() {
        assert_eq!(minkowski_bound(2, 7).unwrap(), 0);
        assert_eq!(minkowski_bound(1, 2).unwrap(), 1);
        assert_eq!(minkowski_bound(6, 7).unwrap(), 1);
        // 2-part of |GL_2(Q)|-finite groups: D_8 has order 8 -> floor(2/1)+floor(2/2) = 3
        assert_eq!(minkowski_bound(2, 2).unwrap(), 3);
        assert_eq!(minkowski_bound(42, 7).unwrap(), 8);
    }

    #[test]
    fn minkowski_monotone_and_vanishing() {
        for ell in [2u64, 3, 5, 7, 11, 13] {
            let mut prev = 0;
            for n in 1..200 {
                let b = minkowski_bound(n, ell).unwrap();
                assert!(b >= prev);
                prev = b;
                if ell > n + 1 {
                    assert_eq!(b, 0);
                }
            }
        }
    }

    #[test]
    fn pgl_examples() {
        let q = field("Q");
        let r = pgl_bound(2, &q, 7).unwrap();
        assert_eq!(r.bound, 0);
        assert!(r.certificate.is_some());
        let r = pgl_bound(2, &field("F2"), 7).unwrap();
        assert_eq!(r.bound, 1);
        assert!(r.certificate.is_none());
        assert_eq!(pgl_bound(1, &q, 7).unwrap().bound, 0);
        assert!(pgl_order_excluded(2, &q, 5).unwrap());
        assert!(!pgl_order_excluded(2, &field("F2"), 7).unwrap());
        assert!(!pgl_order_excluded(5, &q, 7).unwrap());
        assert!(pgl_order_excluded(4, &q, 7).unwrap());
    }

    #[test]
    fn torus_examples() {
        let q = field("Q");
        assert_eq!(torus_bound(2, &q, 7).unwrap().bound, 1);
        assert_eq!(torus_bound(2, &q, 11).unwrap().bound, 0);
        for ell in [3u64, 5, 7, 11] {
            let k = FieldDescriptor::Cyclotomic(ell);
            for dim in 1..6 {
                assert_eq!(torus_bound(dim, &k, ell).unwrap().bound as u64, dim);
            }
        }
    }

    #[test]
    fn errors_propagate() {
        assert_eq!(pgl_bound(2, &field("F7"), 7).unwrap_err(), Error::EllIsCharacteristic(7));
        assert!(torus_bound(0, &field("Q"), 7).is_err());
    }
}
