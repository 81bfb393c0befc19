use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponents of `x`, `y`, `z`.
pub type Exponent = [u32; 3];

/// Sparse integer polynomial in `x, y, z`, not necessarily homogeneous.
/// Used by the parser before homogeneity is checked.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn monomial(e: Exponent, c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        let mut p = Self::zero();
        p.add_term(e, BigInt::one());
        p
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigInt> {
        &self.terms
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::constant(BigInt::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `None` if terms have different total degrees, `Some(None)` for zero.
    pub fn homogeneous_degree(&self) -> Option<Option<u32>> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            None => Some(None),
            Some(d) => degrees.all(|x| x == d).then_some(Some(d)),
        }
    }

    pub fn eval(&self, p: &[BigInt; 3]) -> BigInt {
        self.terms.iter().map(|(e, c)| c * p[0].pow(e[0]) * p[1].pow(e[1]) * p[2].pow(e[2])).sum()
    }

    pub(crate) fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub(crate) fn min_exponent(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |m, e| [m[0].min(e[0]), m[1].min(e[1]), m[2].min(e[2])]))
    }

    /// Divides every coefficient by `c` and every monomial by `x^a y^b z^c`.
    /// Caller guarantees exactness.
    pub(crate) fn divide(&self, c: &BigInt, mono: Exponent) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, v)| ([e[0] - mono[0], e[1] - mono[1], e[2] - mono[2]], v / c)).collect(),
        }
    }

    pub(crate) fn max_digits(&self) -> usize {
        self.terms.values().map(|c| c.magnitude().bits() as usize * 30103 / 100000 + 1).max().unwrap_or(0)
    }

    pub(crate) fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || e.iter().all(|&k| k == 0) {
                factors.push(mag.to_string());
            }
            for (name, &k) in ["x", "y", "z"].iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push((*name).to_string()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Homogeneous polynomial of a fixed degree. The zero polynomial keeps its
/// nominal degree so that map components stay aligned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPoly {
    degree: u32,
    poly: Poly,
}

impl HomogeneousPoly {
    /// `None` if `poly` has terms of different degrees, or a nonzero
    /// polynomial's degree differs from `degree`.
    pub fn new(poly: Poly, degree: u32) -> Option<Self> {
        match poly.homogeneous_degree()? {
            Some(d) if d != degree => None,
            _ => Some(Self { degree, poly }),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}
