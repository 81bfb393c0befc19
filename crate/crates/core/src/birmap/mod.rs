//! Plane Cremona maps as triples of homogeneous integer polynomials.
//!
//! Equality is projective: two maps agree when all 2x2 minors of the stacked
//! triples vanish identically. Representatives are cleared of integer content
//! and common monomial factors only, so composed maps may carry a common
//! polynomial factor. The minors test does not care.

mod gcd;
mod parse;
mod poly;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use parse::{parse_poly, parse_triple};
pub use poly::{Exponent, HomogeneousPoly, Poly};

/// Size cap on coefficients produced by composition, in decimal digits.
pub const MAX_COEFFICIENT_DIGITS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneRationalMap {
    components: [HomogeneousPoly; 3],
}

impl PlaneRationalMap {
    /// Builds and normalizes a map. Components must be homogeneous of one
    /// common degree (zero components are allowed, not all three).
    pub fn new(components: [Poly; 3]) -> Result<Self> {
        let mut degree = None;
        for (i, c) in components.iter().enumerate() {
            match c.homogeneous_degree() {
                None => {
                    return Err(Error::Parse(format!("component {} is not homogeneous", i + 1)));
                }
                Some(None) => {}
                Some(Some(d)) => match degree {
                    None => degree = Some(d),
                    Some(prev) if prev != d => {
                        return Err(Error::Parse(format!("components have different degrees ({prev} and {d})")));
                    }
                    _ => {}
                },
            }
        }
        let Some(_) = degree else {
            return Err(Error::InvalidArgument("all three components are zero".into()));
        };
        Self::normalized(components)
    }

    fn normalized(components: [Poly; 3]) -> Result<Self> {
        let content = components.iter().fold(BigInt::zero(), |g, p| g.gcd(&p.content()));
        if content.is_zero() {
            return Err(Error::InvalidArgument("map is identically zero".into()));
        }
        let mono = components
            .iter()
            .filter_map(Poly::min_exponent)
            .reduce(|m, e| [m[0].min(e[0]), m[1].min(e[1]), m[2].min(e[2])])
            .expect("nonzero map has a term");
        let lead_negative = components.iter().find_map(Poly::leading_coefficient).is_some_and(|c| c.is_negative());
        let divisor = if lead_negative { -content } else { content };
        let cleared = components.map(|p| p.divide(&divisor, mono));
        let degree = cleared.iter().find_map(|p| p.homogeneous_degree().flatten()).expect("nonzero map has a degree");
        if degree == 0 {
            return Err(Error::InvalidArgument("map is constant".into()));
        }
        if let Some(digits) = cleared.iter().map(Poly::max_digits).max() {
            if digits > MAX_COEFFICIENT_DIGITS {
                return Err(Error::CapExceeded(format!(
                    "coefficient with about {digits} digits exceeds the {MAX_COEFFICIENT_DIGITS}-digit cap"
                )));
            }
        }
        let components = cleared.map(|p| HomogeneousPoly::new(p, degree).expect("degree checked"));
        Ok(Self { components })
    }

    pub fn identity() -> Self {
        Self::new([Poly::var(0), Poly::var(1), Poly::var(2)]).expect("identity is valid")
    }

    /// The quadratic map `(x, y, z) -> (xz, x(z - y), z(x - y))`, of order 5.
    pub fn order_five_witness() -> Self {
        "x*z, x*(z-y), z*(x-y)".parse().expect("witness parses")
    }

    /// The standard quadratic involution `(yz, xz, xy)`.
    pub fn standard_quadratic_involution() -> Self {
        "y*z, x*z, x*y".parse().expect("involution parses")
    }

    pub fn degree(&self) -> u32 {
        self.components[0].degree()
    }

    pub fn components(&self) -> &[HomogeneousPoly; 3] {
        &self.components
    }

    pub fn monomial_count(&self) -> usize {
        self.components.iter().map(|c| c.poly().terms().len()).sum()
    }

    /// Removes the common polynomial factor of the three components.
    pub fn reduced(&self) -> Self {
        let polys = self.polys();
        let g = gcd::homogeneous_gcd(&polys);
        if g.homogeneous_degree().flatten().unwrap_or(0) == 0 {
            return self.clone();
        }
        let quotients = polys.map(|p| gcd::poly_div_exact(p, &g).expect("gcd divides"));
        Self::normalized(quotients).expect("quotient of a valid map is valid")
    }

    fn polys(&self) -> [&Poly; 3] {
        [self.components[0].poly(), self.components[1].poly(), self.components[2].poly()]
    }
}

impl FromStr for PlaneRationalMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_triple(s)?)
    }
}

impl fmt::Display for PlaneRationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.components;
        write!(f, "({a}, {b}, {c})")
    }
}

impl Serialize for PlaneRationalMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `f ∘ g`: substitutes the components of `g` into `f`, then clears.
pub fn compose(f: &PlaneRationalMap, g: &PlaneRationalMap) -> Result<PlaneRationalMap> {
    let d = f.degree();
    let gp = g.polys();
    // powers[i][k] = g_i^k
    let powers: Vec<Vec<Poly>> = gp
        .iter()
        .map(|p| {
            let mut v = vec![Poly::constant(BigInt::one())];
            for k in 1..=d as usize {
                v.push(v[k - 1].mul(p));
            }
            v
        })
        .collect();
    let substituted = f.polys().map(|fi| {
        let mut acc = Poly::zero();
        for (e, c) in fi.terms() {
            let term = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize])
                .mul(&Poly::constant(c.clone()));
            acc = acc.add(&term);
        }
        acc
    });
    if substituted.iter().all(Poly::is_zero) {
        return Err(Error::InvalidArgument(format!("composition of {f} and {g} is identically zero")));
    }
    PlaneRationalMap::normalized(substituted)
}

/// All three minors `f_i g_j - f_j g_i` vanish identically.
pub fn projectively_equal(f: &PlaneRationalMap, g: &PlaneRationalMap) -> bool {
    let (a, b) = (f.polys(), g.polys());
    [(0, 1), (0, 2), (1, 2)].iter().all(|&(i, j)| a[i].mul(b[j]).sub(&a[j].mul(b[i])).is_zero())
}

/// Least `k <= max_k` with `f^k` projectively the identity; `Ok(None)` if none.
pub fn projective_order(f: &PlaneRationalMap, max_k: u32) -> Result<Option<u32>> {
    if max_k == 0 {
        return Err(Error::InvalidArgument("max_k must be at least 1".into()));
    }
    let id = PlaneRationalMap::identity();
    let mut power = f.clone();
    for k in 1..=max_k {
        if projectively_equal(&power, &id) {
            return Ok(Some(k));
        }
        if k < max_k {
            power = compose(f, &power)?;
        }
    }
    Ok(None)
}

/// The degrees of `f, f^2, ..., f^k` and whether each is the identity.
pub fn power_trace(f: &PlaneRationalMap, k: u32) -> Result<Vec<(u32, bool)>> {
    let id = PlaneRationalMap::identity();
    let mut out = Vec::new();
    let mut power = f.clone();
    for i in 1..=k {
        out.push((power.degree(), projectively_equal(&power, &id)));
        if i < k {
            power = compose(f, &power)?;
        }
    }
    Ok(out)
}

/// `f^(n-1)` with its common factor removed, where `n` is the order of `f`.
pub fn inverse(f: &PlaneRationalMap, max_k: u32) -> Result<PlaneRationalMap> {
    let n = projective_order(f, max_k)?
        .ok_or_else(|| Error::InvalidArgument(format!("no finite order up to {max_k}; inverse not available")))?;
    let mut power = PlaneRationalMap::identity();
    for _ in 1..n {
        power = compose(f, &power)?.reduced();
    }
    Ok(power)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evaluation {
    Point([BigInt; 3]),
    Indeterminate,
}

impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evaluation::Point([a, b, c]) => write!(f, "({a} : {b} : {c})"),
            Evaluation::Indeterminate => write!(f, "indeterminate"),
        }
    }
}

/// Content removed, first nonzero coordinate positive.
pub fn normalize_point(p: [BigInt; 3]) -> [BigInt; 3] {
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return p;
    }
    let lead_negative = p.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
    let g = if lead_negative { -g } else { g };
    p.map(|c| c / &g)
}

pub fn evaluate(f: &PlaneRationalMap, p: [i64; 3]) -> Result<Evaluation> {
    if p == [0, 0, 0] {
        return Err(Error::InvalidArgument("(0, 0, 0) is not a projective point".into()));
    }
    let p = p.map(BigInt::from);
    let values = f.polys().map(|c| c.eval(&p));
    if values.iter().all(Zero::is_zero) {
        Ok(Evaluation::Indeterminate)
    } else {
        Ok(Evaluation::Point(normalize_point(values)))
    }
}

/// For each candidate, whether all three components vanish there.
pub fn verify_fundamental_points(f: &PlaneRationalMap, candidates: &[[i64; 3]]) -> Result<Vec<bool>> {
    candidates.iter().map(|&p| Ok(evaluate(f, p)? == Evaluation::Indeterminate)).collect()
}

/// Where a candidate sits in the indeterminacy of a finite-order map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FundamentalPointCheck {
    pub point: [i64; 3],
    /// All components of the map vanish.
    pub base_of_map: bool,
    /// All components of the (reduced) inverse vanish.
    pub base_of_inverse: bool,
}

impl FundamentalPointCheck {
    /// A fundamental point of the birational map in the wide sense: one of the
    /// points blown up to resolve both the map and its inverse.
    pub fn is_fundamental(&self) -> bool {
        self.base_of_map || self.base_of_inverse
    }
}

pub fn classify_fundamental_points(
    f: &PlaneRationalMap,
    candidates: &[[i64; 3]],
    max_k: u32,
) -> Result<Vec<FundamentalPointCheck>> {
    let f = f.reduced();
    let inv = inverse(&f, max_k)?;
    let of_map = verify_fundamental_points(&f, candidates)?;
    let of_inverse = verify_fundamental_points(&inv, candidates)?;
    Ok(candidates
        .iter()
        .zip(of_map.into_iter().zip(of_inverse))
        .map(|(&point, (base_of_map, base_of_inverse))| FundamentalPointCheck { point, base_of_map, base_of_inverse })
        .collect())
}
