//! Greatest common divisor of homogeneous polynomials in `x, y, z`.
//!
//! Dehomogenize at `z = 1`, run a primitive pseudo-remainder sequence in `y`
//! over `Z[x]`, and homogenize back. Inputs are assumed free of a common
//! power of `z`, which the map normalization already guarantees.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;

/// Dense polynomial in `x`, lowest degree first, no trailing zeros.
type UPoly = Vec<BigInt>;
/// Dense polynomial in `y` with `Z[x]` coefficients.
type BPoly = Vec<UPoly>;

fn u_trim(mut a: UPoly) -> UPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    u_trim(out)
}

fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    u_trim(out)
}

fn u_content(a: &UPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn u_scale_div(a: &UPoly, c: &BigInt) -> UPoly {
    a.iter().map(|x| x / c).collect()
}

/// Exact division, `None` if `b` does not divide `a` over `Z`.
fn u_div_exact(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    let lead = b.last()?;
    if a.len() < b.len() {
        return a.is_empty().then(Vec::new);
    }
    let mut rem = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &rem[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    rem.iter().all(Zero::is_zero).then(|| u_trim(q))
}

fn u_pseudo_rem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let top = r.last().unwrap().clone();
        r = r.iter().map(|c| c * &lead).collect();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &top * bj;
        }
        r = u_trim(r);
    }
    r
}

fn u_primitive(a: &UPoly) -> UPoly {
    let c = u_content(a);
    if c.is_zero() {
        return Vec::new();
    }
    let c = if a.last().unwrap().is_negative() { -c } else { c };
    u_scale_div(a, &c)
}

fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        return u_primitive(b).into_iter().map(|c| c * u_content(b)).collect();
    }
    if b.is_empty() {
        return u_primitive(a).into_iter().map(|c| c * u_content(a)).collect();
    }
    let c = u_content(a).gcd(&u_content(b));
    let (mut p, mut q) = (u_primitive(a), u_primitive(b));
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        let r = u_primitive(&u_pseudo_rem(&p, &q));
        p = q;
        q = r;
    }
    p.iter().map(|x| x * &c).collect()
}

fn b_trim(mut a: BPoly) -> BPoly {
    while a.last().is_some_and(Vec::is_empty) {
        a.pop();
    }
    a
}

fn b_content(a: &BPoly) -> UPoly {
    a.iter().fold(Vec::new(), |g, c| u_gcd(&g, c))
}

fn b_div_coeff(a: &BPoly, c: &UPoly) -> BPoly {
    a.iter().map(|x| u_div_exact(x, c).expect("content divides")).collect()
}

fn b_primitive(a: &BPoly) -> BPoly {
    let c = b_content(a);
    let mut p = b_div_coeff(a, &c);
    if p.last().and_then(|l| l.last()).is_some_and(|l| l.is_negative()) {
        p = p.into_iter().map(|u| u.into_iter().map(|x| -x).collect()).collect();
    }
    p
}

fn b_pseudo_rem(a: &BPoly, b: &BPoly) -> BPoly {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let top = r.last().unwrap().clone();
        r = r.iter().map(|c| u_mul(c, &lead)).collect();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = u_sub(&r[shift + j], &u_mul(&top, bj));
        }
        r = b_trim(r);
    }
    r
}

fn b_gcd(a: &BPoly, b: &BPoly) -> BPoly {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let c = u_gcd(&b_content(a), &b_content(b));
    let (mut p, mut q) = (b_primitive(a), b_primitive(b));
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        let r = b_pseudo_rem(&p, &q);
        p = q;
        q = if r.is_empty() { r } else { b_primitive(&r) };
    }
    p.iter().map(|x| u_mul(x, &c)).collect()
}

fn dehomogenize(p: &Poly) -> BPoly {
    let mut out: BPoly = Vec::new();
    for (e, c) in p.terms() {
        let (i, j) = (e[0] as usize, e[1] as usize);
        if out.len() <= j {
            out.resize(j + 1, Vec::new());
        }
        if out[j].len() <= i {
            out[j].resize(i + 1, BigInt::zero());
        }
        out[j][i] += c;
    }
    b_trim(out.into_iter().map(u_trim).collect())
}

fn homogenize(b: &BPoly) -> Poly {
    let degree = b.iter().enumerate().filter(|(_, u)| !u.is_empty()).map(|(j, u)| j + u.len() - 1).max().unwrap_or(0);
    let mut out = Poly::zero();
    for (j, u) in b.iter().enumerate() {
        for (i, c) in u.iter().enumerate() {
            let e = [i as u32, j as u32, (degree - i - j) as u32];
            out = out.add(&Poly::monomial(e, c.clone()));
        }
    }
    out
}

/// Primitive gcd, positive leading coefficient. Zero inputs are skipped.
pub(crate) fn homogeneous_gcd(polys: &[&Poly]) -> Poly {
    let g = polys.iter().filter(|p| !p.is_zero()).map(|p| dehomogenize(p)).fold(Vec::new(), |g, b| b_gcd(&g, &b));
    if g.is_empty() {
        return Poly::constant(BigInt::one());
    }
    let h = homogenize(&b_primitive(&g));
    let c = h.content();
    let c = if h.leading_coefficient().is_some_and(|l| l.is_negative()) { -c } else { c };
    h.divide(&c, [0, 0, 0])
}

/// Exact division in lex order, `None` if `b` does not divide `a`.
pub(crate) fn poly_div_exact(a: &Poly, b: &Poly) -> Option<Poly> {
    let (lead_e, lead_c) = b.terms().iter().next_back()?;
    let mut rem = a.clone();
    let mut q = Poly::zero();
    while let Some((e, c)) = rem.terms().iter().next_back() {
        if (0..3).any(|i| e[i] < lead_e[i]) {
            return None;
        }
        let (coef, r) = c.div_rem(lead_c);
        if !r.is_zero() {
            return None;
        }
        let m = Poly::monomial([e[0] - lead_e[0], e[1] - lead_e[1], e[2] - lead_e[2]], coef);
        rem = rem.sub(&m.mul(b));
        q = q.add(&m);
    }
    Some(q)
}
