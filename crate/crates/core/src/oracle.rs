//! Decision procedure for elements of prime order in the plane Cremona group.
//!
//! For `ell` different from the characteristic:
//! - `ell = 2, 3` always occur, already in `PGL_3(k)`;
//! - `ell = 5` always occurs, via a quadratic map regular on a degree 5 del Pezzo surface;
//! - `ell >= 7` occurs iff some 2-dimensional torus has a rational point of
//!   order `ell`, iff `t_ell` lies in {1, 2, 3, 4, 6}.

use std::fmt;

use serde::Serialize;

use crate::arith::{is_prime, smallest_unit_of_order};
use crate::birmap::{self, FundamentalPointCheck, PlaneRationalMap};
use crate::error::{Error, Result};
use crate::field::{cyclotomic_invariants, CyclotomicInvariants, FieldDescriptor};
use crate::lattice::{norm_quotient_torus, torus_has_order_point, NormQuotientTorus};
use crate::matrix::IntMatrix;
use crate::toric::{hexagon_fan, minimal_order_action, quadrangle_fan, RealizationVerdict};

pub const CITE_LINEAR: &str = "classical orders: involutions and order-3 elements are projective";
pub const CITE_ORDER_FIVE: &str = "explicit quadratic map (xz, x(z-y), z(x-y)) of order 5";
pub const CITE_TORUS: &str =
    "torus criterion: order ell in Cr2(k) iff a 2-dimensional k-torus has a point of order ell";
pub const CITE_CYCLOTOMIC: &str = "cyclotomic degree criterion: t_ell in {1, 2, 3, 4, 6}";
pub const CITE_DEL_PEZZO: &str = "minimal models: d = 6 with t = 6, d = 8 with t = 4, d = 9 with t <= 3";
pub const CITE_CONIC_BUNDLE: &str = "conic bundles force t_ell <= 2";
pub const CITE_NO_LARGE_ORDER: &str = "no prime order above 7 when k meets Q(zeta_ell) only in Q";
pub const CITE_CONJUGACY: &str = "elements of order 7 are conjugate when k meets Q(zeta_7) only in Q";

/// Bound used when verifying the order of the quadratic witness.
const WITNESS_ORDER_SEARCH: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mechanism {
    LinearWitness,
    DelPezzo5Witness,
    TorusConicBundle,
    DelPezzo9,
    DelPezzo8,
    DelPezzo6,
    None,
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A 3x3 matrix whose class in `PGL_3(k)` has the given order.
    ProjectiveMatrix {
        matrix: IntMatrix,
        order: u64,
    },
    CremonaMap {
        map: PlaneRationalMap,
        order: u32,
        fundamental_points: Vec<FundamentalPointCheck>,
    },
    NormQuotientTorus {
        torus: Box<NormQuotientTorus>,
    },
    MinimalAction {
        fan: String,
        verdict: RealizationVerdict,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizationReport {
    pub field: FieldDescriptor,
    pub ell: u64,
    pub exists: bool,
    pub mechanism: Mechanism,
    /// Further realizations when more than one applies.
    pub also: Vec<Mechanism>,
    /// Absent for `ell = 2`.
    pub invariants: Option<CyclotomicInvariants>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    pub citations: Vec<String>,
}

fn linear_witness(ell: u64) -> Witness {
    let matrix = if ell == 2 {
        IntMatrix::from_rows(&[[-1, 0, 0], [0, 1, 0], [0, 0, 1]])
    } else {
        IntMatrix::from_rows(&[[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    };
    let order = matrix.order(ell).expect("witness has small order");
    debug_assert_eq!(order, ell);
    Witness::ProjectiveMatrix { matrix, order }
}

/// The order-5 quadratic map with its verified order and fundamental points.
pub fn order_five_witness() -> Result<Witness> {
    let map = PlaneRationalMap::order_five_witness();
    let order = birmap::projective_order(&map, WITNESS_ORDER_SEARCH)?
        .ok_or_else(|| Error::InvalidArgument("order-5 witness failed verification".into()))?;
    let points = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];
    let fundamental_points = birmap::classify_fundamental_points(&map, &points, WITNESS_ORDER_SEARCH)?;
    Ok(Witness::CremonaMap { map, order, fundamental_points })
}

pub fn cremona_has_order(field: &FieldDescriptor, ell: u64) -> Result<RealizationReport> {
    if !is_prime(ell) {
        return Err(Error::InvalidPrime { value: ell, expected: "a prime" });
    }
    if ell == field.characteristic() {
        return Err(Error::EllIsCharacteristic(ell));
    }
    let mut report = RealizationReport {
        field: *field,
        ell,
        exists: true,
        mechanism: Mechanism::None,
        also: Vec::new(),
        invariants: None,
        witnesses: Vec::new(),
        notes: Vec::new(),
        citations: Vec::new(),
    };
    if ell == 2 || ell == 3 {
        if ell == 3 {
            report.invariants = Some(cyclotomic_invariants(field, ell)?);
        }
        report.mechanism = Mechanism::LinearWitness;
        report.witnesses.push(linear_witness(ell));
        report.citations.push(CITE_LINEAR.into());
        return Ok(report);
    }

    let inv = cyclotomic_invariants(field, ell)?;
    report.invariants = Some(inv);
    if ell == 5 {
        report.mechanism = Mechanism::DelPezzo5Witness;
        report.witnesses.push(order_five_witness()?);
        report.citations.push(CITE_ORDER_FIVE.into());
        if inv.t == 4 {
            report.also.push(Mechanism::DelPezzo8);
            report.citations.push(CITE_DEL_PEZZO.into());
        }
        report.notes.push(
            "the map has integer coefficients and content 1, so its order stays 5 after reduction mod p for p != 5"
                .into(),
        );
        report.notes.push("the degree classification of minimal models is stated for ell >= 7 only".into());
        return Ok(report);
    }

    report.citations.push(CITE_TORUS.into());
    report.citations.push(CITE_CYCLOTOMIC.into());
    report.exists = torus_has_order_point(2, field, ell)?;
    if !report.exists {
        report.mechanism = Mechanism::None;
        report.notes.push(format!("t = {} is not in {{1, 2, 3, 4, 6}}", inv.t));
        if *field == FieldDescriptor::Rationals {
            report.citations.push(CITE_NO_LARGE_ORDER.into());
        }
        return Ok(report);
    }

    report.mechanism = match inv.t {
        1 | 2 => Mechanism::TorusConicBundle,
        3 => Mechanism::DelPezzo9,
        4 => Mechanism::DelPezzo8,
        6 => Mechanism::DelPezzo6,
        t => unreachable!("phi({t}) <= 2 only for t in {{1, 2, 3, 4, 6}}"),
    };
    report.citations.push(if inv.t <= 2 { CITE_CONIC_BUNDLE } else { CITE_DEL_PEZZO }.into());
    report.witnesses.push(Witness::NormQuotientTorus { torus: Box::new(norm_quotient_torus(field, ell)?) });
    let fan = match inv.t {
        6 => Some(("hexagon", hexagon_fan())),
        4 => Some(("quadrangle", quadrangle_fan())),
        _ => None,
    };
    if let Some((name, fan)) = fan {
        let verdict = minimal_order_action(&fan, field, ell)?;
        report.witnesses.push(Witness::MinimalAction { fan: name.into(), verdict });
    }
    if matches!(field, FieldDescriptor::Cyclotomic(_)) {
        report.notes.push("geometric realization over Q(zeta_n) is cited, not constructed".into());
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyCertificate {
    pub field: FieldDescriptor,
    pub hypotheses_ok: bool,
    pub hypotheses: String,
    /// Image of a Galois generator under the mod-7 cyclotomic character.
    pub character_generator: Option<u64>,
    /// Generator of the Galois-fixed 7-torsion, as a vector in `N / 7N`.
    pub fixed_generator: Option<[u64; 2]>,
    pub fixed_torsion_order: Option<u64>,
    pub multiplier: Option<u64>,
    pub multiplier_order: Option<u64>,
    pub transitive: bool,
    pub assumptions: Vec<String>,
    pub citations: Vec<String>,
}

fn order_mod(a: u64, p: u64) -> u64 {
    let mut x = a % p;
    let mut k = 1;
    while x != 1 {
        x = x * a % p;
        k += 1;
    }
    k
}

/// Checks `k` in characteristic 0 with `k ∩ Q(zeta_7) = Q`.
fn order7_hypotheses(field: &FieldDescriptor) -> (bool, String) {
    match *field {
        FieldDescriptor::Rationals => (true, "Q meets Q(zeta7) only in Q".into()),
        FieldDescriptor::FiniteField { .. } => (false, "positive characteristic".into()),
        FieldDescriptor::Cyclotomic(n) => {
            let t = cyclotomic_invariants(field, 7).map(|i| i.t).unwrap_or(0);
            if t == 6 {
                (true, format!("[k(zeta7):k] = 6 for k = Q(zeta{n})"))
            } else {
                (false, format!("[k(zeta7):k] = {t} < 6 for k = Q(zeta{n})"))
            }
        }
    }
}

/// Transitivity of the order-6 fan symmetry on the Galois-fixed 7-torsion of
/// the case (vi) torus. The torsion `Hom(M/7M, mu_7)` is identified with
/// `N/7N`; a Galois generator acts by `c * g`, the fan rotation by `g` alone.
pub fn order7_conjugacy_certificate(field: &FieldDescriptor) -> Result<ConjugacyCertificate> {
    let (hypotheses_ok, hypotheses) = order7_hypotheses(field);
    let mut cert = ConjugacyCertificate {
        field: *field,
        hypotheses_ok,
        hypotheses,
        character_generator: None,
        fixed_generator: None,
        fixed_torsion_order: None,
        multiplier: None,
        multiplier_order: None,
        transitive: false,
        assumptions: vec![
            "the action of the symmetry group on the split torus is Galois-equivariant and descends to k".into(),
        ],
        citations: vec![CITE_CONJUGACY.into()],
    };
    if !hypotheses_ok {
        return Ok(cert);
    }
    const P: i64 = 7;
    let c = smallest_unit_of_order(6, 7).expect("7 has primitive roots");
    // order-6 rotation of the hexagon, acting on N; M carries the dual action
    let g = IntMatrix::from_rows(&[[1, -1], [1, 0]]);
    let g_m = g.dual().expect("unimodular");
    // phi in Hom(M/7M, Z/7) as a column vector: (gamma phi)(chi) = c * phi(g_m^{-1} chi)
    let pullback = g_m.inverse_unimodular().expect("unimodular").transpose();
    let galois = |v: [i64; 2]| -> [i64; 2] {
        let w = pullback.apply(&v);
        [(c as i64 * w[0]).rem_euclid(P), (c as i64 * w[1]).rem_euclid(P)]
    };
    let fixed: Vec<[i64; 2]> = (0..P * P).map(|i| [i / P, i % P]).filter(|&v| galois(v) == v).collect();
    cert.character_generator = Some(c);
    cert.fixed_torsion_order = Some(fixed.len() as u64);
    let Some(&generator) = fixed.iter().find(|v| **v != [0, 0]) else {
        return Ok(cert);
    };
    cert.fixed_generator = Some(generator.map(|x| x as u64));
    let image = pullback.apply(&generator).iter().map(|x| x.rem_euclid(P)).collect::<Vec<_>>();
    let multiplier = (1..P).find(|&lam| (0..2).all(|i| (lam * generator[i]).rem_euclid(P) == image[i]));
    if let Some(lam) = multiplier {
        let ord = order_mod(lam as u64, 7);
        cert.multiplier = Some(lam as u64);
        cert.multiplier_order = Some(ord);
        cert.transitive = fixed.len() == 7 && ord == 6;
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(s: &str) -> FieldDescriptor {
        s.parse().unwrap()
    }

    fn primes(limit: u64) -> impl Iterator<Item = u64> {
        (2..=limit).filter(|&p| is_prime(p))
    }

    #[test]
    fn rationals() {
        let q = field("Q");
        let found: Vec<u64> = primes(100).filter(|&l| cremona_has_order(&q, l).unwrap().exists).collect();
        assert_eq!(found, [2, 3, 5, 7]);
        let r7 = cremona_has_order(&q, 7).unwrap();
        assert_eq!(r7.mechanism, Mechanism::DelPezzo6);
        assert_eq!(r7.invariants.unwrap().t, 6);
        let verdict = r7.witnesses.iter().find_map(|w| match w {
            Witness::MinimalAction { verdict, .. } => Some(verdict),
            _ => None,
        });
        assert!(verdict.unwrap().realizable);
        let r11 = cremona_has_order(&q, 11).unwrap();
        assert_eq!(r11.mechanism, Mechanism::None);
        assert!(r11.citations.iter().any(|c| c == CITE_NO_LARGE_ORDER));
    }

    #[test]
    fn finite_field_examples() {
        let r = cremona_has_order(&field("F17"), 13).unwrap();
        assert!(r.exists);
        assert_eq!(r.mechanism, Mechanism::DelPezzo6);
        let r = cremona_has_order(&field("F2"), 7).unwrap();
        assert_eq!((r.exists, r.mechanism, r.invariants.unwrap().t), (true, Mechanism::DelPezzo9, 3));
        // 13 has order 4 modulo 5
        let r = cremona_has_order(&field("F13"), 5).unwrap();
        assert_eq!((r.mechanism, r.also.clone()), (Mechanism::DelPezzo5Witness, vec![Mechanism::DelPezzo8]));
        assert_eq!(cremona_has_order(&field("F7"), 7).unwrap_err(), Error::EllIsCharacteristic(7));
        assert_eq!(cremona_has_order(&field("F4"), 2).unwrap_err(), Error::EllIsCharacteristic(2));
        assert!(cremona_has_order(&field("Q"), 9).is_err());
    }

    #[test]
    fn small_primes_have_witnesses() {
        for f in ["Q", "F2", "F9", "F25", "Q(zeta12)"] {
            let k = field(f);
            for ell in [2u64, 3, 5] {
                let Ok(r) = cremona_has_order(&k, ell) else {
                    assert_eq!(k.characteristic(), ell);
                    continue;
                };
                assert!(r.exists);
                match &r.witnesses[0] {
                    Witness::ProjectiveMatrix { order, .. } => assert_eq!(*order, ell),
                    Witness::CremonaMap { order, fundamental_points, .. } => {
                        assert_eq!(*order, 5);
                        assert!(fundamental_points.iter().all(FundamentalPointCheck::is_fundamental));
                    }
                    other => panic!("unexpected witness {other:?}"),
                }
            }
        }
    }

    #[test]
    fn exists_iff_torus_point() {
        let fields = ["Q", "F2", "F3", "F4", "F8", "F17", "F19", "F64", "F101", "Q(zeta3)", "Q(zeta7)", "Q(zeta11)"];
        for f in fields {
            let k = field(f);
            for ell in primes(100).filter(|&l| l >= 7 && l != k.characteristic()) {
                let r = cremona_has_order(&k, ell).unwrap();
                assert_eq!(r.exists, torus_has_order_point(2, &k, ell).unwrap(), "{f} {ell}");
                assert_eq!(r.exists, r.mechanism != Mechanism::None);
                let t = r.invariants.unwrap().t;
                assert_eq!(r.exists, [1, 2, 3, 4, 6].contains(&t));
                assert!(!r.citations.is_empty());
            }
        }
    }

    #[test]
    fn conjugacy_over_q() {
        let cert = order7_conjugacy_certificate(&field("Q")).unwrap();
        assert!(cert.hypotheses_ok);
        assert_eq!(cert.character_generator, Some(3));
        assert_eq!(cert.fixed_torsion_order, Some(7));
        assert_eq!(cert.multiplier, Some(5));
        assert_eq!(cert.multiplier_order, Some(6));
        assert!(cert.transitive);
    }

    #[test]
    fn conjugacy_hypotheses() {
        let bad = order7_conjugacy_certificate(&field("Q(zeta7)")).unwrap();
        assert!(!bad.hypotheses_ok);
        assert!(!bad.transitive);
        assert!(!order7_conjugacy_certificate(&field("F2")).unwrap().hypotheses_ok);
        let good = order7_conjugacy_certificate(&field("Q(zeta5)")).unwrap();
        assert!(good.hypotheses_ok && good.transitive);
        assert!(!order7_conjugacy_certificate(&field("Q(zeta14)")).unwrap().hypotheses_ok);
    }
}
