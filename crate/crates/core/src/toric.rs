//! Toric Del Pezzo surfaces of degree 6 and 8 and their Galois descents.
//!
//! A descent of the split toric surface is a finite subgroup of `GL_2(Z)`
//! preserving its fan, acting on the cocharacter lattice `N`. The Picard rank
//! of the descended surface is `#(ray orbits) - rank M^G`, where `M` is the
//! character lattice with the contragredient action. This is the rational
//! rank of `Pic^G` computed from the exact sequence `0 -> M -> Z^rays -> Pic -> 0`,
//! since taking invariants is exact after tensoring with `Q`.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::field::{cyclotomic_invariants, FieldDescriptor};
use crate::lattice::{group_closure, invariant_rank, GaloisLattice};
use crate::matrix::IntMatrix;

pub type Ray = [i64; 2];

/// Complete smooth fan in the plane, rays listed in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fan2D {
    rays: Vec<Ray>,
}

fn cross(a: Ray, b: Ray) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

// upper half-plane (including the positive x-axis) first
fn half(v: Ray) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

fn angle_less(a: Ray, b: Ray) -> bool {
    let (ha, hb) = (half(a), half(b));
    ha < hb || (ha == hb && cross(a, b) > 0)
}

impl Fan2D {
    pub fn new(rays: Vec<Ray>) -> Result<Self> {
        let bad = |why: &str| Err(Error::InvalidArgument(format!("invalid fan: {why}")));
        if rays.len() < 3 {
            return bad("a complete fan needs at least three rays");
        }
        for r in &rays {
            if r[0].gcd(&r[1]) != 1 {
                return bad("rays must be primitive nonzero vectors");
            }
        }
        let n = rays.len();
        let dets: Vec<i64> = (0..n).map(|i| cross(rays[i], rays[(i + 1) % n])).collect();
        let orientation = dets[0];
        if orientation.abs() != 1 || dets.iter().any(|&d| d != orientation) {
            return bad("adjacent rays must span unimodular cones of one orientation");
        }
        // each step turns by less than pi, so the winding number is the number of wrap-arounds
        let wraps = (0..n)
            .filter(|&i| {
                let (a, b) = (rays[i], rays[(i + 1) % n]);
                if orientation > 0 {
                    angle_less(b, a)
                } else {
                    angle_less(a, b)
                }
            })
            .count();
        if wraps != 1 {
            return bad("cones must cover the plane exactly once");
        }
        Ok(Fan2D { rays })
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn is_smooth(&self) -> bool {
        let n = self.rays.len();
        (0..n).all(|i| cross(self.rays[i], self.rays[(i + 1) % n]).abs() == 1)
    }

    fn ray_index(&self, v: Ray) -> Option<usize> {
        self.rays.iter().position(|&r| r == v)
    }

    fn ray_set(&self) -> BTreeSet<Ray> {
        self.rays.iter().copied().collect()
    }

    fn image(g: &IntMatrix, r: Ray) -> Ray {
        let v = g.apply(&r);
        [v[0], v[1]]
    }

    pub fn preserved_by(&self, g: &IntMatrix) -> bool {
        g.rows() == 2 && g.cols() == 2 && self.rays.iter().all(|&r| self.ray_index(Fan2D::image(g, r)).is_some())
    }
}

/// Fan of the degree-6 Del Pezzo surface: `±e1, ±e2, ±(e1+e2)`.
pub fn hexagon_fan() -> Fan2D {
    Fan2D::new(vec![[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]]).unwrap()
}

/// Fan of `P^1 x P^1`: `±e1, ±e2`.
pub fn quadrangle_fan() -> Fan2D {
    Fan2D::new(vec![[1, 0], [0, 1], [-1, 0], [0, -1]]).unwrap()
}

/// All integer matrices permuting the rays of `fan`, sorted.
pub fn fan_automorphisms(fan: &Fan2D) -> Vec<IntMatrix> {
    // e1 and e2 lie in both fans we care about, but in general the images of
    // two adjacent rays determine the map; use the first cone as a basis.
    let (a, b) = (fan.rays[0], fan.rays[1]);
    let basis = IntMatrix::from_rows(&[[a[0], b[0]], [a[1], b[1]]]);
    let basis_inv = basis.inverse_unimodular().expect("first cone is smooth");
    let mut out = BTreeSet::new();
    for &ra in fan.rays() {
        for &rb in fan.rays() {
            let target = IntMatrix::from_rows(&[[ra[0], rb[0]], [ra[1], rb[1]]]);
            if target.det().abs() != 1 {
                continue;
            }
            let g = target.mul(&basis_inv);
            if fan.preserved_by(&g) {
                out.insert(g);
            }
        }
    }
    out.into_iter().collect()
}

fn check_subgroup(fan: &Fan2D, subgroup: &[IntMatrix]) -> Result<Vec<IntMatrix>> {
    for g in subgroup {
        if !fan.preserved_by(g) {
            return Err(Error::NotFanPreserving(g.to_string()));
        }
    }
    if subgroup.is_empty() {
        return Ok(vec![IntMatrix::identity(2)]);
    }
    group_closure(subgroup)
}

fn ray_orbit_count(fan: &Fan2D, elements: &[IntMatrix]) -> usize {
    let n = fan.rays.len();
    let mut seen = vec![false; n];
    let mut orbits = 0;
    for i in 0..n {
        if seen[i] {
            continue;
        }
        orbits += 1;
        for g in elements {
            let j = fan.ray_index(Fan2D::image(g, fan.rays[i])).unwrap();
            seen[j] = true;
        }
    }
    orbits
}

/// Invariant rank of the character lattice `M` under the contragredient action.
fn character_invariant_rank(elements: &[IntMatrix]) -> usize {
    let dual: Vec<IntMatrix> = elements.iter().map(|g| g.dual().unwrap()).collect();
    invariant_rank(&GaloisLattice::new(2, dual).unwrap())
}

/// Picard rank of the descent of the toric surface of `fan` along `subgroup`
/// (generators or elements of a finite group acting on `N`).
pub fn picard_rank_of_descent(fan: &Fan2D, subgroup: &[IntMatrix]) -> Result<usize> {
    let elements = check_subgroup(fan, subgroup)?;
    Ok(ray_orbit_count(fan, &elements) - character_invariant_rank(&elements))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentCase {
    pub label: String,
    pub structure: String,
    pub generators: Vec<IntMatrix>,
    pub elements: Vec<IntMatrix>,
    pub cyclic: bool,
    pub ray_orbits: usize,
    pub picard_rank: usize,
    pub anisotropic: bool,
}

impl DescentCase {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

fn m(rows: [[i64; 2]; 2]) -> IntMatrix {
    IntMatrix::from_rows(&rows)
}

/// Named descents of the hexagon fan, with generators written as maps of `N`.
pub fn hexagon_reference_cases() -> Vec<(&'static str, Vec<IntMatrix>)> {
    let swap = m([[0, 1], [1, 0]]);
    let minus = m([[-1, 0], [0, -1]]);
    let rot3 = m([[0, -1], [1, -1]]);
    let rot6 = m([[1, -1], [1, 0]]);
    vec![
        ("(i)", vec![swap.clone()]),
        ("(ii)", vec![minus.clone()]),
        ("(iii)", vec![rot3.clone()]),
        ("(iv)", vec![swap.clone(), minus]),
        ("(v)", vec![rot3, swap.clone()]),
        ("(vi)", vec![rot6.clone()]),
        ("(vii)", vec![rot6, swap]),
    ]
}

/// Named descents of the quadrangle fan.
pub fn quadrangle_reference_cases() -> Vec<(&'static str, Vec<IntMatrix>)> {
    let swap = m([[0, 1], [1, 0]]);
    let rot4 = m([[0, -1], [1, 0]]);
    vec![("swap", vec![swap.clone()]), ("C4", vec![rot4.clone()]), ("D8", vec![rot4, swap])]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FanKind {
    Hexagon,
    Quadrangle,
}

fn fan_kind(fan: &Fan2D) -> Option<FanKind> {
    let rays = fan.ray_set();
    if rays == hexagon_fan().ray_set() {
        Some(FanKind::Hexagon)
    } else if rays == quadrangle_fan().ray_set() {
        Some(FanKind::Quadrangle)
    } else {
        None
    }
}

fn reference_cases(fan: &Fan2D) -> Vec<(&'static str, Vec<IntMatrix>)> {
    match fan_kind(fan) {
        Some(FanKind::Hexagon) => hexagon_reference_cases(),
        Some(FanKind::Quadrangle) => quadrangle_reference_cases(),
        None => Vec::new(),
    }
}

fn conjugate_set(a: &IntMatrix, a_inv: &IntMatrix, h: &[IntMatrix]) -> Vec<IntMatrix> {
    let mut out: Vec<IntMatrix> = h.iter().map(|g| a.mul(g).mul(a_inv)).collect();
    out.sort();
    out
}

/// Lexicographically least conjugate of `h` inside `ambient`.
fn canonical_conjugate(ambient: &[IntMatrix], h: &[IntMatrix]) -> Vec<IntMatrix> {
    ambient.iter().map(|a| conjugate_set(a, &a.inverse_unimodular().unwrap(), h)).min().unwrap()
}

fn is_cyclic(elements: &[IntMatrix]) -> bool {
    let n = elements.len() as u64;
    elements.iter().any(|g| g.order(n) == Some(n))
}

fn is_abelian(elements: &[IntMatrix]) -> bool {
    elements.iter().all(|a| elements.iter().all(|b| a.mul(b) == b.mul(a)))
}

fn structure_name(elements: &[IntMatrix]) -> String {
    let n = elements.len();
    match (n, is_cyclic(elements), is_abelian(elements)) {
        (1, _, _) => "trivial".into(),
        (_, true, _) => format!("Z/{n}"),
        (4, false, true) => "(Z/2)^2".into(),
        (6, false, false) => "S3".into(),
        (_, false, false) => format!("D{n}"),
        (_, false, true) => format!("abelian of order {n}"),
    }
}

/// Smallest generating set (one or two elements) of a subgroup, preferring
/// lexicographically small generators.
fn generators_of(elements: &[IntMatrix]) -> Vec<IntMatrix> {
    if elements.len() == 1 {
        return Vec::new();
    }
    let target: Vec<IntMatrix> = elements.to_vec();
    for g in elements {
        if group_closure(std::slice::from_ref(g)).unwrap() == target {
            return vec![g.clone()];
        }
    }
    for (i, g) in elements.iter().enumerate() {
        for h in &elements[i + 1..] {
            if group_closure(&[g.clone(), h.clone()]).unwrap() == target {
                return vec![g.clone(), h.clone()];
            }
        }
    }
    elements.to_vec()
}

fn describe(fan: &Fan2D, label: String, generators: Vec<IntMatrix>, elements: Vec<IntMatrix>) -> DescentCase {
    let ray_orbits = ray_orbit_count(fan, &elements);
    let invariant = character_invariant_rank(&elements);
    DescentCase {
        label,
        structure: structure_name(&elements),
        cyclic: is_cyclic(&elements),
        ray_orbits,
        picard_rank: ray_orbits - invariant,
        anisotropic: invariant == 0,
        generators,
        elements,
    }
}

/// All subgroups of the fan's automorphism group up to conjugacy.
///
/// Classes containing a named reference case carry its label and generators;
/// the remaining classes are labelled `extra-1`, `extra-2`, ... in order of
/// increasing size.
pub fn enumerate_descent_cases(fan: &Fan2D) -> Vec<DescentCase> {
    let ambient = fan_automorphisms(fan);
    let id = IntMatrix::identity(2);

    // every subgroup of a dihedral group is generated by at most two elements
    let mut subgroups: BTreeSet<Vec<IntMatrix>> = BTreeSet::new();
    for g in &ambient {
        for h in &ambient {
            subgroups.insert(group_closure(&[id.clone(), g.clone(), h.clone()]).unwrap());
        }
    }

    let mut classes: BTreeMap<(usize, Vec<IntMatrix>), Vec<IntMatrix>> = BTreeMap::new();
    for h in subgroups {
        let canon = canonical_conjugate(&ambient, &h);
        classes.entry((h.len(), canon.clone())).or_insert(canon);
    }

    let mut named: BTreeMap<Vec<IntMatrix>, (&'static str, Vec<IntMatrix>)> = BTreeMap::new();
    for (label, gens) in reference_cases(fan) {
        let elements = group_closure(&gens).unwrap();
        named.insert(canonical_conjugate(&ambient, &elements), (label, gens));
    }

    let mut cases = Vec::new();
    let mut extra = 0;
    for ((_, canon), rep) in classes {
        match named.get(&canon) {
            Some((label, gens)) => {
                let elements = group_closure(gens).unwrap();
                cases.push(describe(fan, label.to_string(), gens.clone(), elements));
            }
            None => {
                extra += 1;
                let gens = generators_of(&rep);
                cases.push(describe(fan, format!("extra-{extra}"), gens, rep));
            }
        }
    }
    // named cases first, in reference order; extras after
    let order: Vec<&str> = reference_cases(fan).iter().map(|(l, _)| *l).collect();
    cases.sort_by_key(|c| order.iter().position(|l| *l == c.label).unwrap_or(order.len() + c.order()));
    cases
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RejectedCase {
    pub label: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizationVerdict {
    pub realizable: bool,
    pub required_case: Option<String>,
    pub splitting_field: Option<String>,
    pub t: u64,
    pub reason: String,
    pub rejected: Vec<RejectedCase>,
}

/// Decides whether an automorphism of prime order `ell >= 5` can act
/// minimally on a descent of the toric surface of `fan` (hexagon or quadrangle).
///
/// A minimal action forces Picard rank 1. The torus must then split over
/// `k(zeta_ell)`, a cyclic extension of degree `t`, so the splitting group is
/// cyclic of order `t`; an isotropic torus contributes no point of order `ell`.
pub fn minimal_order_action(fan: &Fan2D, field: &FieldDescriptor, ell: u64) -> Result<RealizationVerdict> {
    let kind = fan_kind(fan)
        .ok_or_else(|| Error::InvalidArgument("minimal_order_action needs the hexagon or quadrangle fan".into()))?;
    if !is_prime(ell) || ell < 5 {
        return Err(Error::InvalidPrime { value: ell, expected: "a prime >= 5" });
    }
    let t = cyclotomic_invariants(field, ell)?.t;

    let mut rejected = Vec::new();
    let mut candidates = Vec::new();
    for case in enumerate_descent_cases(fan) {
        let reason = if case.picard_rank > 1 {
            Some(format!("Picard rank {} > 1: surface is not minimal", case.picard_rank))
        } else if !case.cyclic {
            Some(format!("splitting group {} is not cyclic, but k(ζ_ℓ)/k is cyclic", case.structure))
        } else if !case.anisotropic {
            Some("isotropic torus: T(k) = E* has no element of order ℓ".to_string())
        } else if case.order() as u64 != t {
            Some(format!("splitting group has order {} but [k(ζ_ℓ):k] = {t}", case.order()))
        } else {
            None
        };
        match reason {
            Some(reason) => rejected.push(RejectedCase { label: case.label.clone(), reason }),
            None => candidates.push(case),
        }
    }

    let verdict = match candidates.first() {
        Some(case) => RealizationVerdict {
            realizable: true,
            required_case: Some(case.label.clone()),
            splitting_field: Some("k(ζ_ℓ)".into()),
            t,
            reason: format!(
                "unique minimal model: torus split by k(ζ_ℓ) with cyclic group {} acting as case {}",
                case.structure, case.label
            ),
            rejected,
        },
        None => {
            let needed = match kind {
                FanKind::Hexagon => 6,
                FanKind::Quadrangle => 4,
            };
            RealizationVerdict {
                realizable: false,
                required_case: None,
                splitting_field: None,
                t,
                reason: format!("a minimal action needs t = {needed}, but t = {t}"),
                rejected,
            }
        }
    };
    Ok(verdict)
}
