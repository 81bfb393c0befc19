//! Picard lattices `Z^{1,r}` of Del Pezzo surfaces of degree `9 - r`.
//!
//! Classes are written in the basis `e0, e1, ..., er` with intersection form
//! `diag(1, -1, ..., -1)` and canonical class `K = -3 e0 + e1 + ... + er`.
//! The Weyl group is generated by reflections in the simple roots
//! `e0 - e1 - e2 - e3` and `e_i - e_{i+1}`; each root has square `-2` and is
//! orthogonal to `K`, so `s(x) = x + (x.alpha) alpha`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{integer_kernel, IntMatrix};

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PicVector(Vec<i64>);

impl PicVector {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("a Picard class needs the e0 coordinate".into()));
        }
        Ok(PicVector(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Number of blown-up points.
    pub fn r(&self) -> usize {
        self.0.len() - 1
    }

    pub fn dot(&self, other: &PicVector) -> i64 {
        assert_eq!(self.0.len(), other.0.len(), "classes from different lattices");
        self.0[0] * other.0[0] - self.0[1..].iter().zip(&other.0[1..]).map(|(a, b)| a * b).sum::<i64>()
    }

    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    pub fn add(&self, other: &PicVector) -> PicVector {
        PicVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> PicVector {
        PicVector(self.0.iter().map(|a| k * a).collect())
    }

    pub fn zero(r: usize) -> PicVector {
        PicVector(vec![0; r + 1])
    }

    /// Basis vector `e_i`, `0 <= i <= r`.
    pub fn basis(i: usize, r: usize) -> PicVector {
        let mut v = vec![0; r + 1];
        v[i] = 1;
        PicVector(v)
    }

    /// `e1 + ... + e_count`.
    pub fn exceptional_sum(count: usize, r: usize) -> PicVector {
        let mut v = vec![0; r + 1];
        v[1..=count].iter_mut().for_each(|x| *x = 1);
        PicVector(v)
    }

    fn reflect(&self, root: &PicVector) -> PicVector {
        self.add(&root.scale(self.dot(root)))
    }

    pub fn apply(&self, g: &IntMatrix) -> PicVector {
        PicVector(g.apply(&self.0))
    }
}

impl fmt::Display for PicVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.0[0])?;
        for (i, b) in self.0[1..].iter().enumerate() {
            write!(f, "{}{b}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, ")")
    }
}

fn check_r(r: usize) -> Result<()> {
    if !(3..=8).contains(&r) {
        return Err(Error::InvalidArgument(format!("r must be in 3..=8, got {r}")));
    }
    Ok(())
}

pub fn canonical_class(r: usize) -> PicVector {
    let mut v = vec![1; r + 1];
    v[0] = -3;
    PicVector(v)
}

/// All classes `D` with `D.D = -1` and `D.K = -1`.
///
/// With `D = a e0 + sum b_i e_i` written as `(a; b)`, the conditions read
/// `sum b_i^2 = a^2 + 1` and `sum b_i = 1 - 3a`. Cauchy–Schwarz gives
/// `(3a - 1)^2 <= r (a^2 + 1)`, which for `r <= 8` confines `a` to `-1..=7`;
/// the search runs over that whole range (the endpoints have no solutions,
/// so in fact `0 <= a <= 6`).
pub fn minus_one_classes(r: usize) -> Result<Vec<PicVector>> {
    check_r(r)?;
    let rr = r as i64;
    let mut out = Vec::new();
    for a in -10i64..=10 {
        if (3 * a - 1).pow(2) > rr * (a * a + 1) {
            continue;
        }
        let mut b = Vec::with_capacity(r);
        search_coefficients(r, a * a + 1, 1 - 3 * a, &mut b, &mut |b| {
            let mut coords = vec![a];
            coords.extend_from_slice(b);
            out.push(PicVector(coords));
        });
    }
    out.sort();
    Ok(out)
}

// Enumerates integer vectors of length `len` with the given sum of squares
// and sum, pruning with Cauchy–Schwarz on the remaining coordinates.
fn search_coefficients(len: usize, squares: i64, sum: i64, prefix: &mut Vec<i64>, emit: &mut impl FnMut(&[i64])) {
    let remaining = (len - prefix.len()) as i64;
    if remaining == 0 {
        if squares == 0 && sum == 0 {
            emit(prefix);
        }
        return;
    }
    if squares < 0 || sum * sum > remaining * squares {
        return;
    }
    let bound = (squares as f64).sqrt() as i64;
    for x in -bound..=bound {
        prefix.push(x);
        search_coefficients(len, squares - x * x, sum - x, prefix, emit);
        prefix.pop();
    }
}

pub fn simple_roots(r: usize) -> Result<Vec<PicVector>> {
    check_r(r)?;
    let mut roots = Vec::with_capacity(r);
    let mut first = vec![0; r + 1];
    first[..4].copy_from_slice(&[1, -1, -1, -1]);
    roots.push(PicVector(first));
    for i in 1..r {
        let mut v = vec![0; r + 1];
        v[i] = 1;
        v[i + 1] = -1;
        roots.push(PicVector(v));
    }
    Ok(roots)
}

/// Matrices of the simple reflections acting on coordinate vectors.
pub fn simple_reflections(r: usize) -> Result<Vec<IntMatrix>> {
    let roots = simple_roots(r)?;
    Ok(roots
        .iter()
        .map(|alpha| {
            let mut m = IntMatrix::zeros(r + 1, r + 1);
            for j in 0..=r {
                let image = PicVector::basis(j, r).reflect(alpha);
                for i in 0..=r {
                    m[(i, j)] = image.0[i];
                }
            }
            m
        })
        .collect())
}

/// Gram matrix of the intersection form, `diag(1, -1, ..., -1)`.
pub fn intersection_form(r: usize) -> IntMatrix {
    let mut j = IntMatrix::identity(r + 1).neg();
    j[(0, 0)] = 1;
    j
}

pub fn weyl_orbit(start: &PicVector) -> Result<Vec<PicVector>> {
    weyl_orbit_with_cap(start, DEFAULT_ORBIT_CAP)
}

/// Closure of `start` under the simple reflections, sorted.
pub fn weyl_orbit_with_cap(start: &PicVector, cap: usize) -> Result<Vec<PicVector>> {
    let roots = simple_roots(start.r())?;
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(v) = queue.pop_front() {
        for alpha in &roots {
            let w = v.reflect(alpha);
            if !seen.contains(&w) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded(format!("Weyl orbit larger than {cap}")));
                }
                seen.insert(w.clone());
                queue.push_back(w);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Order of `W(E_r)`, `2 <= r <= 8`.
///
/// `W(E_r)` acts transitively on the (-1)-classes (checked here by comparing
/// the orbit of `e_r` with the full enumeration) and the stabiliser of `e_r`
/// is `W(E_{r-1})`; `W(E_2)` is generated by the single reflection in
/// `e1 - e2`.
pub fn weyl_group_order(r: usize) -> Result<u64> {
    if r == 2 {
        return Ok(2);
    }
    check_r(r)?;
    let classes = minus_one_classes(r)?;
    let orbit = weyl_orbit(&PicVector::basis(r, r))?;
    if orbit != classes {
        return Err(Error::InvalidArgument(format!("W(E_{r}) is not transitive on (-1)-classes")));
    }
    Ok(classes.len() as u64 * weyl_group_order(r - 1)?)
}

/// Geiser involution on the degree-2 lattice: `x -> -x + (x.K) K`.
///
/// It fixes `K`, acts as `-1` on `K^perp`, and sends a (-1)-class `D` to `-K - D`.
pub fn geiser_image(d: &PicVector) -> Result<PicVector> {
    if d.r() != 7 {
        return Err(Error::InvalidArgument("Geiser involution lives on the degree-2 lattice (r = 7)".into()));
    }
    let k = canonical_class(7);
    Ok(d.scale(-1).add(&k.scale(d.dot(&k))))
}

/// Bertini involution on the degree-1 lattice: `x -> -x + 2 (x.K) K`,
/// sending a (-1)-class `D` to `-2K - D`.
pub fn bertini_image(d: &PicVector) -> Result<PicVector> {
    if d.r() != 8 {
        return Err(Error::InvalidArgument("Bertini involution lives on the degree-1 lattice (r = 8)".into()));
    }
    let k = canonical_class(8);
    Ok(d.scale(-1).add(&k.scale(2 * d.dot(&k))))
}

/// Sets of seven pairwise disjoint (-1)-classes on the degree-2 lattice,
/// each sorted, found by clique search on the 56 classes.
pub fn disjoint_seven_tuples() -> Vec<Vec<PicVector>> {
    let classes = minus_one_classes(7).expect("r = 7 is valid");
    let n = classes.len();
    let disjoint: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| i != j && classes[i].dot(&classes[j]) == 0).collect()).collect();

    fn extend(start: usize, clique: &mut Vec<usize>, disjoint: &[Vec<bool>], out: &mut Vec<Vec<usize>>) {
        if clique.len() == 7 {
            out.push(clique.clone());
            return;
        }
        for j in start..disjoint.len() {
            if clique.iter().all(|&i| disjoint[i][j]) {
                clique.push(j);
                extend(j + 1, clique, disjoint, out);
                clique.pop();
            }
        }
    }

    let mut cliques = Vec::new();
    extend(0, &mut Vec::new(), &disjoint, &mut cliques);
    cliques.into_iter().map(|c| c.into_iter().map(|i| classes[i].clone()).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeiserPairing {
    pub tuples: usize,
    pub pairs: usize,
    pub fixed_tuples: usize,
    pub pairs_mod_7: usize,
}

/// Pairs each seven-tuple of disjoint (-1)-classes with its Geiser image.
pub fn geiser_pairing() -> GeiserPairing {
    let tuples: BTreeSet<Vec<PicVector>> = disjoint_seven_tuples().into_iter().collect();
    let mut fixed = 0;
    let mut partners = BTreeMap::new();
    for tuple in &tuples {
        let mut image: Vec<PicVector> = tuple.iter().map(|c| geiser_image(c).unwrap()).collect();
        image.sort();
        assert!(tuples.contains(&image), "Geiser image is not a disjoint seven-tuple");
        if &image == tuple {
            fixed += 1;
        }
        partners.insert(tuple.clone(), image);
    }
    let pairs = partners.iter().filter(|(a, b)| a < b).count();
    GeiserPairing { tuples: tuples.len(), pairs, fixed_tuples: fixed, pairs_mod_7: pairs % 7 }
}

/// Order-7 element of `W(E_7)` (or `W(E_8)`) permuting `e1 -> e2 -> ... -> e7 -> e1`.
pub fn seven_cycle(r: usize) -> Result<IntMatrix> {
    if r != 7 && r != 8 {
        return Err(Error::InvalidArgument(format!("seven-cycle needs r = 7 or 8, got {r}")));
    }
    let mut m = IntMatrix::zeros(r + 1, r + 1);
    m[(0, 0)] = 1;
    for i in 1..=7 {
        m[(i % 7 + 1, i)] = 1;
    }
    if r == 8 {
        m[(8, 8)] = 1;
    }
    Ok(m)
}

/// Saturated basis of the `g`-invariant part of `K^perp`.
pub fn invariant_root_sublattice(g: &IntMatrix) -> Vec<PicVector> {
    let r = g.rows() - 1;
    let k = canonical_class(r);
    // x.K as a linear functional in coordinates
    let mut k_row = vec![k.0[0]];
    k_row.extend(k.0[1..].iter().map(|x| -x));
    let id = IntMatrix::identity(r + 1);
    let mut rows = g.sub(&id).to_rows();
    rows.push(k_row);
    integer_kernel(&IntMatrix::from_rows(&rows)).into_iter().map(PicVector).collect()
}

pub fn gram_matrix(basis: &[PicVector]) -> Vec<Vec<i64>> {
    basis.iter().map(|u| basis.iter().map(|v| u.dot(v)).collect()).collect()
}

fn det2(g: &[Vec<i64>]) -> i64 {
    g[0][0] * g[1][1] - g[0][1] * g[1][0]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Order7Invariants {
    pub r: usize,
    pub rank: usize,
    pub basis: Vec<PicVector>,
    pub gram: Vec<Vec<i64>>,
    pub gram_det: i64,
    pub negative_definite: bool,
    pub detail: Order7Detail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Order7Detail {
    /// `2e + 7K = multiple * basis[0]`.
    DegreeTwo { two_e_plus_7k: PicVector, multiple: i64 },
    /// The classes `v = (e - 3 C8 + 5K)/3` and `w = C8 + K` with
    /// `e = e1 + ... + e8`, `C8 = e8`, their coordinates in `basis`, and Gram.
    DegreeOne {
        v: PicVector,
        w: PicVector,
        v_coords: [i64; 2],
        w_coords: [i64; 2],
        change_of_basis_det: i64,
        vw_gram: [[i64; 2]; 2],
        equivalent_to_reference_up_to_sign: bool,
    },
}

/// Reference form `[[-4, 1], [1, -2]]` on the order-7 invariants of the degree-1 lattice.
pub const DEGREE_ONE_REFERENCE_GRAM: [[i64; 2]; 2] = [[-4, 1], [1, -2]];

// Coordinates of `x` in a rank-2 basis of a saturated sublattice, if integral.
fn coordinates_in(basis: &[PicVector], x: &PicVector) -> Option<[i64; 2]> {
    let g = gram_matrix(basis);
    let d = det2(&g);
    let (p, q) = (basis[0].dot(x), basis[1].dot(x));
    // solve g * (s, t) = (p, q)
    let s_num = p * g[1][1] - q * g[0][1];
    let t_num = q * g[0][0] - p * g[1][0];
    if d == 0 || s_num % d != 0 || t_num % d != 0 {
        return None;
    }
    let (s, t) = (s_num / d, t_num / d);
    (basis[0].scale(s).add(&basis[1].scale(t)) == *x).then_some([s, t])
}

pub fn order7_invariants(r: usize) -> Result<Order7Invariants> {
    let sigma = seven_cycle(r)?;
    let basis = invariant_root_sublattice(&sigma);
    let gram = gram_matrix(&basis);
    let rank = basis.len();
    let k = canonical_class(r);
    let (gram_det, negative_definite, detail) = match r {
        7 => {
            let e = PicVector::exceptional_sum(7, 7);
            let target = e.scale(2).add(&k.scale(7));
            let gen = &basis[0];
            let idx = gen.0.iter().position(|&x| x != 0).unwrap();
            let multiple = target.0[idx] / gen.0[idx];
            assert_eq!(gen.scale(multiple), target, "2e + 7K is not in the invariant lattice");
            (gram[0][0], gram[0][0] < 0, Order7Detail::DegreeTwo { two_e_plus_7k: target, multiple })
        }
        _ => {
            let e = PicVector::exceptional_sum(8, 8);
            let c8 = PicVector::basis(8, 8);
            let triple_v = e.add(&c8.scale(-3)).add(&k.scale(5));
            assert!(triple_v.0.iter().all(|x| x % 3 == 0), "(e - 3 C8 + 5K) is not divisible by 3");
            let v = PicVector(triple_v.0.iter().map(|x| x / 3).collect());
            let w = c8.add(&k);
            let v_coords = coordinates_in(&basis, &v).expect("v lies in the invariant lattice");
            let w_coords = coordinates_in(&basis, &w).expect("w lies in the invariant lattice");
            let change = v_coords[0] * w_coords[1] - v_coords[1] * w_coords[0];
            let vw_gram = [[v.dot(&v), v.dot(&w)], [w.dot(&v), w.dot(&w)]];
            let flipped = [[vw_gram[0][0], -vw_gram[0][1]], [-vw_gram[1][0], vw_gram[1][1]]];
            let equivalent =
                change.abs() == 1 && (vw_gram == DEGREE_ONE_REFERENCE_GRAM || flipped == DEGREE_ONE_REFERENCE_GRAM);
            let d = det2(&gram);
            (
                d,
                gram[0][0] < 0 && d > 0,
                Order7Detail::DegreeOne {
                    v,
                    w,
                    v_coords,
                    w_coords,
                    change_of_basis_det: change,
                    vw_gram,
                    equivalent_to_reference_up_to_sign: equivalent,
                },
            )
        }
    };
    Ok(Order7Invariants { r, rank, basis, gram, gram_det, negative_definite, detail })
}

/// Symmetric binary form `[[a, b], [b, c]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BinaryFormGram {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryFormGram {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        BinaryFormGram { a, b, c }
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&[[self.a, self.b], [self.b, self.c]])
    }

    pub fn det(&self) -> i64 {
        self.a * self.c - self.b * self.b
    }

    pub fn is_definite(&self) -> bool {
        self.det() > 0
    }

    pub fn value(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + 2 * self.b * x * y + self.c * y * y
    }

    fn pairing(&self, u: [i64; 2], v: [i64; 2]) -> i64 {
        self.a * u[0] * v[0] + self.b * (u[0] * v[1] + u[1] * v[0]) + self.c * u[1] * v[1]
    }

    /// All `(x, y)` representing `n` by a definite form.
    fn representations(&self, n: i64) -> Vec<[i64; 2]> {
        let sign = self.a.signum();
        let (a, c, d, n) = (self.a * sign, self.c * sign, self.det(), n * sign);
        if n < 0 {
            return Vec::new();
        }
        // completing the square: a*n >= d*y^2 and c*n >= d*x^2
        let xb = ((c * n / d) as f64).sqrt() as i64 + 1;
        let yb = ((a * n / d) as f64).sqrt() as i64 + 1;
        let mut out = Vec::new();
        for x in -xb..=xb {
            for y in -yb..=yb {
                if self.value(x, y) == n * sign {
                    out.push([x, y]);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Automorphs {
    pub full: Vec<IntMatrix>,
    pub proper: Vec<IntMatrix>,
    /// Determinant `-1` automorphs; all of them are involutions for binary forms.
    pub improper: Vec<IntMatrix>,
}

/// Integral isometries of a definite binary form, sorted.
pub fn automorph_group(gram: &BinaryFormGram) -> Result<Automorphs> {
    if !gram.is_definite() {
        return Err(Error::NotDefinite);
    }
    let mut full = Vec::new();
    for c1 in gram.representations(gram.a) {
        for c2 in gram.representations(gram.c) {
            if gram.pairing(c1, c2) == gram.b {
                full.push(IntMatrix::from_rows(&[[c1[0], c2[0]], [c1[1], c2[1]]]));
            }
        }
    }
    full.sort();
    let (proper, improper) = full.iter().cloned().partition(|m: &IntMatrix| m.det() == 1);
    Ok(Automorphs { full, proper, improper })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minus_one_counts() {
        let counts: Vec<usize> = (3..=8).map(|r| minus_one_classes(r).unwrap().len()).collect();
        assert_eq!(counts, [6, 10, 16, 27, 56, 240]);
        assert!(minus_one_classes(2).is_err());
        for r in 3..=8 {
            let k = canonical_class(r);
            for d in minus_one_classes(r).unwrap() {
                assert_eq!((d.square(), d.dot(&k)), (-1, -1));
                assert!((0..=6).contains(&d.coords()[0]));
            }
        }
    }

    #[test]
    fn reflections() {
        for r in 3..=8 {
            let j = intersection_form(r);
            let k = canonical_class(r);
            for s in simple_reflections(r).unwrap() {
                assert!(s.mul(&s).is_identity());
                assert_eq!(s.transpose().mul(&j).mul(&s), j);
                assert_eq!(k.apply(&s), k);
            }
        }
    }

    #[test]
    fn orbits() {
        let e = PicVector::exceptional_sum(7, 7);
        let orbit = weyl_orbit(&e).unwrap();
        assert_eq!(orbit.len(), 576);
        let k = canonical_class(7);
        for v in &orbit {
            assert_eq!((v.square(), v.dot(&k)), (e.square(), e.dot(&k)));
        }
        assert_eq!(weyl_orbit(&k).unwrap(), vec![k]);
        assert_eq!(weyl_orbit(&PicVector::basis(7, 7)).unwrap(), minus_one_classes(7).unwrap());
        assert!(matches!(weyl_orbit_with_cap(&e, 100), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(weyl_group_order(3).unwrap(), 12);
        assert_eq!(weyl_group_order(6).unwrap(), 51_840);
        assert_eq!(weyl_group_order(7).unwrap(), 2_903_040);
        assert_eq!(weyl_group_order(8).unwrap(), 696_729_600);
    }

    #[test]
    fn involutions() {
        let classes = minus_one_classes(7).unwrap();
        let set: BTreeSet<_> = classes.iter().cloned().collect();
        let sigma = seven_cycle(7).unwrap();
        for d in &classes {
            let g = geiser_image(d).unwrap();
            assert_eq!(g, canonical_class(7).scale(-1).add(&d.scale(-1)));
            assert!(set.contains(&g));
            assert_ne!(&g, d);
            assert_eq!(&geiser_image(&g).unwrap(), d);
            assert_eq!(geiser_image(&d.apply(&sigma)).unwrap(), g.apply(&sigma));
        }
        let k8 = canonical_class(8);
        assert_eq!(bertini_image(&k8).unwrap(), k8);
        let set8: BTreeSet<_> = minus_one_classes(8).unwrap().into_iter().collect();
        for d in &set8 {
            let b = bertini_image(d).unwrap();
            assert_eq!(b, k8.scale(-2).add(&d.scale(-1)));
            assert!(set8.contains(&b));
            assert_eq!(&bertini_image(&b).unwrap(), d);
        }
        let k7 = canonical_class(7);
        assert_eq!(geiser_image(&k7).unwrap(), k7);
        assert!(geiser_image(&k8).is_err());
        assert!(bertini_image(&canonical_class(7)).is_err());
    }

    #[test]
    fn seven_tuples() {
        let tuples = disjoint_seven_tuples();
        assert_eq!(tuples.len(), 576);
        let orbit: BTreeSet<_> = weyl_orbit(&PicVector::exceptional_sum(7, 7)).unwrap().into_iter().collect();
        let sums: BTreeSet<_> = tuples.iter().map(|t| t.iter().fold(PicVector::zero(7), |acc, c| acc.add(c))).collect();
        assert_eq!(sums, orbit);
        let pairing = geiser_pairing();
        assert_eq!((pairing.tuples, pairing.pairs, pairing.fixed_tuples, pairing.pairs_mod_7), (576, 288, 0, 1));
    }

    #[test]
    fn order7_degree_two() {
        let inv = order7_invariants(7).unwrap();
        assert_eq!(inv.rank, 1);
        match inv.detail {
            Order7Detail::DegreeTwo { multiple, .. } => assert_eq!(multiple.abs(), 3),
            _ => unreachable!(),
        }
    }

    #[test]
    fn order7_degree_one() {
        let inv = order7_invariants(8).unwrap();
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.gram_det, 7);
        assert!(inv.negative_definite);
        match inv.detail {
            Order7Detail::DegreeOne { vw_gram, change_of_basis_det, equivalent_to_reference_up_to_sign, .. } => {
                assert_eq!(vw_gram, [[-4, -1], [-1, -2]]);
                assert_eq!(change_of_basis_det.abs(), 1);
                assert!(equivalent_to_reference_up_to_sign);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn invariant_rank_is_conjugation_invariant() {
        for r in [7usize, 8] {
            let sigma = seven_cycle(r).unwrap();
            let refl = simple_reflections(r).unwrap();
            // w = s0 s1 s0 ... an arbitrary word in the generators
            let w = refl[0].mul(&refl[3]).mul(&refl[0]).mul(&refl[1]);
            let w_inv = w.inverse_unimodular().unwrap();
            let conj = w.mul(&sigma).mul(&w_inv);
            let basis = invariant_root_sublattice(&conj);
            assert_eq!(basis.len(), order7_invariants(r).unwrap().rank);
            assert_eq!(
                crate::matrix::IntMatrix::from_rows(&gram_matrix(&basis)).det(),
                crate::matrix::IntMatrix::from_rows(&order7_invariants(r).unwrap().gram).det()
            );
        }
    }

    #[test]
    fn automorphs() {
        let g = BinaryFormGram::new(-4, 1, -2);
        let a = automorph_group(&g).unwrap();
        let id = IntMatrix::identity(2);
        assert_eq!(a.proper, vec![id.neg(), id.clone()]);
        assert_eq!(a.full.len(), 4);
        assert_eq!(a.improper.len(), 2);
        for m in &a.improper {
            assert!(m.mul(m).is_identity());
        }
        let square = automorph_group(&BinaryFormGram::new(-1, 0, -1)).unwrap();
        assert_eq!(square.full.len(), 8);
        assert_eq!(automorph_group(&BinaryFormGram::new(1, 0, -1)), Err(Error::NotDefinite));
        // hexagonal lattice x^2 + xy + y^2, doubled: 12 automorphs
        assert_eq!(automorph_group(&BinaryFormGram::new(2, 1, 2)).unwrap().full.len(), 12);
    }
}
