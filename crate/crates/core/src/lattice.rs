//! Lattices with finite group actions: character modules of algebraic tori.
//!
//! A torus over `k` split by a Galois extension with group `G` is the same
//! thing as a free `Z`-module of finite rank with `G` acting by integer
//! matrices. This module builds the modules that matter here (the regular
//! representation and the cyclotomic quotient `Z[x]/Phi_t`), computes
//! invariant sublattices, and checks the reduction-mod-`ell` injectivity of
//! finite-order integer matrices.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{euler_phi, smallest_unit_of_order};
use crate::error::{Error, Result};
use crate::field::{cyclotomic_invariants, CyclotomicInvariants, FieldDescriptor};
use crate::matrix::{integer_kernel, IntMatrix};

pub const DEFAULT_GROUP_CAP: usize = 100_000;

/// Largest `t` for which cyclotomic polynomials are built.
pub const MAX_CYCLOTOMIC_INDEX: u64 = 20_000;

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntegerPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntegerPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntegerPolynomial::from_i64(&[1])
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += 1;
        IntegerPolynomial::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntegerPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntegerPolynomial::new(out)
    }

    /// Long division by a monic divisor; returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &IntegerPolynomial) -> (IntegerPolynomial, IntegerPolynomial) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (IntegerPolynomial::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d].clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        (IntegerPolynomial::new(quot), IntegerPolynomial::new(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &IntegerPolynomial) -> IntegerPolynomial {
        let (q, r) = self.div_rem_monic(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Companion matrix of a monic polynomial: multiplication by `x` on
    /// `Z[x]/(p)` in the basis `1, x, ..., x^{d-1}`.
    pub fn companion_matrix(&self) -> IntMatrix {
        assert!(self.is_monic(), "companion matrix of a non-monic polynomial");
        let d = self.degree().unwrap();
        let mut m = IntMatrix::zeros(d, d);
        for i in 1..d {
            m[(i, i - 1)] = 1;
        }
        for i in 0..d {
            m[(i, d - 1)] = -self.coeffs[i].to_i64().expect("companion entry exceeds i64");
        }
        m
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = !abs.is_one() || k == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntegerPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn check_index(t: u64) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidArgument("cyclotomic index must be positive".into()));
    }
    if t > MAX_CYCLOTOMIC_INDEX {
        return Err(Error::CapExceeded(format!("cyclotomic index {t} > {MAX_CYCLOTOMIC_INDEX}")));
    }
    Ok(())
}

/// `Phi_t`, by dividing `x^t - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(t: u64) -> Result<IntegerPolynomial> {
    check_index(t)?;
    let divisors: Vec<u64> = (1..=t).filter(|d| t.is_multiple_of(*d)).collect();
    let mut table: BTreeMap<u64, IntegerPolynomial> = BTreeMap::new();
    for &d in &divisors {
        let mut p = IntegerPolynomial::x_pow_minus_one(d as usize);
        for (&e, phi) in table.iter().filter(|(&e, _)| d % e == 0) {
            debug_assert!(e < d);
            p = p.div_exact(phi);
        }
        table.insert(d, p);
    }
    Ok(table.remove(&t).unwrap())
}

/// `Psi_t = (x^t - 1) / Phi_t`, so that `x^t - 1 = Phi_t * Psi_t`.
pub fn psi_cofactor(t: u64) -> Result<IntegerPolynomial> {
    let phi = cyclotomic_polynomial(t)?;
    let whole = IntegerPolynomial::x_pow_minus_one(t as usize);
    let psi = whole.div_exact(&phi);
    assert_eq!(phi.mul(&psi), whole, "Phi_t * Psi_t != x^t - 1");
    Ok(psi)
}

/// Multiplicative closure of square integer matrices, sorted.
pub fn group_closure(generators: &[IntMatrix]) -> Result<Vec<IntMatrix>> {
    group_closure_with_cap(generators, DEFAULT_GROUP_CAP)
}

pub fn group_closure_with_cap(generators: &[IntMatrix], cap: usize) -> Result<Vec<IntMatrix>> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidArgument("group closure needs at least one generator".into()))?;
    let n = first.rows();
    for g in generators {
        if !g.is_square() || g.rows() != n {
            return Err(Error::InvalidArgument("generators must be square of equal size".into()));
        }
        if g.det().abs() != 1 {
            return Err(Error::InvalidArgument(format!("generator {g} is not invertible over Z")));
        }
    }
    let oversized = || Error::CapExceeded(format!("infinite or oversized group (more than {cap} elements)"));
    let identity = IntMatrix::identity(n);
    let mut seen: BTreeSet<IntMatrix> = BTreeSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.checked_mul(g).ok_or_else(oversized)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(oversized());
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// A free `Z`-module of finite rank with a finite group acting on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisLattice {
    rank: usize,
    generators: Vec<IntMatrix>,
    elements: Vec<IntMatrix>,
}

impl GaloisLattice {
    pub fn new(rank: usize, generators: Vec<IntMatrix>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidArgument("lattice rank must be positive".into()));
        }
        if generators.iter().any(|g| g.rows() != rank || g.cols() != rank) {
            return Err(Error::InvalidArgument(format!("generators must be {rank}x{rank}")));
        }
        let elements =
            if generators.is_empty() { vec![IntMatrix::identity(rank)] } else { group_closure(&generators)? };
        Ok(GaloisLattice { rank, generators, elements })
    }

    pub fn trivial(rank: usize) -> Result<Self> {
        GaloisLattice::new(rank, Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn group_order(&self) -> usize {
        self.elements.len()
    }

    /// Saturated basis of `{v : g v = v for all g}`.
    pub fn fixed_sublattice(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        if self.generators.is_empty() {
            return integer_kernel(&IntMatrix::zeros(1, n));
        }
        let id = IntMatrix::identity(n);
        let mut data = Vec::with_capacity(self.generators.len() * n * n);
        for g in &self.generators {
            for i in 0..n {
                data.extend_from_slice(g.sub(&id).row(i));
            }
        }
        integer_kernel(&IntMatrix::new(self.generators.len() * n, n, data))
    }

    /// The same module with the contragredient action `g -> g^{-T}`.
    pub fn dual(&self) -> GaloisLattice {
        let generators = self.generators.iter().map(|g| g.dual().expect("generator is unimodular")).collect();
        GaloisLattice::new(self.rank, generators).expect("dual of a finite group is finite")
    }
}

pub fn invariant_rank(lattice: &GaloisLattice) -> usize {
    lattice.fixed_sublattice().len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusDescription {
    pub character_lattice: GaloisLattice,
    pub splitting_degree: usize,
    pub label: String,
}

impl TorusDescription {
    pub fn dimension(&self) -> usize {
        self.character_lattice.rank()
    }
}

pub fn is_anisotropic(torus: &TorusDescription) -> bool {
    invariant_rank(&torus.character_lattice) == 0
}

/// Character module `Z[x]/(x^t - 1)` of `R_{E/k}(G_m)` for a cyclic extension of degree `t`.
pub fn weil_restriction_module(t: u64) -> Result<TorusDescription> {
    check_index(t)?;
    let shift = IntegerPolynomial::x_pow_minus_one(t as usize).companion_matrix();
    let generators = if t == 1 { Vec::new() } else { vec![shift] };
    Ok(TorusDescription {
        character_lattice: GaloisLattice::new(t as usize, generators)?,
        splitting_degree: t as usize,
        label: "R_{E/k}(G_m)".into(),
    })
}

/// Witness that the image of `R_{E/k}(G_m)` under `Psi(gamma)` keeps the
/// cyclic group of `ell^m`-th roots of unity: the cyclotomic character
/// sends `gamma` to `c`, and `Psi(c)` must be a unit modulo `ell`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionWitness {
    pub character_generator: u64,
    pub modulus: u64,
    pub psi_at_generator: String,
    pub psi_at_generator_mod_ell: u64,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormQuotientTorus {
    pub torus: TorusDescription,
    pub invariants: CyclotomicInvariants,
    pub phi_t: IntegerPolynomial,
    pub psi_t: IntegerPolynomial,
    pub witness: TorsionWitness,
}

/// The `phi(t)`-dimensional torus with character module `Z[x]/Phi_t(x)`.
pub fn norm_quotient_torus(field: &FieldDescriptor, ell: u64) -> Result<NormQuotientTorus> {
    let invariants = cyclotomic_invariants(field, ell)?;
    let t = invariants.t;
    check_index(t)?;
    let phi_t = cyclotomic_polynomial(t)?;
    let psi_t = psi_cofactor(t)?;
    let action = phi_t.companion_matrix();
    let generators = if t == 1 { Vec::new() } else { vec![action] };
    let dim = euler_phi(t);
    let torus = TorusDescription {
        character_lattice: GaloisLattice::new(dim as usize, generators)?,
        splitting_degree: t as usize,
        label: format!("norm-quotient of dimension {dim}"),
    };

    let modulus = ell
        .checked_pow(invariants.m)
        .ok_or_else(|| Error::CapExceeded(format!("{ell}^{} overflows u64", invariants.m)))?;
    // Image of the cyclotomic character: q itself over F_q, otherwise the
    // smallest unit of order t modulo ell^m.
    let c = match *field {
        FieldDescriptor::FiniteField { .. } => field.order().unwrap() % modulus,
        _ => smallest_unit_of_order(t, modulus)
            .ok_or_else(|| Error::InvalidArgument(format!("no unit of order {t} modulo {modulus}")))?,
    };
    let value = psi_t.eval(&BigInt::from(c));
    let residue = value.mod_floor(&BigInt::from(ell)).to_u64().unwrap();
    let witness = TorsionWitness {
        character_generator: c,
        modulus,
        psi_at_generator: value.to_string(),
        psi_at_generator_mod_ell: residue,
        passes: value.gcd(&BigInt::from(ell)).is_one(),
    };
    Ok(NormQuotientTorus { torus, invariants, phi_t, psi_t, witness })
}

/// Representatives of the seven conjugacy classes of finite-order elements of `GL_2(Z)`.
pub fn gl2_finite_order_representatives() -> Vec<IntMatrix> {
    [
        [[1, 0], [0, 1]],
        [[-1, 0], [0, -1]],
        [[1, 0], [0, -1]],
        [[0, 1], [1, 0]],
        [[0, -1], [1, -1]],
        [[0, -1], [1, 0]],
        [[1, -1], [1, 0]],
    ]
    .iter()
    .map(|rows| IntMatrix::from_rows(rows))
    .collect()
}

const ORDER_SEARCH_CAP: u64 = 1_000;

/// Checks that reduction modulo `ell` is injective on `sample` and keeps
/// each element's multiplicative order.
pub fn torsion_injectivity_check(ell: u64, sample: &[IntMatrix]) -> Result<bool> {
    if ell < 3 {
        return Err(Error::InvalidArgument("ℓ ≥ 3 required".into()));
    }
    if !crate::arith::is_prime(ell) {
        return Err(Error::InvalidPrime { value: ell, expected: "a prime" });
    }
    let modulus = ell as i64;
    let mut reductions = BTreeSet::new();
    for g in sample {
        if !g.is_square() {
            return Err(Error::InvalidArgument("sample matrices must be square".into()));
        }
        let order = g
            .order(ORDER_SEARCH_CAP)
            .ok_or_else(|| Error::CapExceeded(format!("matrix {g} has no finite order below {ORDER_SEARCH_CAP}")))?;
        let reduced = g.reduce_mod(modulus);
        let identity = IntMatrix::identity(g.rows());
        let mut acc = reduced.clone();
        let mut reduced_order = 1;
        while acc != identity {
            acc = acc.mul_mod(&reduced, modulus);
            reduced_order += 1;
        }
        if reduced_order != order {
            return Ok(false);
        }
        if !reductions.insert(reduced) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether some `dim`-dimensional torus over `field` has a rational point of order `ell`.
pub fn torus_has_order_point(dim: u64, field: &FieldDescriptor, ell: u64) -> Result<bool> {
    let inv = cyclotomic_invariants(field, ell)?;
    Ok(euler_phi(inv.t) <= dim)
}
