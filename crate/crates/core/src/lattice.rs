//! Integral lattices given by exact Gram matrices: duality, discriminant
//! groups, and discriminant quadratic forms.

use num_bigint::BigInt;
 
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LatticeError;
use crate::exact_linalg::{inertia, smith_normal_form, QMatrix};

/// A finite-rank lattice described by a symmetric Gram matrix.
///
/// The Gram matrix is stored rationally so that lattices arising from
/// half-integral ambient constructions keep exact entries, but for an
/// integral lattice every entry is an integer.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntLattice {
    pub name: String,
    pub gram: QMatrix,
}

/// The finite group `L^v / L` together with lifted generators.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    /// Invariant factors > 1, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    /// Rational lifts of generators, reduced so every coordinate is in [0, 1).
    pub generators: Vec<Vec<BigRational>>,
    /// Group order (product of the invariant factors).
    pub order: BigInt,
}

impl IntLattice {
    pub fn new(name: impl Into<String>, gram: QMatrix) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(IntLattice { name: name.into(), gram })
    }

    pub fn from_int_rows(name: impl Into<String>, rows: &[Vec<i64>]) -> Self {
        let gram =
            crate::exact_linalg::IntMatrix::from_rows(rows).to_rational();
        Self::new(name, gram).expect("symmetric Gram")
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigRational {
        // Determinant through the integer scaling: det(G) for integral G.
        let l = self.gram.denominator_lcm();
        let scaled = scale_to_int(&self.gram, &l);
        let d = scaled.det();
        let lr = BigRational::from(l);
        BigRational::from(d) / pow_rat(&lr, self.rank())
    }

    pub fn is_degenerate(&self) -> bool {
        self.det().is_zero()
    }

    pub fn signature(&self) -> (usize, usize, usize) {
        inertia(&self.gram).expect("Gram is symmetric by construction")
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &IntLattice, name: impl Into<String>) -> IntLattice {
        let n = self.rank();
        let m = other.rank();
        let mut g = QMatrix::zero(n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.gram[(i, j)].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                g[(n + i, n + j)] = other.gram[(i, j)].clone();
            }
        }
        IntLattice { name: name.into(), gram: g }
    }
}

fn scale_to_int(q: &QMatrix, l: &BigInt) -> crate::exact_linalg::IntMatrix {
    let mut m = crate::exact_linalg::IntMatrix::zero(q.rows(), q.cols());
    for i in 0..q.rows() {
        for j in 0..q.cols() {
            let v = &q[(i, j)] * BigRational::from(l.clone());
            debug_assert!(v.is_integer());
            m[(i, j)] = v.to_integer();
        }
    }
    m
}

fn pow_rat(x: &BigRational, n: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..n {
        acc *= x.clone();
    }
    acc
}

/// True iff every diagonal Gram entry is an even integer. By bilinearity this
/// is equivalent to (x.x) being even for every lattice vector.
pub fn is_even(l: &IntLattice) -> bool {
    (0..l.rank()).all(|i| {
        let d = &l.gram[(i, i)];
        d.is_integer() && (d.to_integer() % BigInt::from(2)).is_zero()
    }) && (0..l.rank()).all(|i| (0..l.rank()).all(|j| l.gram[(i, j)].is_integer()))
}

/// True iff |det Gram| = 1.
pub fn is_unimodular(l: &IntLattice) -> bool {
    l.det().abs() == BigRational::one()
}

/// Bilinear pairing x^T G y of two rational vectors.
pub fn pairing(
    l: &IntLattice,
    x: &[BigRational],
    y: &[BigRational],
) -> Result<BigRational, LatticeError> {
    let n = l.rank();
    if x.len() != n || y.len() != n {
        return Err(LatticeError::DimensionMismatch(format!(
            "rank {n}, vectors {} and {}",
            x.len(),
            y.len()
        )));
    }
    let gy = l.gram.mul_vec(y);
    Ok(x.iter().zip(&gy).map(|(a, b)| a * b).sum())
}

/// True iff `x` pairs integrally with the whole lattice, i.e. `x` is in the
/// dual lattice `L^v`.
pub fn in_dual(l: &IntLattice, x: &[BigRational]) -> bool {
    if x.len() != l.rank() {
        return false;
    }
    l.gram.mul_vec(x).iter().all(|v| v.is_integer())
}

/// Discriminant form value q_L(x) = (1/2)(x.x) mod Z, reduced into [0, 1).
pub fn disc_q(l: &IntLattice, x: &[BigRational]) -> Result<BigRational, LatticeError> {
    if !in_dual(l, x) {
        return Err(LatticeError::NotInDual(format!("{x:?}")));
    }
    let q = pairing(l, x, x)? / BigRational::from(BigInt::from(2));
    Ok(mod_one(&q))
}

/// Reduces a rational into [0, 1).
pub fn mod_one(x: &BigRational) -> BigRational {
    let f = x.floor();
    x - f
}

/// Reduces each coordinate of a rational vector into [0, 1).
pub fn reduce_mod_lattice(x: &[BigRational]) -> Vec<BigRational> {
    x.iter().map(mod_one).collect()
}

/// Computes the discriminant group `L^v / L` with canonical generator lifts.
///
/// Structure comes from the Smith normal form of the (integer-scaled) Gram
/// matrix: with U G V = D, the class of x in L^v has coordinates (U G x) mod
/// d_i, and the generator with invariant factor d_i lifts to the i-th column
/// of G^-1 U^-1.
pub fn discriminant_group(l: &IntLattice) -> Result<DiscriminantGroup, LatticeError> {
    if l.is_degenerate() {
        return Err(LatticeError::Degenerate);
    }
    let gi = l.gram.to_integer().ok_or(LatticeError::NotInDual(
        "Gram has non-integral entries; discriminant groups need an integral lattice".into(),
    ))?;
    let snf = smith_normal_form(&gi);
    let n = l.rank();
    let ginv = l.gram.inverse().ok_or(LatticeError::Degenerate)?;
    let uinv = snf
        .u
        .inverse_unimodular()
        .expect("SNF transform is unimodular")
        .to_rational();
    let lift_matrix = ginv.mul(&uinv);
    let mut factors = Vec::new();
    let mut gens = Vec::new();
    for i in 0..n {
        let d = snf.d[(i, i)].clone();
        if d <= BigInt::one() {
            continue;
        }
        factors.push(d);
        let col: Vec<BigRational> = (0..n).map(|r| lift_matrix[(r, i)].clone()).collect();
        gens.push(reduce_mod_lattice(&col));
    }
    let order = factors.iter().fold(BigInt::one(), |a, b| a * b);
    debug_assert_eq!(order, l.det().abs().to_integer());
    Ok(DiscriminantGroup { invariant_factors: factors, generators: gens, order })
}

impl DiscriminantGroup {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Enumerates every group element as (coefficients, reduced lift).
    /// Coefficient i runs over 0..invariant_factors[i].
    pub fn elements(&self, l: &IntLattice) -> Vec<(Vec<u64>, Vec<BigRational>)> {
        elements_from_generators(l, &self.generators, &self.invariant_factors)
    }
}

/// Enumerates the subgroup of `L^v / L` generated by explicit lifts, with the
/// given generator orders. Returns (coefficient tuple, reduced representative)
/// pairs; duplicates are dropped, so the length is the subgroup order.
pub fn elements_from_generators(
    l: &IntLattice,
    generators: &[Vec<BigRational>],
    orders: &[BigInt],
) -> Vec<(Vec<u64>, Vec<BigRational>)> {
    use std::collections::BTreeMap;
    let n = l.rank();
    let mut seen: BTreeMap<String, (Vec<u64>, Vec<BigRational>)> = BTreeMap::new();
    let ords: Vec<u64> = orders.iter().map(|d| u64::try_from(d.clone()).unwrap_or(1)).collect();
    let total: u64 = ords.iter().product();
    for idx in 0..total {
        let mut rem = idx;
        let mut coeffs = Vec::with_capacity(ords.len());
        for &d in &ords {
            coeffs.push(rem % d);
            rem /= d;
        }
        let mut v = vec![BigRational::zero(); n];
        for (c, g) in coeffs.iter().zip(generators) {
            for (vi, gi) in v.iter_mut().zip(g) {
                *vi += gi * BigRational::from(BigInt::from(*c));
            }
        }
        let red = reduce_mod_lattice(&v);
        let key = red.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
        seen.entry(key).or_insert((coeffs, red));
    }
    seen.into_values().collect()
}
