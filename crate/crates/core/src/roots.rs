//! (-2)-class geometry in negative-definite lattices: exact root
//! enumeration, the dominant root of the blow-up configuration, maximum
//! pairwise-disjoint root sets, effective-cone membership, and the
//! Riemann-Roch count.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::RootsError;
use crate::exact_linalg::QMatrix;
use crate::lattice::{pairing, IntLattice};

/// A lattice vector of square -2 in a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RootClass {
    pub coords: Vec<i64>,
}

/// Exact rational LDL^T data of a positive definite form: Q(x) =
/// sum_i d[i] (x_i + sum_{j>i} u[i][j] x_j)^2.
struct Ldlt {
    d: Vec<BigRational>,
    u: Vec<Vec<BigRational>>,
}

fn ldlt(a: &QMatrix) -> Option<Ldlt> {
    let n = a.rows();
    let mut d = vec![BigRational::zero(); n];
    let mut u = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let mut dii = a[(i, i)].clone();
        for k in 0..i {
            let t = &u[k][i] * &u[k][i] * &d[k];
            dii -= t;
        }
        if !dii.is_positive() {
            return None;
        }
        d[i] = dii;
        for j in i + 1..n {
            let mut v = a[(i, j)].clone();
            for k in 0..i {
                let t = &u[k][i] * &u[k][j] * &d[k];
                v -= t;
            }
            u[i][j] = v / &d[i];
        }
    }
    Some(Ldlt { d, u })
}

/// Floor of sqrt(x) for a nonnegative rational, as a BigInt-valued bound
/// helper: returns the largest integer s with s^2 <= x.
fn isqrt_rational_floor(x: &BigRational) -> BigInt {
    if x.is_negative() {
        return BigInt::from(-1);
    }
    // floor(sqrt(n/d)) = floor(sqrt(n*d)/d)
    let nd = x.numer() * x.denom();
    nd.sqrt() / x.denom()
}

/// Every x in Z^n with x^T G x = -2, for negative definite G, by recursive
/// Fincke-Pohst over the exact LDL^T of -G. Output is sorted
/// lexicographically, hence deterministic.
pub fn enumerate_roots(l: &IntLattice) -> Result<Vec<RootClass>, RootsError> {
    let sig = l.signature();
    if sig.0 != 0 || sig.2 != 0 {
        return Err(RootsError::NotNegativeDefinite(sig));
    }
    let n = l.rank();
    let mut a = QMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = -l.gram[(i, j)].clone();
        }
    }
    let dec = ldlt(&a).ok_or(RootsError::NotNegativeDefinite(sig))?;
    let target = BigRational::from(BigInt::from(2));
    let mut out: Vec<RootClass> = Vec::new();
    let mut x = vec![0i64; n];

    // Depth runs from the last coordinate down to the first.
    fn rec(
        dec: &Ldlt,
        i: isize,
        x: &mut Vec<i64>,
        remaining: &BigRational,
        out: &mut Vec<RootClass>,
        target_hit: &mut bool,
    ) {
        if i < 0 {
            if remaining.is_zero() {
                out.push(RootClass { coords: x.clone() });
                *target_hit = true;
            }
            return;
        }
        let i = i as usize;
        let n = x.len();
        let mut c = BigRational::zero();
        for j in i + 1..n {
            c += &dec.u[i][j] * BigRational::from(BigInt::from(x[j]));
        }
        // d_i (x_i + c)^2 <= remaining
        let bound2 = remaining / &dec.d[i];
        let s = isqrt_rational_floor(&bound2);
        if s.is_negative() {
            return;
        }
        // x_i in [ceil(-c - s'), floor(-c + s')] with s' = true sqrt; the
        // integer s satisfies s <= s' < s + 1, so pad by one and verify.
        let s1 = BigRational::from(s) + BigRational::one();
        let lo_r = -&c - &s1;
        let hi_r = -&c + &s1;
        let lo = lo_r.ceil().to_integer().to_i64().expect("bound fits i64");
        let hi = hi_r.floor().to_integer().to_i64().expect("bound fits i64");
        for v in lo..=hi {
            let vv = BigRational::from(BigInt::from(v)) + &c;
            let used = &dec.d[i] * &vv * &vv;
            if &used > remaining {
                continue;
            }
            x[i] = v;
            let rem = remaining - &used;
            rec(dec, i as isize - 1, x, &rem, out, target_hit);
            x[i] = 0;
        }
    }

    let mut hit = false;
    rec(&dec, n as isize - 1, &mut x, &target, &mut out, &mut hit);
    out.sort();
    Ok(out)
}

/// Per-coordinate box bound B_i = floor(sqrt(2 * (A^-1)_ii)) for the naive
/// oracle search, A = -G.
pub fn box_bounds(l: &IntLattice) -> Result<Vec<i64>, RootsError> {
    let sig = l.signature();
    if sig.0 != 0 || sig.2 != 0 {
        return Err(RootsError::NotNegativeDefinite(sig));
    }
    let n = l.rank();
    let mut a = QMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = -l.gram[(i, j)].clone();
        }
    }
    let inv = a.inverse().ok_or(RootsError::NotNegativeDefinite(sig))?;
    Ok((0..n)
        .map(|i| {
            let b = &inv[(i, i)] * BigRational::from(BigInt::from(2));
            isqrt_rational_floor(&b).to_i64().expect("bound fits i64")
        })
        .collect())
}

/// The unique root alpha outside {+-D_j} with (alpha.D_j) >= 0 for every
/// generator D_j (generators are the basis vectors of `l`).
pub fn dominant_root(l: &IntLattice) -> Result<RootClass, RootsError> {
    let n = l.rank();
    let roots = enumerate_roots(l)?;
    let mut found = Vec::new();
    for r in &roots {
        let is_unit = r.coords.iter().filter(|&&c| c != 0).count() == 1
            && r.coords.iter().all(|&c| c.abs() <= 1);
        if is_unit {
            continue;
        }
        let rq: Vec<BigRational> =
            r.coords.iter().map(|&c| BigRational::from(BigInt::from(c))).collect();
        let prods = l.gram.mul_vec(&rq);
        if (0..n).all(|j| !prods[j].is_negative()) {
            found.push(r.clone());
        }
    }
    if found.len() != 1 {
        return Err(RootsError::DominantNotUnique(found.len()));
    }
    Ok(found.pop().unwrap())
}

/// Maximum cardinality of a pairwise-orthogonal subset of `roots`, by
/// branch and bound. Stops early when `limit` is reached.
pub fn max_disjoint_roots(l: &IntLattice, roots: &[RootClass], limit: usize) -> usize {
    let n = roots.len();
    if n == 0 {
        return 0;
    }
    // Orthogonality adjacency as bitsets.
    let words = n.div_ceil(64);
    let mut orth = vec![vec![0u64; words]; n];
    let qcoords: Vec<Vec<BigRational>> = roots
        .iter()
        .map(|r| r.coords.iter().map(|&c| BigRational::from(BigInt::from(c))).collect())
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            let p = pairing(l, &qcoords[i], &qcoords[j]).expect("same rank");
            if p.is_zero() {
                orth[i][j / 64] |= 1 << (j % 64);
                orth[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    fn popcount(set: &[u64]) -> usize {
        set.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn bb(
        orth: &[Vec<u64>],
        cand: Vec<u64>,
        start: usize,
        size: usize,
        best: &mut usize,
        limit: usize,
    ) {
        if size > *best {
            *best = size;
        }
        if *best >= limit {
            return;
        }
        if size + popcount(&cand) <= *best {
            return;
        }
        let n = orth.len();
        for i in start..n {
            if cand[i / 64] & (1 << (i % 64)) == 0 {
                continue;
            }
            let mut next: Vec<u64> = cand.iter().zip(&orth[i]).map(|(a, b)| a & b).collect();
            // only candidates after i to avoid permutations
            for (w, word) in next.iter_mut().enumerate() {
                if w < (i + 1) / 64 {
                    *word = 0;
                } else if w == i / 64 {
                    *word &= !((1u64 << (i % 64)) | ((1u64 << (i % 64)) - 1));
                }
            }
            bb(orth, next, i + 1, size + 1, best, limit);
            if *best >= limit {
                return;
            }
        }
    }
    let mut all = vec![u64::MAX; words];
    if n % 64 != 0 {
        all[words - 1] = (1u64 << (n % 64)) - 1;
    }
    let mut best = 0;
    bb(&orth, all, 0, 0, &mut best, limit);
    best.min(limit)
}

/// Riemann-Roch count chi(O(D)) = D^2/2 + 2 on a K3 surface.
pub fn euler_characteristic(d_square: i64) -> Result<i64, RootsError> {
    if d_square.rem_euclid(2) != 0 {
        return Err(RootsError::OddSquare(d_square));
    }
    Ok(d_square / 2 + 2)
}

/// Nonnegative-integer coordinates of `x` in the monoid generated by the
/// given linearly independent vectors, or None.
pub fn effective_decomposition(
    x: &[BigRational],
    generators: &[Vec<BigRational>],
) -> Result<Option<Vec<BigInt>>, RootsError> {
    let n = x.len();
    let k = generators.len();
    // Solve sum_j c_j gen_j = x by Gaussian elimination on the k x n system.
    let mut aug = QMatrix::zero(n, k + 1);
    for (j, g) in generators.iter().enumerate() {
        assert_eq!(g.len(), n, "generator dimension mismatch");
        for i in 0..n {
            aug[(i, j)] = g[i].clone();
        }
    }
    for i in 0..n {
        aug[(i, k)] = x[i].clone();
    }
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let Some(p) = (row..n).find(|&r| !aug[(r, col)].is_zero()) else {
            return Err(RootsError::DependentGenerators);
        };
        if p != row {
            for j in 0..=k {
                let tmp = aug[(p, j)].clone();
                aug[(p, j)] = aug[(row, j)].clone();
                aug[(row, j)] = tmp;
            }
        }
        let piv = aug[(row, col)].clone();
        for j in 0..=k {
            aug[(row, j)] = &aug[(row, j)] / &piv;
        }
        for r in 0..n {
            if r != row && !aug[(r, col)].is_zero() {
                let f = aug[(r, col)].clone();
                for j in 0..=k {
                    let s = &f * &aug[(row, j)];
                    aug[(r, j)] -= s;
                }
            }
        }
        pivots.push(row);
        row += 1;
    }
    // Consistency: remaining rows must have zero RHS.
    for r in row..n {
        if !aug[(r, k)].is_zero() {
            return Ok(None);
        }
    }
    let mut coeffs = Vec::with_capacity(k);
    for (col, &pr) in pivots.iter().enumerate() {
        let c = aug[(pr, k)].clone();
        let _ = col;
        if !c.is_integer() || c.is_negative() {
            return Ok(None);
        }
        coeffs.push(c.to_integer());
    }
    Ok(Some(coeffs))
}

/// Negative definiteness of a Picard lattice: the no-elliptic-fibration
/// certificate.
pub fn picard_signature_check(pic: &IntLattice) -> bool {
    pic.signature() == (0, pic.rank(), 0)
}

/// The 17-generator Picard lattice of the concrete blow-up example:
/// Z B_gamma + Q_+ + Q_- with Q_+- the D0..D7 configuration.
pub fn picard_17_lattice() -> IntLattice {
    let (q, _) = crate::catalog::blowup_d_config();
    let b = IntLattice::from_int_rows("Q0", &[vec![-2]]);
    b.direct_sum(&q, "").direct_sum(&q, "Pic_17")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exact_linalg::rat;

    #[test]
    fn rank_one_roots() {
        let l = IntLattice::from_int_rows("A1", &[vec![-2]]);
        let roots = enumerate_roots(&l).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].coords, vec![-1]);
        assert_eq!(roots[1].coords, vec![1]);
    }

    #[test]
    fn a2_has_six_roots() {
        let roots = enumerate_roots(&catalog::a2()).unwrap();
        assert_eq!(roots.len(), 6);
        for r in &roots {
            let rq: Vec<_> = r.coords.iter().map(|&c| rat(c, 1)).collect();
            assert_eq!(pairing(&catalog::a2(), &rq, &rq).unwrap(), rat(-2, 1));
        }
    }

    #[test]
    fn a2_roots_match_box_oracle() {
        let l = catalog::a2();
        let bounds = box_bounds(&l).unwrap();
        let mut oracle = Vec::new();
        for x0 in -bounds[0]..=bounds[0] {
            for x1 in -bounds[1]..=bounds[1] {
                let v = vec![rat(x0, 1), rat(x1, 1)];
                if pairing(&l, &v, &v).unwrap() == rat(-2, 1) {
                    oracle.push(RootClass { coords: vec![x0, x1] });
                }
            }
        }
        oracle.sort();
        assert_eq!(enumerate_roots(&l).unwrap(), oracle);
    }

    #[test]
    fn e8_has_240_roots() {
        let (e8, _) = catalog::e8_minus();
        let roots = enumerate_roots(&e8).unwrap();
        assert_eq!(roots.len(), 240);
        // Closed under negation.
        for r in &roots {
            let neg = RootClass { coords: r.coords.iter().map(|c| -c).collect() };
            assert!(roots.binary_search(&neg).is_ok());
        }
    }

    #[test]
    fn indefinite_rejected() {
        let u = catalog::hyperbolic_u();
        assert!(matches!(
            enumerate_roots(&u),
            Err(RootsError::NotNegativeDefinite((1, 1, 0)))
        ));
    }

    #[test]
    fn dominant_root_of_blowup_configuration() {
        let (q, _) = catalog::blowup_d_config();
        let alpha = dominant_root(&q).unwrap();
        assert_eq!(alpha.coords, vec![-3, -2, -4, -6, -5, -4, -3, -2]);
        let rq: Vec<_> = alpha.coords.iter().map(|&c| rat(c, 1)).collect();
        assert_eq!(pairing(&q, &rq, &rq).unwrap(), rat(-2, 1));
        // (alpha.D_j) is 0 or 1 for every j.
        let prods = q.gram.mul_vec(&rq);
        for p in prods {
            assert!(p == rat(0, 1) || p == rat(1, 1));
        }
    }

    #[test]
    fn max_disjoint_on_trivially_orthogonal_set() {
        // k pairwise-orthogonal roots give k.
        let l = IntLattice::from_int_rows(
            "3A1",
            &[vec![-2, 0, 0], vec![0, -2, 0], vec![0, 0, -2]],
        );
        let roots: Vec<RootClass> = (0..3)
            .map(|i| {
                let mut c = vec![0i64; 3];
                c[i] = 1;
                RootClass { coords: c }
            })
            .collect();
        assert_eq!(max_disjoint_roots(&l, &roots, 16), 3);
    }

    #[test]
    fn e8_simple_roots_max_independent_set() {
        // Simple roots of the chain-with-branch diagram: the maximum
        // orthogonal subset is the maximum independent set of the graph.
        let (q, _) = catalog::blowup_d_config();
        let gens: Vec<RootClass> = (0..8)
            .map(|i| {
                let mut c = vec![0i64; 8];
                c[i] = 1;
                RootClass { coords: c }
            })
            .collect();
        assert_eq!(max_disjoint_roots(&q, &gens, 16), 4);
    }

    #[test]
    fn seventeen_generators_have_fewer_than_16_disjoint() {
        let pic = picard_17_lattice();
        let gens: Vec<RootClass> = (0..17)
            .map(|i| {
                let mut c = vec![0i64; 17];
                c[i] = 1;
                RootClass { coords: c }
            })
            .collect();
        let m = max_disjoint_roots(&pic, &gens, 17);
        assert_eq!(m, 9);
        assert!(m < 16);
    }

    #[test]
    fn euler_characteristic_values() {
        assert_eq!(euler_characteristic(-2).unwrap(), 1);
        assert_eq!(euler_characteristic(0).unwrap(), 2);
        assert_eq!(euler_characteristic(2).unwrap(), 3);
        assert!(matches!(euler_characteristic(-3), Err(RootsError::OddSquare(-3))));
    }

    #[test]
    fn effective_decomposition_examples() {
        let gens: Vec<Vec<BigRational>> = (0..3)
            .map(|i| (0..3).map(|j| rat(i64::from(i == j), 1)).collect())
            .collect();
        // x = g0 + 2 g1
        let x = vec![rat(1, 1), rat(2, 1), rat(0, 1)];
        assert_eq!(
            effective_decomposition(&x, &gens).unwrap(),
            Some(vec![1.into(), 2.into(), 0.into()])
        );
        // negative coefficient
        let x = vec![rat(-1, 1), rat(0, 1), rat(0, 1)];
        assert_eq!(effective_decomposition(&x, &gens).unwrap(), None);
    }

    #[test]
    fn negated_dominant_root_is_effective() {
        let (q, _) = catalog::blowup_d_config();
        let alpha = dominant_root(&q).unwrap();
        let gens: Vec<Vec<BigRational>> = (0..8)
            .map(|i| (0..8).map(|j| rat(i64::from(i == j), 1)).collect())
            .collect();
        let neg: Vec<BigRational> = alpha.coords.iter().map(|&c| rat(-c, 1)).collect();
        let coeffs = effective_decomposition(&neg, &gens).unwrap().unwrap();
        let expect: Vec<BigInt> =
            [3, 2, 4, 6, 5, 4, 3, 2].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(coeffs, expect);
        // alpha itself is not effective.
        let pos: Vec<BigRational> = alpha.coords.iter().map(|&c| rat(c, 1)).collect();
        assert_eq!(effective_decomposition(&pos, &gens).unwrap(), None);
    }

    #[test]
    fn picard_17_is_negative_definite() {
        let pic = picard_17_lattice();
        assert!(picard_signature_check(&pic));
        assert!(!picard_signature_check(&catalog::hyperbolic_u()));
        let (e8, _) = catalog::e8_minus();
        assert!(picard_signature_check(&e8));
    }

    #[test]
    fn l2_roots_match_box_oracle() {
        let l = crate::catalog::mcmullen_l2();
        let bounds = box_bounds(&l).unwrap();
        let mut oracle = Vec::new();
        for x0 in -bounds[0]..=bounds[0] {
            for x1 in -bounds[1]..=bounds[1] {
                for x2 in -bounds[2]..=bounds[2] {
                    for x3 in -bounds[3]..=bounds[3] {
                        let v: Vec<BigRational> =
                            [x0, x1, x2, x3].iter().map(|&c| rat(c, 1)).collect();
                        if pairing(&l, &v, &v).unwrap() == rat(-2, 1) {
                            oracle.push(RootClass { coords: vec![x0, x1, x2, x3] });
                        }
                    }
                }
            }
        }
        oracle.sort();
        assert_eq!(enumerate_roots(&l).unwrap(), oracle);
        assert_eq!(oracle.len(), 12); // two A2 blocks, six roots each
    }

    #[test]
    fn kummer_roots_are_exactly_the_sixteen_node_classes() {
        // Independent oracle: the only (-2)-vectors of K are +-E_t; the
        // half-sums over 2-flats are in the dual but not in K, and every
        // E_W has square -4.
        let (k, _, data) = crate::catalog::kummer_lattice();
        let roots = enumerate_roots(&k).unwrap();
        assert_eq!(roots.len(), 32);
        let bt_inv = data.basis.transpose().inverse().unwrap();
        for t in 0..16 {
            let mut amb = vec![BigRational::zero(); 16];
            amb[t] = rat(1, 1);
            let coords = bt_inv.mul_vec(&amb);
            let ic: Vec<i64> = coords
                .iter()
                .map(|c| {
                    use num_traits::ToPrimitive;
                    assert!(c.is_integer());
                    c.to_integer().to_i64().unwrap()
                })
                .collect();
            assert!(roots.binary_search(&RootClass { coords: ic }).is_ok());
        }
    }

    #[test]
    fn picard_17_has_482_roots() {
        let pic = picard_17_lattice();
        let roots = enumerate_roots(&pic).unwrap();
        assert_eq!(roots.len(), 482);
    }
}
