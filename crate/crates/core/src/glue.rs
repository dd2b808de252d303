//! Gluing two even lattices along an anti-isometry of their discriminant
//! forms, and lifting compatible isometries to the glued lattice.
//!
//! For even lattices L1, L2 and a group isomorphism phi : G(L1) -> G(L2)
//! with q1(x) + q2(phi(x)) = 0 mod Z for every x, the lattice
//! { x1 + x2 in L1^v + L2^v | phi(x1 bar) = x2 bar } is even unimodular.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::GlueError;
use crate::exact_linalg::{hermite_normal_form, IntMatrix, QMatrix};
use crate::lattice::{disc_q, elements_from_generators, in_dual, is_even, mod_one, IntLattice};

/// A proposed gluing of two even lattices.
///
/// `gens1` / `gens2` are rational lifts of generating classes of the two
/// discriminant groups; `orders` gives the order of each generator class
/// (the same on both sides for a glue to exist); `phi` sends the class of
/// `gens1[i]` to the class with coordinates `phi[i]` in `gens2`.
pub struct GlueSpec {
    pub l1: IntLattice,
    pub l2: IntLattice,
    pub gens1: Vec<Vec<BigRational>>,
    pub gens2: Vec<Vec<BigRational>>,
    pub orders: Vec<BigInt>,
    pub phi: IntMatrix,
}

/// Outcome of validating a glue spec, element by element.
#[derive(Debug, Clone)]
pub struct GlueReport {
    pub group_order: u64,
    pub bijective: bool,
    pub q_condition: bool,
    /// Coefficients of the first element violating the q-condition.
    pub first_violation: Option<Vec<u64>>,
    pub messages: Vec<String>,
}

impl GlueReport {
    pub fn pass(&self) -> bool {
        self.bijective && self.q_condition && self.messages.is_empty()
    }
}

impl GlueSpec {
    fn phi_image(&self, coeffs: &[u64]) -> Vec<BigRational> {
        let n2 = self.l2.rank();
        let mut v = vec![BigRational::zero(); n2];
        for (i, c) in coeffs.iter().enumerate() {
            for (j, g) in self.gens2.iter().enumerate() {
                let m = &self.phi[(i, j)] * BigInt::from(*c);
                for (vk, gk) in v.iter_mut().zip(g) {
                    *vk += gk * BigRational::from(m.clone());
                }
            }
        }
        crate::lattice::reduce_mod_lattice(&v)
    }
}

/// Exhaustively checks that `phi` is a bijection of the discriminant groups
/// and that q1(x) + q2(phi(x)) = 0 mod Z on every element.
pub fn validate_glue(spec: &GlueSpec) -> GlueReport {
    let mut messages = Vec::new();
    for (k, g) in spec.gens1.iter().enumerate() {
        if !in_dual(&spec.l1, g) {
            messages.push(format!("gens1[{k}] is not in the dual of {}", spec.l1.name));
        }
    }
    for (k, g) in spec.gens2.iter().enumerate() {
        if !in_dual(&spec.l2, g) {
            messages.push(format!("gens2[{k}] is not in the dual of {}", spec.l2.name));
        }
    }
    if !messages.is_empty() {
        return GlueReport {
            group_order: 0,
            bijective: false,
            q_condition: false,
            first_violation: None,
            messages,
        };
    }

    let elems1 = elements_from_generators(&spec.l1, &spec.gens1, &spec.orders);
    let expected = spec.l1.det().abs().to_integer();
    if BigInt::from(elems1.len() as u64) != expected {
        messages.push(format!(
            "generators span {} of {} classes of G({})",
            elems1.len(),
            expected,
            spec.l1.name
        ));
    }

    let mut images = std::collections::BTreeSet::new();
    let mut bijective = true;
    let mut q_condition = true;
    let mut first_violation = None;
    for (coeffs, rep1) in &elems1 {
        let img = spec.phi_image(coeffs);
        let key = img.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
        if !images.insert(key) {
            bijective = false;
        }
        let q1 = disc_q(&spec.l1, rep1).expect("rep1 in dual");
        let q2 = disc_q(&spec.l2, &img).expect("image in dual");
        if mod_one(&(q1 + q2)) != BigRational::zero() {
            q_condition = false;
            if first_violation.is_none() {
                first_violation = Some(coeffs.clone());
            }
        }
    }
    let order2 = spec.l2.det().abs().to_integer();
    if expected != order2 {
        messages.push(format!(
            "|G({})| = {} but |G({})| = {}",
            spec.l1.name, expected, spec.l2.name, order2
        ));
        bijective = false;
    }

    GlueReport {
        group_order: elems1.len() as u64,
        bijective,
        q_condition,
        first_violation,
        messages,
    }
}

/// A glued lattice together with the data needed to lift isometries: the
/// basis rows live in the rational ambient space L1 tensor Q + L2 tensor Q.
pub struct GluedLattice {
    pub lattice: IntLattice,
    /// Basis rows in ambient coordinates (first r1 columns from L1's basis,
    /// then r2 from L2's).
    pub basis: QMatrix,
    pub r1: usize,
    pub r2: usize,
}

/// Builds the glued lattice as the span of L1 + L2 and the lifted generator
/// classes (g, phi(g)), with the basis canonicalized by HNF over a common
/// denominator.
pub fn glue(spec: &GlueSpec) -> Result<GluedLattice, GlueError> {
    let report = validate_glue(spec);
    if !report.pass() {
        let detail = report
            .first_violation
            .map(|c| format!("q-condition fails at class {c:?}"))
            .unwrap_or_else(|| report.messages.join("; "));
        return Err(GlueError::InvalidGlue(detail));
    }
    let r1 = spec.l1.rank();
    let r2 = spec.l2.rank();
    let n = r1 + r2;
    let mut gen_rows: Vec<Vec<BigRational>> = Vec::new();
    for i in 0..n {
        let mut row = vec![BigRational::zero(); n];
        row[i] = BigRational::one();
        gen_rows.push(row);
    }
    for (i, g1) in spec.gens1.iter().enumerate() {
        let coeffs: Vec<u64> = (0..spec.gens1.len()).map(|k| u64::from(k == i)).collect();
        let g2 = spec.phi_image(&coeffs);
        let mut row = vec![BigRational::zero(); n];
        row[..r1].clone_from_slice(g1);
        row[r1..].clone_from_slice(&g2);
        gen_rows.push(row);
    }
    // Common denominator, then HNF.
    let mut denom = BigInt::one();
    for row in &gen_rows {
        for x in row {
            denom = denom.lcm(x.denom());
        }
    }
    let scaled: Vec<Vec<BigInt>> = gen_rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| (x * BigRational::from(denom.clone())).to_integer())
                .collect()
        })
        .collect();
    let hnf = hermite_normal_form(&IntMatrix::from_rows(&scaled));
    if hnf.rank != n {
        return Err(GlueError::InvalidGlue(format!(
            "glued generators span rank {} of {}",
            hnf.rank, n
        )));
    }
    let mut basis = QMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            basis[(i, j)] = BigRational::new(hnf.h[(i, j)].clone(), denom.clone());
        }
    }
    // Ambient Gram is block diagonal.
    let mut amb = QMatrix::zero(n, n);
    for i in 0..r1 {
        for j in 0..r1 {
            amb[(i, j)] = spec.l1.gram[(i, j)].clone();
        }
    }
    for i in 0..r2 {
        for j in 0..r2 {
            amb[(r1 + i, r1 + j)] = spec.l2.gram[(i, j)].clone();
        }
    }
    let gram = basis.mul(&amb).mul(&basis.transpose());
    let name = format!("glue({}, {})", spec.l1.name, spec.l2.name);
    let lattice = IntLattice::new(name, gram)?;
    if !is_even(&lattice) {
        return Err(GlueError::InvalidGlue("glued lattice is not even".into()));
    }
    if lattice.det().abs() != BigRational::one() {
        return Err(GlueError::InvalidGlue(format!(
            "glued lattice has |det| = {}",
            lattice.det().abs()
        )));
    }
    Ok(GluedLattice { lattice, basis, r1, r2 })
}

/// Block-diagonal direct sum (the trivial glue).
pub fn extend_direct_sum(l: &IntLattice, m: &IntLattice) -> IntLattice {
    l.direct_sum(m, format!("{} + {}", l.name, m.name))
}

/// Lifts a compatible pair of isometries to the glued lattice.
///
/// Requires f1 in O(L1), f2 in O(L2), and commutation of the induced
/// discriminant actions with phi, checked exhaustively over G(L1). The
/// returned matrix acts on the glued basis (column-vector convention) and
/// satisfies f^T G f = G.
pub fn lift_isometry(
    spec: &GlueSpec,
    glued: &GluedLattice,
    f1: &IntMatrix,
    f2: &IntMatrix,
) -> Result<IntMatrix, GlueError> {
    if !crate::isometry::is_isometry(&spec.l1, f1) {
        return Err(GlueError::NotAnIsometry("f1".into()));
    }
    if !crate::isometry::is_isometry(&spec.l2, f2) {
        return Err(GlueError::NotAnIsometry("f2".into()));
    }
    // Compatibility on every class: phi(f1 bar x) = f2 bar (phi x).
    let f1q = f1.to_rational();
    let f2q = f2.to_rational();
    let elems1 = elements_from_generators(&spec.l1, &spec.gens1, &spec.orders);
    for (coeffs, rep1) in &elems1 {
        let img = spec.phi_image(coeffs); // phi(x)
        let lhs = crate::lattice::reduce_mod_lattice(&f2q.mul_vec(&img));
        // phi(f1 x): express f1 x in generator coordinates by scanning the
        // (small) group for a matching representative.
        let f1x = crate::lattice::reduce_mod_lattice(&f1q.mul_vec(rep1));
        let mut found = None;
        for (c2, rep2) in &elems1 {
            if *rep2 == f1x {
                found = Some(c2.clone());
                break;
            }
        }
        let Some(c2) = found else {
            return Err(GlueError::Incompatible(format!("{coeffs:?}")));
        };
        let rhs = spec.phi_image(&c2);
        if lhs != rhs {
            return Err(GlueError::Incompatible(format!("{coeffs:?}")));
        }
    }
    // Ambient block action, conjugated into the glued basis. Basis rows are
    // ambient vectors; for column vectors x in basis coordinates the ambient
    // vector is basis^T x, so f_glued = (basis^T)^-1 (f1 + f2) basis^T.
    let n = glued.r1 + glued.r2;
    let mut f_amb = QMatrix::zero(n, n);
    for i in 0..glued.r1 {
        for j in 0..glued.r1 {
            f_amb[(i, j)] = f1q[(i, j)].clone();
        }
    }
    for i in 0..glued.r2 {
        for j in 0..glued.r2 {
            f_amb[(glued.r1 + i, glued.r1 + j)] = f2q[(i, j)].clone();
        }
    }
    let bt = glued.basis.transpose();
    let bt_inv = bt.inverse().expect("glued basis is invertible");
    let f_glued = bt_inv.mul(&f_amb).mul(&bt);
    let f_int = f_glued
        .to_integer()
        .ok_or_else(|| GlueError::Incompatible("lift is not integral".into()))?;
    if !crate::isometry::is_isometry(&glued.lattice, &f_int) {
        return Err(GlueError::NotAnIsometry("lifted map".into()));
    }
    Ok(f_int)
}

/// The Kummer glue fixture: K with the torus image lattice along
/// phi(E_ij) = V_ij.
pub fn kummer_glue_spec() -> GlueSpec {
    let (k, _, kdata) = crate::catalog::kummer_lattice();
    let (l, _, ldata) = crate::catalog::torus_image_lattice();
    // Generators expressed in each lattice's own basis coordinates.
    let bt_inv = kdata.basis.transpose().inverse().expect("basis invertible");
    let gens1: Vec<Vec<BigRational>> = kdata.e_ij.iter().map(|e| bt_inv.mul_vec(e)).collect();
    let gens2 = ldata.v_ij.clone();
    GlueSpec {
        l1: k,
        l2: l,
        gens1,
        gens2,
        orders: vec![BigInt::from(2); 6],
        phi: IntMatrix::identity(6),
    }
}

/// The compatible isometry pair of the Kummer fixture: the permutation of
/// the sixteen E_t classes induced by t -> M t mod 2 (expressed in K's HNF
/// basis) together with the wedge-square action on the torus lattice.
pub fn kummer_isometry_pair(a: i64) -> (IntMatrix, IntMatrix) {
    let (_, _, kdata) = crate::catalog::kummer_lattice();
    let m4 = crate::salem::torus_matrix(a);
    // Permutation on (Z/2Z)^4 points in lexicographic order.
    let pts: Vec<[i64; 4]> = {
        let mut v = Vec::new();
        for a0 in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        v.push([a0, b, c, d]);
                    }
                }
            }
        }
        v
    };
    let idx = |t: &[i64; 4]| pts.iter().position(|p| p == t).unwrap();
    let mut perm = QMatrix::zero(16, 16);
    for (j, t) in pts.iter().enumerate() {
        let mut img = [0i64; 4];
        for (r, img_r) in img.iter_mut().enumerate() {
            let mut acc = 0i64;
            for (c, tc) in t.iter().enumerate() {
                use num_traits::ToPrimitive;
                acc += m4[(r, c)].to_i64().unwrap() * tc;
            }
            *img_r = acc.rem_euclid(2);
        }
        perm[(idx(&img), j)] = BigRational::one();
    }
    // Conjugate the ambient permutation into the HNF basis of K.
    let bt = kdata.basis.transpose();
    let bt_inv = bt.inverse().expect("basis invertible");
    let f1 = bt_inv
        .mul(&perm)
        .mul(&bt)
        .to_integer()
        .expect("permutation preserves K");
    let f2 = crate::salem::wedge_square(&m4);
    (f1, f2)
}

/// The McMullen glue fixture: Pi_L1 with A2 + A2 along phi(u_i) = v_i.
pub fn mcmullen_glue_spec() -> GlueSpec {
    GlueSpec {
        l1: crate::catalog::mcmullen_l1(),
        l2: crate::catalog::mcmullen_l2(),
        gens1: crate::catalog::mcmullen_l1_generators(),
        gens2: crate::catalog::mcmullen_l2_generators(),
        orders: vec![BigInt::from(3); 2],
        phi: IntMatrix::identity(2),
    }
}
