//! Constructors for the concrete lattices used throughout: the hyperbolic
//! plane U, E8(-1) and E10 Dynkin lattices, the K3 lattice with its marked
//! 22-cycle basis, the Kummer lattice, the torus image lattice, and the
//! McMullen pair (Pi_L1, A2 + A2).
//!
//! Dynkin convention: node self-pairing -2, edge pairing +1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::LatticeError;
use crate::exact_linalg::{hermite_normal_form, rat, IntMatrix, QMatrix};
use crate::lattice::IntLattice;

/// Ordered labels for a lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedBasis {
    pub labels: Vec<String>,
}

impl NamedBasis {
    pub fn new(labels: Vec<String>) -> Self {
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            assert!(seen.insert(l.clone()), "duplicate basis label {l}");
        }
        NamedBasis { labels }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Rank-2 even unimodular lattice with (A.A)=0, (A.B)=1, (B.B)=-2.
pub fn hyperbolic_u() -> IntLattice {
    IntLattice::from_int_rows("U", &[vec![0, 1], vec![1, -2]])
}

/// Gram of a Dynkin-type lattice: diagonal -2 and +1 on the given edges.
fn dynkin_gram(rank: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; rank]; rank];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for &(i, j) in edges {
        g[i][j] = 1;
        g[j][i] = 1;
    }
    g
}

/// Labels of the E8 C-cycle basis in chain order.
fn c_labels(sign: char) -> Vec<String> {
    let mut v: Vec<String> =
        (1..=7).map(|i| format!("C{}{}{}", i, i + 1, sign)).collect();
    v.push(format!("C678{sign}"));
    v
}

/// E8(-1) with the marked-cycle shape: chain C12-C23-...-C78 with C678
/// attached to the C56 node.
pub fn e8_minus() -> (IntLattice, NamedBasis) {
    let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, i + 1)).collect();
    edges.push((4, 7)); // C56 - C678
    let l = IntLattice::from_int_rows("E8(-1)", &dynkin_gram(8, &edges));
    (l, NamedBasis::new(c_labels('+')))
}

/// The K3 lattice U + U + U + E8(-1) + E8(-1) in the marked order
/// (A_ab, B_g | A_bg, B_a | A_ga, B_b | C+ block | C- block).
pub fn k3_lattice() -> (IntLattice, NamedBasis) {
    let u = hyperbolic_u();
    let (e8, _) = e8_minus();
    let l = u
        .direct_sum(&u, "")
        .direct_sum(&u, "")
        .direct_sum(&e8, "")
        .direct_sum(&e8, "Pi_3_19");
    let mut labels = vec![
        "A_ab".to_string(),
        "B_g".to_string(),
        "A_bg".to_string(),
        "B_a".to_string(),
        "A_ga".to_string(),
        "B_b".to_string(),
    ];
    labels.extend(c_labels('+'));
    labels.extend(c_labels('-'));
    (l, NamedBasis::new(labels))
}

/// Basis index layout of the K3 marked basis.
pub mod k3_index {
    pub const A_AB: usize = 0;
    pub const B_G: usize = 1;
    pub const A_BG: usize = 2;
    pub const B_A: usize = 3;
    pub const A_GA: usize = 4;
    pub const B_B: usize = 5;
    pub const C_PLUS: usize = 6; // 8 entries
    pub const C_MINUS: usize = 14; // 8 entries
    pub const RANK: usize = 22;
}

/// The sixteen points of (Z/2Z)^4 in lexicographic order.
fn two_torsion_points() -> Vec<[u8; 4]> {
    let mut pts = Vec::with_capacity(16);
    for a in 0..2u8 {
        for b in 0..2u8 {
            for c in 0..2u8 {
                for d in 0..2u8 {
                    pts.push([a, b, c, d]);
                }
            }
        }
    }
    pts
}

/// Data for the Kummer lattice: an HNF basis (rows, in E_t coordinates over
/// denominators 2) together with the ambient diagonal form -2*I_16.
pub struct KummerData {
    pub lattice: IntLattice,
    /// Basis rows in E_t coordinates (rational, denominators dividing 2).
    pub basis: QMatrix,
    /// E_ij dual generators (half-sums over the 2-dimensional subspaces
    /// A_ij), in E_t coordinates, keyed in the order 12,13,14,23,24,34.
    pub e_ij: Vec<Vec<BigRational>>,
}

/// The rank-16 Kummer lattice: generated by the 16 unit classes E_t
/// ((E_t.E_t) = -2, pairwise orthogonal) and the half-sums E_W over the 30
/// affine hyperplanes of (Z/2Z)^4.
pub fn kummer_lattice() -> (IntLattice, NamedBasis, KummerData) {
    let pts = two_torsion_points();
    let idx = |t: &[u8; 4]| -> usize {
        pts.iter().position(|p| p == t).unwrap()
    };
    // Generator rows, scaled by 2 to clear denominators.
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..16 {
        let mut r = vec![BigInt::zero(); 16];
        r[i] = BigInt::from(2);
        rows.push(r);
    }
    for a in 0..16u8 {
        if a == 0 {
            continue;
        }
        let av = [a & 1, (a >> 1) & 1, (a >> 2) & 1, (a >> 3) & 1];
        for c in 0..2u8 {
            let mut r = vec![BigInt::zero(); 16];
            for t in &pts {
                let dot: u8 = av.iter().zip(t).map(|(x, y)| x * y).sum::<u8>() % 2;
                if dot == c {
                    r[idx(t)] = BigInt::from(1);
                }
            }
            rows.push(r);
        }
    }
    let m = IntMatrix::from_rows(
        &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
    );
    let hnf = hermite_normal_form(&m);
    assert_eq!(hnf.rank, 16, "Kummer generators must span rank 16");
    // Basis rows (divide the scaling 2 back out).
    let mut basis = QMatrix::zero(16, 16);
    for i in 0..16 {
        for j in 0..16 {
            basis[(i, j)] = BigRational::new(hnf.h[(i, j)].clone(), BigInt::from(2));
        }
    }
    // Gram: B * (-2 I) * B^T.
    let mut amb = QMatrix::zero(16, 16);
    for i in 0..16 {
        amb[(i, i)] = rat(-2, 1);
    }
    let gram = basis.mul(&amb).mul(&basis.transpose());
    let lattice = IntLattice::new("K", gram).expect("symmetric");
    // E_ij generators of G(K).
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut e_ij = Vec::new();
    for (i, j) in pairs {
        let mut v = vec![BigRational::zero(); 16];
        for t in &pts {
            if (0..4).all(|k| k == i || k == j || t[k] == 0) {
                v[idx(t)] = rat(1, 2);
            }
        }
        e_ij.push(v);
    }
    let labels = NamedBasis::new((0..16).map(|i| format!("K{i}")).collect());
    (lattice.clone(), labels, KummerData { lattice, basis, e_ij })
}

/// Data for the torus image lattice L spanned by 2V_ij.
pub struct TorusData {
    pub lattice: IntLattice,
    /// V_ij dual generators in the 2V basis (each is half a basis vector),
    /// ordered 12,13,14,23,24,34.
    pub v_ij: Vec<Vec<BigRational>>,
}

/// Sign of the permutation sending (1,2,3,4) to the given tuple.
fn perm_sign(p: [usize; 4]) -> i64 {
    let mut s = 1i64;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Index pairs of the wedge basis in the order 12,13,14,23,24,34.
pub const WEDGE_PAIRS: [(usize, usize); 6] =
    [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Rank-6 torus image lattice with basis 2V_ij: (V_ij.V_kl) is
/// (1/2)sgn(1234 -> ijkl) for complementary pairs and 0 otherwise, so the
/// Gram entries are (2V_ij.2V_kl) = 4 (V_ij.V_kl).
pub fn torus_image_lattice() -> (IntLattice, NamedBasis, TorusData) {
    let mut g = vec![vec![0i64; 6]; 6];
    for (a, &(i, j)) in WEDGE_PAIRS.iter().enumerate() {
        for (b, &(k, l)) in WEDGE_PAIRS.iter().enumerate() {
            let inter = [i, j].iter().filter(|x| [k, l].contains(x)).count();
            if inter == 0 {
                g[a][b] = 2 * perm_sign([i, j, k, l]);
            }
        }
    }
    let lattice = IntLattice::from_int_rows("L_torus", &g);
    let mut v_ij = Vec::new();
    for a in 0..6 {
        let mut v = vec![BigRational::zero(); 6];
        v[a] = rat(1, 2);
        v_ij.push(v);
    }
    let labels = NamedBasis::new(
        WEDGE_PAIRS.iter().map(|&(i, j)| format!("2V{}{}", i + 1, j + 1)).collect(),
    );
    (lattice.clone(), labels, TorusData { lattice, v_ij })
}

/// The 10x10 Gram matrix Pi_L1 transcribed verbatim.
pub fn mcmullen_l1() -> IntLattice {
    IntLattice::from_int_rows(
        "Pi_L1",
        &[
            vec![-2, -2, -2, 1, 2, 0, 0, 0, 0, 2],
            vec![-2, -2, -1, 2, 0, 0, 0, 0, 0, 2],
            vec![-2, -1, -2, 1, 2, 0, 0, 0, 0, 0],
            vec![1, 2, 1, -2, -1, 2, 0, 0, 0, -2],
            vec![2, 0, 2, -1, -2, -1, 2, 0, 0, 0],
            vec![0, 0, 0, 2, -1, -2, -1, 2, 0, 0],
            vec![0, 0, 0, 0, 2, -1, -2, -1, 2, 0],
            vec![0, 0, 0, 0, 0, 2, -1, -2, -1, 2],
            vec![0, 0, 0, 0, 0, 0, 2, -1, -2, -1],
            vec![2, 2, 0, -2, 0, 0, 0, 2, -1, -2],
        ],
    )
}

/// Generator lifts (u1, u2) of G(Pi_L1).
pub fn mcmullen_l1_generators() -> Vec<Vec<BigRational>> {
    let u1 = [2, 0, 1, 1, 1, 0, 0, 1, 1, 0];
    let u2 = [1, 2, 2, 0, 1, 1, 0, 0, 1, 1];
    [u1, u2]
        .iter()
        .map(|u| u.iter().map(|&c| rat(c, 3)).collect())
        .collect()
}

pub fn a2() -> IntLattice {
    IntLattice::from_int_rows("A2", &dynkin_gram(2, &[(0, 1)]))
}

/// L2 = A2 + A2.
pub fn mcmullen_l2() -> IntLattice {
    let a = a2();
    a.direct_sum(&a, "L2")
}

/// Generator lifts (v1, v2) of G(L2): v1 = (1/3)(e11 + 2 e12) and
/// v2 = (1/3)(e21 + 2 e22). The second coefficient 2 is forced by
/// v2 = f2(v1) with f2(e11) = e21, f2(e12) = e22, and by v2 having to pair
/// integrally with L2.
pub fn mcmullen_l2_generators() -> Vec<Vec<BigRational>> {
    vec![
        vec![rat(1, 3), rat(2, 3), rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(0, 1), rat(1, 3), rat(2, 3)],
    ]
}

/// The isometry f2 of L2 swapping the two A2 blocks (second block twisted).
pub fn mcmullen_f2() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![0, 0, 0, 1],
        vec![0, 0, 1, 0],
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
    ])
}

/// E10: the even hyperbolic rank-10 Dynkin lattice, the E8 chain extended by
/// two nodes (a chain of nine nodes 0..8 with node 9 attached to node 2).
pub fn e10() -> (IntLattice, NamedBasis) {
    let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, i + 1)).collect();
    edges.push((9, 2));
    let l = IntLattice::from_int_rows("E10", &dynkin_gram(10, &edges));
    (l, NamedBasis::new((1..=10).map(|i| format!("e{i}")).collect()))
}

/// The blow-up Picard configuration: an E8(-1) lattice D0..D7 with chain
/// D1-D2-...-D7 and D0 attached to D3.
pub fn blowup_d_config() -> (IntLattice, NamedBasis) {
    let mut edges: Vec<(usize, usize)> = (1..7).map(|i| (i, i + 1)).collect();
    edges.push((0, 3));
    let l = IntLattice::from_int_rows("Q_blowup", &dynkin_gram(8, &edges));
    (l, NamedBasis::new((0..8).map(|i| format!("D{i}")).collect()))
}

/// Looks a catalog lattice up by CLI name.
pub fn by_name(name: &str) -> Result<IntLattice, LatticeError> {
    match name {
        "u" => Ok(hyperbolic_u()),
        "e8-minus" => Ok(e8_minus().0),
        "k3" => Ok(k3_lattice().0),
        "kummer" => Ok(kummer_lattice().0),
        "torus" => Ok(torus_image_lattice().0),
        "l1" | "mcmullen-l1" => Ok(mcmullen_l1()),
        "l2" => Ok(mcmullen_l2()),
        "e10" => Ok(e10().0),
        "a2" => Ok(a2()),
        "d-blowup" => Ok(blowup_d_config().0),
        other => Err(LatticeError::UnknownLattice(other.to_string())),
    }
}

pub const CATALOG_NAMES: [&str; 10] =
    ["u", "e8-minus", "k3", "kummer", "torus", "l1", "l2", "e10", "a2", "d-blowup"];
