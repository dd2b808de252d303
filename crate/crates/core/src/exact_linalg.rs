//! Exact integer/rational linear algebra: normal forms, kernels, inertia.
//!
//! Everything here runs over arbitrary-precision integers (`BigInt`) and
//! rationals (`BigRational`). No floating point enters this module; callers
//! that need numerics convert at the boundary.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::error::LinalgError;

/// Dense row-major matrix with exact integer entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

/// Dense row-major matrix with exact rational entries.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<I: Into<BigInt> + Clone>(rows: &[Vec<I>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flatten().map(|x| x.clone().into()).collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = int(f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let entries = self.entries.iter().map(|a| a * c).collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn to_rational(&self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| BigRational::from(e.clone())).collect(),
        }
    }

    /// Exact determinant via Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.entries.clone();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * n + j].clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if at(&m, k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !at(&m, i, k).is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&at(&m, k, k) * &at(&m, i, j) - &at(&m, i, k) * &at(&m, k, j))
                        / &prev;
                    m[i * n + j] = v;
                }
            }
            prev = at(&m, k, k);
        }
        sign * at(&m, n - 1, n - 1)
    }

    /// Inverse of a unimodular (or generally invertible-over-Z) matrix.
    /// Returns `None` if the matrix is not invertible over the integers.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        let inv = self.to_rational().inverse()?;
        inv.to_integer()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
        }
        write!(f, "]")
    }
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigRational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, entries: rows.iter().flatten().cloned().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Exact inverse by Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a[(i, col)].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a[(pivot, j)].clone();
                    a[(pivot, j)] = a[(col, j)].clone();
                    a[(col, j)] = tmp;
                    let tmp = inv[(pivot, j)].clone();
                    inv[(pivot, j)] = inv[(col, j)].clone();
                    inv[(col, j)] = tmp;
                }
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..n {
                    let s = &f * &a[(col, j)];
                    a[(i, j)] -= s;
                    let s = &f * &inv[(col, j)];
                    inv[(i, j)] -= s;
                }
            }
        }
        Some(inv)
    }

    /// Converts to an integer matrix when every entry is integral.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        let mut out = IntMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = &self[(i, j)];
                if !e.is_integer() {
                    return None;
                }
                out[(i, j)] = e.to_integer();
            }
        }
        Some(out)
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for e in &self.entries {
            l = l.lcm(e.denom());
        }
        l
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// JSON wire format: {"rows": n, "cols": m, "entries": [[..]]} with integers as
// plain numbers (decimal strings beyond i64) and rationals as "p/q" strings.
// ---------------------------------------------------------------------------

fn bigint_to_json(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x.clone()) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(x.to_string()),
    }
}

fn rational_to_json(x: &BigRational) -> serde_json::Value {
    if x.is_integer() {
        bigint_to_json(&x.to_integer())
    } else {
        serde_json::Value::from(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn rational_from_json(v: &serde_json::Value) -> Result<BigRational, String> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from(BigInt::from(i)))
            } else {
                Err(format!("non-integer JSON number {n}; use a \"p/q\" string"))
            }
        }
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(format!("expected number or \"p/q\" string, got {other}")),
    }
}

/// Parses "p", "p/q", or a finite decimal like "-1.25" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|e| e.to_string())?;
        let d = BigInt::from_str(den.trim()).map_err(|e| e.to_string())?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.trim_start().starts_with('-');
        let w = BigInt::from_str(if whole.is_empty() { "0" } else { whole })
            .map_err(|e| e.to_string())?;
        let digits = frac.len() as u32;
        let f = BigInt::from_str(frac).map_err(|e| e.to_string())?;
        let base = BigInt::from(10u32).pow(digits);
        let mag = w.abs() * &base + f;
        let signed = if neg { -mag } else { mag };
        return Ok(BigRational::new(signed, base));
    }
    BigInt::from_str(s).map(BigRational::from).map_err(|e| e.to_string())
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("cols", &self.cols)?;
        let rows: Vec<Vec<serde_json::Value>> =
            (0..self.rows).map(|i| self.row(i).iter().map(rational_to_json).collect()).collect();
        map.serialize_entry("entries", &rows)?;
        map.serialize_entry("rows", &self.rows)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<serde_json::Value>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.entries.len() != raw.rows || raw.entries.iter().any(|r| r.len() != raw.cols) {
            return Err(D::Error::custom("entry shape does not match rows/cols"));
        }
        let mut m = QMatrix::zero(raw.rows, raw.cols);
        for (i, row) in raw.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = rational_from_json(v).map_err(D::Error::custom)?;
            }
        }
        Ok(m)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rational().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let q = QMatrix::deserialize(deserializer)?;
        q.to_integer().ok_or_else(|| D::Error::custom("matrix has non-integer entries"))
    }
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal, nonnegative,
/// with each diagonal entry dividing the next.
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries > 1, i.e. the invariant factors of the cokernel.
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).filter(|x| *x > BigInt::one()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    // Row op: r_i <- a r_i + b r_j, r_j <- c r_i + e r_j with ae - bc = ±1.
    let row_op = |d: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize, co: [&BigInt; 4]| {
        for m in [&mut *d, &mut *u] {
            for k in 0..m.cols() {
                let x = m[(i, k)].clone();
                let y = m[(j, k)].clone();
                m[(i, k)] = co[0] * &x + co[1] * &y;
                m[(j, k)] = co[2] * &x + co[3] * &y;
            }
        }
    };
    let col_op = |d: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize, co: [&BigInt; 4]| {
        for m in [&mut *d, &mut *v] {
            for k in 0..m.rows() {
                let x = m[(k, i)].clone();
                let y = m[(k, j)].clone();
                m[(k, i)] = co[0] * &x + co[1] * &y;
                m[(k, j)] = co[2] * &x + co[3] * &y;
            }
        }
    };

    let n = rows.min(cols);
    let mut t = 0;
    'outer: while t < n {
        // Clear row and column t. The smallest nonzero entry of the
        // remaining block is re-selected as the pivot on every pass, which
        // keeps the intermediate entries from exploding.
        loop {
            let mut found: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    match &found {
                        Some((pi, pj)) if d[(*pi, *pj)].abs() <= d[(i, j)].abs() => {}
                        _ => found = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = found else { break 'outer };
            if pi != t {
                let (one, zero) = (BigInt::one(), BigInt::zero());
                row_op(&mut d, &mut u, t, pi, [&zero, &one, &one, &zero]);
            }
            if pj != t {
                let (one, zero) = (BigInt::one(), BigInt::zero());
                col_op(&mut d, &mut v, t, pj, [&zero, &one, &one, &zero]);
            }
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let a = d[(t, t)].clone();
                let b = d[(i, t)].clone();
                if (&b % &a).is_zero() {
                    // Plain subtraction keeps the pivot row untouched.
                    let q = &b / &a;
                    let (one, zero) = (BigInt::one(), BigInt::zero());
                    let mq = -q;
                    row_op(&mut d, &mut u, t, i, [&one, &zero, &mq, &one]);
                } else {
                    let e = a.extended_gcd(&b);
                    let (g, x, y) = (e.gcd, e.x, e.y);
                    let (aq, bq) = (&a / &g, &b / &g);
                    row_op(&mut d, &mut u, t, i, [&x, &y, &(-bq), &aq]);
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let a = d[(t, t)].clone();
                let b = d[(t, j)].clone();
                if (&b % &a).is_zero() {
                    let q = &b / &a;
                    let (one, zero) = (BigInt::one(), BigInt::zero());
                    let mq = -q;
                    col_op(&mut d, &mut v, t, j, [&one, &zero, &mq, &one]);
                } else {
                    let e = a.extended_gcd(&b);
                    let (g, x, y) = (e.gcd, e.x, e.y);
                    let (aq, bq) = (&a / &g, &b / &g);
                    col_op(&mut d, &mut v, t, j, [&x, &y, &(-bq), &aq]);
                }
            }
            let row_clean = (t + 1..cols).all(|j| d[(t, j)].is_zero());
            let col_clean = (t + 1..rows).all(|i| d[(i, t)].is_zero());
            if row_clean && col_clean {
                break;
            }
        }
        t += 1;
    }

    // Enforce the divisibility chain d_i | d_{i+1}.
    let k = (0..n).take_while(|&i| !d[(i, i)].is_zero()).count();
    loop {
        let mut fixed = true;
        for i in 0..k.saturating_sub(1) {
            let a = d[(i, i)].clone();
            let b = d[(i + 1, i + 1)].clone();
            if (&b % &a).is_zero() {
                continue;
            }
            fixed = false;
            // Fold d_{i+1} into column i, then re-clear the 2x2 block.
            let (one, zero) = (BigInt::one(), BigInt::zero());
            col_op(&mut d, &mut v, i, i + 1, [&one, &one, &zero, &one]);
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let (aq, bq) = (&a / &g, &b / &g);
            row_op(&mut d, &mut u, i, i + 1, [&x, &y, &(-bq), &aq]);
            // The (i, i+1) entry is now nonzero; clear it by a column op.
            let q = &d[(i, i + 1)] / &d[(i, i)];
            let (one, zero) = (BigInt::one(), BigInt::zero());
            let mq = -q;
            col_op(&mut d, &mut v, i + 1, i, [&one, &mq, &zero, &one]);
        }
        if fixed {
            break;
        }
    }

    // Positive diagonal.
    for i in 0..n {
        if d[(i, i)].is_negative() {
            let m1 = -BigInt::one();
            for kk in 0..rows {
                let val = &u[(i, kk)] * &m1;
                u[(i, kk)] = val;
            }
            for kk in 0..cols {
                let val = &d[(i, kk)] * &m1;
                d[(i, kk)] = val;
            }
        }
    }

    SmithDecomposition { u, d, v }
}

// ---------------------------------------------------------------------------
// Hermite normal form (row style)
// ---------------------------------------------------------------------------

/// `u * m = h` with `u` unimodular; `h` is in row echelon form with positive
/// pivots and entries above each pivot reduced into `[0, pivot)`.
pub struct HermiteDecomposition {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);

    let row_op = |h: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize, co: [&BigInt; 4]| {
        for m in [&mut *h, &mut *u] {
            for k in 0..m.cols() {
                let x = m[(i, k)].clone();
                let y = m[(j, k)].clone();
                m[(i, k)] = co[0] * &x + co[1] * &y;
                m[(j, k)] = co[2] * &x + co[3] * &y;
            }
        }
    };

    let mut pivot_row = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&i| !h[(i, col)].is_zero()) else {
            continue;
        };
        if p != pivot_row {
            let (one, zero) = (BigInt::one(), BigInt::zero());
            row_op(&mut h, &mut u, pivot_row, p, [&zero, &one, &one, &zero]);
        }
        for i in pivot_row + 1..rows {
            if h[(i, col)].is_zero() {
                continue;
            }
            let a = h[(pivot_row, col)].clone();
            let b = h[(i, col)].clone();
            if (&b % &a).is_zero() {
                let q = &b / &a;
                let (one, zero) = (BigInt::one(), BigInt::zero());
                let mq = -q;
                row_op(&mut h, &mut u, pivot_row, i, [&one, &zero, &mq, &one]);
            } else {
                let e = a.extended_gcd(&b);
                let (g, x, y) = (e.gcd, e.x, e.y);
                let (aq, bq) = (&a / &g, &b / &g);
                row_op(&mut h, &mut u, pivot_row, i, [&x, &y, &(-bq), &aq]);
            }
        }
        if h[(pivot_row, col)].is_negative() {
            let m1 = -BigInt::one();
            for k in 0..cols {
                let val = &h[(pivot_row, k)] * &m1;
                h[(pivot_row, k)] = val;
            }
            for k in 0..rows {
                let val = &u[(pivot_row, k)] * &m1;
                u[(pivot_row, k)] = val;
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }

    // Reduce entries above each pivot into [0, pivot).
    for &(pr, pc) in pivots.iter() {
        for i in 0..pr {
            let q = h[(i, pc)].div_floor(&h[(pr, pc)]);
            if q.is_zero() {
                continue;
            }
            let mq = -q;
            let (one, zero) = (BigInt::one(), BigInt::zero());
            row_op(&mut h, &mut u, i, pr, [&one, &mq, &zero, &one]);
        }
    }

    HermiteDecomposition { h, u, rank: pivots.len() }
}

// ---------------------------------------------------------------------------
// Integer kernel and inertia
// ---------------------------------------------------------------------------

/// Basis of `{x in Z^n : m x = 0}` in HNF-reduced canonical form.
///
/// The returned basis is saturated: it spans the full integer kernel, not a
/// finite-index sublattice.
pub fn integer_kernel(m: &QMatrix) -> Vec<Vec<BigInt>> {
    // Clear denominators row by row; the integer kernel is unchanged.
    let mut mi = IntMatrix::zero(m.rows(), m.cols());
    for i in 0..m.rows() {
        let mut l = BigInt::one();
        for j in 0..m.cols() {
            l = l.lcm(m[(i, j)].denom());
        }
        for j in 0..m.cols() {
            let scaled = &m[(i, j)] * BigRational::from(l.clone());
            mi[(i, j)] = scaled.to_integer();
        }
    }
    let snf = smith_normal_form(&mi);
    let n = m.cols();
    let rank = (0..m.rows().min(n)).filter(|&i| !snf.d[(i, i)].is_zero()).count();
    // Columns of V beyond the rank span the kernel (M V e_i = U^-1 D e_i = 0).
    let mut basis: Vec<Vec<BigInt>> = (rank..n)
        .map(|j| (0..n).map(|i| snf.v[(i, j)].clone()).collect())
        .collect();
    if basis.is_empty() {
        return basis;
    }
    // Canonicalize through HNF of the stacked basis rows.
    let bm = IntMatrix::from_rows(&basis);
    let hnf = hermite_normal_form(&bm);
    basis = (0..hnf.rank).map(|i| hnf.h.row(i).to_vec()).collect();
    basis
}

/// Sylvester inertia `(n_plus, n_minus, n_zero)` of a symmetric rational
/// matrix, by exact congruent diagonalization.
pub fn inertia(g: &QMatrix) -> Result<(usize, usize, usize), LinalgError> {
    if !g.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let n = g.rows();
    let mut a = g.clone();
    let mut plus = 0;
    let mut minus = 0;
    let mut zero = 0;
    let mut idx = 0;
    while idx < n {
        if a[(idx, idx)].is_zero() {
            // Bring a nonzero diagonal entry into position if possible.
            if let Some(k) = (idx + 1..n).find(|&k| !a[(k, k)].is_zero()) {
                for j in 0..n {
                    let tmp = a[(idx, j)].clone();
                    a[(idx, j)] = a[(k, j)].clone();
                    a[(k, j)] = tmp;
                }
                for i in 0..n {
                    let tmp = a[(i, idx)].clone();
                    a[(i, idx)] = a[(i, k)].clone();
                    a[(i, k)] = tmp;
                }
            } else if let Some(k) = (idx + 1..n).find(|&k| !a[(idx, k)].is_zero()) {
                // All remaining diagonal entries vanish; a[idx][k] != 0.
                // Row/col addition produces 2*a[idx][k] on the diagonal.
                for j in 0..n {
                    let s = a[(k, j)].clone();
                    a[(idx, j)] += s;
                }
                for i in 0..n {
                    let s = a[(i, k)].clone();
                    a[(i, idx)] += s;
                }
            } else {
                zero += 1;
                idx += 1;
                continue;
            }
        }
        let p = a[(idx, idx)].clone();
        if p.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        for i in idx + 1..n {
            if a[(i, idx)].is_zero() {
                continue;
            }
            let f = &a[(i, idx)] / &p;
            for j in 0..n {
                let s = &f * &a[(idx, j)];
                a[(i, j)] -= s;
            }
            for j in 0..n {
                let s = &f * &a[(j, idx)];
                a[(j, i)] -= s.clone();
            }
        }
        idx += 1;
    }
    Ok((plus, minus, zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn im(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(3);
        let s = smith_normal_form(&m);
        assert!(s.d.is_identity());
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn snf_diag_2_3_gives_1_6() {
        let m = im(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, im(&[vec![1, 0], vec![0, 6]]));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.det().abs(), int(1));
        assert_eq!(s.v.det().abs(), int(1));
    }

    #[test]
    fn snf_rectangular_and_zero() {
        let m = im(&[vec![0, 0, 0], vec![0, 4, 0]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.d[(0, 0)], int(4));
        assert_eq!(s.d[(1, 1)], int(0));
    }

    #[test]
    fn hnf_identity() {
        let m = IntMatrix::identity(4);
        let h = hermite_normal_form(&m);
        assert!(h.h.is_identity());
        assert_eq!(h.rank, 4);
    }

    #[test]
    fn hnf_gcd_step() {
        let m = im(&[vec![2, 0], vec![3, 0]]);
        let h = hermite_normal_form(&m);
        assert_eq!(h.h, im(&[vec![1, 0], vec![0, 0]]));
        assert_eq!(h.rank, 1);
        assert_eq!(h.u.mul(&m), h.h);
        assert_eq!(h.u.det().abs(), int(1));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let m = im(&[vec![1, 7], vec![0, 3]]);
        let h = hermite_normal_form(&m);
        assert_eq!(h.h, im(&[vec![1, 1], vec![0, 3]]));
    }

    #[test]
    fn kernel_identity_empty() {
        let k = integer_kernel(&IntMatrix::identity(3).to_rational());
        assert!(k.is_empty());
    }

    #[test]
    fn kernel_of_difference_functional() {
        let m = im(&[vec![1, -1]]).to_rational();
        let k = integer_kernel(&m);
        assert_eq!(k, vec![vec![int(1), int(1)]]);
    }

    #[test]
    fn kernel_is_saturated() {
        // Kernel of (2 4) over Z is generated by (2, -1), not (4, -2).
        let m = im(&[vec![2, 4]]).to_rational();
        let k = integer_kernel(&m);
        assert_eq!(k, vec![vec![int(2), int(-1)]]);
    }

    #[test]
    fn inertia_hyperbolic_plane() {
        let g = im(&[vec![0, 1], vec![1, -2]]).to_rational();
        assert_eq!(inertia(&g).unwrap(), (1, 1, 0));
    }

    #[test]
    fn inertia_rejects_non_symmetric() {
        let g = im(&[vec![0, 1], vec![2, 0]]).to_rational();
        assert!(matches!(inertia(&g), Err(LinalgError::NotSymmetric)));
    }

    #[test]
    fn inertia_degenerate_counts_zero() {
        let g = im(&[vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, -3]]).to_rational();
        assert_eq!(inertia(&g).unwrap(), (1, 1, 1));
    }

    #[test]
    fn det_bareiss_matches_known() {
        let m = im(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        assert_eq!(m.det(), int(2 * 2 * 156));
    }

    #[test]
    fn matrix_json_roundtrip() {
        let mut q = QMatrix::zero(2, 2);
        q[(0, 1)] = rat(-1, 2);
        q[(1, 0)] = rat(7, 1);
        let s = serde_json::to_string(&q).unwrap();
        assert!(s.contains("\"-1/2\""));
        let back: QMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec(prop::collection::vec(-6i64..=6, n), n)
            .prop_map(|rows| IntMatrix::from_rows(&rows))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn snf_factorization_holds(m in arb_matrix(4)) {
            let s = smith_normal_form(&m);
            prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
            prop_assert_eq!(s.u.det().abs(), int(1));
            prop_assert_eq!(s.v.det().abs(), int(1));
            // Divisibility chain.
            let n = 4;
            for i in 0..n - 1 {
                let a = s.d[(i, i)].clone();
                let b = s.d[(i + 1, i + 1)].clone();
                if !a.is_zero() {
                    prop_assert!((&b % &a).is_zero());
                } else {
                    prop_assert!(b.is_zero());
                }
            }
        }

        #[test]
        fn snf_factors_invariant_under_unimodular(m in arb_matrix(3)) {
            // Multiply by small elementary matrices and compare factors.
            let mut e = IntMatrix::identity(3);
            e[(0, 1)] = int(2);
            let mut f = IntMatrix::identity(3);
            f[(2, 0)] = int(-3);
            let a = smith_normal_form(&m);
            let b = smith_normal_form(&e.mul(&m).mul(&f));
            let diag = |s: &SmithDecomposition| {
                (0..3).map(|i| s.d[(i, i)].clone()).collect::<Vec<_>>()
            };
            prop_assert_eq!(diag(&a), diag(&b));
        }

        #[test]
        fn kernel_vectors_annihilate(m in arb_matrix(4)) {
            let q = m.to_rational();
            let k = integer_kernel(&q);
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
            // rank-nullity over Q
            let s = smith_normal_form(&m);
            let rank = (0..4).filter(|&i| !s.d[(i, i)].is_zero()).count();
            prop_assert_eq!(rank + k.len(), 4);
        }

        #[test]
        fn inertia_invariant_under_congruence(m in arb_matrix(3)) {
            let g = m.add(&m.transpose());   // symmetric
            let gq = g.to_rational();
            // Congruence by a fixed invertible rational matrix.
            let mut s = QMatrix::identity(3);
            s[(0, 1)] = rat(3, 2);
            s[(2, 0)] = rat(-1, 3);
            let g2 = s.transpose().mul(&gq).mul(&s);
            prop_assert_eq!(inertia(&gq).unwrap(), inertia(&g2).unwrap());
        }
    }
}
