//! The marked 22-cycle period machinery: period vectors from gluing
//! parameters, exact pairings over complex rationals or a declared symbol
//! algebra, realizability predicates, the type II monodromy, Picard
//! kernels, and the numeric tube-integral cross-check.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::catalog::{k3_index, k3_lattice, NamedBasis};
use crate::error::PeriodError;
use crate::exact_linalg::{integer_kernel, IntMatrix, QMatrix};
use crate::lattice::IntLattice;

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

/// Scalar interface shared by exact complex rationals and symbolic values.
pub trait PeriodScalar: Clone + PartialEq + std::fmt::Debug {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &BigRational) -> Self;
    fn try_mul(&self, o: &Self) -> Result<Self, PeriodError>;
    fn try_conj(&self) -> Result<Self, PeriodError>;
    /// Multiplicative inverse when available.
    fn try_inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
}

/// Exact complex rational a + b i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QC {
    pub re: BigRational,
    pub im: BigRational,
}

impl QC {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        QC { re, im }
    }

    pub fn from_int(re: i64, im: i64) -> Self {
        QC::new(crate::exact_linalg::rat(re, 1), crate::exact_linalg::rat(im, 1))
    }

    pub fn i() -> Self {
        QC::from_int(0, 1)
    }

    pub fn to_f64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl QC {
    pub fn zero() -> Self {
        QC::new(BigRational::zero(), BigRational::zero())
    }
    pub fn one() -> Self {
        QC::new(BigRational::one(), BigRational::zero())
    }
    pub fn from_rational(r: BigRational) -> Self {
        QC::new(r, BigRational::zero())
    }
}

impl PeriodScalar for QC {
    fn add(&self, o: &Self) -> Self {
        QC::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        QC::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn neg(&self) -> Self {
        QC::new(-self.re.clone(), -self.im.clone())
    }
    fn scale(&self, r: &BigRational) -> Self {
        QC::new(&self.re * r, &self.im * r)
    }
    fn try_mul(&self, o: &Self) -> Result<Self, PeriodError> {
        Ok(QC::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        ))
    }
    fn try_conj(&self) -> Result<Self, PeriodError> {
        Ok(QC::new(self.re.clone(), -self.im.clone()))
    }
    fn try_inv(&self) -> Option<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(QC::new(&self.re / &n, -(&self.im / &n)))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Declared transcendence-basis symbols with a partial multiplication table
/// and a partial conjugation map. Symbol 0 is always the unit "1".
#[derive(Debug)]
pub struct SymbolTable {
    pub symbols: Vec<String>,
    products: BTreeMap<(usize, usize), Vec<(usize, BigRational)>>,
    conjugates: BTreeMap<usize, Vec<(usize, BigRational)>>,
}

impl SymbolTable {
    /// Creates a table. `symbols[0]` must be "1"; products with "1" are
    /// implicit.
    pub fn new(symbols: Vec<&str>) -> Self {
        assert_eq!(symbols.first(), Some(&"1"), "symbol 0 must be \"1\"");
        SymbolTable {
            symbols: symbols.into_iter().map(String::from).collect(),
            products: BTreeMap::new(),
            conjugates: BTreeMap::new(),
        }
    }

    pub fn index_of(&self, name: &str) -> Result<usize, PeriodError> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| PeriodError::UnknownSymbol(name.to_string()))
    }

    /// Declares a*b = sum of (symbol, coefficient) terms (symmetrized).
    pub fn declare_product(&mut self, a: &str, b: &str, terms: &[(&str, BigRational)]) {
        let ia = self.index_of(a).expect("declared symbol");
        let ib = self.index_of(b).expect("declared symbol");
        let expansion: Vec<(usize, BigRational)> = terms
            .iter()
            .map(|(s, c)| (self.index_of(s).expect("declared symbol"), c.clone()))
            .collect();
        let key = (ia.min(ib), ia.max(ib));
        self.products.insert(key, expansion);
    }

    /// Declares conj(a) = sum of (symbol, coefficient) terms.
    pub fn declare_conjugate(&mut self, a: &str, terms: &[(&str, BigRational)]) {
        let ia = self.index_of(a).expect("declared symbol");
        let expansion: Vec<(usize, BigRational)> = terms
            .iter()
            .map(|(s, c)| (self.index_of(s).expect("declared symbol"), c.clone()))
            .collect();
        self.conjugates.insert(ia, expansion);
    }
}

/// Exact complex scalar expressed over a declared symbol basis.
#[derive(Clone, Debug)]
pub struct SymbolicComplex {
    pub table: Arc<SymbolTable>,
    pub terms: BTreeMap<usize, BigRational>,
}

impl SymbolicComplex {
    pub fn zero_over(table: &Arc<SymbolTable>) -> Self {
        SymbolicComplex { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn symbol(table: &Arc<SymbolTable>, name: &str) -> Result<Self, PeriodError> {
        let i = table.index_of(name)?;
        let mut terms = BTreeMap::new();
        terms.insert(i, BigRational::one());
        Ok(SymbolicComplex { table: table.clone(), terms })
    }

    pub fn rational_over(table: &Arc<SymbolTable>, r: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(0, r);
        }
        SymbolicComplex { table: table.clone(), terms }
    }

    fn insert_term(&mut self, idx: usize, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(idx).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&idx);
        }
    }

    /// Coefficient of a named symbol.
    pub fn coeff_of(&self, name: &str) -> BigRational {
        match self.table.index_of(name) {
            Ok(i) => self.terms.get(&i).cloned().unwrap_or_else(BigRational::zero),
            Err(_) => BigRational::zero(),
        }
    }
}

impl PartialEq for SymbolicComplex {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl PeriodScalar for SymbolicComplex {
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in &o.terms {
            out.insert_term(*i, c.clone());
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in &o.terms {
            out.insert_term(*i, -c.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        let mut out = SymbolicComplex::zero_over(&self.table);
        for (i, c) in &self.terms {
            out.insert_term(*i, -c.clone());
        }
        out
    }
    fn scale(&self, r: &BigRational) -> Self {
        let mut out = SymbolicComplex::zero_over(&self.table);
        for (i, c) in &self.terms {
            out.insert_term(*i, c * r);
        }
        out
    }
    fn try_mul(&self, o: &Self) -> Result<Self, PeriodError> {
        let mut out = SymbolicComplex::zero_over(&self.table);
        for (&i, ci) in &self.terms {
            for (&j, cj) in &o.terms {
                let c = ci * cj;
                if i == 0 {
                    out.insert_term(j, c);
                } else if j == 0 {
                    out.insert_term(i, c);
                } else {
                    let key = (i.min(j), i.max(j));
                    let Some(expansion) = self.table.products.get(&key) else {
                        return Err(PeriodError::UndeclaredProduct(
                            self.table.symbols[i].clone(),
                            self.table.symbols[j].clone(),
                        ));
                    };
                    for (k, ck) in expansion {
                        out.insert_term(*k, &c * ck);
                    }
                }
            }
        }
        Ok(out)
    }
    fn try_conj(&self) -> Result<Self, PeriodError> {
        let mut out = SymbolicComplex::zero_over(&self.table);
        for (&i, c) in &self.terms {
            if i == 0 {
                out.insert_term(0, c.clone());
                continue;
            }
            let Some(expansion) = self.table.conjugates.get(&i) else {
                return Err(PeriodError::UndeclaredConjugate(self.table.symbols[i].clone()));
            };
            for (k, ck) in expansion {
                out.insert_term(*k, c * ck);
            }
        }
        Ok(out)
    }
    fn try_inv(&self) -> Option<Self> {
        // Only rational multiples of the unit are invertible here.
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&0) {
                if !c.is_zero() {
                    return Some(SymbolicComplex::rational_over(&self.table, c.recip()));
                }
            }
        }
        None
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Period vectors
// ---------------------------------------------------------------------------

/// 22 coefficients over the marked basis, in catalog order.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodVector<S: PeriodScalar> {
    pub coeffs: Vec<S>,
}

impl<S: PeriodScalar> PeriodVector<S> {
    pub fn from_coeffs(coeffs: Vec<S>) -> Result<Self, PeriodError> {
        if coeffs.len() != k3_index::RANK {
            return Err(PeriodError::DimensionMismatch(format!(
                "need 22 coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(PeriodVector { coeffs })
    }

    pub fn b_beta(&self) -> &S {
        &self.coeffs[k3_index::B_B]
    }

    pub fn b_alpha(&self) -> &S {
        &self.coeffs[k3_index::B_A]
    }

    pub fn basis() -> NamedBasis {
        k3_lattice().1
    }
}

/// Exact gluing parameters. `tau` must have positive imaginary part;
/// `a_alpha`, `a_beta` are the real monodromy exponents; `c_plus`/`c_minus`
/// are the segment integrals for the C-cycles; `gamma9` the B_gamma segment
/// integral; `x` the free A_bg coefficient; `lambda` the volume defect
/// bound used by the realizability check.
#[derive(Clone, Debug)]
pub struct GluingParams {
    pub tau: QC,
    pub a_alpha: BigRational,
    pub a_beta: BigRational,
    pub c_plus: Vec<QC>,
    pub c_minus: Vec<QC>,
    pub gamma9: QC,
    pub x: QC,
    pub lambda: BigRational,
}

impl GluingParams {
    pub fn mu(&self) -> QC {
        // mu = a_beta - tau * a_alpha
        QC::from_rational(self.a_beta.clone())
            .sub(&self.tau.scale(&self.a_alpha))
    }
}

/// Builds the period vector of a gluing-parameter set:
/// b_alpha = tau, b_beta = 1, b_gamma = mu, a_ab = 2 mu + gamma9,
/// a_bg = x, and a_ga solved so that (sigma.sigma) = 0.
pub fn period_from_params(p: &GluingParams) -> Result<PeriodVector<QC>, PeriodError> {
    if !p.tau.im.is_positive() {
        return Err(PeriodError::TauNotInUpperHalfPlane);
    }
    if p.c_plus.len() != 8 || p.c_minus.len() != 8 {
        return Err(PeriodError::DimensionMismatch("need 8 c-coefficients per side".into()));
    }
    let mu = p.mu();
    let two = crate::exact_linalg::rat(2, 1);
    let mut coeffs = vec![QC::zero(); k3_index::RANK];
    coeffs[k3_index::A_AB] = mu.scale(&two).add(&p.gamma9);
    coeffs[k3_index::B_G] = mu;
    coeffs[k3_index::A_BG] = p.x.clone();
    coeffs[k3_index::B_A] = p.tau.clone();
    coeffs[k3_index::B_B] = QC::one();
    for i in 0..8 {
        coeffs[k3_index::C_PLUS + i] = p.c_plus[i].clone();
        coeffs[k3_index::C_MINUS + i] = p.c_minus[i].clone();
    }
    let mut period = PeriodVector { coeffs };
    let y = solve_y(&period)?;
    period.coeffs[k3_index::A_GA] = y;
    Ok(period)
}

/// The unique a_ga making (sigma.sigma) = 0: the form is affine in a_ga
/// with coefficient 2 b_beta, so y = -(sigma0.sigma0) / (2 b_beta) where
/// sigma0 has a_ga = 0. Errors when 2 b_beta is not invertible.
pub fn solve_y<S: PeriodScalar>(period: &PeriodVector<S>) -> Result<S, PeriodError> {
    let mut sigma0 = period.clone();
    sigma0.coeffs[k3_index::A_GA] = period.coeffs[k3_index::A_GA].sub(&period.coeffs[k3_index::A_GA]);
    let q0 = period_pairing(&sigma0, &sigma0, false)?;
    let denom = period.b_beta().scale(&crate::exact_linalg::rat(2, 1));
    let inv = denom.try_inv().ok_or(PeriodError::DegenerateY)?;
    q0.neg().try_mul(&inv)
}

/// Exact pairing s^T G t (with optional conjugation of t) under the K3
/// Gram matrix.
pub fn period_pairing<S: PeriodScalar>(
    s: &PeriodVector<S>,
    t: &PeriodVector<S>,
    conjugate_second: bool,
) -> Result<S, PeriodError> {
    let (k3, _) = k3_lattice();
    let mut acc = s.coeffs[0].sub(&s.coeffs[0]); // zero of the right table
    for i in 0..k3_index::RANK {
        if s.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..k3_index::RANK {
            let g = &k3.gram[(i, j)];
            if g.is_zero() || t.coeffs[j].is_zero() {
                continue;
            }
            let tj = if conjugate_second { t.coeffs[j].try_conj()? } else { t.coeffs[j].clone() };
            let prod = s.coeffs[i].try_mul(&tj)?;
            acc = acc.add(&prod.scale(g));
        }
    }
    Ok(acc)
}

/// v_{(p,q)} = A_ab + p A_bg - q A_ga as an exact period vector.
pub fn v_pq(p: &BigRational, q: &BigRational) -> PeriodVector<QC> {
    let mut coeffs = vec![QC::zero(); k3_index::RANK];
    coeffs[k3_index::A_AB] = QC::one();
    coeffs[k3_index::A_BG] = QC::from_rational(p.clone());
    coeffs[k3_index::A_GA] = QC::from_rational(-q.clone());
    PeriodVector { coeffs }
}

// ---------------------------------------------------------------------------
// Realizability
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizabilityVerdict {
    Pass,
    /// (a): b_beta = 0.
    FailNormalization,
    /// (b): b_alpha outside the upper half-plane.
    FailUpperHalfPlane,
    /// (c): (sigma.sigma bar) <= Lambda.
    FailVolume,
}

#[derive(Clone, Debug)]
pub struct RealizabilityReport {
    /// Precondition (xi.v_{(p,q)}) = 0, reported rather than assumed.
    pub orthogonal_to_v: bool,
    /// Precondition (xi.xi) = 0 for a period point.
    pub isotropic: bool,
    /// Exact value of (xi.xi bar) after normalization, when computed.
    pub sigma_sigma_bar: Option<QC>,
    pub lambda: BigRational,
    pub verdict: RealizabilityVerdict,
}

impl RealizabilityReport {
    pub fn pass(&self) -> bool {
        self.verdict == RealizabilityVerdict::Pass && self.orthogonal_to_v && self.isotropic
    }
}

/// Evaluates the realizability conditions on a period point:
/// (a) b_beta != 0 (then normalize b_beta = 1), (b) b_alpha in the upper
/// half-plane, (c) (sigma.sigma bar) > Lambda, with the pairing computed
/// exactly. Orthogonality to v_{(p,q)} and isotropy are preconditions and
/// are reported, not silently assumed.
pub fn realizability_check(
    xi: &PeriodVector<QC>,
    p: &BigRational,
    q: &BigRational,
    lambda: &BigRational,
) -> Result<RealizabilityReport, PeriodError> {
    let v = v_pq(p, q);
    let orth = period_pairing(xi, &v, false)?.is_zero();
    let iso = period_pairing(xi, xi, false)?.is_zero();

    let b_beta = xi.b_beta().clone();
    if b_beta.is_zero() {
        return Ok(RealizabilityReport {
            orthogonal_to_v: orth,
            isotropic: iso,
            sigma_sigma_bar: None,
            lambda: lambda.clone(),
            verdict: RealizabilityVerdict::FailNormalization,
        });
    }
    let scale = b_beta.try_inv().expect("nonzero");
    let mut norm = xi.clone();
    for c in norm.coeffs.iter_mut() {
        *c = c.try_mul(&scale)?;
    }
    if !norm.b_alpha().im.is_positive() {
        return Ok(RealizabilityReport {
            orthogonal_to_v: orth,
            isotropic: iso,
            sigma_sigma_bar: None,
            lambda: lambda.clone(),
            verdict: RealizabilityVerdict::FailUpperHalfPlane,
        });
    }
    let vol = period_pairing(&norm, &norm, true)?;
    // (sigma.sigma bar) is real for any vector; its imaginary part vanishes.
    debug_assert!(vol.im.is_zero());
    let verdict = if vol.re > *lambda {
        RealizabilityVerdict::Pass
    } else {
        RealizabilityVerdict::FailVolume
    };
    Ok(RealizabilityReport {
        orthogonal_to_v: orth,
        isotropic: iso,
        sigma_sigma_bar: Some(vol),
        lambda: lambda.clone(),
        verdict,
    })
}

// ---------------------------------------------------------------------------
// Monodromy
// ---------------------------------------------------------------------------

/// The type II monodromy: B_a -> B_a - A_ga, B_b -> B_b + A_bg, all other
/// basis vectors fixed. The signs are pinned by the isometry requirement
/// and by the x -> x + 1 coefficient shift (which moves y by -tau): with
/// both signs positive the map would change (B_a.B_b) from 0 to 2.
pub fn monodromy_type_ii() -> IntMatrix {
    let mut m = IntMatrix::identity(k3_index::RANK);
    m[(k3_index::A_GA, k3_index::B_A)] = -BigInt::one();
    m[(k3_index::A_BG, k3_index::B_B)] = BigInt::one();
    m
}

// ---------------------------------------------------------------------------
// Picard lattices from symbolic periods
// ---------------------------------------------------------------------------

pub struct PicardResult {
    /// One row per symbol: the functional x -> coefficient of that symbol
    /// in (x.sigma).
    pub functional_matrix: QMatrix,
    /// HNF-canonical integer kernel basis (rows).
    pub kernel: Vec<Vec<BigInt>>,
    /// The induced lattice on the kernel.
    pub lattice: IntLattice,
    pub rank: usize,
}

/// Integer classes pairing to zero with a symbolic period: stacks one
/// rational functional per declared symbol and takes the exact integer
/// kernel; the Picard Gram is the restriction of the K3 form.
pub fn picard_lattice(sigma: &PeriodVector<SymbolicComplex>) -> Result<PicardResult, PeriodError> {
    let (k3, _) = k3_lattice();
    let table = sigma.coeffs[0].table.clone();
    let n_sym = table.symbols.len();
    // row s, column k: coefficient of symbol s in (e_k . sigma)
    let mut m = QMatrix::zero(n_sym, k3_index::RANK);
    for k in 0..k3_index::RANK {
        // (e_k . sigma) = sum_j G[k][j] sigma_j
        let mut acc = SymbolicComplex::zero_over(&table);
        for j in 0..k3_index::RANK {
            let g = &k3.gram[(k, j)];
            if g.is_zero() {
                continue;
            }
            acc = acc.add(&sigma.coeffs[j].scale(g));
        }
        for (i, c) in &acc.terms {
            m[(*i, k)] = c.clone();
        }
    }
    let kernel = integer_kernel(&m);
    let rank = kernel.len();
    // Induced Gram.
    let mut gram = QMatrix::zero(rank, rank);
    for a in 0..rank {
        for b in 0..rank {
            let mut acc = BigRational::zero();
            for i in 0..k3_index::RANK {
                if kernel[a][i].is_zero() {
                    continue;
                }
                for j in 0..k3_index::RANK {
                    let g = &k3.gram[(i, j)];
                    if g.is_zero() || kernel[b][j].is_zero() {
                        continue;
                    }
                    acc += g * BigRational::from(kernel[a][i].clone())
                        * BigRational::from(kernel[b][j].clone());
                }
            }
            gram[(a, b)] = acc;
        }
    }
    let lattice = IntLattice::new("Pic(sigma)", gram)
        .map_err(|e| PeriodError::DimensionMismatch(e.to_string()))?;
    Ok(PicardResult { functional_matrix: m, kernel, lattice, rank })
}

// ---------------------------------------------------------------------------
// The concrete blow-up example (tau = i, mu = -2^(1/3))
// ---------------------------------------------------------------------------

/// Symbol table {1, i, mu, mu2, x, ix} with mu^3 = -2 relations:
/// mu*mu = mu2, mu*mu2 = -2, mu2*mu2 = -2 mu, i*i = -1, i*x = ix.
/// x and ix have no declared conjugates (x is a free coefficient).
pub fn blowup_example_symbols() -> Arc<SymbolTable> {
    let one = BigRational::one();
    let m1 = -BigRational::one();
    let m2 = crate::exact_linalg::rat(-2, 1);
    let mut t = SymbolTable::new(vec!["1", "i", "mu", "mu2", "x", "ix"]);
    t.declare_product("i", "i", &[("1", m1.clone())]);
    t.declare_product("mu", "mu", &[("mu2", one.clone())]);
    t.declare_product("mu", "mu2", &[("1", m2.clone())]);
    t.declare_product("mu2", "mu2", &[("mu", m2)]);
    t.declare_product("i", "x", &[("ix", one.clone())]);
    t.declare_product("i", "ix", &[("x", m1.clone())]);
    t.declare_conjugate("i", &[("i", m1.clone())]);
    t.declare_conjugate("mu", &[("mu", one.clone())]);
    t.declare_conjugate("mu2", &[("mu2", one)]);
    Arc::new(t)
}

/// The symbolic period of the concrete example:
/// sigma = 2 mu A_ab + mu B_g + x A_bg + i B_a + y A_ga + B_b with y
/// solved exactly (y = -mu2 - ix).
pub fn blowup_example_period() -> Result<PeriodVector<SymbolicComplex>, PeriodError> {
    let table = blowup_example_symbols();
    let zero = SymbolicComplex::zero_over(&table);
    let mut coeffs = vec![zero; k3_index::RANK];
    let sym = |n: &str| SymbolicComplex::symbol(&table, n).expect("declared");
    let two = crate::exact_linalg::rat(2, 1);
    coeffs[k3_index::A_AB] = sym("mu").scale(&two);
    coeffs[k3_index::B_G] = sym("mu");
    coeffs[k3_index::A_BG] = sym("x");
    coeffs[k3_index::B_A] = sym("i");
    coeffs[k3_index::B_B] = SymbolicComplex::rational_over(&table, BigRational::one());
    let mut period = PeriodVector::from_coeffs(coeffs)?;
    let y = solve_y(&period)?;
    period.coeffs[k3_index::A_GA] = y;
    Ok(period)
}

// ---------------------------------------------------------------------------
// Numeric cross-checks: tube integral, volume, blow-up cohomology
// ---------------------------------------------------------------------------

/// C^1 smoothstep cutoff on [r0, r1]: 1 below r0, 0 above r1, weakly
/// monotonically decreasing in between.
fn cutoff_derivative(r: f64, r0: f64, r1: f64) -> f64 {
    if r <= r0 || r >= r1 {
        return 0.0;
    }
    let t = (r - r0) / (r1 - r0);
    -6.0 * t * (1.0 - t) / (r1 - r0)
}

fn adaptive_simpson(
    f: &impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
) -> Result<Complex64, PeriodError> {
    fn simpson(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> Complex64 {
        let m = 0.5 * (a + b);
        (f(a) + 4.0 * f(m) + f(b)) * ((b - a) / 6.0)
    }
    fn rec(
        f: &impl Fn(f64) -> Complex64,
        a: f64,
        b: f64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Result<Complex64, PeriodError> {
        if depth == 0 {
            return Err(PeriodError::QuadratureDiverged);
        }
        let m = 0.5 * (a + b);
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        let delta = left + right - whole;
        if delta.norm() < 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        Ok(rec(f, a, m, left, tol / 2.0, depth - 1)?
            + rec(f, m, b, right, tol / 2.0, depth - 1)?)
    }
    rec(f, a, b, simpson(f, a, b), tol, depth)
}

/// Numerically evaluates the tube integral
/// int_0^1 dtheta int_{1/R-}^{R+} (1/r + 2 pi i a rho'(r)) dr
/// with a C^1 smoothstep cutoff; the closed form is
/// log(R+ R-) - 2 pi i a.
pub fn tube_integral_check(
    a: f64,
    r_plus: f64,
    r_minus: f64,
    quad_tol: f64,
) -> Result<Complex64, PeriodError> {
    assert!(r_plus > 1.0 && r_minus > 1.0, "need R+ and R- > 1");
    let lo = 1.0 / r_minus;
    let hi = r_plus;
    let r0 = lo + 0.25 * (hi - lo);
    let r1 = lo + 0.75 * (hi - lo);
    let two_pi_a = 2.0 * std::f64::consts::PI * a;
    let f = move |r: f64| {
        Complex64::new(1.0 / r, two_pi_a * cutoff_derivative(r, r0, r1))
    };
    // The theta integral contributes a factor of exactly 1; split the
    // radial range at the cutoff breakpoints where f is only C^0.
    let tol = quad_tol / 4.0;
    let v = adaptive_simpson(&f, lo, r0, tol, 40)?
        + adaptive_simpson(&f, r0, r1, tol, 40)?
        + adaptive_simpson(&f, r1, hi, tol, 40)?;
    Ok(v)
}

/// Expected closed form of the tube integral.
pub fn tube_integral_closed_form(a: f64, r_plus: f64, r_minus: f64) -> Complex64 {
    Complex64::new((r_plus * r_minus).ln(), -2.0 * std::f64::consts::PI * a)
}

/// 4 pi (int i eta wedge eta bar) log(r+ r-).
pub fn volume_log_formula(r_plus: f64, r_minus: f64, eta_norm: f64) -> f64 {
    assert!(r_plus > 0.0 && r_minus > 0.0 && eta_norm > 0.0);
    4.0 * std::f64::consts::PI * eta_norm * (r_plus * r_minus).ln()
}

/// Cohomology dimensions (h0, h1, h2) of the tangent bundle of a blow-up of
/// the plane at N >= 4 general points: (0, 2N - 8, 0).
pub fn blowup_tangent_cohomology(n: i64) -> Result<(u64, u64, u64), PeriodError> {
    if n < 4 {
        return Err(PeriodError::BlowupTooFewPoints(n));
    }
    Ok((0, (2 * n - 8) as u64, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::rat;

    fn simple_params() -> GluingParams {
        GluingParams {
            tau: QC::i(),
            a_alpha: rat(0, 1),
            a_beta: rat(0, 1),
            c_plus: vec![QC::zero(); 8],
            c_minus: vec![QC::zero(); 8],
            gamma9: QC::zero(),
            x: QC::zero(),
            lambda: rat(0, 1),
        }
    }

    #[test]
    fn zero_monodromy_exponents_kill_b_gamma_and_a_ab() {
        let p = simple_params();
        let sigma = period_from_params(&p).unwrap();
        assert!(sigma.coeffs[k3_index::A_AB].is_zero());
        assert!(sigma.coeffs[k3_index::B_G].is_zero());
        assert_eq!(sigma.coeffs[k3_index::B_B], QC::one());
    }

    #[test]
    fn tau_must_be_in_upper_half_plane() {
        let mut p = simple_params();
        p.tau = QC::from_int(0, -1);
        assert!(matches!(period_from_params(&p), Err(PeriodError::TauNotInUpperHalfPlane)));
    }

    #[test]
    fn sigma_isotropic_after_solve_y() {
        let mut p = simple_params();
        p.a_alpha = rat(1, 3);
        p.a_beta = rat(-2, 7);
        p.gamma9 = QC::new(rat(1, 2), rat(5, 3));
        p.x = QC::new(rat(-4, 5), rat(9, 2));
        for i in 0..8 {
            p.c_plus[i] = QC::from_int(i as i64, 1 - i as i64);
            p.c_minus[i] = QC::from_int(-(i as i64), 2);
        }
        let sigma = period_from_params(&p).unwrap();
        assert!(period_pairing(&sigma, &sigma, false).unwrap().is_zero());
        // orthogonal to v_{(a_alpha, a_beta)}
        let v = v_pq(&p.a_alpha, &p.a_beta);
        assert!(period_pairing(&sigma, &v, false).unwrap().is_zero());
    }

    #[test]
    fn pairing_of_basis_vectors_reads_gram() {
        // (A_ab basis vector . B_g basis vector) = 1
        let mut a = vec![QC::zero(); 22];
        a[k3_index::A_AB] = QC::one();
        let mut b = vec![QC::zero(); 22];
        b[k3_index::B_G] = QC::one();
        let pa = PeriodVector::from_coeffs(a).unwrap();
        let pb = PeriodVector::from_coeffs(b).unwrap();
        assert_eq!(period_pairing(&pa, &pb, false).unwrap(), QC::one());
    }

    #[test]
    fn volume_pairing_varies_by_4_im_tau_im_dx() {
        let mut p = simple_params();
        p.x = QC::new(rat(1, 2), rat(3, 1));
        let s1 = period_from_params(&p).unwrap();
        let v1 = period_pairing(&s1, &s1, true).unwrap();
        //

        // shift x by Delta = 1/3 + (5/7) i; (sigma.sigma bar) moves by
        // exactly 4 Im tau Im Delta = 4 * 1 * 5/7.
        p.x = QC::new(rat(1, 2) + rat(1, 3), rat(3, 1) + rat(5, 7));
        let s2 = period_from_params(&p).unwrap();
        let v2 = period_pairing(&s2, &s2, true).unwrap();
        let diff = v2.sub(&v1);
        assert_eq!(diff, QC::from_rational(rat(4, 1) * rat(5, 7)));
    }

    #[test]
    fn solve_y_blowup_is_minus_mu2_minus_ix() {
        let sigma = blowup_example_period().unwrap();
        let y = &sigma.coeffs[k3_index::A_GA];
        assert_eq!(y.coeff_of("mu2"), rat(-1, 1));
        assert_eq!(y.coeff_of("ix"), rat(-1, 1));
        assert_eq!(y.coeff_of("1"), rat(0, 1));
        assert_eq!(y.coeff_of("i"), rat(0, 1));
        assert_eq!(y.coeff_of("mu"), rat(0, 1));
        assert_eq!(y.coeff_of("x"), rat(0, 1));
        // Re-pairing is exactly zero.
        assert!(period_pairing(&sigma, &sigma, false).unwrap().is_zero());
    }

    #[test]
    fn degenerate_y_rejected() {
        let table = blowup_example_symbols();
        let zero = SymbolicComplex::zero_over(&table);
        let coeffs = vec![zero; 22];
        let period = PeriodVector::from_coeffs(coeffs).unwrap();
        assert!(matches!(solve_y(&period), Err(PeriodError::DegenerateY)));
    }

    #[test]
    fn undeclared_products_error_out() {
        let table = blowup_example_symbols();
        let x = SymbolicComplex::symbol(&table, "x").unwrap();
        let mu = SymbolicComplex::symbol(&table, "mu").unwrap();
        assert!(matches!(
            x.try_mul(&mu),
            Err(PeriodError::UndeclaredProduct(_, _))
        ));
        assert!(matches!(x.try_conj(), Err(PeriodError::UndeclaredConjugate(_))));
    }

    #[test]
    fn monodromy_is_type_ii() {
        let m = monodromy_type_ii();
        let (k3, _) = k3_lattice();
        assert!(crate::isometry::is_isometry(&k3, &m));
        let n = IntMatrix::identity(22);
        let d = m.sub(&n);
        assert!(!d.is_zero());
        assert!(d.mul(&d).is_zero());
        // m B_a = B_a - A_ga and m B_b = B_b + A_bg
        let mut e = vec![BigInt::zero(); 22];
        e[k3_index::B_A] = BigInt::one();
        let img = m.mul_vec(&e);
        assert_eq!(img[k3_index::B_A], BigInt::one());
        assert_eq!(img[k3_index::A_GA], -BigInt::one());
        let mut e = vec![BigInt::zero(); 22];
        e[k3_index::B_B] = BigInt::one();
        let img = m.mul_vec(&e);
        assert_eq!(img[k3_index::B_B], BigInt::one());
        assert_eq!(img[k3_index::A_BG], BigInt::one());
        // and fixes the C blocks and A cycles
        for i in (0..22).filter(|&i| i != k3_index::B_A && i != k3_index::B_B) {
            let mut e = vec![BigInt::zero(); 22];
            e[i] = BigInt::one();
            let img = m.mul_vec(&e);
            assert_eq!(img, e);
        }
    }

    #[test]
    fn picard_blowup_has_rank_17() {
        let sigma = blowup_example_period().unwrap();
        let res = picard_lattice(&sigma).unwrap();
        assert_eq!(res.rank, 17);
        assert!(crate::roots::picard_signature_check(&res.lattice));
        // kernel contains B_g and all 16 C classes
        // e_idx lies in the (saturated) kernel iff every symbol
        // functional vanishes on it.
        let contains = |idx: usize| {
            let fm = &res.functional_matrix;
            (0..fm.rows()).all(|s| fm[(s, idx)].is_zero())
        };
        assert!(contains(k3_index::B_G));
        for i in 0..16 {
            assert!(contains(k3_index::C_PLUS + i));
        }
        assert!(!contains(k3_index::B_B));
    }

    #[test]
    fn fully_generic_period_has_rank_zero() {
        // every coefficient its own symbol
        let names: Vec<String> = (0..22).map(|i| format!("s{i}")).collect();
        let mut all: Vec<&str> = vec!["1"];
        all.extend(names.iter().map(|s| s.as_str()));
        let table = Arc::new(SymbolTable::new(all));
        let coeffs: Vec<SymbolicComplex> = (0..22)
            .map(|i| SymbolicComplex::symbol(&table, &names[i]).unwrap())
            .collect();
        let sigma = PeriodVector::from_coeffs(coeffs).unwrap();
        let res = picard_lattice(&sigma).unwrap();
        assert_eq!(res.rank, 0);
    }

    #[test]
    fn single_functional_gives_rank_21() {
        let table = Arc::new(SymbolTable::new(vec!["1", "s"]));
        let zero = SymbolicComplex::zero_over(&table);
        let mut coeffs = vec![zero; 22];
        coeffs[k3_index::A_BG] = SymbolicComplex::symbol(&table, "s").unwrap();
        let sigma = PeriodVector::from_coeffs(coeffs).unwrap();
        let res = picard_lattice(&sigma).unwrap();
        assert_eq!(res.rank, 21);
    }

    #[test]
    fn realizability_blowup_boundary() {
        // For the concrete example the exact volume pairing is
        // (sigma.sigma bar) = 4 Im x - 4, so the check passes iff
        // Im x > 1 + Lambda/4.
        let mk = |im_x: (i64, i64)| {
            let mut p = simple_params();
            // mu is irrational in the real example; the exact QC family
            // keeps the same pairing identities with mu = 0 (a_ab = b_g = 0).
            p.x = QC::new(rat(0, 1), rat(im_x.0, im_x.1));
            period_from_params(&p).unwrap()
        };
        let lam = rat(0, 1);
        let p0 = rat(0, 1);
        // Im x = 2 > 1: pass
        let r = realizability_check(&mk((2, 1)), &p0, &p0, &lam).unwrap();
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.sigma_sigma_bar.unwrap(), QC::from_rational(rat(4, 1)));
        // Im x = 1: boundary fails
        let r = realizability_check(&mk((1, 1)), &p0, &p0, &lam).unwrap();
        assert_eq!(r.verdict, RealizabilityVerdict::FailVolume);
        // Im x = 9/8 with Lambda = 1/2 fails (needs Im x > 9/8)
        let r = realizability_check(&mk((9, 8)), &p0, &p0, &rat(1, 2)).unwrap();
        assert_eq!(r.verdict, RealizabilityVerdict::FailVolume);
        // Im x = 5/4 with Lambda = 1/2: 4*(5/4) - 4 = 1 > 1/2 passes
        let r = realizability_check(&mk((5, 4)), &p0, &p0, &rat(1, 2)).unwrap();
        assert!(r.pass());
    }

    #[test]
    fn realizability_failure_modes() {
        let p0 = rat(0, 1);
        let lam = rat(0, 1);
        // b_beta = 0
        let mut coeffs = vec![QC::zero(); 22];
        coeffs[k3_index::A_AB] = QC::one();
        let xi = PeriodVector::from_coeffs(coeffs).unwrap();
        let r = realizability_check(&xi, &p0, &p0, &lam).unwrap();
        assert_eq!(r.verdict, RealizabilityVerdict::FailNormalization);
        // b_alpha = -i
        let mut p = simple_params();
        p.x = QC::from_int(0, 3);
        let mut xi = period_from_params(&p).unwrap();
        xi.coeffs[k3_index::B_A] = QC::from_int(0, -1);
        let r = realizability_check(&xi, &p0, &p0, &lam).unwrap();
        assert_eq!(r.verdict, RealizabilityVerdict::FailUpperHalfPlane);
    }

    #[test]
    fn tube_integral_matches_closed_form() {
        // a = 0: log(R+ R-)
        let v = tube_integral_check(0.0, 2.0, 3.0, 1e-8).unwrap();
        let e = tube_integral_closed_form(0.0, 2.0, 3.0);
        assert!((v - e).norm() < 1e-7, "{v} vs {e}");
        // a = 1, R+- = e: 2 - 2 pi i
        let ee = std::f64::consts::E;
        let v = tube_integral_check(1.0, ee, ee, 1e-8).unwrap();
        let expect = Complex64::new(2.0, -2.0 * std::f64::consts::PI);
        assert!((v - expect).norm() < 1e-7, "{v} vs {expect}");
    }

    #[test]
    fn tube_integral_derivative_in_a() {
        let base = tube_integral_check(0.7, 2.5, 1.8, 1e-9).unwrap();
        let shifted = tube_integral_check(0.7 + 1e-3, 2.5, 1.8, 1e-9).unwrap();
        let deriv = (shifted - base) / 1e-3;
        let expect = Complex64::new(0.0, -2.0 * std::f64::consts::PI);
        assert!((deriv - expect).norm() < 1e-6);
    }

    #[test]
    fn volume_formula_values() {
        let v = volume_log_formula(std::f64::consts::E, 1.0, 1.0);
        assert!((v - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        assert_eq!(volume_log_formula(1.0, 1.0, 7.0), 0.0);
        assert!(volume_log_formula(2.0, 1.0, 1.0) < volume_log_formula(3.0, 1.0, 1.0));
    }

    #[test]
    fn blowup_cohomology_formula() {
        assert_eq!(blowup_tangent_cohomology(4).unwrap(), (0, 0, 0));
        assert_eq!(blowup_tangent_cohomology(9).unwrap(), (0, 10, 0));
        assert_eq!(blowup_tangent_cohomology(13).unwrap(), (0, 18, 0));
        assert!(matches!(
            blowup_tangent_cohomology(3),
            Err(PeriodError::BlowupTooFewPoints(3))
        ));
    }
}
