//! Majorant-series machinery: the effective constant of the covering
//! lemma, the two majorant functional equations (with their different
//! distance-index offsets), and radius-of-convergence estimation.
//!
//! Coefficients are exact rationals; the radius estimate converts to
//! floating point only for the final log fit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::MajorantError;

/// Which functional equation produced a series. The two
/// equations index the distance sequence differently: the quadratic one
/// pairs d_{nu-1} with A_nu, the linear one pairs d_n with A_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquationTag {
    /// sum_{nu>=2} d_{nu-1} A_nu X^nu = K M A(X)^2 / (1 - M A(X)), A_1 = 1.
    UedaType,
    /// sum_{n>=1} d_n A_n X^n = 2K Q (M + A(X)) X / (1 - Q X).
    ArnoldZType,
    /// sum_{nu>=2} d_{nu-1} B_nu X^nu = 2KQ (M+1) B(X)^2 / (1 - Q B(X)),
    /// B_1 = 1; dominates the ArnoldZ solution shifted by one.
    BHatType,
}

#[derive(Clone, Debug)]
pub struct MajorantSeries {
    /// A_1..A_n (A_1 = 1 for the quadratic equations).
    pub coeffs: Vec<BigRational>,
    pub equation: EquationTag,
    pub k: BigRational,
    pub m: BigRational,
    pub q: Option<BigRational>,
    pub d_seq: Vec<BigRational>,
}

impl MajorantSeries {
    /// A_n, 1-indexed.
    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n - 1]
    }
}

/// The effective constants (L1, L2, K1, K2, K): L1 = 2s/(1-s),
/// L2 = (1+s)/(1-s), K1 = L1 L2 (L2+1)^N, K2 = L2 (L2+1)^N,
/// K = max(1 + 2K1 + 2K2, 2K2) = 1 + 2K1 + 2K2.
pub fn ueda_constant(
    s: &BigRational,
    n: u32,
) -> Result<(BigRational, BigRational, BigRational, BigRational, BigRational), MajorantError> {
    if !s.is_positive() || *s >= BigRational::one() {
        return Err(MajorantError::SOutOfRange);
    }
    let one = BigRational::one();
    let two = BigRational::from(BigInt::from(2));
    let l1 = &two * s / (&one - s);
    let l2 = (&one + s) / (&one - s);
    let pow = pow_rat(&(&l2 + &one), n);
    let k1 = &l1 * &l2 * &pow;
    let k2 = &l2 * &pow;
    let k_a = &one + &two * &k1 + &two * &k2;
    let k_b = &two * &k2;
    let k = if k_a >= k_b { k_a } else { k_b };
    Ok((l1, l2, k1, k2, k))
}

/// The bound K < 1 + 2 (2/(1-s))^(N+2), exact rational comparison.
pub fn ueda_constant_bound_holds(s: &BigRational, n: u32) -> Result<bool, MajorantError> {
    let (_, _, _, _, k) = ueda_constant(s, n)?;
    let two = BigRational::from(BigInt::from(2));
    let bound = BigRational::one() + &two * pow_rat(&(&two / (BigRational::one() - s)), n + 2);
    Ok(k < bound)
}

fn pow_rat(x: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

fn check_positive_d(d_seq: &[BigRational]) -> Result<(), MajorantError> {
    for (i, d) in d_seq.iter().enumerate() {
        if !d.is_positive() {
            return Err(MajorantError::ZeroDistance(i + 1));
        }
    }
    Ok(())
}

/// Solves the quadratic functional equation
/// sum_{nu>=2} d_{nu-1} A_nu X^nu = C A(X)^2 / (1 - D A(X)) with A_1 = 1.
///
/// With R the right-hand-side series, R (1 - D A) = C A^2 gives the
/// incremental recurrence R_n = C (A^2)_n + D (A R)_n, whose degree-n
/// coefficients only involve A_1..A_{n-1} and R_2..R_{n-1} because A has
/// valuation 1 and R valuation 2.
fn solve_quadratic(
    d_seq: &[BigRational],
    c: &BigRational,
    d: &BigRational,
    n_terms: usize,
) -> Result<Vec<BigRational>, MajorantError> {
    check_positive_d(&d_seq[..n_terms.saturating_sub(1).min(d_seq.len())])?;
    let mut a = vec![BigRational::one()]; // a[i] = A_{i+1}
    let mut r = vec![BigRational::zero(); n_terms]; // r[i] = R_{i+1}
    for n in 2..=n_terms {
        // (A^2)_n = sum_{i+j=n, i,j>=1} A_i A_j
        let mut a2 = BigRational::zero();
        for i in 1..n {
            let j = n - i;
            if j >= 1 && i <= a.len() && j <= a.len() {
                a2 += &a[i - 1] * &a[j - 1];
            }
        }
        // (A R)_n = sum_{i+j=n, i>=1, j>=2} A_i R_j
        let mut ar = BigRational::zero();
        for i in 1..n {
            let j = n - i;
            if j >= 2 && i <= a.len() {
                ar += &a[i - 1] * &r[j - 1];
            }
        }
        let rn = c * a2 + d * ar;
        let dist = &d_seq[n - 2]; // d_{n-1}, 1-indexed
        if !dist.is_positive() {
            return Err(MajorantError::ZeroDistance(n - 1));
        }
        a.push(&rn / dist);
        r[n - 1] = rn;
    }
    Ok(a)
}

/// Majorant for the defining-function equation:
/// sum_{nu>=2} d_{nu-1} A_nu X^nu = K M A(X)^2 / (1 - M A(X)), A_1 = 1.
/// Needs d_1..d_{n_terms-1}.
pub fn majorant_ueda(
    d_seq: &[BigRational],
    k: &BigRational,
    m: &BigRational,
    n_terms: usize,
) -> Result<MajorantSeries, MajorantError> {
    if !k.is_positive() || !m.is_positive() {
        return Err(MajorantError::NonPositiveParameter);
    }
    let coeffs = solve_quadratic(d_seq, &(k * m), m, n_terms)?;
    Ok(MajorantSeries {
        coeffs,
        equation: EquationTag::UedaType,
        k: k.clone(),
        m: m.clone(),
        q: None,
        d_seq: d_seq[..(n_terms - 1).min(d_seq.len())].to_vec(),
    })
}

/// Majorant for the coordinate-extension equation:
/// sum_{n>=1} d_n A_n X^n = 2 K Q (M + A(X)) X / (1 - Q X), i.e.
/// A_n = (2KQ/d_n) (M Q^(n-1) + sum_{nu<n} A_nu Q^(n-1-nu)).
/// Needs d_1..d_{n_terms}.
pub fn majorant_arnold_z(
    d_seq: &[BigRational],
    k: &BigRational,
    m: &BigRational,
    q: &BigRational,
    n_terms: usize,
) -> Result<MajorantSeries, MajorantError> {
    if !k.is_positive() || !m.is_positive() || !q.is_positive() {
        return Err(MajorantError::NonPositiveParameter);
    }
    check_positive_d(&d_seq[..n_terms.min(d_seq.len())])?;
    let two_kq = BigRational::from(BigInt::from(2)) * k * q;
    let mut a: Vec<BigRational> = Vec::with_capacity(n_terms);
    for n in 1..=n_terms {
        let mut acc = m * pow_rat(q, (n - 1) as u32);
        for (nu, a_nu) in a.iter().enumerate() {
            // nu+1 runs over 1..n
            acc += a_nu * pow_rat(q, (n - 1 - (nu + 1)) as u32);
        }
        let dist = &d_seq[n - 1];
        if !dist.is_positive() {
            return Err(MajorantError::ZeroDistance(n));
        }
        a.push(&two_kq * acc / dist);
    }
    Ok(MajorantSeries {
        coeffs: a,
        equation: EquationTag::ArnoldZType,
        k: k.clone(),
        m: m.clone(),
        q: Some(q.clone()),
        d_seq: d_seq[..n_terms.min(d_seq.len())].to_vec(),
    })
}

/// The dominating series B-hat of the convergence argument:
/// sum_{nu>=2} d_{nu-1} B_nu X^nu = 2KQ (M+1) B(X)^2 / (1 - Q B(X)),
/// B_1 = 1; its coefficients dominate B_nu = A_{nu-1} of the ArnoldZ
/// solution.
pub fn majorant_bhat(
    d_seq: &[BigRational],
    k: &BigRational,
    m: &BigRational,
    q: &BigRational,
    n_terms: usize,
) -> Result<MajorantSeries, MajorantError> {
    if !k.is_positive() || !m.is_positive() || !q.is_positive() {
        return Err(MajorantError::NonPositiveParameter);
    }
    let c = BigRational::from(BigInt::from(2)) * k * q * (m + BigRational::one());
    let coeffs = solve_quadratic(d_seq, &c, q, n_terms)?;
    Ok(MajorantSeries {
        coeffs,
        equation: EquationTag::BHatType,
        k: k.clone(),
        m: m.clone(),
        q: Some(q.clone()),
        d_seq: d_seq[..(n_terms - 1).min(d_seq.len())].to_vec(),
    })
}

/// Rounds a positive rational down to `bits` bits of precision (a dyadic
/// with denominator 2^bits relative to its magnitude). Rounding distances
/// down is conservative for majorants: coefficients only grow.
pub fn round_down_dyadic(x: &BigRational, bits: u32) -> BigRational {
    if !x.is_positive() {
        return x.clone();
    }
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    // scale so that x * 2^shift has about `bits` integer bits
    let shift = bits as i64 - (nb - db);
    if shift <= 0 {
        return x.floor();
    }
    let two = BigInt::from(2u32);
    let scale = two.pow(shift as u32);
    let scaled = (x * BigRational::from(scale.clone())).floor().to_integer();
    BigRational::new(scaled, scale)
}

/// Base-2 logarithm of a positive rational, good to about 1e-12.
pub fn log2_rational(x: &BigRational) -> f64 {
    assert!(x.is_positive());
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    // x = (n / 2^nb) / (d / 2^db) * 2^(nb - db); leading ratios are in [1/2, 1).
    let shift = 64i64;
    let approx = |v: &BigInt, bits: i64| -> f64 {
        let shifted: BigInt = if bits > shift { v >> (bits - shift) as usize } else { v.clone() };
        let f = shifted.to_f64().unwrap_or(1.0);
        f.log2() + (bits - shift).max(0) as f64
    };
    approx(x.numer(), nb) - approx(x.denom(), db)
}

/// Radius estimate and fit residual from the coefficient tail: fits
/// log2 A_n ~ c + n log2(1/r) on the last half of the terms.
#[derive(Clone, Debug)]
pub struct RadiusEstimate {
    pub radius: f64,
    pub fit_residual: f64,
    pub terms_used: usize,
}

pub fn radius_estimate(ms: &MajorantSeries) -> Result<RadiusEstimate, MajorantError> {
    let n = ms.coeffs.len();
    if n < 16 {
        return Err(MajorantError::TooFewTerms(16, n));
    }
    let start = n / 2;
    let pts: Vec<(f64, f64)> = (start..n)
        .filter(|&i| ms.coeffs[i].is_positive())
        .map(|i| ((i + 1) as f64, log2_rational(&ms.coeffs[i])))
        .collect();
    if pts.len() < 4 {
        return Err(MajorantError::TooFewTerms(4, pts.len()));
    }
    let m = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    let intercept = (sy - slope * sx) / m;
    let resid = pts
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).abs())
        .fold(0.0f64, f64::max);
    Ok(RadiusEstimate { radius: 2f64.powf(-slope), fit_residual: resid, terms_used: pts.len() })
}
