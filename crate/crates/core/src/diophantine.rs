//! Diophantine-pair checking: exact distance sequences, record-minima
//! exponent fits, Liouville certificates for algebraic numbers, and the
//! flat-bundle distance.
//!
//! Real inputs are evaluated as exact rational intervals of width at most
//! 2^-precision (default 200 bits), so a distance is never misclassified
//! as zero by rounding. Both coordinates of a pair use the same
//! multiplier n.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::DiophantineError;
use crate::poly::{certify_irreducible, IntPoly};

pub const DEFAULT_PRECISION_BITS: u32 = 200;

/// A real number given exactly or as an isolated algebraic root or one of
/// the named constructions.
#[derive(Clone, Debug)]
pub enum RealExpr {
    Rational(BigRational),
    /// Root of the integer polynomial isolated in [lo, hi] (sign change).
    AlgebraicRoot { poly: IntPoly, lo: BigRational, hi: BigRational },
    /// (1 + sqrt 5)/2.
    GoldenRatio,
    /// sum_{k=1}^{terms} base^(-k!), an exact rational with huge
    /// denominator; truncated Liouville construction.
    Liouville { base: u32, terms: u32 },
    Neg(Box<RealExpr>),
}

impl RealExpr {
    pub fn cbrt(n: i64) -> Self {
        // root of t^3 - n
        let a = n.abs();
        let hi = (1..).find(|k| k * k * k >= a).unwrap_or(1);
        let root = RealExpr::AlgebraicRoot {
            poly: IntPoly::from_i64(&[-a, 0, 0, 1]),
            lo: BigRational::zero(),
            hi: BigRational::from(BigInt::from(hi)),
        };
        if n < 0 { RealExpr::Neg(Box::new(root)) } else { root }
    }

    pub fn sqrt(n: u64) -> Self {
        let hi = (1..).find(|k| k * k >= n).unwrap_or(1);
        RealExpr::AlgebraicRoot {
            poly: IntPoly::new(vec![BigInt::from(-(n as i64)), BigInt::zero(), BigInt::one()]),
            lo: BigRational::zero(),
            hi: BigRational::from(BigInt::from(hi)),
        }
    }

    /// Rational interval [lo, hi] containing the value, of width at most
    /// 2^-prec.
    pub fn eval(&self, prec: u32) -> Result<(BigRational, BigRational), DiophantineError> {
        match self {
            RealExpr::Rational(r) => Ok((r.clone(), r.clone())),
            RealExpr::AlgebraicRoot { poly, lo, hi } => bisect_root(poly, lo, hi, prec),
            RealExpr::GoldenRatio => {
                let (lo, hi) = RealExpr::sqrt(5).eval(prec + 2)?;
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                Ok(((BigRational::one() + lo) * &half, (BigRational::one() + hi) * &half))
            }
            RealExpr::Liouville { base, terms } => {
                let mut acc = BigRational::zero();
                let mut fact: u64 = 1;
                for k in 1..=*terms as u64 {
                    fact = fact.saturating_mul(k);
                    if fact > 4000 {
                        break; // denominators beyond base^4000 add nothing at 200 bits
                    }
                    let d = BigInt::from(*base).pow(fact as u32);
                    acc += BigRational::new(BigInt::one(), d);
                }
                Ok((acc.clone(), acc))
            }
            RealExpr::Neg(e) => {
                let (lo, hi) = e.eval(prec)?;
                Ok((-hi, -lo))
            }
        }
    }

    /// Parses "1/2", "-0.75", "sqrt(5)", "cbrt(2)", "phi",
    /// "liouville(2,5)", "root(c0,..,cd;lo;hi)", with an optional leading
    /// minus on any form.
    pub fn parse(s: &str) -> Result<RealExpr, DiophantineError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('-') {
            // Avoid swallowing the sign of plain numbers.
            if rest.starts_with(|c: char| c.is_ascii_alphabetic()) {
                return Ok(RealExpr::Neg(Box::new(RealExpr::parse(rest)?)));
            }
        }
        if s == "phi" {
            return Ok(RealExpr::GoldenRatio);
        }
        if let Some(arg) = s.strip_prefix("sqrt(").and_then(|t| t.strip_suffix(')')) {
            let n: u64 =
                arg.trim().parse().map_err(|_| DiophantineError::BadExpression(s.into()))?;
            return Ok(RealExpr::sqrt(n));
        }
        if let Some(arg) = s.strip_prefix("cbrt(").and_then(|t| t.strip_suffix(')')) {
            let n: i64 =
                arg.trim().parse().map_err(|_| DiophantineError::BadExpression(s.into()))?;
            return Ok(RealExpr::cbrt(n));
        }
        if let Some(arg) = s.strip_prefix("liouville(").and_then(|t| t.strip_suffix(')')) {
            let parts: Vec<&str> = arg.split(',').collect();
            if parts.len() != 2 {
                return Err(DiophantineError::BadExpression(s.into()));
            }
            let base: u32 =
                parts[0].trim().parse().map_err(|_| DiophantineError::BadExpression(s.into()))?;
            let terms: u32 =
                parts[1].trim().parse().map_err(|_| DiophantineError::BadExpression(s.into()))?;
            return Ok(RealExpr::Liouville { base, terms });
        }
        if let Some(arg) = s.strip_prefix("root(").and_then(|t| t.strip_suffix(')')) {
            let parts: Vec<&str> = arg.split(';').collect();
            if parts.len() != 3 {
                return Err(DiophantineError::BadExpression(s.into()));
            }
            let coeffs: Result<Vec<i64>, _> =
                parts[0].split(',').map(|c| c.trim().parse::<i64>()).collect();
            let coeffs = coeffs.map_err(|_| DiophantineError::BadExpression(s.into()))?;
            let lo = crate::exact_linalg::parse_rational(parts[1])
                .map_err(|_| DiophantineError::BadExpression(s.into()))?;
            let hi = crate::exact_linalg::parse_rational(parts[2])
                .map_err(|_| DiophantineError::BadExpression(s.into()))?;
            return Ok(RealExpr::AlgebraicRoot { poly: IntPoly::from_i64(&coeffs), lo, hi });
        }
        crate::exact_linalg::parse_rational(s)
            .map(RealExpr::Rational)
            .map_err(|_| DiophantineError::BadExpression(s.into()))
    }
}

/// Bisection of a sign-changing interval down to width 2^-prec.
fn bisect_root(
    poly: &IntPoly,
    lo: &BigRational,
    hi: &BigRational,
    prec: u32,
) -> Result<(BigRational, BigRational), DiophantineError> {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let flo = poly.eval_rational(&lo);
    let fhi = poly.eval_rational(&hi);
    if flo.is_zero() {
        return Ok((lo.clone(), lo));
    }
    if fhi.is_zero() {
        return Ok((hi.clone(), hi));
    }
    if flo.is_positive() == fhi.is_positive() {
        return Err(DiophantineError::RootNotIsolated(lo.to_string(), hi.to_string()));
    }
    let target = BigRational::new(BigInt::one(), BigInt::from(2u32).pow(prec));
    let lo_is_neg = flo.is_negative();
    while &hi - &lo > target {
        let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
        let fm = poly.eval_rational(&mid);
        if fm.is_zero() {
            return Ok((mid.clone(), mid));
        }
        if fm.is_negative() == lo_is_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Exact distance to the nearest integer, as a rational interval.
fn dist_to_z(lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mid = (lo + hi) / BigRational::from(BigInt::from(2));
    let nearest = (&mid + BigRational::new(BigInt::one(), BigInt::from(2))).floor();
    let d_lo = lo - &nearest;
    let d_hi = hi - &nearest;
    // |x - nearest| over [d_lo, d_hi]
    if !d_lo.is_negative() {
        (d_lo, d_hi)
    } else if !d_hi.is_positive() {
        (-d_hi, -d_lo)
    } else {
        let m = (-&d_lo).max(d_hi.clone());
        (BigRational::zero(), m)
    }
}

/// One distance value with its exactness bookkeeping.
#[derive(Clone, Debug)]
pub struct Distance {
    pub lower: BigRational,
    pub upper: BigRational,
    /// True when the input reals were rational so the value is exact.
    pub exact: bool,
}

impl Distance {
    pub fn is_zero(&self) -> bool {
        self.exact && self.lower.is_zero() && self.upper.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        ((&self.lower + &self.upper) / BigRational::from(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// An evaluated real: rational interval plus exactness flag. Evaluate once,
/// reuse across the whole distance sequence.
#[derive(Clone, Debug)]
pub struct RealValue {
    pub lo: BigRational,
    pub hi: BigRational,
    pub exact: bool,
}

impl RealExpr {
    pub fn value(&self, prec: u32) -> Result<RealValue, DiophantineError> {
        let (lo, hi) = self.eval(prec)?;
        let exact = self.is_exact();
        Ok(RealValue { lo, hi, exact })
    }

    fn is_exact(&self) -> bool {
        match self {
            RealExpr::Rational(_) | RealExpr::Liouville { .. } => true,
            RealExpr::Neg(e) => e.is_exact(),
            _ => false,
        }
    }
}

/// dist(n p, Z) + dist(n q, Z) on pre-evaluated values.
pub fn pair_distance_value(p: &RealValue, q: &RealValue, n: u64) -> Distance {
    let nn = BigRational::from(BigInt::from(n));
    let (dp_lo, dp_hi) = dist_to_z(&(&p.lo * &nn), &(&p.hi * &nn));
    let (dq_lo, dq_hi) = dist_to_z(&(&q.lo * &nn), &(&q.hi * &nn));
    Distance { lower: dp_lo + dq_lo, upper: dp_hi + dq_hi, exact: p.exact && q.exact }
}

/// dist(n p, Z) + dist(n q, Z); exact rationals stay exact, other reals are
/// interval-evaluated at the given precision.
pub fn pair_distance(
    p: &RealExpr,
    q: &RealExpr,
    n: u64,
    prec: u32,
) -> Result<Distance, DiophantineError> {
    if n == 0 {
        return Err(DiophantineError::BadIndex);
    }
    Ok(pair_distance_value(&p.value(prec)?, &q.value(prec)?, n))
}

/// d([0],[alpha + beta tau]) = min(|alpha|,|1-alpha|) + min(|beta|,|1-beta|)
/// for alpha, beta in [0,1).
pub fn elliptic_distance(alpha: f64, beta: f64) -> f64 {
    assert!((0.0..1.0).contains(&alpha) && (0.0..1.0).contains(&beta));
    alpha.min(1.0 - alpha) + beta.min(1.0 - beta)
}

/// The flat-bundle distance sequence d_n = elliptic_distance of the
/// fractional parts of (n p, n q), which coincides with pair_distance.
pub fn bundle_distance_seq(
    p: &RealExpr,
    q: &RealExpr,
    n_max: u64,
    prec: u32,
) -> Result<Vec<Distance>, DiophantineError> {
    let pv = p.value(prec)?;
    let qv = q.value(prec)?;
    Ok((1..=n_max).map(|n| pair_distance_value(&pv, &qv, n)).collect())
}

/// Effective Liouville constants (A, alpha) with dist(n theta, Z) >=
/// A n^-alpha, alpha = deg - 1, from the classical inequality.
#[derive(Clone, Debug)]
pub struct LiouvilleCertificate {
    pub a: BigRational,
    pub alpha: u32,
    pub source: String,
}

/// Derives a certificate for the root of an irreducible integer polynomial
/// isolated in [lo, hi]: A = min(margin, 1/M) with M an exact upper bound
/// of |poly'| on the interval and margin the distance from the root
/// interval to the nearest integers outside it.
pub fn liouville_certificate(
    poly: &IntPoly,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<LiouvilleCertificate, DiophantineError> {
    certify_irreducible(poly)?;
    let d = poly.degree();
    // Confirm the interval isolates a root.
    let _ = bisect_root(poly, lo, hi, 8)?;
    // Exact bound on |poly'| over [lo, hi]: sum |c_k| max(|lo|,|hi|)^k.
    let deriv = poly.derivative();
    let m = lo.abs().max(hi.abs());
    let mut bound = BigRational::zero();
    let mut mk = BigRational::one();
    for c in &deriv.coeffs {
        bound += BigRational::from(c.abs()) * &mk;
        mk *= &m;
    }
    if bound.is_zero() {
        bound = BigRational::one();
    }
    // Distance from the refined root interval to integers outside it: any
    // rational p/q outside [lo-margin, hi+margin] is at distance >= margin.
    let (rlo, rhi) = bisect_root(poly, lo, hi, 64)?;
    let fl = rlo.floor();
    let margin_lo = &rlo - &fl;
    let margin_hi = (&fl + BigRational::one()) - &rhi;
    let margin = margin_lo.min(margin_hi);
    let margin = if margin.is_positive() {
        margin
    } else {
        BigRational::one() // the root is an integer: cannot happen, poly irreducible of deg >= 2
    };
    let a = margin.min(bound.recip());
    Ok(LiouvilleCertificate {
        a,
        alpha: (d - 1) as u32,
        source: format!("Liouville bound for {}", poly.display()),
    })
}

/// Verdict of a pair check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// delta_n = 0 at the witness index.
    FailZero { witness: u64 },
    /// Record-minima slopes grow beyond the stability threshold.
    FailSuperPolynomial { witness: u64 },
    Inconclusive,
}

/// Full per-pair report.
#[derive(Clone, Debug)]
pub struct DiophantineReport {
    pub n_max: u64,
    /// (n, delta_n) at the record minima of the distance sequence.
    pub records: Vec<(u64, f64)>,
    /// max over records n >= 3 of -log delta_n / log n.
    pub fitted_alpha: f64,
    /// min over n of delta_n * n^fitted_alpha.
    pub fitted_a: f64,
    pub verdict: Verdict,
    pub certificate: Option<LiouvilleCertificate>,
}

/// Detector thresholds; frozen defaults, overridable for experiments.
#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    pub precision_bits: u32,
    /// Records with n <= early_horizon calibrate the expected slope.
    pub early_horizon: u64,
    /// Slope growth beyond early max that flags super-polynomial decay.
    pub slope_margin: f64,
    /// Absolute slope cap: any delta_n < n^-cap is flagged outright.
    pub alpha_cap: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            precision_bits: DEFAULT_PRECISION_BITS,
            early_horizon: 32,
            slope_margin: 1.0,
            alpha_cap: 8.0,
        }
    }
}

/// Computes delta_n for n <= n_max, fits the exponent on the record-minima
/// subsequence, and classifies: fail on an exact zero or detected
/// super-polynomial decay, pass when the record slopes stabilize.
pub fn check_pair(
    p: &RealExpr,
    q: &RealExpr,
    n_max: u64,
    cert: Option<LiouvilleCertificate>,
    cfg: &CheckConfig,
) -> Result<DiophantineReport, DiophantineError> {
    if n_max < 16 {
        return Err(DiophantineError::NMaxTooSmall(n_max));
    }
    let pv = p.value(cfg.precision_bits)?;
    let qv = q.value(cfg.precision_bits)?;
    let mut records: Vec<(u64, f64)> = Vec::new();
    let mut best = f64::INFINITY;
    let mut zero_witness = None;
    for n in 1..=n_max {
        let d = pair_distance_value(&pv, &qv, n);
        if d.is_zero() {
            zero_witness = Some(n);
            break;
        }
        let v = d.to_f64();
        if v < best {
            best = v;
            records.push((n, v));
        }
    }
    let slope = |&(n, v): &(u64, f64)| -> f64 {
        if n < 2 || v <= 0.0 {
            0.0
        } else {
            -(v.ln()) / (n as f64).ln()
        }
    };
    let fitted_alpha = records
        .iter()
        .filter(|r| r.0 >= 3)
        .map(slope)
        .fold(0.0f64, f64::max);
    let fitted_a = records
        .iter()
        .map(|&(n, v)| v * (n as f64).powf(fitted_alpha))
        .fold(f64::INFINITY, f64::min)
        .min(1.0);
    let verdict = if let Some(w) = zero_witness {
        Verdict::FailZero { witness: w }
    } else {
        let early_max = records
            .iter()
            .filter(|r| (3..=cfg.early_horizon).contains(&r.0))
            .map(slope)
            .fold(0.0f64, f64::max);
        let late = records
            .iter()
            .filter(|r| r.0 > cfg.early_horizon)
            .map(|r| (r.0, slope(r)))
            .fold((0u64, 0.0f64), |acc, x| if x.1 > acc.1 { x } else { acc });
        let capped = records
            .iter()
            .find(|&&(n, v)| n >= 3 && v > 0.0 && v < (n as f64).powf(-cfg.alpha_cap));
        if let Some(&(n, _)) = capped {
            Verdict::FailSuperPolynomial { witness: n }
        } else if late.1 > early_max + cfg.slope_margin && early_max > 0.0 {
            Verdict::FailSuperPolynomial { witness: late.0 }
        } else if records.len() >= 2 {
            Verdict::Pass
        } else {
            Verdict::Inconclusive
        }
    };
    Ok(DiophantineReport { n_max, records, fitted_alpha, fitted_a, verdict, certificate: cert })
}

/// Exact-side certificate check: every computed delta_n respects
/// A n^-alpha. Uses the rational lower bound of the distance interval.
pub fn certificate_respected(
    q: &RealExpr,
    cert: &LiouvilleCertificate,
    n_max: u64,
    prec: u32,
) -> Result<bool, DiophantineError> {
    let zero = RealExpr::Rational(BigRational::zero()).value(prec)?;
    let qv = q.value(prec)?;
    for n in 1..=n_max {
        let d = pair_distance_value(&zero, &qv, n);
        let bound = &cert.a
            * BigRational::new(BigInt::one(), BigInt::from(n).pow(cert.alpha));
        if d.upper < bound {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::rat;

    fn re_rat(n: i64, d: i64) -> RealExpr {
        RealExpr::Rational(rat(n, d))
    }

    #[test]
    fn rational_pair_distance_hits_zero() {
        let d = pair_distance(&re_rat(1, 2), &re_rat(1, 3), 6, 200).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn zero_p_reduces_to_single_distance() {
        let d = pair_distance(&re_rat(0, 1), &re_rat(2, 5), 1, 200).unwrap();
        assert_eq!(d.lower, rat(2, 5));
        assert_eq!(d.upper, rat(2, 5));
    }

    #[test]
    fn cbrt2_distance_at_one() {
        // dist(-2^(1/3), Z) = 2^(1/3) - 1 ~ 0.2599
        let q = RealExpr::cbrt(-2);
        let d = pair_distance(&re_rat(0, 1), &q, 1, 200).unwrap();
        let v = d.to_f64();
        assert!((v - 0.259_921_049_894_873_16).abs() < 1e-12, "{v}");
    }

    #[test]
    fn pair_distance_is_periodic_mod_one() {
        for n in [1u64, 3, 7, 19] {
            let a = pair_distance(&re_rat(3, 7), &re_rat(2, 5), n, 200).unwrap();
            let b = pair_distance(&re_rat(3 + 14, 7), &re_rat(2 - 15, 5), n, 200).unwrap();
            assert_eq!(a.lower, b.lower);
            assert_eq!(a.upper, b.upper);
        }
    }

    #[test]
    fn elliptic_distance_values() {
        assert_eq!(elliptic_distance(0.0, 0.0), 0.0);
        assert_eq!(elliptic_distance(0.5, 0.5), 1.0);
        assert!((elliptic_distance(0.9, 0.2) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn bundle_seq_equals_pair_distance() {
        let p = re_rat(0, 1);
        let q = RealExpr::GoldenRatio;
        let seq = bundle_distance_seq(&p, &q, 20, 200).unwrap();
        for (i, d) in seq.iter().enumerate() {
            let d2 = pair_distance(&p, &q, i as u64 + 1, 200).unwrap();
            assert_eq!(d.lower, d2.lower);
        }
    }

    #[test]
    fn golden_ratio_record_minima_are_fibonacci() {
        // dist(F_k phi, Z) is a record at Fibonacci indices.
        let q = RealExpr::GoldenRatio;
        let rep = check_pair(&re_rat(0, 1), &q, 100, None, &CheckConfig::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        let ns: Vec<u64> = rep.records.iter().map(|r| r.0).collect();
        for f in [2u64, 3, 5, 8, 13, 21, 34, 55, 89] {
            assert!(ns.contains(&f), "{f} missing from {ns:?}");
        }
    }

    #[test]
    fn cbrt2_passes_with_certificate() {
        let q = RealExpr::cbrt(-2);
        let cert = liouville_certificate(
            &IntPoly::from_i64(&[-2, 0, 0, 1]),
            &rat(1, 1),
            &rat(2, 1),
        )
        .unwrap();
        assert_eq!(cert.alpha, 2);
        let rep =
            check_pair(&re_rat(0, 1), &q, 2000, Some(cert.clone()), &CheckConfig::default())
                .unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{:?}", rep.records);
        assert!(rep.fitted_alpha < 3.0);
        // Exact-side check of the certificate at 200 bits.
        assert!(certificate_respected(&q, &cert, 500, 200).unwrap());
    }

    #[test]
    fn rational_pair_fails_with_witness_6() {
        let rep = check_pair(&re_rat(1, 2), &re_rat(1, 3), 100, None, &CheckConfig::default())
            .unwrap();
        assert_eq!(rep.verdict, Verdict::FailZero { witness: 6 });
    }

    #[test]
    fn truncated_liouville_is_flagged() {
        let q = RealExpr::Liouville { base: 2, terms: 5 };
        let rep =
            check_pair(&re_rat(0, 1), &q, 100_000, None, &CheckConfig::default()).unwrap();
        assert!(
            matches!(rep.verdict, Verdict::FailSuperPolynomial { .. }),
            "verdict {:?} records {:?}",
            rep.verdict,
            rep.records
        );
    }

    #[test]
    fn verdicts_invariant_under_swap_and_negation() {
        let cfg = CheckConfig::default();
        let a = re_rat(3, 8);
        let b = RealExpr::sqrt(2);
        let v1 = check_pair(&a, &b, 500, None, &cfg).unwrap().verdict;
        let v2 = check_pair(&b, &a, 500, None, &cfg).unwrap().verdict;
        assert_eq!(v1, v2);
        let neg = RealExpr::Neg(Box::new(re_rat(3, 8)));
        let v3 = check_pair(&neg, &b, 500, None, &cfg).unwrap().verdict;
        assert_eq!(v1, v3);
    }

    #[test]
    fn certificate_rejects_degree_one_and_reducible() {
        assert!(matches!(
            liouville_certificate(&IntPoly::from_i64(&[-3, 1]), &rat(2, 1), &rat(4, 1)),
            Err(DiophantineError::DegreeTooSmall(1))
        ));
        assert!(matches!(
            liouville_certificate(&IntPoly::from_i64(&[-1, 0, 1]), &rat(0, 1), &rat(2, 1)),
            Err(DiophantineError::Reducible(_))
        ));
    }

    #[test]
    fn sqrt5_certificate_is_linear() {
        let cert =
            liouville_certificate(&IntPoly::from_i64(&[-5, 0, 1]), &rat(2, 1), &rat(3, 1))
                .unwrap();
        assert_eq!(cert.alpha, 1);
        assert!(cert.a.is_positive());
    }

    #[test]
    fn root_not_isolated_rejected() {
        // [3, 4] contains no root of t^2 - 5
        assert!(matches!(
            liouville_certificate(&IntPoly::from_i64(&[-5, 0, 1]), &rat(3, 1), &rat(4, 1)),
            Err(DiophantineError::RootNotIsolated(_, _))
        ));
    }

    #[test]
    fn parse_expressions() {
        assert!(matches!(RealExpr::parse("phi"), Ok(RealExpr::GoldenRatio)));
        assert!(matches!(RealExpr::parse("1/2"), Ok(RealExpr::Rational(_))));
        assert!(matches!(RealExpr::parse("-cbrt(2)"), Ok(RealExpr::Neg(_))));
        assert!(matches!(RealExpr::parse("sqrt(5)"), Ok(RealExpr::AlgebraicRoot { .. })));
        assert!(matches!(
            RealExpr::parse("liouville(2,5)"),
            Ok(RealExpr::Liouville { base: 2, terms: 5 })
        ));
        assert!(matches!(
            RealExpr::parse("root(-2,0,0,1;1;2)"),
            Ok(RealExpr::AlgebraicRoot { .. })
        ));
        assert!(RealExpr::parse("wat?").is_err());
    }

    #[test]
    fn eval_precision_honored() {
        let (lo, hi) = RealExpr::cbrt(2).eval(200).unwrap();
        assert!(&hi - &lo <= rat(1, 1) / rat(2, 1).pow(200));
        let v = (&lo + &hi).to_f64().unwrap() / 2.0;
        assert!((v - 2f64.cbrt()).abs() < 1e-14);
    }
}
