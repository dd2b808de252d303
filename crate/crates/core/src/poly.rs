//! Integer polynomials: exact characteristic polynomials, evaluation,
//! modular irreducibility certificates, and complex root finding.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{DiophantineError, SalemError};
use crate::exact_linalg::IntMatrix;

/// Polynomial with exact integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::new(vec![BigInt::zero()]);
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    /// Primitive part: divides out the content and normalizes the sign of the
    /// leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        use num_integer::Integer as _;
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return self.clone();
        }
        let lead_neg = self.coeffs.last().map(|c| c.is_negative()).unwrap_or(false);
        let div = if lead_neg { -g } else { g };
        IntPoly::new(self.coeffs.iter().map(|c| c / &div).collect())
    }

    /// Descartes-style string like "t^3 - 2".
    pub fn display(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = match i {
                0 => format!("{c}"),
                1 if c.is_one() => "t".to_string(),
                1 if (-c).is_one() => "-t".to_string(),
                1 => format!("{c}*t"),
                _ if c.is_one() => format!("t^{i}"),
                _ if (-c).is_one() => format!("-t^{i}"),
                _ => format!("{c}*t^{i}"),
            };
            parts.push(term);
        }
        if parts.is_empty() {
            return "0".to_string();
        }
        let mut s = parts[0].clone();
        for t in &parts[1..] {
            if let Some(stripped) = t.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(stripped);
            } else {
                s.push_str(" + ");
                s.push_str(t);
            }
        }
        s
    }
}

impl std::fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IntPoly({})", self.display())
    }
}

/// Exact monic characteristic polynomial det(tI - M) by Faddeev-LeVerrier.
/// The intermediate divisions are exact; the result has integer coefficients.
pub fn char_poly(m: &IntMatrix) -> IntPoly {
    assert_eq!(m.rows(), m.cols(), "char_poly needs a square matrix");
    let n = m.rows();
    let mq = m.to_rational();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut aux = crate::exact_linalg::QMatrix::identity(n);
    for k in 1..=n {
        aux = mq.mul(&aux);
        let trace: BigRational = (0..n).map(|i| aux[(i, i)].clone()).sum();
        let c = -trace / BigRational::from(BigInt::from(k));
        coeffs[n - k] = c.clone();
        for i in 0..n {
            aux[(i, i)] += c.clone();
        }
    }
    IntPoly::new(
        coeffs
            .into_iter()
            .map(|c| {
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Irreducibility over Q via factorization mod p
// ---------------------------------------------------------------------------

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

#[derive(Clone, PartialEq)]
struct PolyP {
    c: Vec<u64>, // lowest first, reduced mod p
    p: u64,
}

impl PolyP {
    fn trim(&mut self) {
        while self.c.len() > 1 && *self.c.last().unwrap() == 0 {
            self.c.pop();
        }
    }
    fn deg(&self) -> usize {
        self.c.len() - 1
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    fn rem(&self, m: &PolyP) -> PolyP {
        let p = self.p;
        let dm = m.deg();
        if dm == 0 {
            // Nonzero constants are units: the remainder is zero.
            return PolyP { c: vec![0], p };
        }
        let mut r = self.c.clone();
        let lead_inv = mod_inv(m.c[dm], p);
        while r.len() > dm && r.len() > 1 {
            let d = r.len() - 1;
            let q = (r[d] as u128 * lead_inv as u128 % p as u128) as u64;
            if q != 0 {
                for i in 0..=dm {
                    let sub = (q as u128 * m.c[i] as u128 % p as u128) as u64;
                    let idx = d - dm + i;
                    r[idx] = (r[idx] + p - sub) % p;
                }
            }
            r.pop();
        }
        let mut out = PolyP { c: r, p };
        out.trim();
        out
    }
    fn mul_rem(&self, other: &PolyP, m: &PolyP) -> PolyP {
        let p = self.p;
        let mut prod = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u128 + a as u128 * b as u128) % p as u128) as u64;
            }
        }
        let mut out = PolyP { c: prod, p };
        out.trim();
        out.rem(m)
    }
    fn gcd(&self, other: &PolyP) -> PolyP {
        let mut a = self.clone();
        let mut b = other.clone();
        a.trim();
        b.trim();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
    /// Formal derivative mod p.
    fn derivative(&self) -> PolyP {
        let p = self.p;
        if self.c.len() <= 1 {
            return PolyP { c: vec![0], p };
        }
        let c = self
            .c[1..]
            .iter()
            .enumerate()
            .map(|(i, &a)| (a as u128 * ((i as u64 + 1) % p) as u128 % p as u128) as u64)
            .collect();
        let mut out = PolyP { c, p };
        out.trim();
        out
    }

    fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).deg() == 0
    }

    /// Degrees (with multiplicity by total degree) of the irreducible
    /// factors, by distinct-degree factorization. Requires squarefree input.
    fn factor_degree_multiset(&self) -> Vec<usize> {
        let p = self.p;
        let mut f = self.clone();
        let mut out = Vec::new();
        let mut d = 1;
        // x^(p^d) is tracked incrementally modulo the shrinking f.
        let mut xp = PolyP { c: vec![0, 1], p }.rem(&f);
        while f.deg() >= 2 * d {
            // advance xp to x^(p^d) mod f
            {
                let mut acc = PolyP { c: vec![1], p };
                let mut base = xp.clone();
                let mut e = p;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc.mul_rem(&base, &f);
                    }
                    base = base.mul_rem(&base, &f);
                    e >>= 1;
                }
                xp = acc;
            }
            // gcd(f, x^(p^d) - x)
            let mut diff = xp.clone();
            while diff.c.len() < 2 {
                diff.c.push(0);
            }
            diff.c[1] = (diff.c[1] + p - 1) % p;
            diff.trim();
            let g = f.gcd(&diff);
            if g.deg() > 0 {
                for _ in 0..g.deg() / d {
                    out.push(d);
                }
                // divide f by g
                f = poly_div_exact(&f, &g);
                xp = xp.rem(&f);
            }
            d += 1;
        }
        if f.deg() > 0 {
            out.push(f.deg());
        }
        out
    }

}

/// Quotient of exact division over F_p.
fn poly_div_exact(f: &PolyP, g: &PolyP) -> PolyP {
    let p = f.p;
    let mut r = f.c.clone();
    let dg = g.deg();
    let lead_inv = mod_inv(g.c[dg], p);
    let mut q = vec![0u64; f.deg() - dg + 1];
    while r.len() > dg {
        let d = r.len() - 1;
        let coef = (r[d] as u128 * lead_inv as u128 % p as u128) as u64;
        q[d - dg] = coef;
        if coef != 0 {
            for i in 0..=dg {
                let sub = (coef as u128 * g.c[i] as u128 % p as u128) as u64;
                let idx = d - dg + i;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
    }
    let mut out = PolyP { c: q, p };
    out.trim();
    out
}

/// Certifies irreducibility over Q. Two certificates are tried: a prime p
/// with f irreducible mod p, and the degree sieve (the intersection over
/// several primes of achievable proper factor degrees, from distinct-degree
/// factorization, being empty). Reciprocal polynomials such as Salem
/// polynomials typically need the sieve: they can factor modulo every
/// prime.
pub fn certify_irreducible(f: &IntPoly) -> Result<(), DiophantineError> {
    let f = f.primitive();
    let d = f.degree();
    if d < 2 {
        return Err(DiophantineError::DegreeTooSmall(d));
    }
    // Rational root test gives a concrete witness for reducibility.
    if let Some(r) = rational_root(&f) {
        return Err(DiophantineError::Reducible(format!("rational root {r}")));
    }
    const PRIMES: [u64; 25] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97,
    ];
    // Degrees a proper factor over Z could have, as a bitmask.
    let mut feasible: u64 = (1u64 << (d + 1)) - 2; // degrees 1..=d
    feasible &= !(1u64 << d); // proper
    for &p in &PRIMES {
        let lead = f.coeffs.last().unwrap();
        if (lead % BigInt::from(p)).is_zero() {
            continue;
        }
        let c: Vec<u64> = f
            .coeffs
            .iter()
            .map(|x| {
                let m = x % BigInt::from(p);
                let m = if m.is_negative() { m + BigInt::from(p) } else { m };
                m.to_u64().unwrap()
            })
            .collect();
        let fp = PolyP { c, p };
        if !fp.is_squarefree() {
            continue;
        }
        let degs = fp.factor_degree_multiset();
        if degs.len() == 1 {
            return Ok(()); // irreducible mod p
        }
        // Subset sums of the degree multiset.
        let mut sums: u64 = 1; // degree 0 reachable
        for &dd in &degs {
            sums |= sums << dd;
        }
        feasible &= sums;
        feasible &= !(1u64 << d) & !1u64;
        if feasible == 0 {
            return Ok(());
        }
    }
    Err(DiophantineError::IrreducibilityUnknown(97))
}

/// First rational root found by the rational root theorem, if any.
fn rational_root(f: &IntPoly) -> Option<BigRational> {
    let a0 = f.coeffs.first()?.clone();
    let an = f.coeffs.last()?.clone();
    if a0.is_zero() {
        return Some(BigRational::zero());
    }
    let divisors = |x: &BigInt| -> Vec<BigInt> {
        let x = x.abs();
        let mut out = Vec::new();
        let mut d = BigInt::one();
        // Only scan small divisors; large coefficients fall back to mod-p tests.
        let cap = BigInt::from(100_000u64);
        while &d * &d <= x && d <= cap {
            if (&x % &d).is_zero() {
                out.push(d.clone());
                out.push(&x / &d);
            }
            d += 1;
        }
        out
    };
    for p in divisors(&a0) {
        for q in divisors(&an) {
            for sign in [1i64, -1] {
                let cand = BigRational::new(&p * BigInt::from(sign), q.clone());
                if f.eval_rational(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Complex roots: Durand-Kerner with Newton refinement
// ---------------------------------------------------------------------------

/// All complex roots of a polynomial with the given f64 coefficients
/// (lowest degree first), refined by Newton iteration.
pub fn complex_roots(coeffs: &[f64]) -> Result<Vec<Complex64>, SalemError> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.len() > 1 && c.last() == Some(&0.0) {
        c.pop();
    }
    if c.iter().all(|&x| x == 0.0) {
        return Err(SalemError::ZeroPolynomial);
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|&x| Complex64::new(x / lead, 0.0)).collect();
    let eval = |z: Complex64, cs: &[Complex64]| {
        let mut acc = Complex64::new(0.0, 0.0);
        for co in cs.iter().rev() {
            acc = acc * z + co;
        }
        acc
    };
    // Durand-Kerner from a deliberately asymmetric starting configuration.
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::new(0.4, 0.9).powu(k as u32 + 1))
        .collect();
    let mut converged = false;
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let zi = roots[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let step = eval(zi, &monic) / denom;
            roots[i] = zi - step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-13 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SalemError::NonConvergence);
    }
    // Newton polish against the original coefficients.
    let deriv: Vec<Complex64> = (1..=n)
        .map(|k| Complex64::new(c[k] * k as f64 / lead, 0.0))
        .collect();
    for r in roots.iter_mut() {
        for _ in 0..8 {
            let f = eval(*r, &monic);
            let df = eval(*r, &deriv);
            if df.norm() < 1e-300 {
                break;
            }
            let step = f / df;
            *r -= step;
            if step.norm() < 1e-16 {
                break;
            }
        }
    }
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::int;

    #[test]
    fn char_poly_identity() {
        // (t - 1)^3 = t^3 - 3t^2 + 3t - 1
        let p = char_poly(&IntMatrix::identity(3));
        assert_eq!(p, IntPoly::from_i64(&[-1, 3, -3, 1]));
    }

    #[test]
    fn char_poly_companion() {
        // Companion matrix of t^2 - t - 1
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 1]]);
        assert_eq!(char_poly(&m), IntPoly::from_i64(&[-1, -1, 1]));
    }

    #[test]
    fn irreducibility_certificates() {
        assert!(certify_irreducible(&IntPoly::from_i64(&[-2, 0, 0, 1])).is_ok()); // t^3-2
        assert!(certify_irreducible(&IntPoly::from_i64(&[-5, 0, 1])).is_ok()); // t^2-5
        assert!(matches!(
            certify_irreducible(&IntPoly::from_i64(&[-3, 1])),
            Err(DiophantineError::DegreeTooSmall(1))
        ));
        // t^2 - 1 = (t-1)(t+1)
        assert!(matches!(
            certify_irreducible(&IntPoly::from_i64(&[-1, 0, 1])),
            Err(DiophantineError::Reducible(_))
        ));
        // Lehmer's polynomial is irreducible of degree 10.
        let lehmer = IntPoly::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert!(certify_irreducible(&lehmer).is_ok());
    }

    #[test]
    fn roots_of_quadratic() {
        let r = complex_roots(&[-1.0, 0.0, 1.0]).unwrap(); // t^2 - 1
        assert_eq!(r.len(), 2);
        assert!((r[0] + 1.0).norm() < 1e-12);
        assert!((r[1] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn roots_of_lehmer_salem_structure() {
        let lehmer = [1.0, 1.0, 0.0, -1.0, -1.0, -1.0, -1.0, -1.0, 0.0, 1.0, 1.0];
        let roots = complex_roots(&lehmer).unwrap();
        assert_eq!(roots.len(), 10);
        let on_circle = roots.iter().filter(|r| (r.norm() - 1.0).abs() < 1e-9).count();
        assert_eq!(on_circle, 8);
        let lambda = roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
        assert!((lambda - 1.17628081825991).abs() < 1e-9); // Lehmer's number
    }

    #[test]
    fn primitive_part_normalizes() {
        let p = IntPoly::new(vec![int(-4), int(0), int(-2)]);
        assert_eq!(p.primitive(), IntPoly::from_i64(&[2, 0, 1]));
    }
}
