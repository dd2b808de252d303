//! The acceptance checklist: one named check per criterion, runnable from
//! the CLI (`verify-paper`) and asserted one-for-one by the acceptance
//! test suite.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::catalog::{self, k3_index};
use crate::diophantine::{
    check_pair, liouville_certificate, CheckConfig, RealExpr, Verdict,
};
use crate::exact_linalg::{rat, IntMatrix};
use crate::glue::{self, validate_glue};
use crate::isometry::{char_poly, coxeter_element, lehmer_polynomial};
use crate::lattice::{is_even, is_unimodular, IntLattice};
use crate::majorant::{
    majorant_ueda, radius_estimate, round_down_dyadic, ueda_constant_bound_holds,
};
use crate::period::{
    self, period_from_params, period_pairing, picard_lattice, solve_y, GluingParams,
    PeriodScalar, QC,
};
use crate::poly::IntPoly;
use crate::roots::{dominant_root, enumerate_roots, max_disjoint_roots, RootClass};
use crate::salem::{kummer_auto_periods, min_entropy_periods, wedge_square};
use crate::SplitMix64;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.to_string(), pass, detail: detail.into() }
}

/// Options for the run: a seed for the randomized identities and an
/// optional fault injection that corrupts the E8 Gram (for testing the
/// harness itself).
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub corrupt_e8: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 7, corrupt_e8: false }
    }
}

fn e8_for(opts: &VerifyOptions) -> IntLattice {
    let (mut e8, _) = catalog::e8_minus();
    if opts.corrupt_e8 {
        e8.gram[(0, 0)] = rat(-4, 1);
    }
    e8
}

/// Criterion 1: catalog signatures and evenness.
pub fn check_catalog(opts: &VerifyOptions) -> Vec<Check> {
    let cases: Vec<(IntLattice, (usize, usize, usize))> = vec![
        (catalog::hyperbolic_u(), (1, 1, 0)),
        (e8_for(opts), (0, 8, 0)),
        (catalog::k3_lattice().0, (3, 19, 0)),
        (catalog::mcmullen_l1(), (3, 7, 0)),
        (catalog::mcmullen_l2(), (0, 4, 0)),
        (catalog::kummer_lattice().0, (0, 16, 0)),
        (catalog::torus_image_lattice().0, (3, 3, 0)),
    ];
    let mut out = Vec::new();
    for (l, sig) in cases {
        let got = l.signature();
        out.push(check(
            &format!("catalog/{}", l.name),
            is_even(&l) && got == sig,
            format!("even = {}, signature = {:?} (want {:?})", is_even(&l), got, sig),
        ));
    }
    // Unimodularity where claimed.
    let uni = [catalog::hyperbolic_u(), e8_for(opts), catalog::k3_lattice().0];
    for l in uni {
        out.push(check(
            &format!("catalog/{}-unimodular", l.name),
            is_unimodular(&l),
            format!("|det| = {}", l.det().abs()),
        ));
    }
    out
}

/// Criterion 2: the Kummer glue.
pub fn check_kummer_glue() -> Vec<Check> {
    let spec = glue::kummer_glue_spec();
    let report = validate_glue(&spec);
    let mut out = vec![check(
        "glue/kummer-q-condition",
        report.pass() && report.group_order == 64,
        format!("order {} bijective {} q {}", report.group_order, report.bijective, report.q_condition),
    )];
    match glue::glue(&spec) {
        Ok(g) => {
            let sig = g.lattice.signature();
            out.push(check(
                "glue/kummer-unimodular-3-19",
                is_even(&g.lattice) && is_unimodular(&g.lattice) && sig == (3, 19, 0),
                format!("signature {sig:?}"),
            ));
        }
        Err(e) => out.push(check("glue/kummer-unimodular-3-19", false, e.to_string())),
    }
    out
}

/// Criterion 3: the McMullen glue and its E8 extension.
pub fn check_mcmullen_glue() -> Vec<Check> {
    let spec = glue::mcmullen_glue_spec();
    let report = validate_glue(&spec);
    let mut out = vec![check(
        "glue/mcmullen-q-condition",
        report.pass() && report.group_order == 9,
        format!("order {}", report.group_order),
    )];
    match glue::glue(&spec) {
        Ok(g) => {
            let sig = g.lattice.signature();
            let (e8, _) = catalog::e8_minus();
            let l = glue::extend_direct_sum(&g.lattice, &e8);
            out.push(check(
                "glue/mcmullen-l0-3-11",
                is_even(&g.lattice) && is_unimodular(&g.lattice) && sig == (3, 11, 0),
                format!("signature {sig:?}"),
            ));
            out.push(check(
                "glue/mcmullen-extended-3-19",
                l.signature() == (3, 19, 0),
                format!("signature {:?}", l.signature()),
            ));
        }
        Err(e) => out.push(check("glue/mcmullen-l0-3-11", false, e.to_string())),
    }
    out
}

/// Criterion 4: Coxeter/Salem spectral data.
pub fn check_coxeter_salem() -> Vec<Check> {
    let mut out = Vec::new();
    let (e10, _) = catalog::e10();
    let cox = coxeter_element(&e10, None).expect("E10 basis is roots");
    let cp = char_poly(&cox.matrix);
    out.push(check(
        "salem/e10-coxeter-lehmer",
        cp == lehmer_polynomial(),
        cp.display(),
    ));
    match min_entropy_periods() {
        Ok(res) => {
            let hint = Complex64::new(-0.9433, 0.3319);
            out.push(check(
                "salem/min-entropy-root",
                (res.s - hint).norm() < 1e-3,
                format!("s = {:.4}", res.s),
            ));
            out.push(check(
                "salem/min-entropy-a-alpha",
                (res.a_alpha - 0.4179).abs() < 1e-3,
                format!("a_alpha = {:.6}", res.a_alpha),
            ));
            out.push(check(
                "salem/min-entropy-a-beta",
                (res.a_beta - 0.6784).abs() < 1e-3,
                format!("a_beta = {:.6}", res.a_beta),
            ));
        }
        Err(e) => out.push(check("salem/min-entropy-root", false, e.to_string())),
    }
    out
}

/// Criterion 5: the Kummer automorphism wedge data.
pub fn check_kummer_automorphism() -> Vec<Check> {
    let mut out = Vec::new();
    let mut all_match = true;
    for a in [0i64, 1, 2, 5] {
        let w = wedge_square(&crate::salem::torus_matrix(a));
        let expect = IntMatrix::from_rows(&[
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, -(a + 1)],
            vec![0, 0, 0, 0, 0, 1],
            vec![1, 1, a + 1, 0, 0, 0],
            vec![0, -1, -1, 0, 0, 0],
            vec![0, 0, 0, -1, -1, a],
        ]);
        all_match &= w == expect;
        all_match &= char_poly(&w) == crate::salem::kummer_char_poly(a);
    }
    out.push(check("salem/wedge-6x6-entry-for-entry", all_match, "a in {0,1,2,5}"));
    let mut closed_ok = true;
    let mut detail = String::new();
    for a in [0i64, 1, 5] {
        match kummer_auto_periods(a) {
            Ok(res) => {
                let (ca, cb) = crate::salem::kummer_closed_forms(a, res.s);
                let da = (res.a_alpha - ca).abs();
                let db = (res.a_beta - cb).abs();
                closed_ok &= da < 1e-10 && db < 1e-10;
                detail = format!("a={a}: |d alpha|={da:.2e} |d beta|={db:.2e}");
            }
            Err(e) => {
                closed_ok = false;
                detail = e.to_string();
            }
        }
    }
    out.push(check("salem/kummer-closed-vs-quotient", closed_ok, detail));
    out
}

/// Criterion 6: the concrete-example Picard rank.
pub fn check_picard_blowup() -> Vec<Check> {
    let mut out = Vec::new();
    match period::blowup_example_period().and_then(|sigma| picard_lattice(&sigma)) {
        Ok(res) => {
            out.push(check(
                "picard/rank-17",
                res.rank == 17,
                format!("rank = {}", res.rank),
            ));
            let fm = &res.functional_matrix;
            let contains =
                |idx: usize| (0..fm.rows()).all(|s| fm[(s, idx)].is_zero());
            let mut inside = contains(k3_index::B_G);
            for i in 0..16 {
                inside &= contains(k3_index::C_PLUS + i);
            }
            out.push(check("picard/kernel-contains-bg-and-c", inside, ""));
            out.push(check(
                "picard/negative-definite",
                crate::roots::picard_signature_check(&res.lattice),
                format!("signature {:?}", res.lattice.signature()),
            ));
        }
        Err(e) => out.push(check("picard/rank-17", false, e.to_string())),
    }
    out
}

/// Criterion 7: root geometry.
pub fn check_root_geometry(opts: &VerifyOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let e8 = e8_for(opts);
    match enumerate_roots(&e8) {
        Ok(roots) => {
            // Independent box oracle with LDL^T-derived bounds.
            let oracle = box_oracle_roots(&e8);
            out.push(check(
                "roots/e8-240-vs-box-oracle",
                roots.len() == 240 && roots == oracle,
                format!("enumerated {} oracle {}", roots.len(), oracle.len()),
            ));
        }
        Err(e) => out.push(check("roots/e8-240-vs-box-oracle", false, e.to_string())),
    }
    let (q, _) = catalog::blowup_d_config();
    match dominant_root(&q) {
        Ok(alpha) => out.push(check(
            "roots/dominant-coefficients",
            alpha.coords == vec![-3, -2, -4, -6, -5, -4, -3, -2],
            format!("{:?}", alpha.coords),
        )),
        Err(e) => out.push(check("roots/dominant-coefficients", false, e.to_string())),
    }
    let pic = crate::roots::picard_17_lattice();
    let gens: Vec<RootClass> = (0..17)
        .map(|i| {
            let mut c = vec![0i64; 17];
            c[i] = 1;
            RootClass { coords: c }
        })
        .collect();
    let m = max_disjoint_roots(&pic, &gens, 17);
    out.push(check(
        "roots/max-disjoint-of-17-generators",
        m < 16,
        format!("maximum pairwise-orthogonal subset = {m}"),
    ));
    out
}

/// Naive box search with per-coordinate bounds from the LDL^T data.
pub fn box_oracle_roots(l: &IntLattice) -> Vec<RootClass> {
    let bounds = crate::roots::box_bounds(l).expect("negative definite");
    let n = l.rank();
    let g: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    use num_traits::ToPrimitive;
                    l.gram[(i, j)].to_integer().to_i64().expect("small Gram entries")
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn rec(
        g: &[Vec<i64>],
        bounds: &[i64],
        i: usize,
        x: &mut Vec<i64>,
        out: &mut Vec<RootClass>,
    ) {
        if i == x.len() {
            let mut q = 0i64;
            for (a, row) in g.iter().enumerate() {
                for (b, &gab) in row.iter().enumerate() {
                    q += gab * x[a] * x[b];
                }
            }
            if q == -2 {
                out.push(RootClass { coords: x.clone() });
            }
            return;
        }
        for v in -bounds[i]..=bounds[i] {
            x[i] = v;
            rec(g, bounds, i + 1, x, out);
        }
        x[i] = 0;
    }
    rec(&g, &bounds, 0, &mut x, &mut out);
    out.sort();
    out
}

fn random_params(rng: &mut SplitMix64) -> GluingParams {
    let r = |rng: &mut SplitMix64| rat(rng.int_in(-9, 9), rng.int_in(1, 7));
    let c = |rng: &mut SplitMix64| QC::new(r(rng), r(rng));
    GluingParams {
        tau: QC::new(r(rng), rat(rng.int_in(1, 9), rng.int_in(1, 4))),
        a_alpha: r(rng),
        a_beta: r(rng),
        c_plus: (0..8).map(|_| c(rng)).collect(),
        c_minus: (0..8).map(|_| c(rng)).collect(),
        gamma9: c(rng),
        x: c(rng),
        lambda: BigRational::zero(),
    }
}

/// Criterion 8: period identities on random gluing parameters plus the
/// type II monodromy.
pub fn check_period_identities(opts: &VerifyOptions) -> Vec<Check> {
    let mut rng = SplitMix64::new(opts.seed);
    let mut iso_ok = true;
    let mut orth_ok = true;
    let mut slope_ok = true;
    for _ in 0..100 {
        let p = random_params(&mut rng);
        let sigma = period_from_params(&p).expect("tau in H");
        iso_ok &= period_pairing(&sigma, &sigma, false).unwrap().is_zero();
        let v = period::v_pq(&p.a_alpha, &p.a_beta);
        orth_ok &= period_pairing(&sigma, &v, false).unwrap().is_zero();
        // Delta (sigma.sigma bar) = 4 Im tau Im Delta under x -> x + Delta.
        let delta = QC::new(rat(rng.int_in(-5, 5), 3), rat(rng.int_in(1, 5), 2));
        let mut p2 = p.clone();
        p2.x = p.x.add(&delta);
        let s2 = period_from_params(&p2).expect("tau in H");
        let v1 = period_pairing(&sigma, &sigma, true).unwrap();
        let v2 = period_pairing(&s2, &s2, true).unwrap();
        let diff = v2.sub(&v1);
        let expect = QC::from_rational(rat(4, 1) * &p.tau.im * &delta.im);
        slope_ok &= diff == expect;
    }
    let mut out = vec![
        check("period/sigma-isotropic-100-random", iso_ok, ""),
        check("period/sigma-orthogonal-to-v-100-random", orth_ok, ""),
        check("period/volume-slope-4-im-tau", slope_ok, ""),
    ];
    let m = period::monodromy_type_ii();
    let (k3, _) = catalog::k3_lattice();
    let d = m.sub(&IntMatrix::identity(22));
    out.push(check(
        "period/monodromy-type-ii",
        crate::isometry::is_isometry(&k3, &m) && d.mul(&d).is_zero() && !d.is_zero(),
        "m^T G m = G, (m-I)^2 = 0, m != I",
    ));
    out
}

/// Criterion 9: tube integral quadrature vs closed form.
pub fn check_tube_integral(opts: &VerifyOptions) -> Vec<Check> {
    let mut rng = SplitMix64::new(opts.seed ^ 0x7475_6265);
    let mut worst = 0.0f64;
    let mut ok = true;
    for _ in 0..10 {
        let a = rng.int_in(-300, 300) as f64 / 100.0;
        let rp = 1.0 + rng.int_in(5, 300) as f64 / 100.0;
        let rm = 1.0 + rng.int_in(5, 300) as f64 / 100.0;
        match period::tube_integral_check(a, rp, rm, 1e-8) {
            Ok(v) => {
                let e = period::tube_integral_closed_form(a, rp, rm);
                let err = (v - e).norm();
                worst = worst.max(err);
                ok &= err < 1e-6;
            }
            Err(_) => ok = false,
        }
    }
    vec![check("period/tube-integral-1e-6", ok, format!("worst |err| = {worst:.2e}"))]
}

/// Criterion 10: Diophantine verdicts.
pub fn check_diophantine() -> Vec<Check> {
    let cfg = CheckConfig::default();
    let mut out = Vec::new();
    let zero = RealExpr::Rational(BigRational::zero());
    let cbrt2 = RealExpr::cbrt(-2);
    let cert = liouville_certificate(
        &IntPoly::from_i64(&[-2, 0, 0, 1]),
        &rat(1, 1),
        &rat(2, 1),
    );
    match cert {
        Ok(cert) => {
            let alpha_ok = cert.alpha == 2;
            let rep = check_pair(&zero, &cbrt2, 100_000, Some(cert), &cfg).unwrap();
            out.push(check(
                "dioph/cbrt2-passes-alpha-2",
                alpha_ok && rep.verdict == Verdict::Pass,
                format!("verdict {:?}, fitted alpha {:.3}", rep.verdict, rep.fitted_alpha),
            ));
        }
        Err(e) => out.push(check("dioph/cbrt2-passes-alpha-2", false, e.to_string())),
    }
    let rep = check_pair(
        &RealExpr::Rational(rat(1, 2)),
        &RealExpr::Rational(rat(1, 3)),
        1000,
        None,
        &cfg,
    )
    .unwrap();
    out.push(check(
        "dioph/rational-fails-at-6",
        rep.verdict == Verdict::FailZero { witness: 6 },
        format!("{:?}", rep.verdict),
    ));
    let liou = RealExpr::Liouville { base: 2, terms: 5 };
    let rep = check_pair(&zero, &liou, 100_000, None, &cfg).unwrap();
    out.push(check(
        "dioph/liouville-flagged",
        matches!(rep.verdict, Verdict::FailSuperPolynomial { .. }),
        format!("{:?}", rep.verdict),
    ));
    out
}

/// Criterion 11: majorant identities, oracle, radius behavior.
pub fn check_majorant() -> Vec<Check> {
    let mut out = Vec::new();
    let d: Vec<BigRational> = vec![rat(1, 3), rat(2, 7), rat(1, 2), rat(2, 5)];
    let k = rat(5, 2);
    let m = rat(7, 3);
    let ms = majorant_ueda(&d, &k, &m, 4).unwrap();
    let a2_ok = *ms.coeff(2) == &k * &m / &d[0];
    let a3_expect = &k / &d[1] * (rat(2, 1) * &m * ms.coeff(2) + &m * &m);
    out.push(check(
        "majorant/a2-a3-exact",
        a2_ok && *ms.coeff(3) == a3_expect,
        "",
    ));
    // 12-term oracle with unit inputs has known small integers: verify
    // against an independent recomputation through plain polynomial ops.
    let ones: Vec<BigRational> = vec![BigRational::one(); 12];
    let ms = majorant_ueda(&ones, &BigRational::one(), &BigRational::one(), 12).unwrap();
    // brute-force check: resubstitute the series into the functional
    // equation and compare coefficients.
    let resid_ok = ueda_residual_vanishes(&ms.coeffs, &ones);
    out.push(check("majorant/12-term-oracle", resid_ok, ""));
    let p = RealExpr::Rational(BigRational::zero());
    let q = RealExpr::GoldenRatio;
    let seq = crate::diophantine::bundle_distance_seq(&p, &q, 48, 200).unwrap();
    let d: Vec<BigRational> = seq.iter().map(|x| round_down_dyadic(&x.lower, 32)).collect();
    let ms = majorant_ueda(&d, &rat(10, 1), &rat(2, 1), 48).unwrap();
    let est = radius_estimate(&ms).unwrap();
    out.push(check(
        "majorant/radius-positive-diophantine",
        est.radius > 1e-4,
        format!("radius = {:.3e}", est.radius),
    ));
    let collapse = |terms: usize| {
        let d: Vec<BigRational> = (1..=terms as u32)
            .map(|n| BigRational::new(BigInt::one(), BigInt::from(2u32).pow(n * n)))
            .collect();
        let ms = majorant_ueda(&d, &BigRational::one(), &BigRational::one(), terms).unwrap();
        radius_estimate(&ms).unwrap().radius
    };
    let (r16, r32) = (collapse(16), collapse(32));
    out.push(check(
        "majorant/radius-collapses-super-liouville",
        r32 < r16 / 2.0,
        format!("r(16 terms) = {r16:.3e}, r(32 terms) = {r32:.3e}"),
    ));
    out
}

/// Substitutes the computed coefficients back into the defining equation
/// sum d_{nu-1} A_nu X^nu = K M A^2/(1-M A) (with K = M = 1, d = 1) and
/// checks the coefficients agree through the truncation order.
fn ueda_residual_vanishes(a: &[BigRational], d: &[BigRational]) -> bool {
    let n = a.len();
    // rhs = A^2 + A^3 + ... truncated at degree n
    let mut rhs = vec![BigRational::zero(); n];
    let mut pow = mul_series(a, a, n);
    loop {
        let mut any = false;
        for i in 0..n {
            if !pow[i].is_zero() {
                rhs[i] += &pow[i];
                any = true;
            }
        }
        if !any {
            break;
        }
        pow = mul_series(&pow, a, n);
        if pow.iter().all(|c| c.is_zero()) {
            break;
        }
    }
    for nu in 2..=n {
        if &d[nu - 2] * &a[nu - 1] != rhs[nu - 1] {
            return false;
        }
    }
    true
}

fn mul_series(a: &[BigRational], b: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let deg = i + j + 2;
            if deg > n {
                break;
            }
            out[deg - 1] += ai * bj;
        }
    }
    out
}

/// Criterion 12: the effective-constant bound on a grid.
pub fn check_ueda_constant() -> Vec<Check> {
    let mut ok = true;
    for i in 1..=10 {
        for n in 1..=10u32 {
            ok &= ueda_constant_bound_holds(&rat(i, 11), n).unwrap();
        }
    }
    vec![check("ueda/bound-100-point-grid", ok, "s = i/11, N = 1..10")]
}

/// Criterion 13: blow-up tangent cohomology.
pub fn check_blowup() -> Vec<Check> {
    let a = period::blowup_tangent_cohomology(9) == Ok((0, 10, 0));
    let b = period::blowup_tangent_cohomology(4) == Ok((0, 0, 0));
    vec![check("appendix/blowup-cohomology", a && b, "(9) = (0,10,0), (4) = (0,0,0)")]
}

/// Randomized structural invariants (SNF/inertia/pairing), seed-driven.
pub fn check_randomized_invariants(opts: &VerifyOptions) -> Vec<Check> {
    let mut rng = SplitMix64::new(opts.seed ^ 0x5eed);
    let mut snf_ok = true;
    let mut inertia_ok = true;
    for _ in 0..10 {
        let m = IntMatrix::from_fn(4, 4, |_, _| rng.int_in(-6, 6));
        let s = crate::exact_linalg::smith_normal_form(&m);
        snf_ok &= s.u.mul(&m).mul(&s.v) == s.d;
        snf_ok &= s.u.det().abs() == BigInt::one() && s.v.det().abs() == BigInt::one();
        let sym = m.add(&m.transpose()).to_rational();
        let mut t = crate::exact_linalg::QMatrix::identity(4);
        t[(0, 2)] = rat(rng.int_in(-3, 3), 2);
        t[(3, 1)] = rat(rng.int_in(-3, 3), 3);
        let congruent = t.transpose().mul(&sym).mul(&t);
        inertia_ok &= crate::exact_linalg::inertia(&sym).unwrap()
            == crate::exact_linalg::inertia(&congruent).unwrap();
    }
    vec![
        check("invariants/snf-randomized", snf_ok, "10 random 4x4 matrices"),
        check("invariants/inertia-congruence", inertia_ok, "10 random congruences"),
    ]
}

/// The solve_y consistency probe on the symbolic fixture.
pub fn check_symbolic_fixture() -> Vec<Check> {
    match period::blowup_example_period() {
        Ok(sigma) => {
            let y = &sigma.coeffs[k3_index::A_GA];
            let ok = y.coeff_of("mu2") == rat(-1, 1)
                && y.coeff_of("ix") == rat(-1, 1)
                && solve_y(&sigma).map(|yy| yy == *y).unwrap_or(false)
                && period_pairing(&sigma, &sigma, false).map(|v| v.is_zero()).unwrap_or(false);
            vec![check("period/blowup-symbolic-y", ok, "y = -mu^2 - i x")]
        }
        Err(e) => vec![check("period/blowup-symbolic-y", false, e.to_string())],
    }
}

/// Runs everything; the CLI renders this as the pass/fail table.
pub fn run_all(opts: &VerifyOptions) -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(check_catalog(opts));
    out.extend(check_kummer_glue());
    out.extend(check_mcmullen_glue());
    out.extend(check_coxeter_salem());
    out.extend(check_kummer_automorphism());
    out.extend(check_picard_blowup());
    out.extend(check_root_geometry(opts));
    out.extend(check_period_identities(opts));
    out.extend(check_tube_integral(opts));
    out.extend(check_diophantine());
    out.extend(check_majorant());
    out.extend(check_ueda_constant());
    out.extend(check_blowup());
    out.extend(check_randomized_invariants(opts));
    out.extend(check_symbolic_fixture());
    out
}
