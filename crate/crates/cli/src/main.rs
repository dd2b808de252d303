//! k3lat: exact lattice algebra and period machinery for the K3 gluing
//! construction, on the command line.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use k3lat_core::catalog;
use k3lat_core::diophantine::{
    self, CheckConfig, RealExpr, Verdict,
};
use k3lat_core::exact_linalg::{parse_rational, IntMatrix, QMatrix};
use k3lat_core::glue::{self, GlueSpec};
use k3lat_core::isometry::{char_poly, coxeter_element};
use k3lat_core::lattice::{disc_q, discriminant_group, is_even, is_unimodular, IntLattice};
use k3lat_core::majorant;
use k3lat_core::period::{self, PeriodScalar, QC};
use k3lat_core::poly::IntPoly;
use k3lat_core::roots;
use k3lat_core::salem;
use k3lat_core::verify::{self, VerifyOptions};

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "k3lat",
    version,
    about = "Exact lattice gluing, period, Diophantine and majorant toolkit",
    arg_required_else_help = true
)]
struct Cli {
    /// Write the JSON report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Working precision for real-number evaluation (env:
    /// K3LAT_PRECISION_BITS, flag wins).
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    /// Numeric tolerance for spectral residuals.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Seed for the randomized property checks.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog and file-based lattice reports.
    Lattice {
        #[command(subcommand)]
        sub: LatticeCmd,
    },
    /// Validate and build a discriminant-form glue.
    Glue(GlueArgs),
    /// Coxeter element of a Dynkin-type catalog lattice.
    Coxeter {
        /// Catalog name (e10, e8-minus, a2, d-blowup).
        #[arg(long)]
        lattice: String,
    },
    /// Enumerate (-2)-classes; optionally the dominant root and the
    /// maximum disjoint subset.
    Roots(RootsArgs),
    /// Period-vector operations.
    Period {
        #[command(subcommand)]
        sub: PeriodCmd,
    },
    /// Diophantine pair checking.
    Dioph {
        #[command(subcommand)]
        sub: DiophCmd,
    },
    /// Salem-type automorphism spectra.
    Salem {
        #[command(subcommand)]
        sub: SalemCmd,
    },
    /// Majorant series solving and radius estimation.
    Majorant(MajorantArgs),
    /// Run the whole acceptance checklist and print a pass/fail table.
    VerifyPaper {
        /// Corrupt the E8 Gram first (harness self-test; must fail).
        #[arg(long)]
        corrupt_e8: bool,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Gram, evenness, signature, determinant, discriminant group and
    /// q-values of a catalog lattice or a lattice JSON file.
    Info { name: String },
}

#[derive(Args)]
struct GlueArgs {
    /// Catalog name or lattice JSON file.
    #[arg(long)]
    l1: String,
    /// Catalog name or lattice JSON file.
    #[arg(long)]
    l2: String,
    /// Glue map JSON: {"gens1": [[..]], "gens2": [[..]], "orders": [..],
    /// "phi": [[..]]}; omit to use the built-in fixture for the pair.
    #[arg(long)]
    phi: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct RootsArgs {
    /// Catalog name or lattice JSON file (negative definite).
    #[arg(long)]
    lattice: String,
    /// Also report the unique dominant root.
    #[arg(long)]
    dominant: bool,
    /// Also report the maximum pairwise-orthogonal subset size over the
    /// basis generators.
    #[arg(long)]
    max_disjoint: bool,
    /// Use every enumerated root (not just the basis) for --max-disjoint.
    #[arg(long)]
    all_roots: bool,
}

#[derive(Subcommand)]
enum PeriodCmd {
    /// Build the period vector of a gluing-parameter JSON file.
    FromParams { file: std::path::PathBuf },
    /// Realizability verdict of a period point.
    Realizable {
        /// Period JSON file (from-params output shape); omit for the
        /// built-in concrete example with the given Im x.
        #[arg(long)]
        xi: Option<std::path::PathBuf>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        p: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        /// Im x for the built-in example family.
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        im_x: String,
    },
    /// Picard lattice of a symbolic period JSON ("blowup-example" for the
    /// built-in concrete example).
    Picard { file: String },
}

#[derive(Subcommand)]
enum DiophCmd {
    /// Distance sequence, exponent fit and verdict for a pair (p, q).
    Check {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 100_000)]
        nmax: u64,
        /// Integer minpoly coefficients (low degree first), for a
        /// Liouville certificate.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        minpoly: Option<Vec<i64>>,
        #[arg(long, requires = "minpoly")]
        root_lo: Option<String>,
        #[arg(long, requires = "minpoly")]
        root_hi: Option<String>,
    },
}

#[derive(Subcommand)]
enum SalemCmd {
    /// The minimum-entropy automorphism spectral data.
    MinEntropy,
    /// The Kummer-surface automorphism with parameter a.
    Kummer {
        #[arg(long, default_value_t = 0)]
        a: i64,
    },
}

#[derive(Args)]
struct MajorantArgs {
    /// ueda | arnold-z
    #[arg(long)]
    equation: String,
    /// Pair (p, q) generating the distance sequence.
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, default_value = "1")]
    k: String,
    #[arg(long, default_value = "1")]
    m: String,
    #[arg(long)]
    big_q: Option<String>,
    #[arg(long, default_value_t = 32)]
    terms: usize,
    /// Emit coefficients as CSV instead of JSON.
    #[arg(long)]
    csv: bool,
}

// ---------------------------------------------------------------------------

fn rational_json(x: &BigRational) -> Value {
    if x.is_integer() {
        match x.to_integer().to_i64() {
            Some(v) => json!(v),
            None => json!(x.to_string()),
        }
    } else {
        json!(format!("{}/{}", x.numer(), x.denom()))
    }
}

fn qc_json(x: &QC) -> Value {
    json!({"im": rational_json(&x.im), "re": rational_json(&x.re)})
}

fn matrix_json(m: &QMatrix) -> Value {
    serde_json::to_value(m).expect("matrix serializes")
}

fn int_matrix_json(m: &IntMatrix) -> Value {
    serde_json::to_value(m).expect("matrix serializes")
}

fn load_lattice(name_or_path: &str) -> Result<IntLattice, String> {
    if let Ok(l) = catalog::by_name(name_or_path) {
        return Ok(l);
    }
    let text = std::fs::read_to_string(name_or_path)
        .map_err(|e| format!("cannot read '{name_or_path}': {e}"))?;
    serde_json::from_str::<IntLattice>(&text).map_err(|e| format!("bad lattice JSON: {e}"))
}

fn lattice_info(l: &IntLattice) -> Result<Value, String> {
    let sig = l.signature();
    let mut v = Map::new();
    v.insert("name".into(), json!(l.name));
    v.insert("gram".into(), matrix_json(&l.gram));
    v.insert("even".into(), json!(is_even(l)));
    v.insert("signature".into(), json!([sig.0, sig.1, sig.2]));
    v.insert("det".into(), rational_json(&l.det()));
    v.insert("unimodular".into(), json!(is_unimodular(l)));
    if !l.is_degenerate() && l.gram.to_integer().is_some() {
        let g = discriminant_group(l).map_err(|e| e.to_string())?;
        let factors: Vec<Value> =
            g.invariant_factors.iter().map(|f| json!(f.to_string())).collect();
        let gens: Vec<Value> = g
            .generators
            .iter()
            .map(|gen| Value::Array(gen.iter().map(rational_json).collect()))
            .collect();
        let qvals: Vec<Value> = g
            .generators
            .iter()
            .map(|gen| rational_json(&disc_q(l, gen).expect("generator in dual")))
            .collect();
        v.insert(
            "disc_group".into(),
            json!({"generators": gens, "invariant_factors": factors, "order": g.order.to_string()}),
        );
        v.insert("q_values".into(), Value::Array(qvals));
    }
    Ok(Value::Object(v))
}

fn parse_rat_arg(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| format!("bad rational '{s}': {e}"))
}

fn emit(out: &Option<std::path::PathBuf>, report: &Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(report).expect("serializable") + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string())
        }
    }
}

fn run_report(command: &str, inputs: Value, outputs: Value, checks: Vec<(String, bool, String)>) -> Value {
    let checks_json: Vec<Value> = checks
        .iter()
        .map(|(n, p, d)| json!({"detail": d, "name": n, "pass": p}))
        .collect();
    json!({
        "checks": checks_json,
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "tool_version": TOOL_VERSION,
    })
}

fn precision(cli: &Cli) -> u32 {
    cli.precision_bits
        .or_else(|| {
            std::env::var("K3LAT_PRECISION_BITS").ok().and_then(|s| s.parse().ok())
        })
        .unwrap_or(diophantine::DEFAULT_PRECISION_BITS)
}

// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<bool, String> {
    match &cli.command {
        Command::Lattice { sub: LatticeCmd::Info { name } } => {
            let l = load_lattice(name)?;
            let info = lattice_info(&l)?;
            emit(&cli.out, &info)?;
            Ok(true)
        }
        Command::Glue(args) => cmd_glue(cli, args),
        Command::Coxeter { lattice } => {
            let l = load_lattice(lattice)?;
            let cox = coxeter_element(&l, None).map_err(|e| e.to_string())?;
            let cp = char_poly(&cox.matrix);
            let report = json!({
                "char_poly": cp.display(),
                "char_poly_coeffs": cp.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "lattice": l.name,
                "matrix": int_matrix_json(&cox.matrix),
            });
            emit(&cli.out, &report)?;
            Ok(true)
        }
        Command::Roots(args) => cmd_roots(cli, args),
        Command::Period { sub } => cmd_period(cli, sub),
        Command::Dioph { sub } => cmd_dioph(cli, sub),
        Command::Salem { sub } => cmd_salem(cli, sub),
        Command::Majorant(args) => cmd_majorant(cli, args),
        Command::VerifyPaper { corrupt_e8 } => {
            let opts = VerifyOptions { seed: cli.seed, corrupt_e8: *corrupt_e8 };
            let checks = verify::run_all(&opts);
            let all = checks.iter().all(|c| c.pass);
            for c in &checks {
                println!("{} {} {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            println!(
                "{}: {} checks, {} failed",
                if all { "OK" } else { "FAILED" },
                checks.len(),
                checks.iter().filter(|c| !c.pass).count()
            );
            let report = run_report(
                "verify-paper",
                json!({"corrupt_e8": corrupt_e8, "seed": cli.seed}),
                json!({}),
                checks.into_iter().map(|c| (c.name, c.pass, c.detail)).collect(),
            );
            if cli.out.is_some() {
                emit(&cli.out, &report)?;
            }
            Ok(all)
        }
    }
}

fn cmd_glue(cli: &Cli, args: &GlueArgs) -> Result<bool, String> {
    let spec = match &args.phi {
        None => match (args.l1.as_str(), args.l2.as_str()) {
            ("kummer", "torus") => glue::kummer_glue_spec(),
            ("l1", "l2") | ("mcmullen-l1", "l2") => glue::mcmullen_glue_spec(),
            _ => {
                return Err(
                    "no built-in glue map for this pair; pass --phi <file>".to_string()
                )
            }
        },
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
            let raw: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let l1 = load_lattice(&args.l1)?;
            let l2 = load_lattice(&args.l2)?;
            parse_glue_spec(l1, l2, &raw)?
        }
    };
    let report = glue::validate_glue(&spec);
    let mut checks = vec![(
        "q-anti-isometry".to_string(),
        report.pass(),
        format!(
            "group order {}, bijective {}, q-condition {}",
            report.group_order, report.bijective, report.q_condition
        ),
    )];
    let outputs = if report.pass() {
        let glued = glue::glue(&spec).map_err(|e| e.to_string())?;
        let sig = glued.lattice.signature();
        checks.push((
            "glued-even-unimodular".into(),
            is_even(&glued.lattice) && is_unimodular(&glued.lattice),
            format!("signature ({}, {})", sig.0, sig.1),
        ));
        lattice_info(&glued.lattice)?
    } else {
        json!({"first_violation": report.first_violation, "messages": report.messages})
    };
    let all = checks.iter().all(|c| c.1);
    let rep = run_report(
        "glue",
        json!({"l1": args.l1, "l2": args.l2}),
        outputs,
        checks,
    );
    emit(&cli.out, &rep)?;
    Ok(all)
}

fn parse_glue_spec(l1: IntLattice, l2: IntLattice, raw: &Value) -> Result<GlueSpec, String> {
    let vecs = |key: &str| -> Result<Vec<Vec<BigRational>>, String> {
        raw.get(key)
            .and_then(|v| v.as_array())
            .ok_or(format!("missing '{key}'"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or("generator must be an array".to_string())?
                    .iter()
                    .map(|x| {
                        k3lat_core::exact_linalg::rational_from_json(x)
                            .map_err(|e| e.to_string())
                    })
                    .collect()
            })
            .collect()
    };
    let gens1 = vecs("gens1")?;
    let gens2 = vecs("gens2")?;
    let orders = raw
        .get("orders")
        .and_then(|v| v.as_array())
        .ok_or("missing 'orders'")?
        .iter()
        .map(|x| k3lat_core::exact_linalg::int(x.as_i64().unwrap_or(1)))
        .collect::<Vec<_>>();
    let phi_rows: Vec<Vec<i64>> = raw
        .get("phi")
        .and_then(|v| v.as_array())
        .ok_or("missing 'phi'")?
        .iter()
        .map(|row| {
            row.as_array()
                .map(|r| r.iter().map(|x| x.as_i64().unwrap_or(0)).collect())
                .ok_or("phi row must be an array".to_string())
        })
        .collect::<Result<_, _>>()?;
    Ok(GlueSpec { l1, l2, gens1, gens2, orders, phi: IntMatrix::from_rows(&phi_rows) })
}

fn cmd_roots(cli: &Cli, args: &RootsArgs) -> Result<bool, String> {
    let l = load_lattice(&args.lattice)?;
    let roots = roots::enumerate_roots(&l).map_err(|e| e.to_string())?;
    let mut out = Map::new();
    out.insert("count".into(), json!(roots.len()));
    out.insert(
        "roots".into(),
        Value::Array(roots.iter().map(|r| json!(r.coords)).collect()),
    );
    if args.dominant {
        let alpha = roots::dominant_root(&l).map_err(|e| e.to_string())?;
        out.insert("dominant".into(), json!(alpha.coords));
    }
    if args.max_disjoint {
        let set: Vec<roots::RootClass> = if args.all_roots {
            roots.clone()
        } else {
            (0..l.rank())
                .map(|i| {
                    let mut c = vec![0i64; l.rank()];
                    c[i] = 1;
                    roots::RootClass { coords: c }
                })
                .collect()
        };
        out.insert(
            "max_disjoint".into(),
            json!(roots::max_disjoint_roots(&l, &set, l.rank())),
        );
    }
    emit(&cli.out, &Value::Object(out))?;
    Ok(true)
}

fn parse_qc(v: &Value) -> Result<QC, String> {
    let re = v
        .get("re")
        .map(k3lat_core::exact_linalg::rational_from_json)
        .transpose()?
        .unwrap_or_else(|| BigRational::from_integer(0.into()));
    let im = v
        .get("im")
        .map(k3lat_core::exact_linalg::rational_from_json)
        .transpose()?
        .unwrap_or_else(|| BigRational::from_integer(0.into()));
    Ok(QC::new(re, im))
}

fn cmd_period(cli: &Cli, sub: &PeriodCmd) -> Result<bool, String> {
    match sub {
        PeriodCmd::FromParams { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| e.to_string())?;
            let raw: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let params = parse_gluing_params(&raw)?;
            let sigma = period::period_from_params(&params).map_err(|e| e.to_string())?;
            emit(&cli.out, &period_json(&sigma))?;
            Ok(true)
        }
        PeriodCmd::Realizable { xi, p, q, lambda, im_x } => {
            let p = parse_rat_arg(p)?;
            let q = parse_rat_arg(q)?;
            let lambda = parse_rat_arg(lambda)?;
            let sigma = match xi {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                    let raw: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
                    parse_period(&raw)?
                }
                None => {
                    // The built-in exact family: tau = i, all segment
                    // integrals zero, x = i * im_x.
                    let params = period::GluingParams {
                        tau: QC::i(),
                        a_alpha: BigRational::from_integer(0.into()),
                        a_beta: BigRational::from_integer(0.into()),
                        c_plus: vec![QC::zero(); 8],
                        c_minus: vec![QC::zero(); 8],
                        gamma9: QC::zero(),
                        x: QC::new(BigRational::from_integer(0.into()), parse_rat_arg(im_x)?),
                        lambda: lambda.clone(),
                    };
                    period::period_from_params(&params).map_err(|e| e.to_string())?
                }
            };
            let report =
                period::realizability_check(&sigma, &p, &q, &lambda).map_err(|e| e.to_string())?;
            let pass = report.pass();
            let rep = json!({
                "isotropic": report.isotropic,
                "lambda": rational_json(&report.lambda),
                "orthogonal_to_v": report.orthogonal_to_v,
                "sigma_sigma_bar": report.sigma_sigma_bar.as_ref().map(qc_json),
                "verdict": format!("{:?}", report.verdict),
            });
            emit(&cli.out, &rep)?;
            Ok(pass)
        }
        PeriodCmd::Picard { file } => {
            let sigma = if file == "blowup-example" {
                period::blowup_example_period().map_err(|e| e.to_string())?
            } else {
                let text = std::fs::read_to_string(file).map_err(|e| e.to_string())?;
                let raw: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
                parse_symbolic_period(&raw)?
            };
            let res = period::picard_lattice(&sigma).map_err(|e| e.to_string())?;
            let rep = json!({
                "kernel": res.kernel.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "negative_definite": roots::picard_signature_check(&res.lattice),
                "picard_gram": matrix_json(&res.lattice.gram),
                "rank": res.rank,
            });
            emit(&cli.out, &rep)?;
            Ok(true)
        }
    }
}

fn parse_gluing_params(raw: &Value) -> Result<period::GluingParams, String> {
    let rat_field = |key: &str| -> Result<BigRational, String> {
        raw.get(key)
            .map(k3lat_core::exact_linalg::rational_from_json)
            .transpose()?
            .ok_or(format!("missing '{key}'"))
    };
    let qc_field = |key: &str| -> Result<QC, String> {
        raw.get(key).map(parse_qc).transpose()?.ok_or(format!("missing '{key}'"))
    };
    let qc_array = |key: &str| -> Result<Vec<QC>, String> {
        raw.get(key)
            .and_then(|v| v.as_array())
            .ok_or(format!("missing '{key}'"))?
            .iter()
            .map(parse_qc)
            .collect()
    };
    Ok(period::GluingParams {
        tau: qc_field("tau")?,
        a_alpha: rat_field("a_alpha")?,
        a_beta: rat_field("a_beta")?,
        c_plus: qc_array("c_plus")?,
        c_minus: qc_array("c_minus")?,
        gamma9: qc_field("gamma9")?,
        x: qc_field("x")?,
        lambda: rat_field("lambda").unwrap_or_else(|_| BigRational::from_integer(0.into())),
    })
}

fn period_json(sigma: &period::PeriodVector<QC>) -> Value {
    let basis = period::PeriodVector::<QC>::basis();
    let mut coeffs = Map::new();
    for (label, c) in basis.labels.iter().zip(&sigma.coeffs) {
        coeffs.insert(label.clone(), qc_json(c));
    }
    json!({"coeffs": Value::Object(coeffs)})
}

fn parse_period(raw: &Value) -> Result<period::PeriodVector<QC>, String> {
    let basis = period::PeriodVector::<QC>::basis();
    let coeffs_obj = raw
        .get("coeffs")
        .and_then(|v| v.as_object())
        .ok_or("missing 'coeffs'")?;
    let mut coeffs = Vec::with_capacity(22);
    for label in &basis.labels {
        let c = coeffs_obj.get(label).map(parse_qc).transpose()?.unwrap_or_else(QC::zero);
        coeffs.push(c);
    }
    period::PeriodVector::from_coeffs(coeffs).map_err(|e| e.to_string())
}

fn parse_symbolic_period(raw: &Value) -> Result<period::PeriodVector<period::SymbolicComplex>, String> {
    let syms: Vec<String> = raw
        .get("symbols")
        .and_then(|v| v.as_array())
        .ok_or("missing 'symbols'")?
        .iter()
        .map(|s| s.as_str().unwrap_or("").to_string())
        .collect();
    let mut names: Vec<&str> = vec!["1"];
    names.extend(syms.iter().map(|s| s.as_str()).filter(|s| *s != "1"));
    let table = std::sync::Arc::new(period::SymbolTable::new(names));
    let basis = period::PeriodVector::<QC>::basis();
    let coeffs_obj = raw
        .get("coeffs")
        .and_then(|v| v.as_object())
        .ok_or("missing 'coeffs'")?;
    let mut coeffs = Vec::with_capacity(22);
    for label in &basis.labels {
        let mut acc = period::SymbolicComplex::zero_over(&table);
        if let Some(terms) = coeffs_obj.get(label).and_then(|v| v.as_object()) {
            for (sym, coeff) in terms {
                let c = k3lat_core::exact_linalg::rational_from_json(coeff)?;
                let s = period::SymbolicComplex::symbol(&table, sym)
                    .map_err(|e| e.to_string())?;
                acc = acc.add(&s.scale(&c));
            }
        }
        coeffs.push(acc);
    }
    period::PeriodVector::from_coeffs(coeffs).map_err(|e| e.to_string())
}

fn cmd_dioph(cli: &Cli, sub: &DiophCmd) -> Result<bool, String> {
    match sub {
        DiophCmd::Check { p, q, nmax, minpoly, root_lo, root_hi } => {
            let pe = RealExpr::parse(p).map_err(|e| e.to_string())?;
            let qe = RealExpr::parse(q).map_err(|e| e.to_string())?;
            let cert = match (minpoly, root_lo, root_hi) {
                (Some(coeffs), Some(lo), Some(hi)) => Some(
                    diophantine::liouville_certificate(
                        &IntPoly::from_i64(coeffs),
                        &parse_rat_arg(lo)?,
                        &parse_rat_arg(hi)?,
                    )
                    .map_err(|e| e.to_string())?,
                ),
                _ => None,
            };
            let cfg = CheckConfig {
                precision_bits: precision(cli),
                ..CheckConfig::default()
            };
            let rep =
                diophantine::check_pair(&pe, &qe, *nmax, cert, &cfg).map_err(|e| e.to_string())?;
            let pass = rep.verdict == Verdict::Pass;
            let rep_json = json!({
                "certificate": rep.certificate.as_ref().map(|c| json!({
                    "A": rational_json(&c.a),
                    "alpha": c.alpha,
                    "source": c.source,
                })),
                "fitted_A": rep.fitted_a,
                "fitted_alpha": rep.fitted_alpha,
                "n_max": rep.n_max,
                "precision": {"bits": cfg.precision_bits},
                "records": rep.records,
                "verdict": format!("{:?}", rep.verdict),
            });
            emit(&cli.out, &rep_json)?;
            Ok(pass)
        }
    }
}

fn spectral_json(cli: &Cli, res: &salem::SpectralResult) -> Value {
    json!({
        "a_alpha": res.a_alpha,
        "a_beta": res.a_beta,
        "char_poly": res.poly.display(),
        "positivity": res.positivity,
        "precision": {"float_bits": 53, "residual_tol": cli.tol},
        "s": {"im": res.s.im, "re": res.s.re},
        "selection": res.selection,
        "tau": {"im": res.tau.im, "re": res.tau.re},
    })
}

fn cmd_salem(cli: &Cli, sub: &SalemCmd) -> Result<bool, String> {
    let res = match sub {
        SalemCmd::MinEntropy => salem::min_entropy_periods_with_tol(cli.tol),
        SalemCmd::Kummer { a } => salem::kummer_auto_periods_with_tol(*a, cli.tol),
    }
    .map_err(|e| e.to_string())?;
    emit(&cli.out, &spectral_json(cli, &res))?;
    Ok(true)
}

fn cmd_majorant(cli: &Cli, args: &MajorantArgs) -> Result<bool, String> {
    let pe = RealExpr::parse(&args.p).map_err(|e| e.to_string())?;
    let qe = RealExpr::parse(&args.q).map_err(|e| e.to_string())?;
    let prec = precision(cli);
    let need = match args.equation.as_str() {
        "ueda" => args.terms.saturating_sub(1),
        "arnold-z" => args.terms,
        other => return Err(format!("unknown equation '{other}' (ueda | arnold-z)")),
    };
    let seq = diophantine::bundle_distance_seq(&pe, &qe, need as u64, prec)
        .map_err(|e| e.to_string())?;
    let d: Vec<BigRational> = seq
        .iter()
        .map(|x| majorant::round_down_dyadic(&x.lower, 64))
        .collect();
    let k = parse_rat_arg(&args.k)?;
    let m = parse_rat_arg(&args.m)?;
    let ms = match args.equation.as_str() {
        "ueda" => majorant::majorant_ueda(&d, &k, &m, args.terms),
        _ => {
            let q = parse_rat_arg(args.big_q.as_deref().unwrap_or("1/2"))?;
            majorant::majorant_arnold_z(&d, &k, &m, &q, args.terms)
        }
    }
    .map_err(|e| e.to_string())?;
    if args.csv {
        let mut text = String::from("n,A_n\n");
        for (i, c) in ms.coeffs.iter().enumerate() {
            text.push_str(&format!("{},{}\n", i + 1, c));
        }
        match &cli.out {
            Some(path) => std::fs::write(path, text).map_err(|e| e.to_string())?,
            None => print!("{text}"),
        }
        return Ok(true);
    }
    let radius = majorant::radius_estimate(&ms).ok();
    let rep = json!({
        "coefficients": ms.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "equation": format!("{:?}", ms.equation),
        "precision": {"d_seq_dyadic_bits": 64, "distance_bits": prec},
        "radius_estimate": radius.as_ref().map(|r| json!({
            "fit_residual": r.fit_residual,
            "radius": r.radius,
            "terms_used": r.terms_used,
        })),
    });
    emit(&cli.out, &rep)?;
    Ok(true)
}
