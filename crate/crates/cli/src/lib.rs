//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the exit code together with both output streams,
//! so the binary and the tests share one code path.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde_json::{json, Value};

use sgflop::bwb::{self, Conormal};
use sgflop::gamma::{self, ChVector, ZetaWeights};
use sgflop::localmodel::{self, EquivariantPolynomial, Side};
use sgflop::quantum;
use sgflop::schubert::{self, crepancy_check, k_equivalence_rank_check, semismall_check, CohClass, FlopDatum};
use sgflop::{normalize, Ambient, BundleExpr, Error, Partition, Rational};

pub const SCHEMA: u64 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sgflop", version, about = "Exact checks for simple Grassmannian flops")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct AmbientArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub n: usize,
}

impl AmbientArgs {
    fn ambient(&self) -> sgflop::Result<Ambient> {
        Ambient::new(self.r, self.n)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sheaf cohomology of a bundle expression by Borel–Weil–Bott.
    Bwb {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long)]
        bundle: String,
    },
    /// H^1 vanishing sweep over all families up to `--kmax`.
    Vanish {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        /// Replace the conormal bundle by its dual; the sweep must fail.
        #[arg(long)]
        control: bool,
    },
    /// Schubert calculus: products, integrals, Chern characters.
    #[command(subcommand)]
    Schubert(SchubertCmd),
    /// Small quantum cohomology of the Grassmannian.
    #[command(subcommand)]
    Quantum(QuantumCmd),
    /// Projective-bundle presentations of the two flop sides.
    #[command(subcommand)]
    Localmodel(LocalModelCmd),
    /// Gamma-class transform and its inversion.
    #[command(subcommand)]
    Gamma(GammaCmd),
    /// Dimensions and numeric checks of the flop datum.
    #[command(subcommand)]
    Flop(FlopCmd),
}

#[derive(Subcommand, Debug)]
pub enum SchubertCmd {
    /// Product of two Schubert classes.
    Mult {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Degree of a class, e.g. `--class "2,2=3;1=-1/2"`.
    Integrate {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long)]
        class: String,
    },
    /// Chern character, total Chern class and HRR Euler characteristic.
    Chern {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long)]
        bundle: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum QuantumCmd {
    /// Quantum product of two Schubert classes.
    Mult {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Squarefree characteristic-polynomial certificate at `q = q0`.
    Semisimple {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long, default_value = "1")]
        q0: String,
    },
    /// Exhaustive associativity over basis triples.
    Assoc {
        #[command(flatten)]
        ambient: AmbientArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum LocalModelCmd {
    /// Relation coefficients `c_i(E)` of the projective bundle.
    Presentation {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long, default_value = "minus")]
        side: String,
    },
    /// Poincaré polynomial of one side.
    Betti {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long, default_value = "minus")]
        side: String,
    },
    /// Poincaré polynomials of both sides.
    Compare {
        #[command(flatten)]
        ambient: AmbientArgs,
    },
    /// Kirwan image of `class · λ^power`.
    Kirwan {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long, default_value = "minus")]
        side: String,
        #[arg(long, default_value = "0")]
        class: String,
        #[arg(long, default_value_t = 0)]
        power: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum GammaCmd {
    /// Builds the Γ-transform of a Chern character and extracts it back.
    Roundtrip {
        #[command(flatten)]
        ambient: AmbientArgs,
        /// Total Chern character as a class; overrides `--bundle`.
        #[arg(long)]
        class: Option<String>,
        #[arg(long, default_value = "O")]
        bundle: String,
        /// Multiplier on the ζ(2) term of Γ.
        #[arg(long)]
        zeta2: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FlopCmd {
    /// Dimensions of the flop datum.
    Datum {
        #[command(flatten)]
        ambient: AmbientArgs,
    },
    /// Semismall inequality, rank bound and crepancy.
    Checks {
        #[command(flatten)]
        ambient: AmbientArgs,
    },
}

/// Subcommand paths and the library operations each one exposes.
pub const COMMAND_TABLE: &[(&str, &[&str])] = &[
    ("bwb", &["bwb::cohomology_of", "bwb::euler_characteristic", "bundles::normalize"]),
    ("vanish", &["bwb::verify_vanishing", "bwb::verify_vanishing_with"]),
    ("schubert mult", &["schubert::product"]),
    ("schubert integrate", &["schubert::integrate"]),
    ("schubert chern", &["schubert::chern_character", "schubert::total_chern_class", "schubert::hrr_euler"]),
    ("quantum mult", &["quantum::quantum_product"]),
    ("quantum semisimple", &["quantum::semisimplicity_certificate", "quantum::multiplication_matrix"]),
    ("quantum assoc", &["quantum::associativity_check"]),
    ("localmodel presentation", &["localmodel::presentation"]),
    ("localmodel betti", &["localmodel::poincare_polynomial_bar"]),
    ("localmodel compare", &["localmodel::compare_sides"]),
    ("localmodel kirwan", &["localmodel::kirwan"]),
    ("gamma roundtrip", &["gamma::gamma_class", "gamma::psi_transform", "gamma::extract_ch"]),
    ("flop datum", &["localmodel::flop_datum"]),
    (
        "flop checks",
        &["schubert::semismall_check", "schubert::k_equivalence_rank_check", "schubert::crepancy_check"],
    ),
];

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    command: &'static str,
    json: Value,
    text: String,
    pass: bool,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(Error::InvalidArgument("--jobs must be at least 1".into())),
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(|| execute(&cli.command)),
            Err(e) => Err(Error::InvalidArgument(e.to_string())),
        },
        None => execute(&cli.command),
    };
    match result {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Json => render_json(&report),
                Format::Text => {
                    let verdict = if report.pass { "PASS" } else { "FAIL" };
                    format!("{}\n{}: {}\n", report.text.trim_end(), report.command, verdict)
                }
            };
            Outcome {
                code: if report.pass { EXIT_PASS } else { EXIT_CHECK_FAILED },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn render_json(report: &Report) -> String {
    let mut body = match stringify_numbers(report.json.clone()) {
        Value::Object(map) => map,
        other => {
            let mut m = serde_json::Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    body.insert("schema".into(), json!(SCHEMA));
    body.insert("command".into(), json!(report.command));
    body.insert("pass".into(), json!(report.pass));
    let mut out = serde_json::to_string_pretty(&Value::Object(body)).unwrap();
    out.push('\n');
    out
}

/// Integers become decimal strings so every number in a report is exact text.
fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(xs) => Value::Array(xs.into_iter().map(stringify_numbers).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}

fn parse_bundle(s: &str) -> sgflop::Result<BundleExpr> {
    BundleExpr::from_str(s)
}

fn parse_partition(s: &str) -> sgflop::Result<Partition> {
    Partition::from_str(s)
}

fn parse_rational(s: &str) -> sgflop::Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::InvalidArgument(format!("not a rational number: {s:?}")))
}

fn parse_side(s: &str) -> sgflop::Result<Side> {
    Side::from_str(s)
}

/// `"2,1=3/2; 1=-1; 0"`: `partition[=coefficient]` terms separated by `;`.
pub fn parse_class(ambient: Ambient, s: &str) -> sgflop::Result<CohClass> {
    let mut terms = Vec::new();
    for term in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (p, c) = match term.split_once('=') {
            Some((p, c)) => (p, parse_rational(c)?),
            None => (term, Rational::one()),
        };
        terms.push((parse_partition(p)?, c));
    }
    CohClass::from_terms(ambient, terms)
}

fn execute(command: &Command) -> sgflop::Result<Report> {
    match command {
        Command::Bwb { ambient, bundle } => cmd_bwb(ambient.ambient()?, bundle),
        Command::Vanish { ambient, kmax, control } => cmd_vanish(ambient.ambient()?, *kmax, *control),
        Command::Schubert(c) => match c {
            SchubertCmd::Mult { ambient, a, b } => {
                let amb = ambient.ambient()?;
                let x = CohClass::schubert(amb, parse_partition(a)?)?;
                let y = CohClass::schubert(amb, parse_partition(b)?)?;
                let p = schubert::product(&x, &y)?;
                Ok(Report {
                    command: "schubert mult",
                    text: format!("σ[{a}] · σ[{b}] = {p}"),
                    json: json!({ "ambient": amb, "a": a, "b": b, "product": p }),
                    pass: true,
                })
            }
            SchubertCmd::Integrate { ambient, class } => {
                let amb = ambient.ambient()?;
                let c = parse_class(amb, class)?;
                let v = schubert::integrate(&c);
                Ok(Report {
                    command: "schubert integrate",
                    text: format!("∫ {c} = {v}"),
                    json: json!({ "ambient": amb, "class": c, "integral": v.to_string() }),
                    pass: true,
                })
            }
            SchubertCmd::Chern { ambient, bundle } => {
                let amb = ambient.ambient()?;
                let e = parse_bundle(bundle)?;
                let ch = schubert::chern_character(amb, &e, amb.dim() as u32)?;
                let c = schubert::total_chern_class(&ch);
                let chi = schubert::hrr_euler(amb, &e)?;
                Ok(Report {
                    command: "schubert chern",
                    text: format!("ch = {ch}\nc = {c}\nχ = {chi}"),
                    json: json!({
                        "ambient": amb,
                        "bundle": e.to_string(),
                        "rank": e.rank(amb),
                        "ch": ch,
                        "chern": c,
                        "euler": chi,
                    }),
                    pass: true,
                })
            }
        },
        Command::Quantum(c) => match c {
            QuantumCmd::Mult { ambient, a, b } => {
                let (pa, pb) = (parse_partition(a)?, parse_partition(b)?);
                let p = quantum::quantum_product(&pa, &pb, ambient.r, ambient.n)?;
                Ok(Report {
                    command: "quantum mult",
                    text: format!("σ[{a}] * σ[{b}] = {p}"),
                    json: json!({ "ambient": p.ambient(), "a": a, "b": b, "product": p }),
                    pass: true,
                })
            }
            QuantumCmd::Semisimple { ambient, q0 } => {
                let q0 = parse_rational(q0)?;
                let cert = quantum::semisimplicity_certificate(ambient.r, ambient.n, &q0)?;
                let w = cert.witness();
                let text = format!(
                    "{} at q = {}: {:?}\nelement: {}\nchar poly: {}\ngcd(p, p'): {}\nσ_1 squarefree: {}",
                    cert.ambient, cert.q0, cert.verdict, w.element, w.char_poly, w.gcd, cert.sigma1_squarefree
                );
                Ok(Report {
                    command: "quantum semisimple",
                    pass: cert.holds(),
                    text,
                    json: serde_json::to_value(&cert).unwrap(),
                })
            }
            QuantumCmd::Assoc { ambient } => {
                let rep = quantum::associativity_check(ambient.r, ambient.n)?;
                Ok(Report {
                    command: "quantum assoc",
                    text: format!("{}: {} triples, {} failures", rep.ambient, rep.triples, rep.failures.len()),
                    pass: rep.holds,
                    json: serde_json::to_value(&rep).unwrap(),
                })
            }
        },
        Command::Localmodel(c) => match c {
            LocalModelCmd::Presentation { ambient, side } => {
                let pres = localmodel::presentation(ambient.ambient()?, parse_side(side)?);
                let text = pres
                    .coefficients
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("c_{i} = {c}"))
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok(Report {
                    command: "localmodel presentation",
                    text,
                    json: serde_json::to_value(&pres).unwrap(),
                    pass: true,
                })
            }
            LocalModelCmd::Betti { ambient, side } => {
                let amb = ambient.ambient()?;
                let side = parse_side(side)?;
                let p = localmodel::poincare_polynomial_bar(amb, side);
                Ok(Report {
                    command: "localmodel betti",
                    text: format!("P_{side}(t) = {p}"),
                    json: json!({ "ambient": amb, "side": side, "poincare": p, "total": p.total() }),
                    pass: true,
                })
            }
            LocalModelCmd::Compare { ambient } => {
                let cmp = localmodel::compare_sides(ambient.ambient()?);
                Ok(Report {
                    command: "localmodel compare",
                    text: format!(
                        "P_minus(t) = {}\nP_plus(t) = {}\nequal: {}",
                        cmp.minus, cmp.plus, cmp.equal
                    ),
                    pass: cmp.equal,
                    json: serde_json::to_value(&cmp).unwrap(),
                })
            }
            LocalModelCmd::Kirwan {
                ambient,
                side,
                class,
                power,
            } => {
                let amb = ambient.ambient()?;
                let pres = localmodel::presentation(amb, parse_side(side)?);
                let base = if class.trim() == "0" {
                    CohClass::one(amb)
                } else {
                    parse_class(amb, class)?
                };
                let g = EquivariantPolynomial::monomial(base, *power);
                let image = localmodel::kirwan(&g, &pres)?;
                Ok(Report {
                    command: "localmodel kirwan",
                    text: format!("κ(({class})·λ^{power}) = {image}"),
                    json: json!({ "ambient": amb, "side": pres.side, "power": power, "image": image }),
                    pass: true,
                })
            }
        },
        Command::Gamma(GammaCmd::Roundtrip {
            ambient,
            class,
            bundle,
            zeta2,
        }) => {
            let amb = ambient.ambient()?;
            let alpha = match class {
                Some(c) => ChVector::from_class(&parse_class(amb, c)?),
                None => ChVector::of_bundle(amb, &parse_bundle(bundle)?)?,
            };
            let weights = match zeta2 {
                Some(z) => ZetaWeights::default().with(2, parse_rational(z)?),
                None => ZetaWeights::default(),
            };
            let series = gamma::psi_transform_with(&alpha, &weights);
            let back = gamma::extract_ch(&series)?;
            let pass = back == alpha && gamma::degree_balanced(&series);
            let gamma = gamma::gamma_class_with(amb, &weights);
            Ok(Report {
                command: "gamma roundtrip",
                text: format!(
                    "Γ = {gamma}\nch(α) = {}\nseries terms: {}\nextracted = {}\nround trip: {}",
                    alpha.total(),
                    series.terms().len(),
                    back.total(),
                    back == alpha
                ),
                json: json!({
                    "ambient": amb,
                    "gamma": gamma,
                    "input": alpha,
                    "series": series,
                    "extracted": back,
                }),
                pass,
            })
        }
        Command::Flop(c) => match c {
            FlopCmd::Datum { ambient } => {
                let d = localmodel::flop_datum(ambient.r, ambient.n)?;
                Ok(Report {
                    command: "flop datum",
                    text: format!(
                        "dim Z = {}\nnormal rank = {}\ndim X = {}",
                        d.dim_z(),
                        d.normal_rank(),
                        d.dim_x()
                    ),
                    json: serde_json::to_value(d).unwrap(),
                    pass: true,
                })
            }
            FlopCmd::Checks { ambient } => {
                let d = FlopDatum::new(ambient.r, ambient.n)?;
                let s = semismall_check(&d);
                let k = k_equivalence_rank_check(&d);
                let c = crepancy_check(d.ambient());
                let pass = s.holds && k.holds && c.holds;
                Ok(Report {
                    command: "flop checks",
                    text: format!(
                        "semismall: {} <= {}: {}\nrank: {} > {}: {}\ncrepancy: c1(T) + c1(N) = {}: {}",
                        s.lhs, s.rhs, s.holds, k.normal_rank, k.bound, k.holds, c.sum, c.holds
                    ),
                    json: json!({ "datum": d, "semismall": s, "rank": k, "crepancy": c }),
                    pass,
                })
            }
        },
    }
}

fn cohomology_json(h: &BTreeMap<usize, u64>) -> Value {
    Value::Object(h.iter().map(|(k, v)| (k.to_string(), json!(v.to_string()))).collect())
}

fn cmd_bwb(ambient: Ambient, bundle: &str) -> sgflop::Result<Report> {
    let e = parse_bundle(bundle)?;
    let summands = normalize(ambient, &e)?;
    let h = bwb::cohomology_of(&summands);
    let chi = bwb::euler_characteristic(ambient, &e)?;
    let hs = h
        .iter()
        .map(|(k, v)| format!("h^{k} = {v}"))
        .collect::<Vec<_>>()
        .join("\n");
    let text = format!(
        "{ambient}, E = {e}, rank {}\n{}\n{}\nχ = {chi}",
        summands.rank(),
        summands.to_text(),
        if hs.is_empty() { "all cohomology vanishes".to_string() } else { hs }
    );
    Ok(Report {
        command: "bwb",
        text,
        json: json!({
            "ambient": ambient,
            "bundle": e.to_string(),
            "summands": summands.to_json(),
            "cohomology": cohomology_json(&h),
            "euler": chi,
        }),
        pass: true,
    })
}

fn cmd_vanish(ambient: Ambient, kmax: u32, control: bool) -> sgflop::Result<Report> {
    let conormal = if control { Conormal::DualControl } else { Conormal::Standard };
    let rep = bwb::verify_vanishing_with(ambient, kmax, conormal)?;
    let s = &rep.summary;
    let mut text = format!(
        "{ambient}, k <= {kmax}, {} records ({} with last weight -1)\ndirect: {}\nvanishing1: {}\nvanishing2: {}\nvanishing3: {}",
        rep.checks.len(),
        s.boundary_checks,
        s.direct,
        s.vanishing1,
        s.vanishing2,
        s.vanishing3
    );
    for f in rep.failures() {
        let comp = f
            .composition
            .as_ref()
            .map(|c| format!(" composition={c:?}"))
            .unwrap_or_default();
        text.push_str(&format!("\nfailure: {:?} k={}{comp} {} h1={}", f.family, f.k, f.summand, f.h1_dim));
    }
    Ok(Report {
        command: "vanish",
        pass: rep.all_pass,
        text,
        json: serde_json::to_value(&rep).unwrap(),
    })
}
