mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use moduli_core::betti::{betti_numbers, poincare, Method, ModuliParams};
use moduli_core::euler::{dirichlet_beta_coeff, EulerTable};
use moduli_core::exact::UniPoly;
use moduli_core::orthopoly::{
    cf_vs_own_moments, gram_schmidt_ortho, three_term_coeffs, MomentSequence,
};
use moduli_core::relations::{
    hilbert_series_quotient, pairing_ab, relation_hankel, relation_recurrence, relation_set,
    symplectic_volume, ABPoly, QuotientOptions,
};
use moduli_core::verify::{verify_suite, Scope, VerifyOptions, EULER_MAX};
use moduli_core::Error;

#[derive(Parser)]
#[command(
    name = "moduli",
    version,
    about = "Exact invariants of the parabolic moduli spaces R_{g,n}"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum BettiMethod {
    Strata,
    Closed,
    RecN,
    RecG,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationMethod {
    Hankel,
    Recurrence,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Moments {
    Euler,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Quick,
    Full,
}

fn odd(s: &str) -> Result<u32, String> {
    let n: u32 = s
        .parse()
        .map_err(|_| format!("expected a natural number, got {s:?}"))?;
    if n.is_multiple_of(2) {
        return Err(format!("n must be odd (1, 3, 5, ...), got {n}"));
    }
    Ok(n)
}

#[derive(Subcommand)]
enum Command {
    /// Signed Euler numbers E_0..E_max
    Euler {
        #[arg(long)]
        max: usize,
    },
    /// Poincaré polynomial of R_{g,n}
    Betti {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, value_parser = odd)]
        points: u32,
        #[arg(long, value_enum, default_value = "all")]
        method: BettiMethod,
    },
    /// Orthogonal polynomials and J-fraction data of a moment sequence
    Orthopoly {
        #[arg(long, value_enum, default_value = "euler")]
        moments: Moments,
        #[arg(long)]
        depth: usize,
    },
    /// Genus-0 relation polynomial r_{0,n}
    Relations {
        #[arg(long, value_parser = odd)]
        points: u32,
        #[arg(long, value_enum, default_value = "both")]
        method: RelationMethod,
        /// Emit every R^J = r_{0,n-2|J|} δ^J
        #[arg(long)]
        full: bool,
    },
    /// Degreewise dimensions of the presented genus-0 ring
    Hilbert {
        #[arg(long, value_parser = odd)]
        points: u32,
        /// Allow n above the default size limit
        #[arg(long)]
        force: bool,
    },
    /// Symplectic volume of R_{g,n}
    Volume {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, value_parser = odd)]
        points: u32,
    },
    /// Top pairing <α^r β^s, R_{g,n}>
    Pairing {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, value_parser = odd)]
        points: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
    },
    /// Run the cross-validation suite
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        scope: ScopeArg,
        #[arg(long, hide = true)]
        corrupt_euler: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OutOfDomain(_)
            | Error::DegreeMismatch { .. }
            | Error::ResourceLimit(_)
            | Error::InsufficientMoments { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

/// Output plus whether every internal comparison held.
type Outcome = Result<(Value, Option<String>), Failure>;

fn obj(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(
        pairs
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect::<Map<_, _>>(),
    )
}

fn poly_json(p: &UniPoly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

fn ab_json(p: &ABPoly) -> Value {
    let terms = p
        .terms()
        .map(|(a, b, c)| {
            obj(vec![
                ("a", json!(a)),
                ("b", json!(b)),
                ("coeff", json!(c.to_string())),
            ])
        })
        .collect();
    obj(vec![
        ("display", json!(p.to_string())),
        ("terms", Value::Array(terms)),
    ])
}

fn method_of(m: BettiMethod) -> Option<Method> {
    match m {
        BettiMethod::Strata => Some(Method::Strata),
        BettiMethod::Closed => Some(Method::Closed),
        BettiMethod::RecN => Some(Method::RecursionN),
        BettiMethod::RecG => Some(Method::RecursionG),
        BettiMethod::All => None,
    }
}

fn betti(genus: u32, points: u32, method: BettiMethod) -> Outcome {
    let p = ModuliParams::new(genus, points)?;
    let methods: Vec<Method> = method_of(method).map_or(Method::ALL.to_vec(), |m| vec![m]);
    let mut polys = Vec::new();
    for m in &methods {
        polys.push(poincare(&p, *m)?);
    }
    let coefficients = betti_numbers(&polys[0])?;
    let mut fields = vec![
        ("genus", json!(genus)),
        ("points", json!(points)),
        ("dim", json!(p.dim())),
        ("coefficients", json!(coefficients)),
        ("polynomial", json!(polys[0].to_string())),
    ];
    let mut failure = None;
    if methods.len() > 1 {
        let agree = polys.iter().all(|q| q == &polys[0]);
        if !agree {
            let bad = methods
                .iter()
                .zip(&polys)
                .find(|(_, q)| *q != &polys[0])
                .unwrap();
            failure = Some(format!("method {} disagrees: {}", bad.0.name(), bad.1));
        }
        fields.push((
            "methods",
            json!(methods.iter().map(|m| m.name()).collect::<Vec<_>>()),
        ));
        fields.push(("methods_agree", json!(agree)));
    } else {
        fields.push(("method", json!(methods[0].name())));
    }
    Ok((obj(fields), failure))
}

fn euler(max: usize) -> Outcome {
    let t = EulerTable::new(max);
    let values: Vec<String> = t.values().iter().map(|v| v.to_string()).collect();
    let beta: Vec<Value> = (0..=max / 2)
        .map(|l| {
            let c = dirichlet_beta_coeff(l, &t);
            obj(vec![
                ("s", json!(2 * l + 1)),
                ("pi_coeff", json!(c.coeff.to_string())),
            ])
        })
        .collect();
    Ok((
        obj(vec![
            ("max", json!(max)),
            ("euler", json!(values)),
            ("dirichlet_beta", Value::Array(beta)),
        ]),
        None,
    ))
}

fn orthopoly(depth: usize) -> Outcome {
    let t = EulerTable::new(2 * depth + 2);
    let ms = MomentSequence::euler(&t);
    let ops = gram_schmidt_ortho(&ms, depth)?;
    let (alphas, betas) = three_term_coeffs(&ops)?;
    let cf = cf_vs_own_moments(&ms, depth)?;
    let strings = |v: &[moduli_core::exact::Rational]| {
        json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    };
    Ok((
        obj(vec![
            ("moments", json!("euler")),
            ("depth", json!(depth)),
            ("alphas", strings(&alphas)),
            ("betas", strings(&betas)),
            (
                "polynomials",
                Value::Array(ops.polys.iter().map(poly_json).collect()),
            ),
            ("cf_matched_through", json!(cf.matched_through)),
        ]),
        None,
    ))
}

fn relations(points: u32, method: RelationMethod, full: bool) -> Outcome {
    let t = EulerTable::new(2 * points as usize + 2);
    let mut fields = vec![("points", json!(points))];
    let mut failure = None;
    let r = match method {
        RelationMethod::Recurrence => relation_recurrence(points)?,
        RelationMethod::Hankel => relation_hankel(points, &t)?,
        RelationMethod::Both => {
            let a = relation_recurrence(points)?;
            let b = relation_hankel(points, &t)?;
            if a != b {
                failure = Some(format!("hankel gives {b}, recurrence gives {a}"));
            }
            fields.push(("methods_agree", json!(a == b)));
            a
        }
    };
    let name = match method {
        RelationMethod::Hankel => "hankel",
        RelationMethod::Recurrence => "recurrence",
        RelationMethod::Both => "both",
    };
    fields.push(("method", json!(name)));
    fields.push(("relation", ab_json(&r)));
    if full {
        let set = relation_set(points)?;
        let gens = set
            .generators
            .iter()
            .map(|g| {
                let mut v = ab_json(&g.poly);
                v["deltas"] = json!(g.deltas());
                v
            })
            .collect();
        fields.push(("generators", Value::Array(gens)));
    }
    Ok((obj(fields), failure))
}

fn hilbert(points: u32, force: bool) -> Outcome {
    let p = ModuliParams::new(0, points)?;
    let top = p.dim() as u32;
    let opts = QuotientOptions {
        force,
        ..QuotientOptions::default()
    };
    let dims = hilbert_series_quotient(points, top, &opts)?;
    let betti = betti_numbers(&poincare(&p, Method::Closed)?)?;
    let matches = dims == betti;
    let failure =
        (!matches).then(|| format!("quotient {dims:?} differs from Betti numbers {betti:?}"));
    Ok((
        obj(vec![
            ("points", json!(points)),
            ("dimensions", json!(dims)),
            ("betti", json!(betti)),
            ("matches_betti", json!(matches)),
        ]),
        failure,
    ))
}

fn euler_for(idx: i64) -> EulerTable {
    EulerTable::new(idx.max(0) as usize)
}

fn volume(genus: u32, points: u32) -> Outcome {
    let t = euler_for(2 * genus as i64 + points as i64 - 3);
    let v = symplectic_volume(genus, points, &t)?;
    Ok((
        obj(vec![
            ("genus", json!(genus)),
            ("points", json!(points)),
            ("volume", json!(v.to_string())),
        ]),
        None,
    ))
}

fn pairing(genus: u32, points: u32, r: u32, s: u32) -> Outcome {
    let t = euler_for(r as i64 - genus as i64);
    let v = pairing_ab(genus, points, r, s, &t)?;
    Ok((
        obj(vec![
            ("genus", json!(genus)),
            ("points", json!(points)),
            ("r", json!(r)),
            ("s", json!(s)),
            ("pairing", json!(v.to_string())),
        ]),
        None,
    ))
}

fn verify(scope: ScopeArg, corrupt: Option<usize>) -> Outcome {
    let scope = match scope {
        ScopeArg::Quick => Scope::Quick,
        ScopeArg::Full => Scope::Full,
    };
    let corrupt_euler = match corrupt {
        Some(j) if j > EULER_MAX => {
            return Err(Failure::Usage(format!(
                "--corrupt-euler index must be 0..={EULER_MAX}"
            )))
        }
        Some(j) => Some((j, EulerTable::new(EULER_MAX).get(j) + BigInt::from(1))),
        None => None,
    };
    let report = verify_suite(&VerifyOptions {
        scope,
        corrupt_euler,
    });
    let checks = report
        .checks
        .iter()
        .map(|c| {
            obj(vec![
                ("name", json!(c.name)),
                ("status", json!(if c.passed { "pass" } else { "fail" })),
                ("detail", json!(c.detail)),
            ])
        })
        .collect();
    let name = match scope {
        Scope::Quick => "quick",
        Scope::Full => "full",
    };
    let failure = report
        .first_failure()
        .map(|c| format!("first failing check: {}: {}", c.name, c.detail));
    Ok((
        obj(vec![
            ("scope", json!(name)),
            (
                "overall",
                json!(if report.overall { "pass" } else { "fail" }),
            ),
            ("checks", Value::Array(checks)),
        ]),
        failure,
    ))
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Euler { max } => euler(max),
        Command::Betti {
            genus,
            points,
            method,
        } => betti(genus, points, method),
        Command::Orthopoly {
            moments: Moments::Euler,
            depth,
        } => orthopoly(depth),
        Command::Relations {
            points,
            method,
            full,
        } => relations(points, method, full),
        Command::Hilbert { points, force } => hilbert(points, force),
        Command::Volume { genus, points } => volume(genus, points),
        Command::Pairing {
            genus,
            points,
            r,
            s,
        } => pairing(genus, points, r, s),
        Command::Verify {
            scope,
            corrupt_euler,
        } => verify(scope, corrupt_euler),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((value, failure)) => {
            let text = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&value).expect("JSON values serialize")
                }
                Format::Table => render::table(&value),
            };
            println!("{text}");
            match failure {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    eprintln!("moduli: {msg}");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("moduli: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("moduli: {msg}");
            ExitCode::from(1)
        }
    }
}
