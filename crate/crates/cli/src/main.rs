use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use arcalg::algebra::{AlgebraElement, ArcAlgebra};
use arcalg::bimodule::Bimodule;
use arcalg::braid::{akh, braid_bimodule_complex, BraidWord};
use arcalg::field::{Field, FieldChoice, PrimeField, Rationals};
use arcalg::hh::{global_dimension, relative_bar_hochschild, BimoduleComplex};
use arcalg::khovanov::{jones, kh_cube, ss_check};
use arcalg::modules::modules_report;
use arcalg::verify::{run_suite, Limits, Suite};
use arcalg::Error;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "arcalg", version, about = "Extended arc algebras, Hochschild homology and annular Khovanov homology")]
struct Cli {
    /// Coefficient field: Q, or a prime such as 2 or p:7.
    #[arg(long, global = true, default_value = "Q")]
    field: FieldChoice,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// K(n,m)
    K,
    /// H(m) = H_{m,2m}
    H,
    /// The compact subalgebra H_{n,m}
    Compact,
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, value_enum, default_value_t = Kind::K)]
    kind: Kind,
}

impl AlgebraArgs {
    fn build(&self) -> arcalg::Result<ArcAlgebra> {
        match self.kind {
            Kind::K => ArcAlgebra::k(self.n, self.m),
            Kind::H => ArcAlgebra::h(self.m),
            Kind::Compact => ArcAlgebra::compact(self.n, self.m),
        }
    }
}

#[derive(Args)]
struct BraidArgs {
    /// Whitespace-separated signed generators, e.g. "1 1 -2".
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    word: String,
    /// Number of strands; defaults to one more than the largest generator.
    #[arg(long)]
    strands: Option<usize>,
}

impl BraidArgs {
    fn build(&self) -> anyhow::Result<BraidWord> {
        let strands = match self.strands {
            Some(s) => s,
            None => {
                let top = self
                    .word
                    .split_whitespace()
                    .map(|t| t.parse::<i64>().map(|x| x.unsigned_abs() as usize))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| Error::Parse(format!("bad braid word {:?}", self.word)))?
                    .into_iter()
                    .max()
                    .unwrap_or(0);
                top + 1
            }
        };
        Ok(BraidWord::parse(strands, &self.word)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Total and graded dimension.
    Dim(AlgebraArgs),
    /// Product of two elements given as JSON lists of [coefficient, "cup:mid:cap"].
    Mult {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Graded dimensions of P(λ), V(λ), L(λ) and the decomposition data.
    Modules(AlgebraArgs),
    /// Hochschild homology of K(n,m) with coefficients in Δ or a braid bimodule complex.
    Hh {
        /// Sector j of the algebra K(j, strands) for braid coefficients.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Number of points; the strand count for braid coefficients.
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// `diagonal` or `braid:<word>`.
        #[arg(long, default_value = "diagonal", allow_hyphen_values = true)]
        coeff: String,
        /// Bar depth. Without it the global dimension fixes a depth certifying every degree.
        #[arg(long)]
        max_degree: Option<usize>,
        /// Fail unless every degree where homology can be nonzero is certified.
        #[arg(long)]
        require_complete: bool,
    },
    /// Khovanov homology of the braid closure.
    Kh(BraidArgs),
    /// Jones polynomial of the braid closure.
    Jones(BraidArgs),
    /// Annular Khovanov homology as Hochschild homology over every sector.
    Akh {
        #[command(flatten)]
        braid: BraidArgs,
        /// Bar depth for every sector; defaults to a depth certifying every degree.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Rank and parity constraints between AKh and Kh.
    SsCheck(BraidArgs),
    /// Runs a verification suite; exit status 1 if any check fails.
    Verify {
        #[arg(long, default_value = "quick")]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        m_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Randomized samples for algebras above the exhaustive threshold.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

/// Serializable result plus whether the requested checks passed.
struct Outcome {
    value: Value,
    pass: bool,
}

fn ok<T: Serialize>(v: &T) -> anyhow::Result<Outcome> {
    Ok(Outcome { value: serde_json::to_value(v)?, pass: true })
}

fn parse_element(alg: &ArcAlgebra, s: &str) -> anyhow::Result<AlgebraElement> {
    let raw: Vec<(Value, String)> = serde_json::from_str(s).context("element must be a JSON list of [coefficient, diagram]")?;
    let pairs: Vec<(String, String)> = raw
        .into_iter()
        .map(|(c, d)| match c {
            Value::String(s) => Ok((s, d)),
            Value::Number(n) => Ok((n.to_string(), d)),
            other => Err(Error::Parse(format!("bad coefficient {other}"))),
        })
        .collect::<Result<_, _>>()?;
    Ok(AlgebraElement::from_pairs(alg, &pairs)?)
}

fn hh<F: Field>(field: &F, n: usize, m: usize, coeff: &str, max_degree: Option<usize>, require_complete: bool) -> anyhow::Result<Outcome> {
    let alg = ArcAlgebra::k(n, m)?;
    let (complex, length) = match coeff {
        "diagonal" => (None, 0),
        c => match c.strip_prefix("braid:") {
            Some(w) => {
                let word = BraidWord::parse(m, w)?;
                let bc = braid_bimodule_complex(&alg, field, &word)?;
                let len = bc.complex.length();
                (Some(bc.complex), len)
            }
            None => return Err(Error::Parse(format!("unknown coefficients {c:?}")).into()),
        },
    };
    // Completeness at depth d needs gldim ≤ d − 1, so a larger resolution is never useful.
    let gldim = match max_degree {
        None => Some(global_dimension(&alg, field, 4 * m + 4)?),
        Some(d) if require_complete => Some(global_dimension(&alg, field, d.saturating_sub(1))?),
        Some(_) => None,
    };
    let depth = max_degree.unwrap_or_else(|| gldim.unwrap_or(0) + length + 1);
    let complex = complex.unwrap_or_else(|| BimoduleComplex::single(Bimodule::diagonal(&alg, field)));
    let r = relative_bar_hochschild(&alg, field, &complex, depth, gldim)?;
    let mut value = serde_json::to_value(&r)?;
    value["coefficients"] = json!(coeff);
    value["total"] = json!(r.total());
    if let Some(g) = gldim {
        value["global_dimension"] = json!(g);
    }
    if require_complete && !r.complete {
        bail!(Error::Truncation(format!(
            "bar depth {depth} certifies degrees {}..={} only",
            r.certified.0, r.certified.1
        )));
    }
    Ok(Outcome { value, pass: true })
}

fn run_with<F: Field>(field: &F, command: &Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Dim(a) => {
            let alg = a.build()?;
            ok(&json!({
                "algebra": alg.kind().to_string(),
                "total": alg.dim(),
                "graded": alg.graded_dimension(None)?,
            }))
        }
        Command::Mult { alg, x, y } => {
            let alg = alg.build()?;
            let (x, y) = (parse_element(&alg, x)?, parse_element(&alg, y)?);
            let p = alg.multiply(&x, &y)?;
            ok(&json!({ "algebra": alg.kind().to_string(), "product": p.to_pairs(), "degrees": p.degrees() }))
        }
        Command::Modules(a) => ok(&modules_report(&a.build()?)?),
        Command::Hh { n, m, coeff, max_degree, require_complete } => hh(field, *n, *m, coeff, *max_degree, *require_complete),
        Command::Kh(b) => ok(&kh_cube(field, &b.build()?)?),
        Command::Jones(b) => {
            let w = b.build()?;
            ok(&json!({ "word": w.to_string(), "strands": w.strands(), "jones": jones(&w) }))
        }
        Command::Akh { braid, max_degree } => ok(&akh(field, &braid.build()?, *max_degree)?),
        Command::SsCheck(b) => {
            let w = b.build()?;
            let r = ss_check(field, &w, &[])?;
            Ok(Outcome { pass: r.pass(), value: serde_json::to_value(&r)? })
        }
        Command::Verify { suite, n_max, m_max, seed, samples } => {
            let limits = Limits { n_max: *n_max, m_max: *m_max, seed: *seed, samples: *samples, ..Limits::default() };
            let r = run_suite(*suite, limits)?;
            Ok(Outcome { pass: r.pass(), value: serde_json::to_value(&r)? })
        }
    }
}

/// `path = value` lines for the text output mode.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&join(prefix, k), v, out)),
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            a.iter().enumerate().for_each(|(i, v)| flatten(&join(prefix, &i.to_string()), v, out))
        }
        other => out.push(format!("{prefix} = {other}")),
    }
}

fn join(prefix: &str, k: &str) -> String {
    if prefix.is_empty() {
        k.to_string()
    } else {
        format!("{prefix}.{k}")
    }
}

fn usage_error(e: &anyhow::Error) -> bool {
    matches!(
        e.downcast_ref::<Error>(),
        Some(Error::InvalidParameters(_) | Error::Parse(_) | Error::NonCompact(_) | Error::NotOriented(_))
    ) || e.downcast_ref::<serde_json::Error>().is_some()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.field {
        FieldChoice::Rationals => run_with(&Rationals, &cli.command),
        FieldChoice::Prime(p) => PrimeField::new(p).map_err(Into::into).and_then(|f| run_with(&f, &cli.command)),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(if usage_error(&e) { 2 } else { 1 });
        }
    };
    let mut value = outcome.value;
    if let Value::Object(m) = &mut value {
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        m.insert("pass".into(), json!(outcome.pass));
    }
    match cli.output {
        Output::Json => println!("{value}"),
        Output::Text => {
            let mut lines = Vec::new();
            flatten("", &value, &mut lines);
            println!("{}", lines.join("\n"));
        }
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
