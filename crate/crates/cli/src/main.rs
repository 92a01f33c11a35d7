//! Command-line front end. Results go to stdout as JSON (or plain text for
//! `catalan` and `verify-suite`); diagnostics go to stderr.
//!
//! Exit status: 0 on success, 2 for invalid input, 1 for internal failures.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use leibniz_lab::classification::{
    classify, default_f2_samples, engel_agrees, f1_representative, f2_representatives,
    f3_representatives, RepresentativeTag,
};
use leibniz_lab::combinatorics::{catalan_convolution_sides, p_catalan};
use leibniz_lab::derivations::{derivation_space, is_characteristically_nilpotent, WitnessOptions};
use leibniz_lab::families::{build_example, FamilyParams};
use leibniz_lab::isomorphism::{
    transform_f1, transform_f2, transform_f3, verify_criterion_f1, verify_criterion_f2,
    verify_criterion_f3, CriterionCheck,
};
use leibniz_lab::json::{
    algebra_to_json, change_f1_from_json, change_f2_from_json, change_f3_from_json,
    derivation_space_to_json, load_algebra, matrix_to_json, params_from_json, params_to_json,
    parse_text, scalar_from_json, scalar_to_json, tag_to_json, to_pretty, verdict_to_json,
};
use leibniz_lab::suite::{run_all, SuiteConfig};
use leibniz_lab::{Algebra, Error, Scalar};

#[derive(Parser)]
#[command(
    name = "leibniz-lab",
    version,
    about = "Exact computations with filiform Leibniz algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure constants of a family member (or the 6-dimensional example).
    Build {
        #[command(flatten)]
        params: ParamsArg,
        /// Emit the 6-dimensional example table instead of reading parameters.
        #[arg(long, conflicts_with = "params")]
        example: bool,
    },
    /// Check the Leibniz identity on basis triples.
    Leibniz(AlgebraArg),
    /// Dimensions of the lower central series.
    Lcs(AlgebraArg),
    /// A basis of the derivation algebra.
    Derive(AlgebraArg),
    /// Decide whether every derivation is nilpotent.
    CharNilpotent {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        witness: WitnessArgs,
    },
    /// Representative class of a family member.
    Classify {
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        witness: WitnessArgs,
    },
    /// Non-characteristically nilpotent representatives of a family.
    Representatives {
        #[arg(long)]
        family: u8,
        #[arg(long)]
        n: usize,
        /// Sample values of the free parameter for even n in the second family
        /// (comma separated, e.g. "0,1,1/2").
        #[arg(long, value_delimiter = ',')]
        samples: Option<Vec<String>>,
    },
    /// Fuss-Catalan number C^p_n, or a convolution table with --table.
    Catalan {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        n: i64,
        /// Print the convolution check for t = 1..=n instead.
        #[arg(long)]
        table: bool,
    },
    /// Transform parameters under a basis change.
    IsoApply(IsoArgs),
    /// Transform parameters and construct the isomorphism explicitly.
    IsoVerify(IsoArgs),
    /// `iso apply` / `iso verify` spellings of the two commands above.
    Iso {
        #[command(subcommand)]
        action: IsoAction,
    },
    /// Run the verification batteries and print a pass/fail table.
    VerifySuite {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        witness_range: i64,
    },
}

#[derive(Subcommand)]
enum IsoAction {
    Apply(IsoArgs),
    Verify(IsoArgs),
}

#[derive(Args)]
struct ParamsArg {
    /// Expected family; must match the "family" key of the parameters.
    #[arg(long)]
    family: Option<u8>,
    /// Parameters JSON file ("-" for stdin).
    #[arg(long)]
    params: Option<PathBuf>,
}

#[derive(Args)]
struct AlgebraArg {
    /// Algebra JSON file ("-" for stdin).
    #[arg(long, conflicts_with = "params")]
    algebra: Option<PathBuf>,
    #[command(flatten)]
    params: ParamsArg,
}

#[derive(Args)]
struct WitnessArgs {
    /// Integer coefficient range of the witness scan.
    #[arg(long)]
    witness_range: Option<i64>,
    /// Maximum number of combinations tried by the witness scan.
    #[arg(long)]
    max_candidates: Option<usize>,
}

#[derive(Args)]
struct IsoArgs {
    #[command(flatten)]
    params: ParamsArg,
    /// Basis change as JSON, e.g. '{"A":"2","B":"0"}', or @file.
    #[arg(long)]
    change: String,
}

/// Failure kinds, mapped to exit codes.
enum Failure {
    Invalid(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Singular => Failure::Internal(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn read_input(path: &Path) -> Outcome<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Invalid(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path)
            .map_err(|e| Failure::Invalid(format!("reading {}: {e}", path.display())))
    }
}

impl ParamsArg {
    fn load(&self) -> Outcome<FamilyParams> {
        let path = self
            .params
            .as_ref()
            .ok_or_else(|| Failure::Invalid("--params is required".into()))?;
        let p = params_from_json(&parse_text(&read_input(path)?)?)?;
        if let Some(f) = self.family {
            if f != p.family() {
                return Err(Failure::Invalid(format!(
                    "--family {f} but the parameters describe family {}",
                    p.family()
                )));
            }
        }
        Ok(p)
    }
}

impl AlgebraArg {
    fn load(&self) -> Outcome<Algebra> {
        match &self.algebra {
            Some(path) => Ok(load_algebra(&read_input(path)?)?),
            None if self.params.params.is_some() => Ok(self.params.load()?.build()?),
            None => Err(Failure::Invalid("give --algebra or --params".into())),
        }
    }
}

impl WitnessArgs {
    fn options(&self) -> Outcome<WitnessOptions> {
        let mut o = WitnessOptions::from_env();
        if let Some(r) = self.witness_range {
            if r < 0 {
                return Err(Failure::Invalid("--witness-range must be >= 0".into()));
            }
            o.range = r;
        }
        if let Some(m) = self.max_candidates {
            o.max_candidates = m;
        }
        Ok(o)
    }
}

fn change_json(raw: &str) -> Outcome<Value> {
    let text = match raw.strip_prefix('@') {
        Some(path) => read_input(Path::new(path))?,
        None => raw.to_string(),
    };
    Ok(parse_text(&text)?)
}

fn check_report<P>(chk: &CriterionCheck<P>, params: Value) -> Value {
    json!({
        "ok": chk.ok(),
        "phi": chk.phi.as_ref().map_or(Value::Null, matrix_to_json),
        "transformed": params,
        "class_preserved": chk.class_preserved,
    })
}

fn iso(args: &IsoArgs, verify: bool) -> Outcome<Value> {
    let p = args.params.load()?;
    let c = change_json(&args.change)?;
    Ok(match (&p, verify) {
        (FamilyParams::F1(p), false) => params_to_json(&FamilyParams::F1(transform_f1(
            p,
            &change_f1_from_json(&c)?,
        )?)),
        (FamilyParams::F2(p), false) => params_to_json(&FamilyParams::F2(transform_f2(
            p,
            &change_f2_from_json(&c)?,
        )?)),
        (FamilyParams::F3(p), false) => params_to_json(&FamilyParams::F3(transform_f3(
            p,
            &change_f3_from_json(&c)?,
        )?)),
        (FamilyParams::F1(p), true) => {
            let chk = verify_criterion_f1(p, &change_f1_from_json(&c)?)?;
            check_report(
                &chk,
                params_to_json(&FamilyParams::F1(chk.transformed.clone())),
            )
        }
        (FamilyParams::F2(p), true) => {
            let chk = verify_criterion_f2(p, &change_f2_from_json(&c)?)?;
            check_report(
                &chk,
                params_to_json(&FamilyParams::F2(chk.transformed.clone())),
            )
        }
        (FamilyParams::F3(p), true) => {
            let chk = verify_criterion_f3(p, &change_f3_from_json(&c)?)?;
            check_report(
                &chk,
                params_to_json(&FamilyParams::F3(chk.transformed.clone())),
            )
        }
    })
}

fn representatives(family: u8, n: usize, samples: &Option<Vec<String>>) -> Outcome<Value> {
    let entries: Vec<(FamilyParams, RepresentativeTag)> = match family {
        1 => {
            if n < 3 {
                return Err(Failure::Invalid(format!("n must be >= 3, got {n}")));
            }
            (3..=n)
                .map(|s| {
                    let p = f1_representative(n, s)?;
                    let tag = leibniz_lab::classification::classify_f1(&p);
                    Ok((FamilyParams::F1(p), tag))
                })
                .collect::<Result<_, Error>>()?
        }
        2 => {
            let samples: Vec<Scalar> = match samples {
                Some(v) => v
                    .iter()
                    .map(|s| scalar_from_json(&Value::String(s.trim().to_string())))
                    .collect::<Result<_, Error>>()?,
                None => default_f2_samples(),
            };
            f2_representatives(n, &samples)?
                .into_iter()
                .map(|(p, t)| (FamilyParams::F2(p), t))
                .collect()
        }
        3 => f3_representatives(n)?
            .into_iter()
            .map(|(p, t)| (FamilyParams::F3(p), t))
            .collect(),
        f => {
            return Err(Failure::Invalid(format!(
                "family must be 1, 2 or 3, got {f}"
            )))
        }
    };
    Ok(Value::Array(
        entries
            .iter()
            .map(|(p, t)| json!({"params": params_to_json(p), "tag": tag_to_json(t)}))
            .collect(),
    ))
}

enum Output {
    Json(Value),
    Text(String),
}

fn execute(cli: Cli) -> Outcome<Output> {
    use Output::{Json, Text};
    Ok(match cli.command {
        Command::Build { params, example } => {
            let l = if example {
                build_example()
            } else {
                params.load()?.build()?
            };
            Json(algebra_to_json(&l))
        }
        Command::Leibniz(a) => {
            let l = a.load()?;
            Json(match l.check_leibniz() {
                Ok(()) => json!({"leibniz": true, "violation": null}),
                Err(v) => json!({
                    "leibniz": false,
                    "violation": {
                        "i": v.i,
                        "j": v.j,
                        "k": v.k,
                        "residual": v.residual.iter().map(scalar_to_json).collect::<Vec<_>>(),
                    },
                }),
            })
        }
        Command::Lcs(a) => {
            let l = a.load()?;
            Json(json!({
                "dims": l.lower_central_dims()?,
                "nilpotent": l.is_nilpotent()?,
                "filiform": l.is_filiform()?,
            }))
        }
        Command::Derive(a) => Json(derivation_space_to_json(&derivation_space(&a.load()?))),
        Command::CharNilpotent { algebra, witness } => {
            let v = is_characteristically_nilpotent(&algebra.load()?, &witness.options()?)?;
            Json(verdict_to_json(&v))
        }
        Command::Classify { params, witness } => {
            let p = params.load()?;
            let tag = classify(&p)?;
            let mut report = tag_to_json(&tag);
            let agrees = engel_agrees(&p, &tag, &witness.options()?)?;
            report["engel_agrees"] = Value::Bool(agrees);
            Json(report)
        }
        Command::Representatives { family, n, samples } => {
            Json(representatives(family, n, &samples)?)
        }
        Command::Catalan { p, n, table } => {
            if table {
                let mut out = String::from("t\tlhs\trhs\tresult\n");
                for t in 1..=n {
                    let (l, r) = catalan_convolution_sides(p, t)?;
                    let verdict = if l == r { "PASS" } else { "FAIL" };
                    out.push_str(&format!("{t}\t{l}\t{r}\t{verdict}\n"));
                }
                Text(out)
            } else {
                Text(format!("{}\n", p_catalan(p, n)?))
            }
        }
        Command::IsoApply(args)
        | Command::Iso {
            action: IsoAction::Apply(args),
        } => Json(iso(&args, false)?),
        Command::IsoVerify(args)
        | Command::Iso {
            action: IsoAction::Verify(args),
        } => Json(iso(&args, true)?),
        Command::VerifySuite {
            n_max,
            witness_range,
        } => {
            if witness_range < 0 {
                return Err(Failure::Invalid("--witness-range must be >= 0".into()));
            }
            let mut cfg = SuiteConfig {
                n_max,
                witness: WitnessOptions::from_env(),
            };
            cfg.witness.range = witness_range;
            let results = run_all(&cfg);
            let mut out = String::new();
            for o in &results {
                let verdict = if o.passed { "PASS" } else { "FAIL" };
                out.push_str(&format!(
                    "{:<5} {verdict}  {:<40} {}\n",
                    o.id, o.title, o.detail
                ));
            }
            let passed = results.iter().filter(|o| o.passed).count();
            out.push_str(&format!("{passed}/{} batteries passed\n", results.len()));
            Text(out)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = std::panic::catch_unwind(|| execute(cli));
    match result {
        Ok(Ok(out)) => {
            let text = match out {
                Output::Json(v) => to_pretty(&v) + "\n",
                Output::Text(s) => s,
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Err(Failure::Invalid(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
        Err(_) => ExitCode::from(1),
    }
}
