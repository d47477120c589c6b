use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use filippov_core::catalog::{self, Sampler};
use filippov_core::constructions::{
    bracket_d1_d2, bracket_d1_d2_d3, bracket_f_d, check_comm_assoc, check_nijenhuis_persistence,
    check_nijenhuis_persistence_assoc, extend_by_functional, CommAssocAlgebra, Construction,
};
use filippov_core::json;
use filippov_core::operators::{classify_reports, is_o_operator, lift_o_operator};
use filippov_core::scalar::parse_scalar;
use filippov_core::{
    check_deformation_conditions, check_trivial, deformed_bracket, is_nijenhuis, is_nijenhuis_unshuffle, omega_family,
    power_identity, semidirect_product, Error, Field, Matrix, NLieAlgebra, Report, Scalar,
};

#[derive(Parser)]
#[command(
    name = "filippov",
    version,
    about = "Exact verifier for n-Lie algebras and their operators"
)]
struct Cli {
    /// Output format; json is the stable contract.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for commands that draw random data.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Filippov identity, Leibniz rule for fundamental objects and the FI3 form
    /// for an algebra; the defining checks for other kinds.
    Check { algebra: PathBuf },
    /// Both Nijenhuis criteria, with the deformed brackets up to level n-1.
    Nijenhuis { algebra: PathBuf, map: PathBuf },
    /// Derivation, Rota-Baxter and Nijenhuis verdicts for one map.
    Classify { algebra: PathBuf, map: PathBuf },
    /// Basis of the derivation algebra.
    Derivations { algebra: PathBuf },
    /// The trivial deformation generated by a map, checked at sample parameters.
    Deform {
        algebra: PathBuf,
        map: PathBuf,
        /// Parameter value; repeatable. Defaults to 0, ±1, ±2, 3 and 1/2.
        #[arg(long = "lambda", allow_hyphen_values = true)]
        lambdas: Vec<String>,
    },
    /// O-operator condition for a map V -> g relative to a representation.
    Oop {
        algebra: PathBuf,
        representation: PathBuf,
        map: PathBuf,
        /// Also check the lift on the semidirect product.
        #[arg(long)]
        lift: bool,
    },
    /// Build an n-Lie algebra from simpler data.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// [N^a1 x1, .., N^an xn] against its expansion.
    PowerIdentity {
        algebra: PathBuf,
        map: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        exponents: Vec<i64>,
    },
    /// Built-in algebras and operator families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// (n+1)-ary algebra from an n-Lie algebra and a functional vanishing on brackets.
    Extend {
        algebra: PathBuf,
        functional: PathBuf,
        /// Nijenhuis map of the input whose persistence is checked.
        #[arg(long)]
        nijenhuis: Option<PathBuf>,
    },
    /// 3-Lie algebra from a derivation and a functional.
    Fd {
        algebra: PathBuf,
        functional: PathBuf,
        derivation: PathBuf,
        #[arg(long)]
        nijenhuis: Option<PathBuf>,
    },
    /// Determinant bracket of two commuting derivations.
    D1d2 {
        algebra: PathBuf,
        d1: PathBuf,
        d2: PathBuf,
        #[arg(long)]
        nijenhuis: Option<PathBuf>,
    },
    /// Determinant bracket of three commuting derivations.
    D1d2d3 {
        algebra: PathBuf,
        d1: PathBuf,
        d2: PathBuf,
        d3: PathBuf,
        #[arg(long)]
        nijenhuis: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Names with their parameters.
    List,
    /// JSON form of a builtin, e.g. `abelian(3,5)` or `dim4_simple_der(a=1,d=1)`.
    Show {
        name: String,
        #[arg(long)]
        field: Option<String>,
    },
    /// Seeded random map with entries p/q, |p| <= bound, 1 <= q <= bound.
    RandomMap {
        dim: usize,
        #[arg(long, default_value_t = 5)]
        bound: i64,
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

#[derive(Serialize)]
struct Output {
    command: String,
    ok: bool,
    checks: Vec<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<Value>,
}

/// Input errors exit 2; failed mathematical preconditions become failed checks.
enum Failure {
    Input(String),
    Check(Box<Report>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e.witness() {
            Some(w) => {
                let mut r = Report::new(precondition_name(&e));
                r.fail(w.clone());
                r.note(e.to_string());
                Failure::Check(Box::new(r))
            }
            None if e.is_check_failure() => {
                let mut r = Report::new(precondition_name(&e));
                r.ok = false;
                r.note(e.to_string());
                Failure::Check(Box::new(r))
            }
            None => Failure::Input(e.to_string()),
        }
    }
}

fn precondition_name(e: &Error) -> &'static str {
    match e {
        Error::NotAnNLieAlgebra(_) => "filippov",
        Error::InvalidRepresentation(_) => "representation",
        Error::NotNijenhuis(_) => "nijenhuis",
        Error::FunctionalNotVanishingOnDerived(_) => "functional_vanishes_on_brackets",
        Error::FunctionalSymmetryViolated(_) => "functional_symmetry",
        Error::NotAssociative(_) => "associative",
        Error::NotNijenhuisAssoc(_) => "nijenhuis_assoc",
        Error::NotADerivation { .. } => "assoc_derivation",
        Error::DerivationsDoNotCommute { .. } => "derivations_commute",
        Error::CommutationViolated(_) => "commutes_with_derivations",
        Error::SingularMatrix => "invertible",
        _ => "input",
    }
}

#[derive(Default)]
struct Run {
    checks: Vec<Report>,
    data: Option<Value>,
    /// Printed verbatim instead of a report (catalog output).
    raw: Option<String>,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, parsed: filippov_core::Result<T>) -> Result<T, Failure> {
    parsed.map_err(|e| match Failure::from(e) {
        Failure::Input(msg) => Failure::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn load_algebra(path: &Path) -> Result<NLieAlgebra, Failure> {
    in_file(path, json::parse_algebra(&read(path)?))
}

fn load_map(path: &Path, field: Field) -> Result<Matrix, Failure> {
    in_file(path, json::parse_linear_map(&read(path)?, field))
}

fn load_comm_assoc(path: &Path) -> Result<CommAssocAlgebra, Failure> {
    in_file(path, json::parse_comm_assoc(&read(path)?))
}

fn value(text: String) -> Value {
    serde_json::from_str(&text).expect("generated JSON parses")
}

fn parse_field(text: &str) -> Result<Field, Failure> {
    text.parse().map_err(|e: Error| Failure::Input(e.to_string()))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Nijenhuis { .. } => "nijenhuis",
        Command::Classify { .. } => "classify",
        Command::Derivations { .. } => "derivations",
        Command::Deform { .. } => "deform",
        Command::Oop { .. } => "oop",
        Command::Construct { kind } => match kind {
            ConstructKind::Extend { .. } => "construct extend",
            ConstructKind::Fd { .. } => "construct fd",
            ConstructKind::D1d2 { .. } => "construct d1d2",
            ConstructKind::D1d2d3 { .. } => "construct d1d2d3",
        },
        Command::PowerIdentity { .. } => "power-identity",
        Command::Catalog { action } => match action {
            CatalogAction::List => "catalog list",
            CatalogAction::Show { .. } => "catalog show",
            CatalogAction::RandomMap { .. } => "catalog random-map",
        },
    }
}

fn default_lambdas() -> Vec<Scalar> {
    let f = Field::Rational;
    [0, 1, -1, 2, -2, 3]
        .into_iter()
        .map(|v| Scalar::from_i64(f, v))
        .chain([Scalar::from_ratio(f, 1, 2)])
        .collect()
}

fn execute(cli: &Cli) -> Result<Run, Failure> {
    let mut run = Run::default();
    match &cli.command {
        Command::Check { algebra: path } => {
            let text = read(path)?;
            match in_file(path, json::kind_of(&text))?.as_str() {
                "n-lie" => {
                    let alg = in_file(path, json::parse_algebra(&text))?;
                    run.checks.push(alg.check_filippov());
                    run.checks.push(alg.check_leibniz_fundamental()?);
                    run.checks.push(alg.check_fi3());
                }
                "comm-assoc" => run
                    .checks
                    .push(check_comm_assoc(&in_file(path, json::parse_comm_assoc(&text))?)),
                "deformation-family" => {
                    let fam = in_file(path, json::parse_family(&text))?;
                    run.checks.push(fam.base.check_filippov());
                    run.checks.push(check_deformation_conditions(&fam)?);
                }
                kind @ ("linear-map" | "rect-map" | "functional") => {
                    match kind {
                        "linear-map" => drop(in_file(path, json::parse_linear_map(&text, Field::Gaussian))?),
                        "rect-map" => drop(in_file(path, json::parse_rect_map(&text, Field::Gaussian))?),
                        _ => drop(in_file(path, json::parse_functional(&text, Field::Gaussian))?),
                    }
                    let mut r = Report::new("well_formed");
                    r.cases = 1;
                    run.checks.push(r);
                }
                other => {
                    return Err(Failure::Input(format!(
                        "{}: `check` does not take kind `{other}`",
                        path.display()
                    )))
                }
            }
        }
        Command::Nijenhuis { algebra, map } => {
            let alg = load_algebra(algebra)?;
            let n = load_map(map, alg.field())?;
            run.checks.push(is_nijenhuis(&alg, &n)?);
            run.checks.push(is_nijenhuis_unshuffle(&alg, &n)?);
            let levels = (1..alg.arity())
                .map(|j| Ok(value(json::algebra_to_json(&deformed_bracket(&alg, &n, j)?))))
                .collect::<filippov_core::Result<Vec<_>>>()?;
            run.data = Some(serde_json::json!({ "deformed_brackets": levels }));
        }
        Command::Classify { algebra, map } => {
            let alg = load_algebra(algebra)?;
            let n = load_map(map, alg.field())?;
            let reports = classify_reports(&alg, &n)?;
            run.data = Some(serde_json::json!({
                "derivation": reports[0].ok,
                "rota_baxter": reports[1].ok,
                "nijenhuis": reports[2].ok,
            }));
            run.checks.extend(reports);
        }
        Command::Derivations { algebra } => {
            let alg = load_algebra(algebra)?;
            let basis = alg.derivation_space();
            let mut r = Report::new("derivation_basis");
            for d in &basis {
                let check = alg.is_derivation(d)?;
                r.cases += 1;
                if let Some(w) = check.witness {
                    r.fail(w);
                }
            }
            r.note(format!("dimension {}", basis.len()));
            run.checks.push(r);
            let maps: Vec<Value> = basis.iter().map(|d| value(json::linear_map_to_json(d))).collect();
            run.data = Some(serde_json::json!({ "dimension": basis.len(), "basis": maps }));
        }
        Command::Deform { algebra, map, lambdas } => {
            let alg = load_algebra(algebra)?;
            let n = load_map(map, alg.field())?;
            let lambdas = if lambdas.is_empty() {
                default_lambdas()
                    .into_iter()
                    .map(|l| l.coerce(alg.field()))
                    .collect::<filippov_core::Result<Vec<_>>>()?
            } else {
                lambdas
                    .iter()
                    .map(|t| parse_scalar(t, alg.field()))
                    .collect::<filippov_core::Result<Vec<_>>>()?
            };
            let fam = omega_family(&alg, &n)?;
            run.checks.push(check_deformation_conditions(&fam)?);
            for l in &lambdas {
                run.checks.push(fam.evaluate_at(l)?.1);
                run.checks
                    .push(check_trivial(&alg, &n, l)?.named(format!("trivial at λ = {l}")));
            }
            run.data = Some(value(json::family_to_json(&fam)));
        }
        Command::Oop {
            algebra,
            representation,
            map,
            lift,
        } => {
            let alg = load_algebra(algebra)?;
            let rep = in_file(representation, json::parse_representation(&read(representation)?, &alg))?;
            let t = in_file(map, json::parse_rect_map(&read(map)?, alg.field()))?;
            run.checks.push(is_o_operator(&alg, &rep, &t)?);
            if *lift {
                let semi = semidirect_product(&alg, &rep)?;
                let lifted = lift_o_operator(&alg, &rep, &t)?;
                run.checks
                    .push(is_nijenhuis(&semi, &lifted)?.named("nijenhuis_of_lift"));
                run.data = Some(serde_json::json!({
                    "semidirect_product": value(json::algebra_to_json(&semi)),
                    "lift": value(json::linear_map_to_json(&lifted)),
                }));
            }
        }
        Command::Construct { kind } => construct(kind, &mut run)?,
        Command::PowerIdentity {
            algebra,
            map,
            exponents,
        } => {
            let alg = load_algebra(algebra)?;
            let n = load_map(map, alg.field())?;
            run.checks.push(power_identity(&alg, &n, exponents)?);
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let entries: Vec<Value> = catalog::list()
                    .iter()
                    .map(|e| {
                        serde_json::json!({
                            "name": e.name,
                            "params": e.params,
                            "example": e.example,
                            "summary": e.summary,
                        })
                    })
                    .collect();
                run.raw = Some(match cli.format {
                    Format::Json => serde_json::to_string_pretty(&entries).expect("plain data"),
                    Format::Text => catalog::list()
                        .iter()
                        .map(|e| format!("{:<20} {:<34} {}", e.name, e.example, e.summary))
                        .collect::<Vec<_>>()
                        .join("\n"),
                });
            }
            CatalogAction::Show { name, field } => {
                let (name, params) = catalog::parse_call(name)?;
                let built = match field {
                    Some(f) => catalog::builtin_in(&name, &params, parse_field(f)?)?,
                    None => catalog::builtin(&name, &params)?,
                };
                run.raw = Some(json::builtin_to_json(&built));
            }
            CatalogAction::RandomMap { dim, bound, field } => {
                if *bound < 1 {
                    return Err(Failure::Input("bound must be at least 1".into()));
                }
                let m = Sampler::new(cli.seed, *bound).map(parse_field(field)?, *dim);
                run.raw = Some(json::linear_map_to_json(&m));
            }
        },
    }
    Ok(run)
}

fn construct(kind: &ConstructKind, run: &mut Run) -> Result<(), Failure> {
    let (alg, persistence) = match kind {
        ConstructKind::Extend {
            algebra,
            functional,
            nijenhuis,
        } => {
            let base = load_algebra(algebra)?;
            let f = in_file(functional, json::parse_functional(&read(functional)?, base.field()))?;
            let ext = extend_by_functional(&base, &f)?;
            let persistence = match nijenhuis {
                Some(p) => Some(check_nijenhuis_persistence(&base, &f, &load_map(p, base.field())?)?),
                None => None,
            };
            (ext, persistence)
        }
        ConstructKind::Fd {
            algebra,
            functional,
            derivation,
            nijenhuis,
        } => {
            let a = load_comm_assoc(algebra)?;
            let f = in_file(functional, json::parse_functional(&read(functional)?, a.field()))?;
            let d = load_map(derivation, a.field())?;
            let g = bracket_f_d(&a, &f, &d)?;
            let c = Construction::FD { f, d };
            (g, assoc_persistence(&a, nijenhuis, &c)?)
        }
        ConstructKind::D1d2 {
            algebra,
            d1,
            d2,
            nijenhuis,
        } => {
            let a = load_comm_assoc(algebra)?;
            let (d1, d2) = (load_map(d1, a.field())?, load_map(d2, a.field())?);
            let g = bracket_d1_d2(&a, &d1, &d2)?;
            (g, assoc_persistence(&a, nijenhuis, &Construction::D1D2 { d1, d2 })?)
        }
        ConstructKind::D1d2d3 {
            algebra,
            d1,
            d2,
            d3,
            nijenhuis,
        } => {
            let a = load_comm_assoc(algebra)?;
            let (d1, d2, d3) = (
                load_map(d1, a.field())?,
                load_map(d2, a.field())?,
                load_map(d3, a.field())?,
            );
            let g = bracket_d1_d2_d3(&a, &d1, &d2, &d3)?;
            (
                g,
                assoc_persistence(&a, nijenhuis, &Construction::D1D2D3 { d1, d2, d3 })?,
            )
        }
    };
    run.checks.push(alg.check_filippov());
    run.checks.extend(persistence);
    run.data = Some(value(json::algebra_to_json(&alg)));
    Ok(())
}

fn assoc_persistence(
    a: &CommAssocAlgebra,
    path: &Option<PathBuf>,
    construction: &Construction,
) -> Result<Option<Report>, Failure> {
    match path {
        Some(p) => Ok(Some(check_nijenhuis_persistence_assoc(
            a,
            &load_map(p, a.field())?,
            construction,
        )?)),
        None => Ok(None),
    }
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn render(command: &str, format: Format, run: Run) -> ExitCode {
    if let Some(raw) = run.raw {
        emit(&raw);
        return ExitCode::SUCCESS;
    }
    let ok = run.checks.iter().all(|r| r.ok);
    match format {
        Format::Json => {
            let out = Output {
                command: command.into(),
                ok,
                checks: run.checks,
                data: run.data,
            };
            emit(&serde_json::to_string_pretty(&out).expect("plain data"));
        }
        Format::Text => {
            emit(&format!("{command}: {}", if ok { "ok" } else { "FAILED" }));
            for r in &run.checks {
                emit(&format!("  {}", r.to_string().replace('\n', "\n  ")));
            }
            if let Some(data) = run.data {
                emit(&serde_json::to_string_pretty(&data).expect("plain data"));
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let command = command_name(&cli.command);
    match execute(&cli) {
        Ok(run) => render(command, cli.format, run),
        Err(Failure::Check(report)) => render(
            command,
            cli.format,
            Run {
                checks: vec![*report],
                ..Run::default()
            },
        ),
        Err(Failure::Input(msg)) => {
            if cli.format == Format::Json {
                emit(&serde_json::json!({ "command": command, "ok": false, "checks": [], "error": msg }).to_string());
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
