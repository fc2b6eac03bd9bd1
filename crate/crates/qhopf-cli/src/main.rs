use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use qhopf::double::build_double;
use qhopf::generators::{cocycle_dual, function_algebra, group_algebra, sweedler_h4};
use qhopf::integrals::{check_integrals, verify_integral_identities};
use qhopf::io::Presentation;
use qhopf::quasitriangular::QuasiTriangular;
use qhopf::report::Report;
use qhopf::transmutation::{check_dual_side, check_transmutation};
use qhopf::{Error, Field, Scalar};

#[derive(Parser)]
#[command(name = "qhopf", version, about = "Exact verification of finite-dimensional quasi-Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Quasi-bialgebra and antipode axioms.
    Check { file: PathBuf },
    /// Quasi-Hopf axioms plus the R-matrix axioms and the element u.
    QtCheck { file: PathBuf },
    /// Build the quantum double D(H) and write its presentation.
    Double { file: PathBuf },
    /// Rank of the map Q: H* → H.
    Factorizable { file: PathBuf },
    /// Integrals, modulus, cointegrals and (with an R-matrix) their identities.
    Integrals { file: PathBuf },
    /// Braided Hopf algebras obtained by transmutation.
    Transmute { file: PathBuf },
    /// Decomposition of D(H) for a quasi-triangular H, including ζ.
    Zeta { file: PathBuf },
    /// Identity suites by topic.
    Identities {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "core")]
        suite: Suite,
    },
    /// Emit a builtin presentation.
    Example {
        #[arg(value_enum)]
        name: Example,
        /// Group order for group_algebra, function_algebra and cocycle_dual.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// R-matrix parameter for sweedler_h4, as a rational string.
        #[arg(long)]
        r: Option<String>,
        /// `Q` or `Fp:<p>`.
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Core,
    Double,
    Transmutation,
    Integrals,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Example {
    GroupAlgebra,
    FunctionAlgebra,
    CocycleDual,
    SweedlerH4,
}

/// Failure kinds mapped to exit codes: bad input is 2, a failed verification 1.
enum Failure {
    Input(anyhow::Error),
    Check(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Invalid(_) | Error::Dimension(_) | Error::Unsupported(_) => Failure::Input(e.into()),
            _ => Failure::Check(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        Failure::Input(e)
    }
}

fn parse_field(s: &str) -> anyhow::Result<Field> {
    if s == "Q" {
        return Ok(Field::Q);
    }
    let p = s.strip_prefix("Fp:").ok_or_else(|| anyhow!("field must be Q or Fp:<p>, got {s}"))?;
    Ok(Field::fp(p.parse().with_context(|| format!("bad prime {p}"))?)?)
}

fn load(path: &Path) -> Result<Presentation, Failure> {
    Presentation::read(path).map_err(|e| Failure::Input(anyhow!(e)))
}

fn load_qt(path: &Path) -> Result<QuasiTriangular, Failure> {
    let p = load(path)?;
    let r = p.r_matrix.ok_or_else(|| Failure::Input(anyhow!("{}: no r_matrix", path.display())))?;
    Ok(QuasiTriangular::new(p.hopf, r)?)
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn report(cli: &Cli, r: &Report) -> Result<bool, Failure> {
    let text = if cli.json { r.to_json() + "\n" } else { format!("{r}\n") };
    emit(cli, &text)?;
    Ok(r.passed())
}

fn merged(title: &str, parts: Vec<Report>) -> Report {
    let mut r = Report::new(title);
    for p in parts {
        r.extend(p);
    }
    r.sort();
    r
}

fn double_labels(p: &Presentation) -> Option<Vec<String>> {
    let l = p.labels.as_ref()?;
    Some(l.iter().flat_map(|a| l.iter().map(move |b| format!("{a}*.{b}"))).collect())
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.cmd {
        Cmd::Check { file } => report(cli, &load(file)?.hopf.check_all()),
        Cmd::QtCheck { file } => report(cli, &load_qt(file)?.check_all()),
        Cmd::Double { file } => {
            let p = load(file)?;
            let d = build_double(&p.hopf)?;
            let out = Presentation { hopf: d.qt.hopf.clone(), r_matrix: Some(d.qt.r.clone()), labels: double_labels(&p) };
            emit(cli, &out.to_json())?;
            Ok(true)
        }
        Cmd::Factorizable { file } => {
            let f = load_qt(file)?.factorizability()?;
            let n = f.q.rows;
            let verdict = if f.factorizable { "factorizable" } else { "not factorizable" };
            let text = if cli.json {
                serde_json::json!({ "factorizable": f.factorizable, "rank": f.rank, "dim": n }).to_string() + "\n"
            } else {
                format!("{verdict} (rank {} of {n})\n", f.rank)
            };
            emit(cli, &text)?;
            Ok(true)
        }
        Cmd::Integrals { file } => {
            let p = load(file)?;
            let mut parts = vec![check_integrals(&p.hopf)];
            if let Some(r) = p.r_matrix {
                parts.push(verify_integral_identities(&QuasiTriangular::new(p.hopf, r)?));
            }
            report(cli, &merged("integrals", parts))
        }
        Cmd::Transmute { file } => {
            let qt = load_qt(file)?;
            report(cli, &merged("transmutation", vec![check_transmutation(&qt), check_dual_side(&qt)]))
        }
        Cmd::Zeta { file } => {
            let qt = load_qt(file)?;
            let d = build_double(&qt.hopf)?;
            report(cli, &d.check_decomposition(&qt))
        }
        Cmd::Identities { file, suite } => {
            let p = load(file)?;
            let qt = p.r_matrix.clone().map(|r| QuasiTriangular::new(p.hopf.clone(), r)).transpose()?;
            let h = &p.hopf;
            let parts = match suite {
                Suite::Core => {
                    let mut v = vec![h.verify_core_identities()];
                    match h.drinfeld_twist() {
                        Ok(d) => v.push(h.check_drinfeld_twist(d)),
                        Err(e) => v.push(failed("drinfeld-twist", &e)),
                    }
                    if let Some(qt) = &qt {
                        v.push(qt.check_u());
                        v.push(qt.check_factorizability());
                    }
                    v
                }
                Suite::Double => {
                    let d = build_double(h)?;
                    let mut v = vec![d.check_all()];
                    if let Some(qt) = &qt {
                        v.push(d.check_decomposition(qt));
                    }
                    v
                }
                Suite::Transmutation => {
                    let qt = qt.ok_or_else(|| Failure::Input(anyhow!("{}: no r_matrix", file.display())))?;
                    vec![check_transmutation(&qt), check_dual_side(&qt)]
                }
                Suite::Integrals => {
                    let mut v = vec![check_integrals(h)];
                    if let Some(qt) = &qt {
                        v.push(verify_integral_identities(qt));
                    }
                    v
                }
            };
            report(cli, &merged("identities", parts))
        }
        Cmd::Example { name, n, r, field } => {
            let f = parse_field(field)?;
            let p = match name {
                Example::GroupAlgebra => group_algebra(f, *n)?,
                Example::FunctionAlgebra => function_algebra(f, *n)?,
                Example::CocycleDual => cocycle_dual(f, *n)?,
                Example::SweedlerH4 => {
                    let r = r.as_deref().map(|s| Scalar::parse_canonical(&f, s)).transpose()?;
                    sweedler_h4(f, r)?
                }
            };
            emit(cli, &p.to_json())?;
            Ok(true)
        }
    }
}

fn failed(id: &str, e: &Error) -> Report {
    let mut r = Report::new(id);
    r.check(id, false, e.to_string());
    r
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
