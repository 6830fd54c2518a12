//! The `szabo` command line.
//!
//! Exit codes: 0 when everything holds, 1 on tool errors (bad arguments,
//! unreadable or invalid problem files), 2 when a checked property does
//! not hold.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::affine::{
    curvature, cyclic_parallel_ricci, is_affine_szabo, is_flat, ricci, ricci_from_curvature,
    AffineConnection, CharPolyCertificate, SymbolicVector,
};
use crate::chart::Chart;
use crate::extension::{
    build_extension, curvature_relation_mismatches, factorization_holds, levi_civita_closed_form,
    ExtensionGeometry, ExtensionMetric,
};
use crate::matrix::PolyMatrix;
use crate::numcheck::{self, SamplePlan};
use crate::problem::Problem;
use crate::report::{CertificateEntry, CheckEntry, FactEntry, Report, TensorEntry};
use crate::tensor::{Slot, TensorField};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_PROPERTY: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "szabo",
    version,
    about = "Exact curvature, Szabó operators and Riemannian extensions of polynomial affine connections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Target {
    /// Problem file.
    file: PathBuf,
    /// Work on the Riemannian extension to the cotangent bundle.
    #[arg(long)]
    extend: bool,
    /// Twist the extension by the file's [twist] section.
    #[arg(long, requires = "extend")]
    twist: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the nonzero curvature components.
    Curvature(Target),
    /// Print the nonzero Ricci components.
    Ricci(Target),
    /// Print the characteristic polynomial of the Szabó operator for a symbolic vector.
    SzaboCharpoly(Target),
    /// Run every exact check and print a pass/fail table.
    Check(Target),
    /// Run the numeric oracle suite at random points.
    Numcheck {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_ERROR
                }
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Text => outcome.text,
                Format::Json => outcome.report.to_json() + "\n",
            };
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_ERROR;
            }
            outcome.code
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

struct Outcome {
    text: String,
    report: Report,
    code: i32,
}

struct Loaded {
    problem: Problem,
    extension: Option<ExtensionMetric>,
    label: String,
}

impl Loaded {
    fn chart(&self) -> &Chart {
        self.problem.chart()
    }
}

fn load(target: &Target) -> Result<Loaded, String> {
    let path = target.file.display().to_string();
    let problem = Problem::load(&target.file).map_err(|e| match e {
        crate::problem::ProblemError::Io { .. } => e.to_string(),
        _ => format!("{path}: {e}"),
    })?;
    let name = problem.name.clone().unwrap_or_else(|| path.clone());
    let (extension, label) = if target.extend {
        let twist = if target.twist {
            Some(
                problem
                    .twist()
                    .ok_or_else(|| format!("{path}: --twist given but the file has no [twist] section"))?,
            )
        } else {
            None
        };
        let metric = build_extension(problem.connection(), twist).map_err(|e| format!("{path}: {e}"))?;
        let kind = if twist.is_some() { "twisted Riemannian extension" } else { "Riemannian extension" };
        (Some(metric), format!("{kind} of {name}"))
    } else {
        (None, name)
    };
    Ok(Loaded {
        problem,
        extension,
        label,
    })
}

fn execute(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Curvature(t) => cmd_curvature(t),
        Command::Ricci(t) => cmd_ricci(t),
        Command::SzaboCharpoly(t) => cmd_charpoly(t),
        Command::Check(t) => cmd_check(t),
        Command::Numcheck { target, seed, count } => cmd_numcheck(target, *seed, *count),
    }
}

fn command_name(cmd: &str, t: &Target) -> String {
    let mut s = cmd.to_string();
    if t.extend {
        s.push_str(" --extend");
    }
    if t.twist {
        s.push_str(" --twist");
    }
    s
}

fn indices(idx: &[usize]) -> String {
    idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_curvature(t: &Target) -> Result<Outcome, String> {
    let loaded = load(t)?;
    let r = match &loaded.extension {
        Some(m) => ExtensionGeometry::new(m).curvature().clone(),
        None => curvature(loaded.problem.connection()),
    };
    let chart = loaded.chart();
    let mut text = format!(
        "# curvature of {} (dimension {})\n# R(∂k,∂j)∂i = R^h_{{kji}} ∂h, listed for k < j\n",
        loaded.label,
        r.dim()
    );
    let mut any = false;
    for (idx, p) in r.nonzero() {
        if idx[1] < idx[2] {
            any = true;
            text.push_str(&format!("R^{}_{{{}}} = {}\n", idx[0] + 1, indices(&idx[1..]), chart.fmt(p)));
        }
    }
    if !any {
        text.push_str("all components vanish\n");
    }
    let mut report = Report::new(&command_name("curvature", t), &t.file.display().to_string());
    report.tensors.push(TensorEntry::new("R", &r, chart));
    Ok(Outcome {
        text,
        report,
        code: EXIT_OK,
    })
}

fn cmd_ricci(t: &Target) -> Result<Outcome, String> {
    let loaded = load(t)?;
    let ric = match &loaded.extension {
        Some(m) => ricci_from_curvature(ExtensionGeometry::new(m).curvature()),
        None => ricci(loaded.problem.connection()),
    };
    let chart = loaded.chart();
    let mut text = format!("# Ricci tensor of {} (dimension {})\n", loaded.label, ric.dim());
    let nonzero = ric.nonzero();
    for (idx, p) in &nonzero {
        text.push_str(&format!("Ric_{{{}}} = {}\n", indices(idx), chart.fmt(p)));
    }
    if nonzero.is_empty() {
        text.push_str("all components vanish\n");
    }
    let mut report = Report::new(&command_name("ricci", t), &t.file.display().to_string());
    report.tensors.push(TensorEntry::new("Ric", &ric, chart));
    Ok(Outcome {
        text,
        report,
        code: EXIT_OK,
    })
}

fn szabo_certificate(loaded: &Loaded) -> (&'static str, CharPolyCertificate) {
    match &loaded.extension {
        Some(m) => ("extension Szabó", ExtensionGeometry::new(m).szabo_certificate()),
        None => ("affine Szabó", is_affine_szabo(loaded.problem.connection())),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_charpoly(t: &Target) -> Result<Outcome, String> {
    let loaded = load(t)?;
    let (name, cert) = szabo_certificate(&loaded);
    let text = format!(
        "P(λ) = {}; nilpotent: {}\n",
        cert.render_in(loaded.chart()),
        yes_no(cert.is_nilpotent())
    );
    let mut report = Report::new(&command_name("szabo-charpoly", t), &t.file.display().to_string());
    report.certificates.push(CertificateEntry::new(name, &cert, loaded.chart()));
    Ok(Outcome {
        text,
        report,
        code: if cert.is_nilpotent() { EXIT_OK } else { EXIT_PROPERTY },
    })
}

fn first_nonzero_coefficient(cert: &CharPolyCertificate, chart: &Chart) -> Option<String> {
    cert.coeffs()
        .iter()
        .enumerate()
        .rev()
        .find(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("coefficient of λ^{i} is {}", chart.fmt(c)))
}

fn check(name: &str, pass: bool, witness: Option<String>) -> CheckEntry {
    CheckEntry {
        name: name.to_string(),
        pass,
        witness,
    }
}

fn connection_tensor(conn: &AffineConnection) -> TensorField {
    TensorField::from_components(
        conn.dim(),
        vec![Slot::Upper, Slot::Lower, Slot::Lower],
        conn.symbols().to_vec(),
    )
    .expect("n^3 symbols")
}

fn cmd_check(t: &Target) -> Result<Outcome, String> {
    let loaded = load(t)?;
    let chart = loaded.chart();
    let conn = loaded.problem.connection();
    let mut report = Report::new(&command_name("check", t), &t.file.display().to_string());

    let base_cert = is_affine_szabo(conn);
    report
        .certificates
        .push(CertificateEntry::new("affine Szabó", &base_cert, chart));
    report.checks.push(check(
        "affine Szabó",
        base_cert.is_nilpotent(),
        first_nonzero_coefficient(&base_cert, chart),
    ));
    let n = conn.dim();
    let residual = cyclic_parallel_ricci(conn)
        .iter()
        .enumerate()
        .find(|(_, p)| !p.is_zero())
        .map(|(flat, p)| {
            let (x, y, z) = (flat / (n * n), (flat / n) % n, flat % n);
            format!(
                "(∇_{{∂{}}}Ric)(∂{},∂{}) + cyclic = {}",
                x + 1,
                y + 1,
                z + 1,
                chart.fmt(p)
            )
        });
    report
        .checks
        .push(check("cyclic parallel Ricci", residual.is_none(), residual));
    report.facts.push(FactEntry {
        name: "flat".into(),
        holds: is_flat(conn),
        witness: None,
    });

    if let Some(metric) = &loaded.extension {
        let geometry = ExtensionGeometry::new(metric);
        let closed = levi_civita_closed_form(conn, metric.twist()).map_err(|e| e.to_string())?;
        let general = connection_tensor(geometry.connection());
        let closed = connection_tensor(&closed);
        let mismatch = general
            .components()
            .iter()
            .zip(closed.components())
            .position(|(a, b)| a != b)
            .map(|flat| {
                let m = general.dim();
                format!("Γ̃^{}_{{{},{}}}", flat / (m * m) + 1, (flat / m) % m + 1, flat % m + 1)
            });
        report
            .checks
            .push(check("Levi-Civita routes agree", mismatch.is_none(), mismatch));

        let product = metric.metric().mul(metric.inverse());
        let id = PolyMatrix::identity(metric.dim(), metric.metric().nvars());
        report.checks.push(check("g·g⁻¹ = I", product == id, None));

        let bad = curvature_relation_mismatches(conn, metric.twist()).map_err(|e| e.to_string())?;
        report.checks.push(check(
            "curvature relations",
            bad.is_empty(),
            bad.first().map(|i| format!("R̃^{}_{{{}}}", i[0] + 1, indices(&i[1..]))),
        ));

        let cert = geometry.szabo_certificate();
        report
            .certificates
            .push(CertificateEntry::new("extension Szabó", &cert, chart));
        report.checks.push(check(
            "extension Szabó",
            cert.is_nilpotent(),
            first_nonzero_coefficient(&cert, chart),
        ));
        let blocks = geometry.block_structure();
        report.checks.push(check(
            "block structure [[S,0],[*,ᵗS]]",
            blocks.holds(),
            None,
        ));
        report.checks.push(check(
            "extension certificate = square of base certificate",
            factorization_holds(&geometry),
            None,
        ));
        let ricci_op = geometry.ricci_operator_certificate();
        report.checks.push(check(
            "nilpotent Ricci operator",
            ricci_op.is_nilpotent(),
            first_nonzero_coefficient(&ricci_op, chart),
        ));

        let sym = geometry.local_symmetry();
        report.facts.push(FactEntry {
            name: "locally symmetric".into(),
            holds: sym.is_symmetric(),
            witness: sym.witness.as_ref().map(|(i, p)| {
                format!(
                    "(∇_{{∂{}}}R)(∂{},∂{},∂{},∂{}) = {}",
                    i[0] + 1,
                    i[1] + 1,
                    i[2] + 1,
                    i[3] + 1,
                    i[4] + 1,
                    chart.fmt(p)
                )
            }),
        });
    }

    let mut text = format!("# checks for {}\n", loaded.label);
    for c in &report.checks {
        text.push_str(&format!("{}  {}", if c.pass { "PASS" } else { "FAIL" }, c.name));
        if let Some(w) = &c.witness {
            text.push_str(&format!("  [{w}]"));
        }
        text.push('\n');
    }
    for f in &report.facts {
        text.push_str(&format!("info  {}: {}", f.name, yes_no(f.holds)));
        if let Some(w) = &f.witness {
            text.push_str(&format!("  [{w}]"));
        }
        text.push('\n');
    }
    let code = if report.all_checks_pass() { EXIT_OK } else { EXIT_PROPERTY };
    Ok(Outcome { text, report, code })
}

fn cmd_numcheck(t: &Target, seed: u64, count: usize) -> Result<Outcome, String> {
    let loaded = load(t)?;
    let plan = SamplePlan::new(seed, count).map_err(|e| e.to_string())?;
    let chart = loaded.chart();
    let vars = chart.vars();
    let base = loaded.problem.connection();

    let geometry = loaded.extension.as_ref().map(ExtensionGeometry::new);
    let (conn, szabo) = match &geometry {
        Some(g) => (g.connection(), g.symbolic_szabo()),
        None => {
            let x = SymbolicVector::symbolic(chart, base.dim());
            (base, crate::affine::szabo_operator(base, &x).expect("dimensions agree"))
        }
    };

    let mut lines = numcheck::Report::default();
    for (k, i, j, p) in conn.nonzero_symbols() {
        if i > j {
            continue;
        }
        for &v in conn.coords() {
            let mut r = numcheck::fd_check_derivative(p, v, &plan, vars).map_err(|e| e.to_string())?;
            let label = format!("Γ^{}_{{{},{}}}", k + 1, i + 1, j + 1);
            for l in &mut r.lines {
                l.check = format!("{label} {}", l.check);
            }
            lines.extend(r);
        }
    }
    lines.extend(numcheck::nilpotency_report("Szabó", &szabo, &plan, vars).map_err(|e| e.to_string())?);
    if let (Some(metric), Some(g)) = (&loaded.extension, &geometry) {
        let closed = levi_civita_closed_form(base, metric.twist()).map_err(|e| e.to_string())?;
        lines.extend(
            numcheck::cross_validate(
                "Levi-Civita routes",
                &connection_tensor(g.connection()),
                &connection_tensor(&closed),
                &plan,
                vars,
            )
            .map_err(|e| e.to_string())?,
        );
    }

    let mut report = Report::new(&command_name("numcheck", t), &t.file.display().to_string());
    for l in &lines.lines {
        report.checks.push(check(
            &format!("{} {}", l.check, l.location),
            l.status == numcheck::Status::Pass,
            Some(l.values.clone()),
        ));
    }
    let text = format!(
        "# numeric checks for {} (seed {seed}, {count} points)\n{lines}",
        loaded.label
    );
    let code = if lines.passed() { EXIT_OK } else { EXIT_PROPERTY };
    Ok(Outcome { text, report, code })
}
