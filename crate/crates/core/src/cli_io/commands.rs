//! The `homlie` command surface. [`run`] returns the exit code and the text to print,
//! so the binary stays a thin wrapper and tests can drive commands in-process.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use super::document::{matrix_value, parse_matrix_document, sparse_cochain, AlgebraDocument, DeformationTerm};
use super::json;
use super::report::{Report, Table};
use crate::alpha_ce::{cohomology, total_differential};
use crate::bialgebra_alpha::{bialg_cohomology, bialg_morphism_differential, verify_d_squared, verify_phi_chain_map, BialgSigns, MorphismSigns};
use crate::brackets::mc_check_bialgebra;
use crate::deformation::{extend_greedy, verify_cocycle_identities, TruncatedDeformation};
use crate::error::Error;
use crate::hom::{HomLieBialgebra, Representation, TwistMode, ValidationReport};
use crate::linalg::RatMatrix;
use crate::morphism::{invert, morphism_differential, phi_matrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNMET: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "homlie", version, about = "Exact computations for Hom-Lie algebras and bialgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Algebra document (JSON).
    file: PathBuf,
    /// Emit the JSON report.
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Emit the text table (default).
    #[arg(long)]
    table: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms and print a witness for each failure.
    Validate(Common),
    /// α-type cohomology with adjoint or module coefficients.
    Cohomology {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Module block file {"dim","action","beta"}.
        #[arg(long, conflicts_with = "adjoint")]
        module: Option<PathBuf>,
        /// Use the adjoint module even if the document carries one.
        #[arg(long)]
        adjoint: bool,
    },
    /// Yau twist by an endomorphism γ (both structures for bialgebras).
    Twist {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        gamma: PathBuf,
    },
    /// Derivations, α-derivations and derivations commuting with α.
    Derivations(Common),
    /// Check a truncated deformation order by order and extend it.
    Deform {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Maurer–Cartan check of ν + δ under the grand crochet.
    Bracket(Common),
    /// Cohomology of the bialgebra complex and the ∂∘∂ = 0 check.
    Bialg {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// The complex of a morphism γ and the comparison map into the twist.
    Morphism {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Unmet(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Unmet(other.to_string()),
        }
    }
}

type Step<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Step<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: Error) -> Failure {
    match e {
        Error::Parse { location, message } => Failure::Usage(format!("{}: {location}: {message}", path.display())),
        other => other.into(),
    }
}

fn load(path: &Path) -> Step<AlgebraDocument> {
    AlgebraDocument::parse(&read(path)?).map_err(|e| located(path, e))
}

fn load_gamma(path: &Path, n: usize) -> Step<RatMatrix> {
    parse_matrix_document(&read(path)?, n).map_err(|e| located(path, e))
}

fn load_module(path: &Path, n: usize) -> Step<Representation> {
    let text = read(path)?;
    let root = json::parse(&text).map_err(|e| located(path, e))?;
    let wrapped = json::Node::Object(vec![
        ("format_version".into(), json::Node::Int(1)),
        ("dim".into(), json::Node::Int(n as i128)),
        ("module".into(), root),
    ]);
    let doc = AlgebraDocument::from_node(&wrapped).map_err(|e| located(path, e))?;
    Ok(doc.representation().expect("module block present"))
}

fn bialgebra(doc: &AlgebraDocument, path: &Path) -> Step<HomLieBialgebra> {
    doc.bialgebra()?
        .ok_or_else(|| Failure::Usage(format!("{}: this command needs a \"cobracket\" block", path.display())))
}

fn witness(w: &Option<Vec<usize>>) -> String {
    match w {
        Some(v) => format!("witness ({})", v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(", ")),
        None => String::new(),
    }
}

fn add_checks(report: &mut Report, scope: &str, v: &ValidationReport) {
    for c in &v.checks {
        let detail = if c.passed() {
            String::new()
        } else {
            format!("max residual {}, {}", c.residual, witness(&c.witness))
        };
        report.finding(format!("{scope}: {}", c.axiom), c.passed(), detail);
    }
}

/// Validates the algebra, and the cobracket or module when present. Returns whether all hold.
fn validate_into(report: &mut Report, doc: &AlgebraDocument) -> Step<bool> {
    let g = doc.algebra()?;
    add_checks(report, "algebra", &g.validate());
    if let Some(b) = doc.bialgebra()? {
        add_checks(report, "bialgebra", &b.validate());
    }
    if let Some(m) = doc.representation() {
        add_checks(report, "module", &m.validate(&g));
    }
    Ok(report.all_hold())
}

fn cmd_validate(doc: &AlgebraDocument) -> Step<Report> {
    let mut r = Report::new("validate", doc.to_value());
    validate_into(&mut r, doc)?;
    Ok(r)
}

fn cochain_value(n: usize, degree: usize, phi: &RatMatrix, psi: &RatMatrix) -> Value {
    json!({"degree": degree, "phi": sparse_cochain(n, degree, phi), "psi": sparse_cochain(n, degree - 1, psi)})
}

fn cmd_cohomology(doc: &AlgebraDocument, max_degree: Option<usize>, module: Option<Representation>, adjoint: bool) -> Step<Report> {
    let mut r = Report::new("cohomology", doc.to_value());
    if !validate_into(&mut r, doc)? {
        return Ok(r);
    }
    let g = doc.algebra()?;
    let (m, label) = match (module, adjoint) {
        (Some(m), _) => (m, "module file"),
        (None, false) if doc.module.is_some() => (doc.representation().expect("module present"), "document module"),
        _ => (g.adjoint(), "adjoint"),
    };
    let rep = cohomology(&g, &m, max_degree.unwrap_or(g.n + 1))?;
    r.tables.push(Table::new(format!("α-type cohomology, {label} coefficients"), &rep.rows));
    let reps: Vec<Value> = rep.representatives.iter().flatten().map(|c| cochain_value(g.n, c.degree, &c.phi, &c.psi)).collect();
    r.data.insert("representatives".into(), Value::Array(reps));
    let consistent = rep.rows.iter().all(|row| row.dim_c == row.dim_im + row.dim_ker);
    r.finding("rank–nullity", consistent, "");
    Ok(r)
}

fn cmd_twist(doc: &AlgebraDocument, gamma: &RatMatrix) -> Step<Report> {
    let mut r = Report::new("twist", doc.to_value());
    r.data.insert("gamma".into(), matrix_value(gamma));
    let out = match doc.bialgebra()? {
        Some(b) => {
            b.check_morphism(gamma)?;
            AlgebraDocument::from_bialgebra(&b.yau_twist(gamma, TwistMode::Both)?)
        }
        None => AlgebraDocument::from_algebra(&doc.algebra()?.yau_twist(gamma)?),
    };
    validate_into(&mut r, &out)?;
    r.data.insert("output".into(), out.to_value());
    Ok(r)
}

fn cmd_derivations(doc: &AlgebraDocument) -> Step<Report> {
    let mut r = Report::new("derivations", doc.to_value());
    let g = doc.algebra()?;
    let spaces = [
        ("derivations", g.derivations()),
        ("alpha_derivations", g.alpha_derivations()),
        ("derivations_commuting_with_alpha", g.derivations_commuting()),
    ];
    for (name, basis) in spaces {
        r.data.insert(name.into(), json!({"dim": basis.len(), "basis": basis.iter().map(matrix_value).collect::<Vec<_>>()}));
    }
    Ok(r)
}

fn cmd_deform(doc: &AlgebraDocument, order: usize) -> Step<Report> {
    let mut r = Report::new("deform", doc.to_value());
    let g = doc.algebra()?;
    if !validate_into(&mut r, &AlgebraDocument { module: None, cobracket: None, ..doc.clone() })? {
        return Ok(r);
    }
    let d = TruncatedDeformation::new(
        g,
        doc.deformation.iter().map(|t| t.bracket.clone()).collect(),
        doc.deformation.iter().map(|t| t.alpha.clone()).collect(),
    )?;
    for n in 1..=d.order() {
        let c = verify_cocycle_identities(&d, n)?;
        r.finding(format!("order {n}: ∂(νₙ, αₙ) − (R¹ₙ, R²ₙ) equals the residuals"), c.identity_holds, "");
        r.finding(format!("order {n}: ∂(R¹ₙ, R²ₙ) = 0"), c.obstruction_closed, "");
        if let Some(first) = c.first_order_cocycle {
            r.finding("order 1: cocycle iff the equations hold", first == c.order_valid, "");
        }
    }
    let valid = d.valid_to().unwrap_or(0);
    r.data.insert("valid_through".into(), json!(valid));
    if valid < d.order() {
        r.finding("deformation equations", false, format!("fail at order {}", valid + 1));
        return Ok(r);
    }
    if order > d.order() {
        let ext = extend_greedy(&d, order)?;
        let mut out = doc.clone();
        out.deformation = ext
            .deformation
            .nu
            .iter()
            .zip(&ext.deformation.alpha)
            .map(|(b, a)| DeformationTerm {
                bracket: b.clone(),
                alpha: a.clone(),
            })
            .collect();
        r.data.insert("obstructed_at".into(), json!(ext.obstructed_at));
        r.data.insert("extension".into(), out.to_value());
    }
    Ok(r)
}

fn cmd_bracket(doc: &AlgebraDocument, path: &Path) -> Step<Report> {
    let mut r = Report::new("bracket", doc.to_value());
    let b = bialgebra(doc, path)?;
    let mc = mc_check_bialgebra(&b)?;
    r.finding("⟦ν,ν⟧ = 0", mc.bracket_part.is_zero(), "");
    r.finding("⟦ν,δ⟧ + ⟦δ,ν⟧ = 0", mc.mixed_part.is_zero(), "");
    r.finding("⟦δ,δ⟧ = 0", mc.cobracket_part.is_zero(), "");
    let axioms = b.validate().passed();
    r.data.insert("axioms_hold".into(), json!(axioms));
    r.data.insert("maurer_cartan".into(), json!(mc.holds()));
    if mc.holds() != axioms {
        r.finding("Maurer–Cartan iff bialgebra axioms", false, format!("MC {}, axioms {axioms}", mc.holds()));
    }
    Ok(r)
}

fn cmd_bialg(doc: &AlgebraDocument, path: &Path, max_degree: Option<usize>) -> Step<Report> {
    let mut r = Report::new("bialg", doc.to_value());
    let b = bialgebra(doc, path)?;
    if !validate_into(&mut r, doc)? {
        return Ok(r);
    }
    let top = max_degree.unwrap_or(b.n() + 1);
    let signs = BialgSigns::default();
    r.tables.push(Table::new("bialgebra complex", &bialg_cohomology(&b, top, &signs)?));
    let sq = verify_d_squared(&b, top, &signs)?;
    let detail = sq.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; ");
    r.finding("∂∘∂ = 0", sq.passed(), detail);
    Ok(r)
}

fn cmd_morphism(doc: &AlgebraDocument, gamma: &RatMatrix, max_degree: Option<usize>) -> Step<Report> {
    let mut r = Report::new("morphism", doc.to_value());
    r.data.insert("gamma".into(), matrix_value(gamma));
    let n = doc.dim;
    let top = max_degree.unwrap_or(n + 1);
    let invertible = invert(gamma).is_ok();
    if let Some(b) = doc.bialgebra()? {
        let signs = MorphismSigns::default();
        let diffs = (1..=top).map(|k| bialg_morphism_differential(&b, gamma, k, &signs).map(|d| d.matrix())).collect::<Result<Vec<_>, _>>()?;
        let source = Table::from_differentials("complex of γ", &diffs);
        let tw = b.yau_twist(gamma, TwistMode::Both)?;
        let target = Table::new("bialgebra complex of the twist", &bialg_cohomology(&tw, top, &BialgSigns::default())?);
        let chain = verify_phi_chain_map(&b, gamma, top, &signs)?;
        let detail = chain.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; ");
        r.finding("Φ is a chain map", chain.passed(), detail);
        compare(&mut r, invertible, &source, &target);
        r.tables.extend([source, target]);
        return Ok(r);
    }
    let g = doc.algebra()?;
    let diffs = (1..=top).map(|k| morphism_differential(&g, gamma, k)).collect::<Result<Vec<_>, _>>()?;
    let source = Table::from_differentials("complex of γ", &diffs);
    let tw = g.yau_twist(gamma)?;
    let target_diffs: Vec<RatMatrix> = (1..=top).map(|k| total_differential(&tw, &tw.adjoint(), k)).collect();
    let target = Table::from_differentials("α-type complex of the twist", &target_diffs);
    let bad: Vec<usize> = (1..=top)
        .filter(|&k| phi_matrix(&g, gamma, k + 1).matmul(&diffs[k - 1]) != target_diffs[k - 1].matmul(&phi_matrix(&g, gamma, k)))
        .collect();
    let detail = if bad.is_empty() { String::new() } else { format!("fails in degrees {bad:?}") };
    r.finding("Φ is a chain map", bad.is_empty(), detail);
    compare(&mut r, invertible, &source, &target);
    r.tables.extend([source, target]);
    Ok(r)
}

fn compare(r: &mut Report, invertible: bool, source: &Table, target: &Table) {
    r.data.insert("gamma_invertible".into(), json!(invertible));
    if invertible {
        r.finding("cohomology dimensions agree", source.h_dims() == target.h_dims(), "");
    }
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let common = match &cli.command {
        Command::Validate(c) | Command::Derivations(c) | Command::Bracket(c) => c,
        Command::Cohomology { common, .. }
        | Command::Twist { common, .. }
        | Command::Deform { common, .. }
        | Command::Bialg { common, .. }
        | Command::Morphism { common, .. } => common,
    };
    let json_out = common.json;
    match execute(&cli.command, common) {
        Ok(report) => Outcome {
            code: if report.all_hold() { EXIT_OK } else { EXIT_UNMET },
            stdout: if json_out { report.to_json() + "\n" } else { report.to_text() },
            stderr: String::new(),
        },
        Err(Failure::Usage(m)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Unmet(m)) => Outcome {
            code: EXIT_UNMET,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
    }
}

fn execute(cmd: &Command, common: &Common) -> Step<Report> {
    let path = common.file.as_path();
    let doc = load(path)?;
    match cmd {
        Command::Validate(_) => cmd_validate(&doc),
        Command::Cohomology { max_degree, module, adjoint, .. } => {
            let m = module.as_deref().map(|p| load_module(p, doc.dim)).transpose()?;
            cmd_cohomology(&doc, *max_degree, m, *adjoint)
        }
        Command::Twist { gamma, .. } => cmd_twist(&doc, &load_gamma(gamma, doc.dim)?),
        Command::Derivations(_) => cmd_derivations(&doc),
        Command::Deform { order, .. } => cmd_deform(&doc, *order),
        Command::Bracket(_) => cmd_bracket(&doc, path),
        Command::Bialg { max_degree, .. } => cmd_bialg(&doc, path, *max_degree),
        Command::Morphism { gamma, max_degree, .. } => cmd_morphism(&doc, &load_gamma(gamma, doc.dim)?, *max_degree),
    }
}
