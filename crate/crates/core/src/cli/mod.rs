//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse error, 2 validation error or failed check,
//! 3 degenerate input.

pub mod document;
pub mod recursion;
pub mod svg;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::geometry::{
    edge_slopes, is_good, lift, lower_subdivision, newton_polytope_3d, polygon_at_q0, polygon_at_q1,
    GeometryError,
};
use crate::knots::{self, AjOutcome, KnotEntry, KnotError};
use crate::par::Execution;
use crate::poly::{fmt_rational, parse_rational};
use crate::qholo::{self, check_prop1, degree_data, fit_points, QholoError, RationalFunctionSeq};
use crate::tropical::{self, balancing_check, curve_of, duality_report, Convention, TropicalError, Window};
use crate::weyl::{homogenize, WeylElement, WeylError};

pub use document::{CurveDocument, Metadata};

#[derive(Debug, Parser)]
#[command(name = "qtrop", version, about = "Tropical curves of q-holonomic sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct InputArgs {
    /// Shipped knot (4_1, 5_2, 6_1) or a knot data file.
    #[arg(long)]
    pub knot: Option<String>,
    /// Weyl algebra element such as "L - q*M^2" (LM = qML).
    #[arg(long)]
    pub poly: Option<String>,
    /// Knot data file, or a file holding one Weyl algebra element.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Use the non-homogeneous operator (default).
    #[arg(long, conflicts_with = "homogeneous")]
    pub nonhomogeneous: bool,
    /// Use the homogeneous operator (the shipped one, else homogenize).
    #[arg(long)]
    pub homogeneous: bool,
    /// Tropical sign convention: max reproduces the reference vertex lists,
    /// min is its reflection through the origin.
    #[arg(long, default_value = "max")]
    pub convention: Convention,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tropical curve as a JSON document.
    Curve {
        #[command(flatten)]
        input: InputArgs,
        /// Every shipped knot, as one JSON object keyed by name.
        #[arg(long)]
        all_knots: bool,
        /// Write the document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Newton subdivision induced by the lifted exponents.
    Subdivision {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Newton polygons N_{P,0}, N_{P,1} and the Newton polytope.
    Polygon {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Edge slopes of N_{P,0}.
    Slopes {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// q-degrees of a sequence and their quasi-polynomial fits.
    Degrees {
        /// Recursion file with `operator:`, optional `rhs:` and `f0:`, `f1:`, ... lines.
        #[arg(long)]
        recursion: Option<PathBuf>,
        /// Shipped knot whose colored Jones sequence to use.
        #[arg(long)]
        knot: Option<String>,
        /// Last index n of the sequence.
        #[arg(long = "N", default_value_t = 40)]
        n: usize,
        /// Largest quasi-polynomial period tried.
        #[arg(long, default_value_t = 8)]
        max_period: usize,
        #[arg(long)]
        json: bool,
    },
    /// Structural checks on an operator or sequence.
    Check {
        #[command(subcommand)]
        check: CheckCommand,
    },
    /// SVG drawing of a curve.
    Svg {
        #[command(flatten)]
        input: InputArgs,
        /// Curve document produced by `curve`, instead of an operator.
        #[arg(long)]
        doc: Option<PathBuf>,
        /// x0,y0,x1,y1 as rationals.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Pixels per unit.
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shipped knot data.
    Dataset {
        #[command(subcommand)]
        command: DatasetCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// A_K(M, L, 1) against the product of the classical factors.
    Aj {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Balancing at every vertex and duality with the subdivision.
    Balance {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        all_knots: bool,
    },
    /// N_{P,1} = N_{P,0}.
    Good {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        all_knots: bool,
    },
    /// Sequence slopes contained in the negated edge slopes.
    Prop1 {
        #[arg(long)]
        recursion: Option<PathBuf>,
        #[arg(long)]
        knot: Option<String>,
        #[arg(long)]
        all_knots: bool,
        #[arg(long = "N", default_value_t = 40)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
    },
    /// N_{P,0} as the classical Newton polygon plus a vertical segment.
    Shift {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum DatasetCommand {
    /// Shipped knots with term counts and degrees.
    List,
    /// Annihilation round trip and Laurent values for n = 0..N.
    Validate {
        #[arg(long)]
        knot: Option<String>,
        #[arg(long = "N", default_value_t = 8)]
        n: i64,
    },
}

/// Result of a command: exit code and the text for each stream.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn parse(m: impl ToString) -> Self {
        CliError {
            code: 1,
            message: m.to_string(),
        }
    }

    fn invalid(m: impl ToString) -> Self {
        CliError {
            code: 2,
            message: m.to_string(),
        }
    }

    fn degenerate(m: impl ToString) -> Self {
        CliError {
            code: 3,
            message: m.to_string(),
        }
    }
}

impl From<WeylError> for CliError {
    fn from(e: WeylError) -> Self {
        match e {
            WeylError::Poly(_) | WeylError::UnknownVariable(_) | WeylError::UnexpectedL => CliError::parse(e),
            WeylError::ZeroOperator => CliError::degenerate(e),
            _ => CliError::invalid(e),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::ContainmentViolated | GeometryError::CoordinateOverflow => CliError::invalid(e),
            _ => CliError::degenerate(e),
        }
    }
}

impl From<TropicalError> for CliError {
    fn from(e: TropicalError) -> Self {
        match e {
            TropicalError::Geometry(g) => g.into(),
            TropicalError::Empty | TropicalError::EmptyWindow => CliError::degenerate(e),
            TropicalError::InconsistentDual => CliError::invalid(e),
        }
    }
}

impl From<QholoError> for CliError {
    fn from(e: QholoError) -> Self {
        match e {
            QholoError::Weyl(w) => w.into(),
            QholoError::Poly(_) => CliError::parse(e),
            QholoError::Geometry(g) => g.into(),
            QholoError::ZeroOperator | QholoError::ZeroValue { .. } => CliError::degenerate(e),
            _ => CliError::invalid(e),
        }
    }
}

impl From<KnotError> for CliError {
    fn from(e: KnotError) -> Self {
        match e {
            KnotError::Format { .. }
            | KnotError::Parse { .. }
            | KnotError::Io { .. }
            | KnotError::Unknown(_) => CliError::parse(e),
            KnotError::Qholo(q) => q.into(),
            KnotError::Weyl(w) => w.into(),
            KnotError::Geometry(g) => g.into(),
            _ => CliError::invalid(e),
        }
    }
}

/// An operator together with a description of where it came from.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub op: WeylElement,
    pub source: String,
    pub entry: Option<KnotEntry>,
}

fn operator_of(entry: KnotEntry, homogeneous: bool) -> Result<Resolved, CliError> {
    let (op, source) = if homogeneous {
        match &entry.homogeneous_op {
            Some(h) => (h.clone(), format!("{} homogeneous (shipped)", entry.name)),
            None => (
                entry.homogenized()?,
                format!("{} homogeneous (homogenize(A^nh, B))", entry.name),
            ),
        }
    } else {
        (
            entry.nonhomogeneous_op.clone(),
            format!("{} nonhomogeneous", entry.name),
        )
    };
    Ok(Resolved {
        op,
        source,
        entry: Some(entry),
    })
}

pub fn resolve(input: &InputArgs) -> Result<Resolved, CliError> {
    let given = [input.knot.is_some(), input.poly.is_some(), input.file.is_some()];
    match given.iter().filter(|b| **b).count() {
        0 => return Err(CliError::parse("give one of --knot, --poly, --file")),
        1 => {}
        _ => return Err(CliError::parse("--knot, --poly and --file are exclusive")),
    }
    if let Some(name) = &input.knot {
        return operator_of(knots::load(name)?, input.homogeneous);
    }
    if let Some(text) = &input.poly {
        let op = WeylElement::parse(text)?;
        return Ok(Resolved {
            op,
            source: format!("poly {text}"),
            entry: None,
        });
    }
    let path = input.file.as_ref().expect("counted above");
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    if text.lines().any(|l| l.trim_start().starts_with("knot:")) {
        return operator_of(knots::entry_from_text(&text)?, input.homogeneous);
    }
    let body: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Resolved {
        op: WeylElement::parse(&body)?,
        source: format!("file {}", path.display()),
        entry: None,
    })
}

pub fn parse_window(s: &str) -> Result<Window, CliError> {
    let parts: Vec<_> = s.split(',').map(|p| parse_rational(p.trim())).collect();
    match parts.as_slice() {
        [Some(a), Some(b), Some(c), Some(d)] => Window::new(a.clone(), b.clone(), c.clone(), d.clone())
            .map_err(|e| CliError::degenerate(format!("window {s:?}: {e}"))),
        _ => Err(CliError::parse(format!("window {s:?}: expected x0,y0,x1,y1"))),
    }
}

/// Curve document of a resolved operator.
pub fn curve_document(r: &Resolved, conv: Convention) -> Result<CurveDocument, CliError> {
    if r.op.is_zero() {
        return Err(CliError::degenerate("zero operator has no tropical curve"));
    }
    let tp = tropical::tropicalize_with(&r.op, conv)?;
    if tp.len() < 2 {
        return Err(CliError::degenerate(
            "support is a single point: the tropical curve is empty",
        ));
    }
    let (c, _) = curve_of(&r.op, conv)?;
    Ok(CurveDocument::new(
        &c,
        document::metadata_for(&r.op, &r.source, conv),
    ))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn write_or_print(out: &Option<PathBuf>, text: String) -> Result<Outcome, CliError> {
    match out {
        Some(p) => {
            std::fs::write(p, &text)
                .map_err(|e| CliError::invalid(format!("cannot write {}: {e}", p.display())))?;
            Ok(Outcome {
                code: 0,
                stdout: format!("wrote {}\n", p.display()),
                stderr: String::new(),
            })
        }
        None => Ok(ok(text)),
    }
}

fn ok(stdout: String) -> Outcome {
    Outcome {
        code: 0,
        stdout,
        stderr: String::new(),
    }
}

fn check_result(pass: bool, stdout: String) -> Outcome {
    Outcome {
        code: if pass { 0 } else { 2 },
        stdout,
        stderr: String::new(),
    }
}

fn builtin_entries() -> Vec<KnotEntry> {
    knots::load_builtin()
}

#[derive(Serialize)]
struct CellDoc {
    polygon: Vec<[i64; 2]>,
    marked: Vec<[i64; 2]>,
}

#[derive(Serialize)]
struct SubdivisionDoc {
    support: Vec<[i64; 2]>,
    cells: Vec<CellDoc>,
    interior_edges: Vec<[[i64; 2]; 2]>,
    boundary_edges: Vec<[[i64; 2]; 2]>,
    segments: Vec<[[i64; 2]; 2]>,
}

fn pt(p: &(i64, i64)) -> [i64; 2] {
    [p.0, p.1]
}

fn cmd_subdivision(input: &InputArgs, json: bool) -> Result<Outcome, CliError> {
    let r = resolve(input)?;
    if r.op.is_zero() {
        return Err(CliError::degenerate("zero operator"));
    }
    let s = lower_subdivision(&lift(&r.op))?;
    let doc = SubdivisionDoc {
        support: s.support.vertices().iter().map(pt).collect(),
        cells: s
            .cells
            .iter()
            .map(|c| CellDoc {
                polygon: c.polygon.vertices().iter().map(pt).collect(),
                marked: c.marked.iter().map(pt).collect(),
            })
            .collect(),
        interior_edges: s.interior_edges.iter().map(|e| [pt(&e.a), pt(&e.b)]).collect(),
        boundary_edges: s.boundary_edges.iter().map(|e| [pt(&e.a), pt(&e.b)]).collect(),
        segments: s.segments.iter().map(|e| [pt(&e.a), pt(&e.b)]).collect(),
    };
    if json {
        return Ok(ok(to_json(&doc)));
    }
    let mut o = String::new();
    let _ = writeln!(o, "source: {}", r.source);
    let _ = writeln!(o, "support: {}", s.support);
    let _ = writeln!(o, "cells: {}", s.cells.len());
    for (i, c) in s.cells.iter().enumerate() {
        let marked: Vec<String> = c.marked.iter().map(|p| format!("({},{})", p.0, p.1)).collect();
        let _ = writeln!(o, "  cell {i}: {} marked {}", c.polygon, marked.join(" "));
    }
    let edge = |e: &crate::geometry::SubdivisionEdge| {
        format!(
            "({},{})-({},{}) length {}",
            e.a.0,
            e.a.1,
            e.b.0,
            e.b.1,
            e.lattice_length()
        )
    };
    let _ = writeln!(o, "interior edges: {}", s.interior_edges.len());
    for e in &s.interior_edges {
        let _ = writeln!(o, "  {}", edge(e));
    }
    let _ = writeln!(o, "boundary edges: {}", s.boundary_edges.len());
    for e in &s.boundary_edges {
        let _ = writeln!(o, "  {}", edge(e));
    }
    if !s.segments.is_empty() {
        let _ = writeln!(o, "segments: {}", s.segments.len());
        for e in &s.segments {
            let _ = writeln!(o, "  {}", edge(e));
        }
    }
    Ok(ok(o))
}

#[derive(Serialize)]
struct PolygonDoc {
    source: String,
    n_p0: Vec<[i64; 2]>,
    n_p1: Option<Vec<[i64; 2]>>,
    good: Option<bool>,
    polytope_dim: usize,
    polytope_vertices: Vec<[i64; 3]>,
}

fn cmd_polygon(input: &InputArgs, json: bool) -> Result<Outcome, CliError> {
    let r = resolve(input)?;
    let n0 = polygon_at_q0(&r.op)?;
    let n1 = polygon_at_q1(&r.op).ok();
    let good = is_good(&r.op).ok();
    let poly3 = newton_polytope_3d(&r.op)?;
    let doc = PolygonDoc {
        source: r.source.clone(),
        n_p0: n0.vertices().iter().map(pt).collect(),
        n_p1: n1.as_ref().map(|p| p.vertices().iter().map(pt).collect()),
        good,
        polytope_dim: poly3.dim,
        polytope_vertices: poly3.vertices.iter().map(|v| [v.l, v.m, v.k]).collect(),
    };
    if json {
        return Ok(ok(to_json(&doc)));
    }
    let mut o = String::new();
    let _ = writeln!(o, "source: {}", r.source);
    let _ = writeln!(o, "N_P0: {n0}");
    match &n1 {
        Some(p) => {
            let _ = writeln!(o, "N_P1: {p}");
        }
        None => {
            let _ = writeln!(o, "N_P1: undefined (P vanishes at q = 1)");
        }
    }
    if let Some(g) = good {
        let _ = writeln!(o, "good: {g}");
    }
    let _ = writeln!(
        o,
        "Newton polytope: dimension {}, {} vertices, {} lattice points in the support",
        poly3.dim,
        poly3.vertices.len(),
        poly3.points.len()
    );
    Ok(ok(o))
}

fn cmd_slopes(input: &InputArgs, json: bool) -> Result<Outcome, CliError> {
    let r = resolve(input)?;
    let s = edge_slopes(&polygon_at_q0(&r.op)?)?;
    if json {
        let doc = BTreeMap::from([
            ("slopes", s.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            (
                "negated",
                s.negated().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            ),
        ]);
        return Ok(ok(to_json(&doc)));
    }
    Ok(ok(format!("{s}\nnegated: {}\n", s.negated())))
}

fn sequence_from(
    recursion: &Option<PathBuf>,
    knot: &Option<String>,
    n: usize,
) -> Result<(RationalFunctionSeq, WeylElement, String), CliError> {
    match (recursion, knot) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
            let rf = recursion::parse_recursion(&text).map_err(CliError::parse)?;
            let sys = rf.system()?;
            let seq = qholo::evaluate(&sys, n)?;
            let p = if rf.rhs.is_zero() {
                rf.operator.clone()
            } else {
                homogenize(&rf.operator, &rf.rhs)?
            };
            Ok((seq, p, format!("recursion {}", path.display())))
        }
        (None, Some(name)) => {
            let e = knots::load(name)?;
            let seq = e.sequence(n)?;
            let p = e.homogenized()?;
            Ok((seq, p, format!("knot {}", e.name)))
        }
        _ => Err(CliError::parse("give exactly one of --recursion, --knot")),
    }
}

#[derive(Serialize)]
struct DegreesDoc {
    source: String,
    degrees: Vec<(i64, Option<i64>, Option<i64>)>,
    max_fit: Option<String>,
    max_slopes: Option<String>,
    min_fit: Option<String>,
    min_slopes: Option<String>,
}

fn cmd_degrees(
    recursion: &Option<PathBuf>,
    knot: &Option<String>,
    n: usize,
    max_period: usize,
    json: bool,
) -> Result<Outcome, CliError> {
    let (seq, _, source) = sequence_from(recursion, knot, n)?;
    let values = &seq.values()[..=n.min(seq.len() - 1)];
    let rows: Vec<(i64, Option<i64>, Option<i64>)> = values
        .iter()
        .enumerate()
        .map(|(k, v)| (k as i64, v.deg_q().ok(), v.min_deg_q().ok()))
        .collect();
    let fit = |min: bool| degree_data(values, min).and_then(|d| fit_points(&d, max_period));
    let (maxf, minf) = (fit(false), fit(true));
    let doc = DegreesDoc {
        source: source.clone(),
        degrees: rows.clone(),
        max_fit: maxf.as_ref().ok().map(|f| f.to_string()),
        max_slopes: maxf.as_ref().ok().map(|f| qholo::slopes(f).to_string()),
        min_fit: minf.as_ref().ok().map(|f| f.to_string()),
        min_slopes: minf.as_ref().ok().map(|f| qholo::slopes(f).to_string()),
    };
    let fits_ok = maxf.is_ok() && minf.is_ok();
    if json {
        return Ok(check_result(fits_ok, to_json(&doc)));
    }
    let mut o = String::new();
    let _ = writeln!(o, "source: {source}");
    let _ = writeln!(o, "{:>4} {:>8} {:>8}", "n", "deg_q", "min_deg");
    let show = |d: Option<i64>| d.map_or("-".to_string(), |v| v.to_string());
    for (k, d, m) in &rows {
        let _ = writeln!(o, "{k:>4} {:>8} {:>8}", show(*d), show(*m));
    }
    for (label, f) in [("max-degree", &maxf), ("min-degree", &minf)] {
        match f {
            Ok(q) => {
                let _ = writeln!(o, "{label} fit: {q}");
                let _ = writeln!(o, "{label} slopes: {}", qholo::slopes(q));
            }
            Err(e) => {
                let _ = writeln!(o, "{label} fit: none ({e})");
            }
        }
    }
    Ok(check_result(fits_ok, o))
}

fn cmd_check(c: &CheckCommand) -> Result<Outcome, CliError> {
    match c {
        CheckCommand::Aj { input } => {
            let r = resolve(input)?;
            let entry = r
                .entry
                .ok_or_else(|| CliError::parse("check aj needs --knot or a knot file"))?;
            Ok(match knots::verify_aj(&entry)? {
                AjOutcome::Equal => check_result(true, "aj: true\n".into()),
                AjOutcome::UpToMonomial { c, m, l } => check_result(
                    false,
                    format!(
                        "aj: equal up to the monomial {} * M^{m} * L^{l}\n",
                        fmt_rational(&c)
                    ),
                ),
                AjOutcome::Different => check_result(false, "aj: false\n".into()),
            })
        }
        CheckCommand::Balance { input, all_knots } => {
            let targets = if *all_knots {
                builtin_resolved(input.homogeneous)?
            } else {
                vec![resolve(input)?]
            };
            let conv = input.convention;
            let reports = Execution::available().map(&targets, |r| balance_report(r, conv));
            let mut pass = true;
            let mut o = String::new();
            for rep in reports {
                let (p, text) = rep?;
                pass &= p;
                o.push_str(&text);
            }
            Ok(check_result(pass, o))
        }
        CheckCommand::Good { input, all_knots } => {
            if *all_knots {
                let rows = knots::goodness_table(&builtin_entries());
                let mut o = String::new();
                let mut pass = true;
                for r in rows {
                    let g = matches!(r.good, Ok(true));
                    pass &= g;
                    let _ = writeln!(o, "{} {}: good: {g}", r.knot, r.operator);
                }
                return Ok(check_result(pass, o));
            }
            let r = resolve(input)?;
            let g = is_good(&r.op)?;
            Ok(check_result(g, format!("good: {g}\n")))
        }
        CheckCommand::Prop1 {
            recursion,
            knot,
            all_knots,
            n,
            max_period,
        } => {
            let names: Vec<Option<String>> = if *all_knots {
                knots::BUILTIN.iter().map(|s| Some(s.to_string())).collect()
            } else {
                vec![knot.clone()]
            };
            let results = Execution::available().map(&names, |k| -> Result<(bool, String), CliError> {
                let (seq, p, source) = sequence_from(recursion, k, *n)?;
                let rep = check_prop1(&p, &seq.values()[..=*n], *max_period)?;
                Ok((rep.contained, format!("source: {source}\n{rep}\n")))
            });
            let mut pass = true;
            let mut o = String::new();
            for r in results {
                let (p, t) = r?;
                pass &= p;
                o.push_str(&t);
            }
            Ok(check_result(pass, o))
        }
        CheckCommand::Shift { input } => {
            let r = resolve(input)?;
            let entry = r
                .entry
                .ok_or_else(|| CliError::parse("check shift needs --knot or a knot file"))?;
            let rep = knots::verify_vertical_shift(&entry)?;
            let mut o = format!(
                "N_P0: {}\nclassical factor polygon: {}\n",
                rep.polygon, rep.factor_polygon
            );
            match rep.found {
                Some((h, a)) => {
                    let _ = writeln!(o, "shift: vertical segment of height {h} at ({},{})", a.0, a.1);
                }
                None => o.push_str("shift: none\n"),
            }
            Ok(check_result(rep.found.is_some(), o))
        }
    }
}

fn builtin_resolved(homogeneous: bool) -> Result<Vec<Resolved>, CliError> {
    builtin_entries()
        .into_iter()
        .map(|e| operator_of(e, homogeneous))
        .collect()
}

fn balance_report(r: &Resolved, conv: Convention) -> Result<(bool, String), CliError> {
    let (c, s) = curve_of(&r.op, conv)?;
    let b = balancing_check(&c);
    let d = duality_report(&c, &s);
    let mut o = String::new();
    let _ = writeln!(o, "source: {}", r.source);
    let _ = writeln!(o, "balanced: {}", b.balanced);
    for (v, def) in &b.defects {
        let _ = writeln!(
            o,
            "  defect at vertex {v} {}: ({}, {})",
            tropical::fmt_point(&c.vertices[*v]),
            def.0,
            def.1
        );
    }
    let _ = writeln!(
        o,
        "vertices {} / 2-cells {}; bounded edges {} / interior edges {}; rays {} / boundary edges {}; lines {} / segments {}",
        d.vertices, d.cells, d.bounded_edges, d.interior_edges, d.rays, d.boundary_edges, d.lines, d.segments
    );
    for m in &d.mismatches {
        let _ = writeln!(o, "  mismatch: {m}");
    }
    let _ = writeln!(o, "duality: {}", d.ok());
    Ok((b.balanced && d.ok(), o))
}

fn cmd_svg(
    input: &InputArgs,
    doc: &Option<PathBuf>,
    window: &Option<String>,
    scale: f64,
    out: &Option<PathBuf>,
) -> Result<Outcome, CliError> {
    let c = match doc {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
            let d: CurveDocument = serde_json::from_str(&text).map_err(CliError::parse)?;
            d.to_curve().map_err(CliError::invalid)?
        }
        None => {
            let r = resolve(input)?;
            if r.op.is_zero() {
                return Err(CliError::degenerate("zero operator"));
            }
            curve_of(&r.op, input.convention)?.0
        }
    };
    if scale.is_nan() || scale <= 0.0 {
        return Err(CliError::parse("scale must be positive"));
    }
    let w = window.as_deref().map(parse_window).transpose()?;
    let text = svg::render(&c, w, scale)?;
    write_or_print(out, text)
}

fn cmd_dataset(c: &DatasetCommand) -> Result<Outcome, CliError> {
    match c {
        DatasetCommand::List => {
            let mut o = String::new();
            let _ = writeln!(
                o,
                "{:<6} {:>6} {:>6} {:>8} {:>8} {:>10}",
                "knot", "twist", "terms", "order", "initial", "vertices"
            );
            for e in builtin_entries() {
                let _ = writeln!(
                    o,
                    "{:<6} {:>6} {:>6} {:>8} {:>8} {:>10}",
                    e.name,
                    e.twist_index().map_or("-".into(), |p| p.to_string()),
                    e.nonhomogeneous_op.term_count(),
                    e.nonhomogeneous_op.order().unwrap_or(0),
                    e.initial_values.len(),
                    e.expected_vertices.len()
                );
            }
            Ok(ok(o))
        }
        DatasetCommand::Validate { knot, n } => {
            let entries = match knot {
                Some(k) => vec![knots::load(k)?],
                None => builtin_entries(),
            };
            let reports = Execution::available().map(&entries, |e| knots::validate(e, *n));
            let mut pass = true;
            let mut o = String::new();
            for (e, r) in entries.iter().zip(reports) {
                let r = r?;
                pass &= r.ok();
                let _ = writeln!(o, "{r}");
                if let Some(p) = e.twist_index() {
                    let m = knots::metadata_check(e, p);
                    pass &= m.ok();
                    let _ = writeln!(o, "  {m}");
                }
            }
            Ok(check_result(pass, o))
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Curve {
            input,
            all_knots,
            out,
        } => {
            if *all_knots {
                let targets = builtin_resolved(input.homogeneous)?;
                let docs = Execution::available().map(&targets, |r| curve_document(r, input.convention));
                let mut map = BTreeMap::new();
                for (r, d) in targets.iter().zip(docs) {
                    map.insert(r.entry.as_ref().map_or(r.source.clone(), |e| e.name.clone()), d?);
                }
                return write_or_print(out, to_json(&map));
            }
            let r = resolve(input)?;
            write_or_print(out, to_json(&curve_document(&r, input.convention)?))
        }
        Command::Subdivision { input, json } => cmd_subdivision(input, *json),
        Command::Polygon { input, json } => cmd_polygon(input, *json),
        Command::Slopes { input, json } => cmd_slopes(input, *json),
        Command::Degrees {
            recursion,
            knot,
            n,
            max_period,
            json,
        } => cmd_degrees(recursion, knot, *n, *max_period, *json),
        Command::Check { check } => cmd_check(check),
        Command::Svg {
            input,
            doc,
            window,
            scale,
            out,
        } => cmd_svg(input, doc, window, *scale, out),
        Command::Dataset { command } => cmd_dataset(command),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ok(text),
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => Outcome {
            code: e.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message),
        },
    }
}
