//! Shipped knot data (4_1, 5_2, 6_1), the data file format, and knot-level
//! checks: AJ identity, vertical Minkowski shift, goodness, twist-knot
//! metadata.

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::geometry::{is_good, minkowski_sum, polygon_at_q0, GeometryError, LatticePolygon, Point2};
use crate::par::Execution;
use crate::poly::{parse_rational, Polynomial, QLaurent, Rational, RationalFunction};
use crate::qholo::{evaluate, QholoError, RationalFunctionSeq, RecursionSystem};
use crate::tropical::RPoint;
use crate::weyl::{apply, eval_mq, homogenize, mq_polynomial, WeylElement, WeylError};

const DATA_4_1: &str = include_str!("../data/4_1.knot");
const DATA_5_2: &str = include_str!("../data/5_2.knot");
const DATA_6_1: &str = include_str!("../data/6_1.knot");

pub const BUILTIN: [&str; 3] = ["4_1", "5_2", "6_1"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("unknown knot {0:?} (shipped: 4_1, 5_2, 6_1; or give a data file path)")]
    Unknown(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("record {role} (line {line}): {source}")]
    Parse {
        role: String,
        line: usize,
        source: WeylError,
    },
    #[error("missing record {0}")]
    Missing(String),
    #[error("{knot}: expected {expected} terms, found {found}")]
    TermCount {
        knot: String,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Qholo(#[from] QholoError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// One `knot:` / `role:` / `vars:` header plus its polynomial text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub knot: String,
    pub role: String,
    pub vars: Vec<String>,
    pub body: String,
    pub line: usize,
}

/// Splits a data file into records. `#` starts a comment line; a record ends
/// at a blank line or at the next header.
pub fn parse_records(text: &str) -> Result<Vec<Record>, KnotError> {
    let mut out: Vec<Record> = Vec::new();
    let mut cur: Option<Record> = None;
    let mut knot = String::new();
    let flush = |cur: &mut Option<Record>, out: &mut Vec<Record>| -> Result<(), KnotError> {
        if let Some(r) = cur.take() {
            if r.body.trim().is_empty() {
                return Err(KnotError::Format {
                    line: r.line,
                    msg: format!("record {} has no polynomial", r.role),
                });
            }
            out.push(r);
        }
        Ok(())
    };
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let l = raw.trim();
        if l.starts_with('#') {
            continue;
        }
        if l.is_empty() {
            flush(&mut cur, &mut out)?;
            continue;
        }
        if let Some((key, value)) = l.split_once(':') {
            let value = value.trim();
            match key.trim() {
                "knot" => {
                    flush(&mut cur, &mut out)?;
                    knot = value.to_string();
                    continue;
                }
                "role" => {
                    flush(&mut cur, &mut out)?;
                    if knot.is_empty() {
                        return Err(KnotError::Format {
                            line,
                            msg: "role before knot".into(),
                        });
                    }
                    cur = Some(Record {
                        knot: knot.clone(),
                        role: value.to_string(),
                        vars: vec![],
                        body: String::new(),
                        line,
                    });
                    continue;
                }
                "vars" => {
                    let r = cur.as_mut().ok_or(KnotError::Format {
                        line,
                        msg: "vars before role".into(),
                    })?;
                    r.vars = value.split_whitespace().map(String::from).collect();
                    continue;
                }
                _ => {}
            }
        }
        match cur.as_mut() {
            Some(r) if !r.vars.is_empty() => {
                r.body.push_str(l);
                r.body.push('\n');
            }
            _ => {
                return Err(KnotError::Format {
                    line,
                    msg: "polynomial text outside a record".into(),
                })
            }
        }
    }
    flush(&mut cur, &mut out)?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotEntry {
    pub name: String,
    pub nonhomogeneous_op: WeylElement,
    /// `B_K(M, q)`.
    pub rhs: Polynomial,
    pub homogeneous_op: Option<WeylElement>,
    /// Factors of the classical A-polynomial in `(M, L)`.
    pub classical_factors: Vec<Polynomial>,
    pub initial_values: Vec<RationalFunction>,
    pub expected_vertices: Vec<RPoint>,
    pub expected_homogeneous_vertices: Vec<RPoint>,
    pub expected_term_count: Option<usize>,
}

fn weyl_record(r: &Record) -> Result<WeylElement, KnotError> {
    WeylElement::parse_normal_form(&r.body, &r.vars).map_err(|source| KnotError::Parse {
        role: r.role.clone(),
        line: r.line,
        source,
    })
}

/// Builds an entry from the records of one knot and checks the term count
/// and the consistency of the initial values.
pub fn entry_from_text(text: &str) -> Result<KnotEntry, KnotError> {
    let records = parse_records(text)?;
    let name = records
        .first()
        .map(|r| r.knot.clone())
        .ok_or_else(|| KnotError::Missing("knot".into()))?;
    let mut nh = None;
    let mut rhs = None;
    let mut hom = None;
    let mut factors = Vec::new();
    let mut initial: Vec<(usize, RationalFunction)> = Vec::new();
    for r in records.iter().filter(|r| r.knot == name) {
        match r.role.as_str() {
            "nonhomogeneous_op" => nh = Some(weyl_record(r)?),
            "homogeneous_op" => hom = Some(weyl_record(r)?),
            "rhs" => {
                let p = weyl_record(r)?;
                rhs = Some(mq_polynomial(p.polynomial()).map_err(|source| KnotError::Parse {
                    role: r.role.clone(),
                    line: r.line,
                    source,
                })?);
            }
            "factor" => factors.push(weyl_record(r)?.at_q1()),
            role => {
                let Some(idx) = role.strip_prefix("initial_value:") else {
                    return Err(KnotError::Format {
                        line: r.line,
                        msg: format!("unknown role {role:?}"),
                    });
                };
                let n: usize = idx.trim().parse().map_err(|_| KnotError::Format {
                    line: r.line,
                    msg: format!("bad initial value index {idx:?}"),
                })?;
                let p = weyl_record(r)?;
                let q = mq_polynomial(p.polynomial()).map_err(|source| KnotError::Parse {
                    role: r.role.clone(),
                    line: r.line,
                    source,
                })?;
                initial.push((n, RationalFunction::from_laurent(eval_mq(&q, 0))));
            }
        }
    }
    initial.sort_by_key(|(n, _)| *n);
    if initial.iter().enumerate().any(|(k, (n, _))| k != *n) {
        return Err(KnotError::Missing("consecutive initial values from 0".into()));
    }
    let nonhomogeneous_op = nh.ok_or_else(|| KnotError::Missing("nonhomogeneous_op".into()))?;
    let expected_term_count = twist_index(&name).and_then(twist_term_count);
    if let Some(expected) = expected_term_count {
        let found = nonhomogeneous_op.term_count();
        if found != expected {
            return Err(KnotError::TermCount {
                knot: name,
                expected,
                found,
            });
        }
    }
    let entry = KnotEntry {
        expected_vertices: expected_vertices(&name, false),
        expected_homogeneous_vertices: expected_vertices(&name, true),
        name,
        nonhomogeneous_op,
        rhs: rhs.unwrap_or_else(|| Polynomial::zero(&["M", "q"])),
        homogeneous_op: hom,
        classical_factors: factors,
        initial_values: initial.into_iter().map(|(_, v)| v).collect(),
        expected_term_count,
    };
    entry.recursion()?;
    Ok(entry)
}

/// A shipped knot by name, or a data file by path.
pub fn load(name_or_path: &str) -> Result<KnotEntry, KnotError> {
    let text = match name_or_path {
        "4_1" => DATA_4_1.to_string(),
        "5_2" => DATA_5_2.to_string(),
        "6_1" => DATA_6_1.to_string(),
        other => {
            let p = Path::new(other);
            if !p.exists() {
                return Err(KnotError::Unknown(other.to_string()));
            }
            std::fs::read_to_string(p).map_err(|e| KnotError::Io {
                path: other.to_string(),
                msg: e.to_string(),
            })?
        }
    };
    entry_from_text(&text)
}

pub fn load_builtin() -> Vec<KnotEntry> {
    BUILTIN
        .iter()
        .map(|n| load(n).expect("shipped data is valid"))
        .collect()
}

impl KnotEntry {
    pub fn recursion(&self) -> Result<RecursionSystem, KnotError> {
        Ok(RecursionSystem::new(
            self.nonhomogeneous_op.clone(),
            &self.rhs,
            self.initial_values.clone(),
        )?)
    }

    /// `f_0 .. f_n`.
    pub fn sequence(&self, n: usize) -> Result<RationalFunctionSeq, KnotError> {
        Ok(evaluate(&self.recursion()?, n)?)
    }

    /// `homogenize(A^nh, B)`.
    pub fn homogenized(&self) -> Result<WeylElement, KnotError> {
        Ok(homogenize(&self.nonhomogeneous_op, &self.rhs)?)
    }

    pub fn twist_index(&self) -> Option<i64> {
        twist_index(&self.name)
    }

    /// The nontrivial factor of the classical A-polynomial: the one whose
    /// Newton polygon is two-dimensional.
    pub fn geometric_factor(&self) -> Option<&Polynomial> {
        self.classical_factors
            .iter()
            .find(|f| newton_polygon_ml(f).twice_area() > 0)
    }
}

/// Newton polygon in `(L, M)` of a polynomial over `[M, L]`.
pub fn newton_polygon_ml(p: &Polynomial) -> LatticePolygon {
    LatticePolygon::hull(p.terms().map(|(m, _)| (m.exponent(1), m.exponent(0))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub knot: String,
    pub checked_up_to: i64,
    pub laurent: bool,
    /// First `n` where `A^nh f != B(q^n, q)`.
    pub nonhomogeneous_failure: Option<i64>,
    /// First `n` where the homogenized operator fails to annihilate `f`.
    pub homogeneous_failure: Option<i64>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.laurent && self.nonhomogeneous_failure.is_none() && self.homogeneous_failure.is_none()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: n = 0..{}: laurent {}, A^nh f = B {}, homogenized annihilates {}",
            self.knot,
            self.checked_up_to,
            self.laurent,
            self.nonhomogeneous_failure.is_none(),
            self.homogeneous_failure.is_none()
        )
    }
}

/// Annihilation round trip for `n = 0..=n_max`, on values computed from the
/// stored recursion.
pub fn validate(entry: &KnotEntry, n_max: i64) -> Result<ValidationReport, KnotError> {
    validate_with(Execution::available(), entry, n_max)
}

pub fn validate_with(exec: Execution, entry: &KnotEntry, n_max: i64) -> Result<ValidationReport, KnotError> {
    let h = entry.homogenized()?;
    let need = n_max
        + h.order()
            .unwrap_or(0)
            .max(entry.nonhomogeneous_op.order().unwrap_or(0));
    let seq = entry.sequence(need as usize)?;
    let values = seq.values();
    let rows = exec.map_range(
        n_max.max(-1) as usize + 1,
        |k| -> Result<(bool, bool), KnotError> {
            let n = k as i64;
            let b = RationalFunction::from_laurent(eval_mq(&entry.rhs, n));
            Ok((
                apply(&entry.nonhomogeneous_op, values, n)? == b,
                apply(&h, values, n)?.is_zero(),
            ))
        },
    );
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let nonhomogeneous_failure = rows.iter().position(|r| !r.0).map(|k| k as i64);
    let homogeneous_failure = rows.iter().position(|r| !r.1).map(|k| k as i64);
    Ok(ValidationReport {
        knot: entry.name.clone(),
        checked_up_to: n_max,
        laurent: values.iter().all(|v| v.is_laurent()),
        nonhomogeneous_failure,
        homogeneous_failure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AjOutcome {
    Equal,
    /// Equal after multiplying the product of factors by `c * M^j * L^i`.
    UpToMonomial {
        c: Rational,
        m: i64,
        l: i64,
    },
    Different,
}

/// Compares `A_K(M, L, 1)` with the product of the stored factors.
pub fn verify_aj(entry: &KnotEntry) -> Result<AjOutcome, KnotError> {
    let op = entry
        .homogeneous_op
        .as_ref()
        .ok_or_else(|| KnotError::Missing("homogeneous_op".into()))?;
    if entry.classical_factors.is_empty() {
        return Err(KnotError::Missing("factor".into()));
    }
    Ok(compare_up_to_monomial(&op.at_q1(), &entry.classical_factors))
}

/// The AJ identity for the figure-eight knot.
pub fn verify_aj_41(entry: &KnotEntry) -> Result<bool, KnotError> {
    Ok(verify_aj(entry)? == AjOutcome::Equal)
}

pub fn compare_up_to_monomial(specialized: &Polynomial, factors: &[Polynomial]) -> AjOutcome {
    let mut prod = Polynomial::one(specialized.vars());
    for f in factors {
        prod = &prod * &f.embed(specialized.vars()).expect("same alphabet");
    }
    if *specialized == prod {
        return AjOutcome::Equal;
    }
    if specialized.len() != prod.len() || prod.is_zero() {
        return AjOutcome::Different;
    }
    let (m1, c1) = specialized.leading_term().expect("nonzero");
    let (m2, c2) = prod.leading_term().expect("nonzero");
    let shift = m1.div(m2);
    let c = c1 / c2;
    if prod.shift(&shift).scale(&c) == *specialized {
        AjOutcome::UpToMonomial {
            c,
            m: shift.exponent(0),
            l: shift.exponent(1),
        }
    } else {
        AjOutcome::Different
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftReport {
    pub polygon: LatticePolygon,
    pub factor_polygon: LatticePolygon,
    /// Height of the vertical segment and its lower endpoint, when found.
    pub found: Option<(i64, Point2)>,
}

/// `N_{P,0} = F + a + [0, h] e_M`, searched over `h = 0..=deg_M P`.
pub fn vertical_shift(
    polygon: &LatticePolygon,
    factor: &LatticePolygon,
    max_height: i64,
) -> Option<(i64, Point2)> {
    let (p0, f0) = (*polygon.vertices().first()?, *factor.vertices().first()?);
    // the lexicographically smallest vertex of a Minkowski sum is the sum of
    // the smallest vertices, and the segment's is its lower end
    let anchor = (p0.0 - f0.0, p0.1 - f0.1);
    (0..=max_height).find_map(|h| {
        let seg = LatticePolygon::hull([anchor, (anchor.0, anchor.1 + h)]);
        (minkowski_sum(factor, &seg) == *polygon).then_some((h, anchor))
    })
}

pub fn verify_vertical_shift(entry: &KnotEntry) -> Result<ShiftReport, KnotError> {
    let factor = entry
        .geometric_factor()
        .ok_or_else(|| KnotError::Missing("geometric factor".into()))?;
    let polygon = polygon_at_q0(&entry.nonhomogeneous_op)?;
    let factor_polygon = newton_polygon_ml(factor);
    let max_height = entry.nonhomogeneous_op.polynomial().degree(0).unwrap_or(0);
    let found = vertical_shift(&polygon, &factor_polygon, max_height);
    Ok(ShiftReport {
        polygon,
        factor_polygon,
        found,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodnessRow {
    pub knot: String,
    pub operator: &'static str,
    pub good: Result<bool, GeometryError>,
}

pub fn goodness_table(entries: &[KnotEntry]) -> Vec<GoodnessRow> {
    let mut rows = Vec::new();
    for e in entries {
        rows.push(GoodnessRow {
            knot: e.name.clone(),
            operator: "nonhomogeneous",
            good: is_good(&e.nonhomogeneous_op),
        });
        if let Some(h) = &e.homogeneous_op {
            rows.push(GoodnessRow {
                knot: e.name.clone(),
                operator: "homogeneous",
                good: is_good(h),
            });
        }
    }
    rows
}

/// `p` with `K_p` equal to the named knot.
pub fn twist_index(name: &str) -> Option<i64> {
    Some(match name {
        "3_1" => 1,
        "5_2" => 2,
        "7_2" => 3,
        "9_2" => 4,
        "4_1" => -1,
        "6_1" => -2,
        "8_1" => -3,
        "10_1" => -4,
        _ => return None,
    })
}

const TERMS_NEGATIVE: [usize; 8] = [139976, 80252, 41996, 19402, 7406, 2112, 346, 22];
const TERMS_POSITIVE: [usize; 11] = [
    4, 98, 908, 4100, 12236, 28978, 58668, 106800, 179814, 284998, 430652,
];

/// Number of terms of `A^nh_{K_p}` for `p = -8..=-1, 1..=11`.
pub fn twist_term_count(p: i64) -> Option<usize> {
    match p {
        -8..=-1 => Some(TERMS_NEGATIVE[(p + 8) as usize]),
        1..=11 => Some(TERMS_POSITIVE[(p - 1) as usize]),
        _ => None,
    }
}

/// `(L, M, q)` degrees `(2p - 1, 8p - 4, 17 p (p - 1) / 2 + 2)`, for `p >= 1`.
pub fn twist_degrees(p: i64) -> Option<(i64, i64, i64)> {
    (p >= 1).then(|| (2 * p - 1, 8 * p - 4, 17 * p * (p - 1) / 2 + 2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetadataReport {
    pub knot: String,
    pub twist: i64,
    pub terms: usize,
    pub expected_terms: Option<usize>,
    pub degrees: (i64, i64, i64),
    pub expected_degrees: Option<(i64, i64, i64)>,
}

impl MetadataReport {
    pub fn ok(&self) -> bool {
        self.expected_terms.is_none_or(|t| t == self.terms)
            && self.expected_degrees.is_none_or(|d| d == self.degrees)
    }
}

impl fmt::Display for MetadataReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |o: Option<String>| o.unwrap_or_else(|| "-".into());
        write!(
            f,
            "{} = K_{}: terms {} (expected {}), (L,M,q) degrees {:?} (expected {})",
            self.knot,
            self.twist,
            self.terms,
            opt(self.expected_terms.map(|t| t.to_string())),
            self.degrees,
            opt(self.expected_degrees.map(|d| format!("{d:?}")))
        )
    }
}

/// Max `(L, M, q)` degrees of a normal form.
pub fn operator_degrees(p: &WeylElement) -> (i64, i64, i64) {
    let n = p.polynomial();
    let d = |i| n.degree(i).unwrap_or(0);
    (d(1), d(0), d(2))
}

pub fn metadata_check(entry: &KnotEntry, p: i64) -> MetadataReport {
    MetadataReport {
        knot: entry.name.clone(),
        twist: p,
        terms: entry.nonhomogeneous_op.term_count(),
        expected_terms: twist_term_count(p),
        degrees: operator_degrees(&entry.nonhomogeneous_op),
        expected_degrees: twist_degrees(p),
    }
}

fn parse_points(table: &[(&str, &str)]) -> Vec<RPoint> {
    table
        .iter()
        .map(|(x, y)| {
            (
                parse_rational(x).expect("table"),
                parse_rational(y).expect("table"),
            )
        })
        .collect()
}

const V41_NH: [(&str, &str); 7] = [
    ("1", "-1/2"),
    ("-1/2", "-1/2"),
    ("-2", "0"),
    ("0", "-1"),
    ("2", "-2"),
    ("1/2", "-3/2"),
    ("-1", "-3/2"),
];

const V41_H: [(&str, &str); 17] = [
    ("3", "-1/2"),
    ("-1", "-1/3"),
    ("-3/4", "-1/2"),
    ("-2", "0"),
    ("2", "-1"),
    ("-1/2", "-1"),
    ("1", "-3/2"),
    ("0", "-3/2"),
    ("-1/2", "-5/4"),
    ("1/2", "-7/4"),
    ("-1", "-3/2"),
    ("1/2", "-2"),
    ("2", "-3"),
    ("3/4", "-5/2"),
    ("1", "-8/3"),
    ("-2", "-2"),
    ("-3", "-5/2"),
];

const V52: [(&str, &str); 14] = [
    ("1", "-1/2"),
    ("-1", "0"),
    ("-1/2", "-1/2"),
    ("17/2", "-1/2"),
    ("-1", "-1"),
    ("0", "-1"),
    ("-6", "-2"),
    ("6", "-1"),
    ("-17/2", "-5/2"),
    ("0", "-2"),
    ("1", "-2"),
    ("-1", "-5/2"),
    ("1/2", "-5/2"),
    ("1", "-3"),
];

const V61: [(&str, &str); 26] = [
    ("2", "-1/2"),
    ("-1", "-1/2"),
    ("5", "-1/2"),
    ("-3/2", "-1/2"),
    ("-4", "0"),
    ("1", "-1"),
    ("-1/2", "-1"),
    ("-1", "-2/3"),
    ("4", "-1"),
    ("1/2", "-3/2"),
    ("3", "-3/2"),
    ("1/5", "-8/5"),
    ("-1/2", "-5/4"),
    ("1/2", "-11/4"),
    ("-1/5", "-12/5"),
    ("-3", "-5/2"),
    ("4", "-4"),
    ("1/2", "-3"),
    ("1", "-10/3"),
    ("3/2", "-7/2"),
    ("-1/2", "-5/2"),
    ("-4", "-3"),
    ("-1", "-3"),
    ("-5", "-7/2"),
    ("1", "-7/2"),
    ("-2", "-7/2"),
];

const V81: [(&str, &str); 51] = [
    ("3", "-1/2"),
    ("-1", "-1/2"),
    ("6", "-1/2"),
    ("-2", "-1/2"),
    ("9", "-1/2"),
    ("2", "-1"),
    ("-1", "-1"),
    ("-5/2", "-1/2"),
    ("-6", "0"),
    ("5", "-1"),
    ("-2", "-3/5"),
    ("8", "-1"),
    ("3/2", "-3/2"),
    ("4", "-3/2"),
    ("-1/2", "-3/2"),
    ("-3/4", "-11/8"),
    ("7", "-3/2"),
    ("1", "-2"),
    ("3", "-2"),
    ("0", "-2"),
    ("6", "-2"),
    ("0", "-5/2"),
    ("5/2", "-5/2"),
    ("5", "-5/2"),
    ("1", "-3"),
    ("0", "-3"),
    ("-5", "-7/2"),
    ("0", "-7/2"),
    ("-1", "-3"),
    ("-5/2", "-7/2"),
    ("3/4", "-37/8"),
    ("0", "-4"),
    ("1/2", "-9/2"),
    ("-6", "-4"),
    ("6", "-6"),
    ("1", "-5"),
    ("2", "-27/5"),
    ("5/2", "-11/2"),
    ("-3", "-4"),
    ("-1", "-4"),
    ("-7", "-9/2"),
    ("-4", "-9/2"),
    ("-3/2", "-9/2"),
    ("-8", "-5"),
    ("-5", "-5"),
    ("-2", "-5"),
    ("-9", "-11/2"),
    ("2", "-11/2"),
    ("-6", "-11/2"),
    ("1", "-11/2"),
    ("-3", "-11/2"),
];

/// Reference vertex list for a knot's non-homogeneous (or homogeneous)
/// curve, sorted; empty when none is known.
pub fn expected_vertices(name: &str, homogeneous: bool) -> Vec<RPoint> {
    let table: &[(&str, &str)] = match (name, homogeneous) {
        ("4_1", false) => &V41_NH,
        ("4_1", true) => &V41_H,
        ("5_2", false) => &V52,
        ("6_1", false) => &V61,
        ("8_1", false) => &V81,
        _ => &[],
    };
    let mut v = parse_points(table);
    v.sort();
    v
}

/// Values `f_n` as Laurent polynomials, for display.
pub fn format_value(v: &RationalFunction) -> String {
    v.to_string()
}

/// `B(q^n, q)`.
pub fn rhs_at(entry: &KnotEntry, n: i64) -> QLaurent {
    eval_mq(&entry.rhs, n)
}
