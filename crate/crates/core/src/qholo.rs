//! q-holonomic sequences: evaluation from a recursion, q-degrees, quadratic
//! quasi-polynomials and their slopes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::geometry::{polygon_at_q0, GeometryError, Point2, Slope, SlopeSet};
use crate::par::Execution;
use crate::poly::{fmt_rational, PolyError, Polynomial, QLaurent, Rational, RationalFunction, ZLaurent};
use crate::weyl::{apply, apply_laurent, eval_mq, mq_polynomial, WeylElement, WeylError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QholoError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("zero operator")]
    ZeroOperator,
    #[error("operator has negative powers of L")]
    NegativeShift,
    #[error("need {need} initial values, got {got}")]
    NotEnoughInitialValues { need: usize, got: usize },
    #[error("initial values violate the recursion at n = {n}")]
    InconsistentInitialValues { n: i64 },
    #[error("leading coefficient vanishes at n = {n}")]
    LeadingVanishes { n: i64 },
    #[error("sequence value f_{n} is zero; its degree is undefined")]
    ZeroValue { n: i64 },
    #[error("operator does not annihilate the sequence at n = {n}")]
    NotAnnihilated { n: i64 },
    #[error("no quasi-polynomial of period <= {max_period} fits the data")]
    NoFit { max_period: usize },
}

/// `sum_i a_i(q^n, q) f_{n+i} = b(q^n, q)` with initial values `f_0, f_1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionSystem {
    operator: WeylElement,
    rhs: Polynomial,
    initial_values: Vec<RationalFunction>,
}

impl RecursionSystem {
    /// `rhs` is a polynomial in `(M, q)`; zero makes the recursion
    /// homogeneous. At least `order` initial values are required; extra ones
    /// must satisfy the recursion.
    pub fn new(
        operator: WeylElement,
        rhs: &Polynomial,
        initial_values: Vec<RationalFunction>,
    ) -> Result<Self, QholoError> {
        let d = operator.order().ok_or(QholoError::ZeroOperator)?;
        if operator.min_l().unwrap_or(0) < 0 {
            return Err(QholoError::NegativeShift);
        }
        let need = d as usize;
        if initial_values.len() < need.max(1) {
            return Err(QholoError::NotEnoughInitialValues {
                need: need.max(1),
                got: initial_values.len(),
            });
        }
        let sys = RecursionSystem {
            operator,
            rhs: mq_polynomial(rhs)?,
            initial_values,
        };
        for n in 0..=(sys.initial_values.len() as i64 - d - 1) {
            if apply(&sys.operator, &sys.initial_values, n)? != sys.rhs_at(n) {
                return Err(QholoError::InconsistentInitialValues { n });
            }
        }
        Ok(sys)
    }

    pub fn homogeneous(op: WeylElement, initial_values: Vec<RationalFunction>) -> Result<Self, QholoError> {
        Self::new(op, &Polynomial::zero(&["M", "q"]), initial_values)
    }

    pub fn order(&self) -> i64 {
        self.operator.order().expect("nonzero operator")
    }

    pub fn operator(&self) -> &WeylElement {
        &self.operator
    }

    /// `a_0, ..., a_d` as polynomials in `(M, q)`.
    pub fn coefficients(&self) -> Vec<Polynomial> {
        (0..=self.order()).map(|i| self.operator.coefficient(i)).collect()
    }

    pub fn rhs(&self) -> &Polynomial {
        &self.rhs
    }

    pub fn initial_values(&self) -> &[RationalFunction] {
        &self.initial_values
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs.is_zero()
    }

    fn rhs_at(&self, n: i64) -> RationalFunction {
        RationalFunction::from_laurent(eval_mq(&self.rhs, n))
    }
}

/// Values `f_0, ..., f_N` of a recursion, extended on demand.
#[derive(Clone, Debug)]
pub struct RationalFunctionSeq {
    system: RecursionSystem,
    values: Vec<RationalFunction>,
    /// Integer Laurent copies of `values` while every value is one.
    integral: Option<Vec<ZLaurent>>,
}

impl RationalFunctionSeq {
    pub fn new(system: RecursionSystem) -> Self {
        let values = system.initial_values.clone();
        let integral = values.iter().map(|v| v.as_integer_laurent()).collect();
        RationalFunctionSeq {
            system,
            values,
            integral,
        }
    }

    pub fn system(&self) -> &RecursionSystem {
        &self.system
    }

    pub fn values(&self) -> &[RationalFunction] {
        &self.values
    }

    /// Integer Laurent values, when every computed value is one.
    pub fn laurent_values(&self) -> Option<&[ZLaurent]> {
        self.integral.as_deref()
    }

    pub fn get(&self, n: usize) -> Option<&RationalFunction> {
        self.values.get(n)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Computes values up to index `n`.
    pub fn extend_to(&mut self, n: usize) -> Result<(), QholoError> {
        let d = self.system.order();
        let coeffs = self.system.coefficients();
        while self.values.len() <= n {
            let target = self.values.len() as i64;
            let s = target - d;
            let lead = eval_mq(&coeffs[d as usize], s);
            if lead.is_zero() {
                return Err(QholoError::LeadingVanishes { n: s });
            }
            let next = self
                .step_integral(&coeffs, s, &lead)
                .map(|z| (RationalFunction::from_integer_laurent(&z), Some(z)))
                .unwrap_or_else(|| {
                    let mut acc = RationalFunction::from_laurent(eval_mq(&self.system.rhs, s));
                    for (i, a) in coeffs.iter().enumerate().take(d as usize) {
                        let f = &self.values[(s + i as i64) as usize];
                        acc = acc.sub(&f.mul_laurent(&eval_mq(a, s)));
                    }
                    let v = acc
                        .div(&RationalFunction::from_laurent(lead.clone()))
                        .expect("nonzero leading coefficient");
                    let z = v.as_integer_laurent();
                    (v, z)
                });
            match (&mut self.integral, next.1) {
                (Some(ints), Some(z)) => ints.push(z),
                (slot, _) => *slot = None,
            }
            self.values.push(next.0);
        }
        Ok(())
    }

    fn step_integral(&self, coeffs: &[Polynomial], s: i64, lead: &QLaurent) -> Option<ZLaurent> {
        let ints = self.integral.as_ref()?;
        let d = coeffs.len() - 1;
        let mut acc = eval_mq(&self.system.rhs, s).to_integer()?;
        for (i, a) in coeffs.iter().enumerate().take(d) {
            let ai = eval_mq(a, s);
            if ai.is_zero() {
                continue;
            }
            let f = &ints[(s + i as i64) as usize];
            acc = &acc - &(&ai.to_integer()? * f);
        }
        acc.div_exact(&lead.to_integer()?)
    }
}

/// Values `f_0 .. f_N` of `rec`.
pub fn evaluate(rec: &RecursionSystem, n: usize) -> Result<RationalFunctionSeq, QholoError> {
    let mut seq = RationalFunctionSeq::new(rec.clone());
    seq.extend_to(n)?;
    Ok(seq)
}

pub fn deg_q(f: &RationalFunction) -> Result<i64, QholoError> {
    Ok(f.deg_q()?)
}

pub fn min_deg_q(f: &RationalFunction) -> Result<i64, QholoError> {
    Ok(f.min_deg_q()?)
}

/// Degrees `(n, deg_q f_n)` from the first nonzero value on; a later zero
/// value is an error.
pub fn degree_data(values: &[RationalFunction], min_degree: bool) -> Result<Vec<(i64, i64)>, QholoError> {
    let first = values.iter().position(|v| !v.is_zero()).unwrap_or(values.len());
    values[first..]
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let n = (first + k) as i64;
            if v.is_zero() {
                return Err(QholoError::ZeroValue { n });
            }
            Ok((n, if min_degree { v.min_deg_q()? } else { v.deg_q()? }))
        })
        .collect()
}

/// `gamma2(n) C(n, 2) + gamma1(n) n + gamma0(n)` with coefficients periodic
/// in `n`, exact from `onset` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub period: usize,
    /// `[gamma2, gamma1, gamma0]` per residue class.
    pub coeffs: Vec<[Rational; 3]>,
    pub onset: i64,
}

fn binom2(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n) * BigInt::from(n - 1) / 2)
}

impl QuasiPolynomial {
    pub fn residue(&self, n: i64) -> usize {
        n.mod_floor(&(self.period as i64)) as usize
    }

    pub fn eval(&self, n: i64) -> Rational {
        let [g2, g1, g0] = &self.coeffs[self.residue(n)];
        g2 * binom2(n) + g1 * Rational::from_integer(n.into()) + g0
    }

    pub fn gamma2(&self) -> impl Iterator<Item = &Rational> {
        self.coeffs.iter().map(|c| &c[0])
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "period {}, onset {}:", self.period, self.onset)?;
        for (r, [g2, g1, g0]) in self.coeffs.iter().enumerate() {
            let sign = |g: &Rational| {
                if g.is_negative() {
                    format!("- {}", fmt_rational(&-g))
                } else {
                    format!("+ {}", fmt_rational(g))
                }
            };
            write!(
                f,
                " [r={r}: {}*C(n,2) {}*n {}]",
                fmt_rational(g2),
                sign(g1),
                sign(g0)
            )?;
        }
        Ok(())
    }
}

/// Solves `g2 C(n,2) + g1 n + g0 = v` through three points.
fn interpolate(pts: [(i64, i64); 3]) -> Option<[Rational; 3]> {
    let mut m: Vec<Vec<Rational>> = pts
        .iter()
        .map(|&(n, v)| {
            vec![
                binom2(n),
                Rational::from_integer(n.into()),
                Rational::one(),
                Rational::from_integer(v.into()),
            ]
        })
        .collect();
    for col in 0..3 {
        let piv = (col..3).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut().skip(col) {
            *x = &*x / &p;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some([m[0][3].clone(), m[1][3].clone(), m[2][3].clone()])
}

/// Exact quasi-polynomial fit of `deltas[k] = delta(k)` for `k = 0, 1, ...`.
pub fn fit_quasipolynomial(deltas: &[i64], max_period: usize) -> Result<QuasiPolynomial, QholoError> {
    let data: Vec<(i64, i64)> = deltas.iter().enumerate().map(|(k, &d)| (k as i64, d)).collect();
    fit_points(&data, max_period)
}

/// Exact fit of consecutive points `(n, delta(n))`. Periods are tried in
/// increasing order and, for each, onsets from the first index upward. The
/// three class members after the onset determine the coefficients and every
/// later member must agree; at least `3 p + max_period` points must follow
/// the onset.
pub fn fit_points(data: &[(i64, i64)], max_period: usize) -> Result<QuasiPolynomial, QholoError> {
    debug_assert!(data.windows(2).all(|w| w[1].0 == w[0].0 + 1));
    for p in 1..=max_period.max(1) {
        let need = 3 * p + max_period;
        let mut start = 0;
        while data.len() >= start + need {
            if let Some(coeffs) = try_fit(&data[start..], p) {
                let onset = data[start].0;
                let first = onset.mod_floor(&(p as i64)) as usize;
                // rotate so coeffs[r] belongs to residue r
                let mut by_residue = coeffs.clone();
                for (k, c) in coeffs.into_iter().enumerate() {
                    by_residue[(first + k) % p] = c;
                }
                return Ok(QuasiPolynomial {
                    period: p,
                    coeffs: by_residue,
                    onset,
                });
            }
            start += 1;
        }
    }
    Err(QholoError::NoFit { max_period })
}

/// Coefficients for classes `data[0], data[1], ...` in offset order.
fn try_fit(data: &[(i64, i64)], p: usize) -> Option<Vec<[Rational; 3]>> {
    let mut out = Vec::with_capacity(p);
    for k in 0..p {
        let class: Vec<(i64, i64)> = data.iter().skip(k).step_by(p).copied().collect();
        if class.len() < 3 {
            return None;
        }
        let c = interpolate([class[0], class[1], class[2]])?;
        let qp = |n: i64| &c[0] * binom2(n) + &c[1] * Rational::from_integer(n.into()) + &c[2];
        if class[3..]
            .iter()
            .any(|&(n, v)| qp(n) != Rational::from_integer(v.into()))
        {
            return None;
        }
        out.push(c);
    }
    Some(out)
}

/// The value set of `gamma2`.
pub fn slopes(qp: &QuasiPolynomial) -> SlopeSet {
    let mut s = SlopeSet::default();
    for g in qp.gamma2() {
        s.insert(Slope::Finite(g.clone()));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeMatch {
    pub slope: Rational,
    /// An edge of `N_{P,0}` with slope `-slope`, if any.
    pub edge: Option<(Point2, Point2)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop1Report {
    pub fit: QuasiPolynomial,
    pub sequence_slopes: SlopeSet,
    /// `-s(N_{P,0})`.
    pub negated_edge_slopes: SlopeSet,
    pub matches: Vec<SlopeMatch>,
    pub contained: bool,
}

impl fmt::Display for Prop1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fit: {}", self.fit)?;
        writeln!(f, "s(f): {}", self.sequence_slopes)?;
        writeln!(f, "-s(N): {}", self.negated_edge_slopes)?;
        for m in &self.matches {
            match m.edge {
                Some((a, b)) => writeln!(
                    f,
                    "  {} <- edge ({},{})-({},{})",
                    fmt_rational(&m.slope),
                    a.0,
                    a.1,
                    b.0,
                    b.1
                )?,
                None => writeln!(f, "  {} <- no edge", fmt_rational(&m.slope))?,
            }
        }
        write!(f, "contained: {}", self.contained)
    }
}

/// Checks `s(f) ⊆ -s(N_{P,0})` for a sequence annihilated by `p`, using the
/// max-degree quasi-polynomial of the nonzero values.
pub fn check_prop1(
    p: &WeylElement,
    values: &[RationalFunction],
    max_period: usize,
) -> Result<Prop1Report, QholoError> {
    check_prop1_with(Execution::available(), p, values, max_period)
}

/// [`check_prop1`] with the annihilation check spread over `exec`.
pub fn check_prop1_with(
    exec: Execution,
    p: &WeylElement,
    values: &[RationalFunction],
    max_period: usize,
) -> Result<Prop1Report, QholoError> {
    let d = p.order().ok_or(QholoError::ZeroOperator)?;
    let lo = p.min_l().unwrap_or(0);
    let ints: Option<Vec<ZLaurent>> = values.iter().map(|v| v.as_integer_laurent()).collect();
    let count = (values.len() as i64 - d + lo).max(0) as usize;
    let zero = exec.map_range(count, |k| -> Result<bool, QholoError> {
        let n = k as i64 - lo;
        Ok(match ints.as_deref().map(|z| apply_laurent(p, z, n)) {
            Some(Ok(Some(v))) => v.is_zero(),
            _ => apply(p, values, n)?.is_zero(),
        })
    });
    for (k, z) in zero.into_iter().enumerate() {
        if !z? {
            return Err(QholoError::NotAnnihilated { n: k as i64 - lo });
        }
    }
    let data = degree_data(values, false)?;
    let fit = fit_points(&data, max_period)?;
    let sequence_slopes = slopes(&fit);
    let poly = polygon_at_q0(p)?;
    let edges = poly.edges();
    let mut negated_edge_slopes = SlopeSet::default();
    for &(a, b) in &edges {
        negated_edge_slopes.insert(Slope::of((b.0 - a.0, b.1 - a.1)));
    }
    negated_edge_slopes = negated_edge_slopes.negated();
    let matches: Vec<SlopeMatch> = sequence_slopes
        .finite
        .iter()
        .map(|s| SlopeMatch {
            slope: s.clone(),
            edge: edges
                .iter()
                .copied()
                .find(|&(a, b)| Slope::of((b.0 - a.0, b.1 - a.1)) == Slope::Finite(-s.clone())),
        })
        .collect();
    let contained = matches.iter().all(|m| m.edge.is_some());
    Ok(Prop1Report {
        fit,
        sequence_slopes,
        negated_edge_slopes,
        matches,
        contained,
    })
}

/// `P = L - q^beta M^alpha`, annihilating `f_n = q^(alpha C(n,2) + beta n)`.
pub fn first_order_operator(alpha: i64, beta: i64) -> WeylElement {
    WeylElement::term(Rational::one(), 1, 0, 0).sub(&WeylElement::term(Rational::one(), 0, alpha, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::poly::rational::int;

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::from_laurent(QLaurent::from_polynomial(&parse_poly(s, &["q"]).unwrap()).unwrap())
    }

    fn one() -> Vec<RationalFunction> {
        vec![RationalFunction::one()]
    }

    #[test]
    fn gaussian_closed_form() {
        let op = WeylElement::parse_normal_form("L - q*M^2", &["M", "L", "q"]).unwrap();
        let seq = evaluate(&RecursionSystem::homogeneous(op, one()).unwrap(), 6).unwrap();
        for n in 0..=6 {
            let v = seq.get(n).unwrap();
            assert_eq!(
                v,
                &RationalFunction::from_laurent(QLaurent::monomial(int(1), (n * n) as i64))
            );
            assert_eq!(deg_q(v).unwrap(), (n * n) as i64);
        }
        assert!(seq.laurent_values().is_some());
    }

    #[test]
    fn triangular_closed_form() {
        let op = WeylElement::parse_normal_form("L - M", &["M", "L", "q"]).unwrap();
        let seq = evaluate(&RecursionSystem::homogeneous(op, one()).unwrap(), 5).unwrap();
        assert_eq!(deg_q(seq.get(5).unwrap()).unwrap(), 10);
    }

    #[test]
    fn rational_values_fall_back() {
        // (1 - M q) f_{n+1} = f_n gives 1 / ((1-q)(1-q^2)...)
        let op = WeylElement::parse_normal_form("(1 - M*q)*L - 1", &["M", "L", "q"]).unwrap();
        let seq = evaluate(&RecursionSystem::homogeneous(op, one()).unwrap(), 3).unwrap();
        assert!(seq.laurent_values().is_none());
        let v = seq.get(2).unwrap();
        assert_eq!(v.denominator().degree(), Some(3));
        assert_eq!(deg_q(v).unwrap(), -3);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(deg_q(&rf("q^-2 + q^3")).unwrap(), 3);
        assert_eq!(min_deg_q(&rf("q^-2 + q^3")).unwrap(), -2);
        let f = RationalFunction::from_polynomials(
            &parse_poly("q^2 + 1", &["q"]).unwrap(),
            &parse_poly("q - 1", &["q"]).unwrap(),
        )
        .unwrap();
        assert_eq!(deg_q(&f).unwrap(), 1);
        assert!(deg_q(&RationalFunction::zero()).is_err());
    }

    #[test]
    fn fits() {
        let sq: Vec<i64> = (0..40).map(|n| n * n).collect();
        let f = fit_quasipolynomial(&sq, 8).unwrap();
        assert_eq!((f.period, f.onset), (1, 0));
        assert_eq!(f.coeffs[0], [int(2), int(1), int(0)]);
        let c2: Vec<i64> = (0..40).map(|n| n * (n - 1) / 2).collect();
        assert_eq!(
            fit_quasipolynomial(&c2, 8).unwrap().coeffs[0],
            [int(1), int(0), int(0)]
        );
        let par: Vec<i64> = (0..40).map(|n| n * n + n % 2).collect();
        let f = fit_quasipolynomial(&par, 8).unwrap();
        assert_eq!(f.period, 2);
        assert_eq!(f.coeffs[0], [int(2), int(1), int(0)]);
        assert_eq!(f.coeffs[1], [int(2), int(1), int(1)]);
        assert_eq!(slopes(&f).to_string(), "{2}");
    }

    #[test]
    fn late_onset_and_no_fit() {
        let mut d: Vec<i64> = (0..40).map(|n| 3 * n * n).collect();
        d[0] = 7;
        d[1] = -4;
        let f = fit_quasipolynomial(&d, 4).unwrap();
        assert_eq!((f.period, f.onset), (1, 2));
        let cubic: Vec<i64> = (0..40).map(|n| n * n * n).collect();
        assert_eq!(
            fit_quasipolynomial(&cubic, 4),
            Err(QholoError::NoFit { max_period: 4 })
        );
    }

    #[test]
    fn prop1_examples() {
        for (text, slope) in [("L - q*M^2", 2), ("L - M", 1)] {
            let op = WeylElement::parse_normal_form(text, &["M", "L", "q"]).unwrap();
            let seq = evaluate(&RecursionSystem::homogeneous(op.clone(), one()).unwrap(), 40).unwrap();
            let r = check_prop1(&op, seq.values(), 8).unwrap();
            assert_eq!(
                r.sequence_slopes.finite.iter().cloned().collect::<Vec<_>>(),
                vec![int(slope)]
            );
            assert!(r.contained);
        }
    }

    #[test]
    fn prop1_rejects_wrong_operator() {
        let op = WeylElement::parse_normal_form("L - q*M^2", &["M", "L", "q"]).unwrap();
        let seq = evaluate(&RecursionSystem::homogeneous(op, one()).unwrap(), 12).unwrap();
        let wrong = WeylElement::parse_normal_form("L - M", &["M", "L", "q"]).unwrap();
        assert_eq!(
            check_prop1(&wrong, seq.values(), 2),
            Err(QholoError::NotAnnihilated { n: 0 })
        );
    }

    #[test]
    fn inconsistent_initial_values() {
        let op = WeylElement::parse_normal_form("L - M", &["M", "L", "q"]).unwrap();
        let bad = vec![RationalFunction::one(), rf("q")];
        assert_eq!(
            RecursionSystem::homogeneous(op, bad).unwrap_err(),
            QholoError::InconsistentInitialValues { n: 0 }
        );
    }
}
