//! The q-Weyl algebra `Z[q^±1]<M, L> / (LM - qML)`.
//!
//! Elements are stored in normal form: a commutative polynomial in
//! `(M, L, q)` read with every `M` to the left of every `L`. The
//! alias variables `x = L`, `y = M`, `t = 1/q` are accepted on input.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{
    content_in, divides, parse_expr, parse_poly, Expr, ExprAlgebra, Monomial, PolyError, Polynomial,
    QLaurent, Rational, RationalFunction, ZLaurent,
};

pub const M: usize = 0;
pub const L: usize = 1;
pub const Q: usize = 2;
pub const VARS: [&str; 3] = ["M", "L", "q"];
/// Coefficient alphabet for `a_i(M, q)` and `b(M, q)`.
pub const MQ: [&str; 2] = ["M", "q"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("zero operator")]
    ZeroOperator,
    #[error("unsupported variable `{0}` (expected M, L, q or x, y, t)")]
    UnknownVariable(String),
    #[error("`L` occurs in a coefficient that must only involve M and q")]
    UnexpectedL,
    #[error("sequence value f_{index} is unavailable")]
    WindowUnavailable { index: i64 },
}

/// A normal-ordered element of the q-Weyl algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    normal_form: Polynomial,
}

/// Maps an input variable to `(target index, sign)`; `t` is `q^-1`.
fn alias(name: &str) -> Option<(usize, i64)> {
    match name {
        "M" | "y" => Some((M, 1)),
        "L" | "x" => Some((L, 1)),
        "q" => Some((Q, 1)),
        "t" => Some((Q, -1)),
        _ => None,
    }
}

impl WeylElement {
    pub fn zero() -> Self {
        WeylElement {
            normal_form: Polynomial::zero(&VARS),
        }
    }

    pub fn one() -> Self {
        WeylElement {
            normal_form: Polynomial::one(&VARS),
        }
    }

    /// `c * M^j * L^i * q^k`.
    pub fn term(c: Rational, i: i64, j: i64, k: i64) -> Self {
        let mut e = vec![0; 3];
        e[L] = i;
        e[M] = j;
        e[Q] = k;
        WeylElement {
            normal_form: Polynomial::monomial(&VARS, e, c),
        }
    }

    /// Reads a normal form given as a commutative polynomial over any of
    /// `M, L, q, x, y, t`.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self, WeylError> {
        let mut map = Vec::with_capacity(p.vars().len());
        for v in p.vars() {
            map.push(alias(v).ok_or_else(|| WeylError::UnknownVariable(v.clone()))?);
        }
        let terms = p.terms().map(|(m, c)| {
            let mut e = vec![0i64; 3];
            for (i, &(target, sign)) in map.iter().enumerate() {
                e[target] += sign * m.exponent(i);
            }
            (e, c.clone())
        });
        Ok(WeylElement {
            normal_form: Polynomial::from_terms(&VARS, terms),
        })
    }

    /// Parses a normal form written commutatively (terms already sorted).
    pub fn parse_normal_form<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Self, WeylError> {
        Self::from_polynomial(&parse_poly(text, vars)?)
    }

    /// Parses a word with noncommutative products and normal-orders it.
    pub fn parse(text: &str) -> Result<Self, WeylError> {
        normal_order(&WeylWord::parse(text)?)
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.normal_form
    }

    pub fn is_zero(&self) -> bool {
        self.normal_form.is_zero()
    }

    pub fn term_count(&self) -> usize {
        self.normal_form.len()
    }

    /// `d`, the largest power of `L`.
    pub fn order(&self) -> Option<i64> {
        self.normal_form.degree(L)
    }

    pub fn min_l(&self) -> Option<i64> {
        self.normal_form.min_degree(L)
    }

    /// Exponent triples `(i, j, k)` = (L, M, q) with their coefficients.
    pub fn support(&self) -> Vec<((i64, i64, i64), Rational)> {
        self.normal_form
            .terms()
            .map(|(m, c)| ((m.exponent(L), m.exponent(M), m.exponent(Q)), c.clone()))
            .collect()
    }

    /// `a_i(M, q)` over the alphabet `[M, q]`, keyed by `i`.
    pub fn coefficients(&self) -> BTreeMap<i64, Polynomial> {
        let mut out: BTreeMap<i64, Polynomial> = BTreeMap::new();
        for (m, c) in self.normal_form.terms() {
            let entry = out.entry(m.exponent(L)).or_insert_with(|| Polynomial::zero(&MQ));
            *entry = &*entry + &Polynomial::monomial(&MQ, vec![m.exponent(M), m.exponent(Q)], c.clone());
        }
        out
    }

    pub fn coefficient(&self, i: i64) -> Polynomial {
        self.coefficients()
            .remove(&i)
            .unwrap_or_else(|| Polynomial::zero(&MQ))
    }

    /// `sum_i a_i(M, q) L^i` from `(i, a_i)` with `a_i` over `[M, q]`.
    pub fn from_coefficients<'a>(
        coeffs: impl IntoIterator<Item = (i64, &'a Polynomial)>,
    ) -> Result<Self, WeylError> {
        let mut out = Polynomial::zero(&VARS);
        for (i, a) in coeffs {
            let a = mq_polynomial(a)?;
            for (m, c) in a.terms() {
                let mut e = vec![0; 3];
                e[M] = m.exponent(0);
                e[L] = i;
                e[Q] = m.exponent(1);
                out = &out + &Polynomial::monomial(&VARS, e, c.clone());
            }
        }
        Ok(WeylElement { normal_form: out })
    }

    /// `P(M, L, 1)` over `[M, L]`.
    pub fn at_q1(&self) -> Polynomial {
        Polynomial::from_terms(
            &["M", "L"],
            self.normal_form
                .terms()
                .map(|(m, c)| (vec![m.exponent(M), m.exponent(L)], c.clone())),
        )
    }

    /// `P(y, x, 1/t)` over `[x, y, t]`.
    pub fn to_xyt(&self) -> Polynomial {
        Polynomial::from_terms(
            &["x", "y", "t"],
            self.normal_form
                .terms()
                .map(|(m, c)| (vec![m.exponent(L), m.exponent(M), -m.exponent(Q)], c.clone())),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        WeylElement {
            normal_form: &self.normal_form + &o.normal_form,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        WeylElement {
            normal_form: &self.normal_form - &o.normal_form,
        }
    }

    pub fn neg(&self) -> Self {
        WeylElement {
            normal_form: -&self.normal_form,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WeylElement {
            normal_form: self.normal_form.scale(c),
        }
    }

    /// Product in the algebra: `(M^b1 L^a1)(M^b2 L^a2) = q^(a1 b2) M^(b1+b2) L^(a1+a2)`.
    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m1, c1) in self.normal_form.terms() {
            for (m2, c2) in o.normal_form.terms() {
                let mut e = m1.mul(m2).exponents().to_vec();
                e[Q] += m1.exponent(L) * m2.exponent(M);
                *acc.entry(Monomial::from_exponents(e))
                    .or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        WeylElement {
            normal_form: Polynomial::from_terms(
                &VARS,
                acc.into_iter().map(|(m, c)| (m.exponents().to_vec(), c)),
            ),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Inverse of a single term: `(M^b L^a)^-1 = q^(ab) M^-b L^-a`.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if !self.normal_form.is_monomial() {
            return None;
        }
        let ((i, j, k), c) = self.support().pop()?;
        Some(Self::term(c.recip(), -i, -j, -k + i * j))
    }

    /// Left multiplication by `c(M, q)` (a coefficient-wise product).
    pub fn left_mul_coeff(&self, c: &Polynomial) -> Result<Self, WeylError> {
        let c = mq_polynomial(c)?;
        Ok(WeylElement {
            normal_form: &lift_mq(&c) * &self.normal_form,
        })
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.normal_form)
    }
}

/// Coerces a polynomial in (a subset of) `M, q` (aliases `y, t` allowed, and
/// `L`/`x` allowed only with exponent 0) to the `[M, q]` alphabet.
pub fn mq_polynomial(p: &Polynomial) -> Result<Polynomial, WeylError> {
    let w = WeylElement::from_polynomial(p)?;
    if w.normal_form.terms().any(|(m, _)| m.exponent(L) != 0) {
        return Err(WeylError::UnexpectedL);
    }
    Ok(Polynomial::from_terms(
        &MQ,
        w.normal_form
            .terms()
            .map(|(m, c)| (vec![m.exponent(M), m.exponent(Q)], c.clone())),
    ))
}

fn lift_mq(c: &Polynomial) -> Polynomial {
    Polynomial::from_terms(
        &VARS,
        c.terms()
            .map(|(m, v)| (vec![m.exponent(0), 0, m.exponent(1)], v.clone())),
    )
}

/// `c(M, q) -> c(M q^s, q)` on an `[M, L, q]` polynomial.
fn shift_m(p: &Polynomial, s: i64) -> Polynomial {
    p.map_monomials(|m| {
        let mut e = m.exponents().to_vec();
        e[Q] += s * e[M];
        Monomial::from_exponents(e)
    })
}

/// Unreduced noncommutative expression over `M`, `L`, `q^±1`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylWord {
    expr: Expr,
}

/// Declared names for words: `M L q` and the aliases `x y t`.
const WORD_VARS: [&str; 6] = ["M", "L", "q", "x", "y", "t"];

impl WeylWord {
    pub fn parse(text: &str) -> Result<Self, WeylError> {
        let vars: Vec<String> = WORD_VARS.iter().map(|s| s.to_string()).collect();
        Ok(WeylWord {
            expr: parse_expr(text, &vars)?,
        })
    }

    pub fn m() -> Self {
        WeylWord { expr: Expr::Var(M) }
    }

    pub fn l() -> Self {
        WeylWord { expr: Expr::Var(L) }
    }

    pub fn q() -> Self {
        WeylWord { expr: Expr::Var(Q) }
    }

    pub fn q_inv() -> Self {
        WeylWord {
            expr: Expr::Pow(Box::new(Expr::Var(Q)), -1, 0),
        }
    }

    pub fn int(n: i64) -> Self {
        WeylWord {
            expr: Expr::Int(BigInt::from(n)),
        }
    }

    pub fn pow(self, n: u32) -> Self {
        WeylWord {
            expr: Expr::Pow(Box::new(self.expr), n as i64, 0),
        }
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }
}

impl std::ops::Add for WeylWord {
    type Output = WeylWord;

    fn add(self, o: WeylWord) -> WeylWord {
        WeylWord {
            expr: Expr::Add(Box::new(self.expr), Box::new(o.expr)),
        }
    }
}

impl std::ops::Sub for WeylWord {
    type Output = WeylWord;

    fn sub(self, o: WeylWord) -> WeylWord {
        WeylWord {
            expr: Expr::Sub(Box::new(self.expr), Box::new(o.expr)),
        }
    }
}

impl std::ops::Mul for WeylWord {
    type Output = WeylWord;

    fn mul(self, o: WeylWord) -> WeylWord {
        WeylWord {
            expr: Expr::Mul(Box::new(self.expr), Box::new(o.expr)),
        }
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                Expr::Int(n) => write!(f, "{n}"),
                Expr::Var(i) => write!(f, "{}", WORD_VARS[*i]),
                Expr::Neg(a) => {
                    write!(f, "(-")?;
                    go(a, f)?;
                    write!(f, ")")
                }
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                    let op = match e {
                        Expr::Add(..) => "+",
                        Expr::Sub(..) => "-",
                        Expr::Mul(..) => "*",
                        _ => "/",
                    };
                    write!(f, "(")?;
                    go(a, f)?;
                    write!(f, "{op}")?;
                    go(b, f)?;
                    write!(f, ")")
                }
                Expr::Pow(a, n, _) => {
                    go(a, f)?;
                    write!(f, "^({n})")
                }
            }
        }
        go(&self.expr, f)
    }
}

/// Evaluation target for words; a wrapper keeps the by-value trait methods
/// from shadowing the inherent ones.
struct Word(WeylElement);

impl ExprAlgebra for Word {
    fn int(n: &BigInt, _: usize) -> Self {
        Word(WeylElement::term(Rational::from_integer(n.clone()), 0, 0, 0))
    }
    fn var(index: usize, _: usize) -> Self {
        let (target, sign) = alias(WORD_VARS[index]).expect("declared");
        let mut e = [0i64; 3];
        e[target] = sign;
        Word(WeylElement::term(Rational::one(), e[L], e[M], e[Q]))
    }
    fn add(self, other: Self) -> Self {
        Word(self.0.add(&other.0))
    }
    fn sub(self, other: Self) -> Self {
        Word(self.0.sub(&other.0))
    }
    fn mul(self, other: Self) -> Self {
        Word(self.0.mul(&other.0))
    }
    fn neg(self) -> Self {
        Word(self.0.neg())
    }
    fn div(self, other: Self, pos: usize) -> Result<Self, PolyError> {
        if other.0.is_zero() {
            return Err(PolyError::DivisionByZero { pos });
        }
        let inv = other
            .0
            .monomial_inverse()
            .ok_or(PolyError::NonMonomialDivision { pos })?;
        Ok(Word(self.0.mul(&inv)))
    }
    fn pow(self, n: i64, pos: usize) -> Result<Self, PolyError> {
        if n >= 0 {
            return Ok(Word(self.0.pow(n as u32)));
        }
        if self.0.is_zero() {
            return Err(PolyError::DivisionByZero { pos });
        }
        let inv = self
            .0
            .monomial_inverse()
            .ok_or(PolyError::NonMonomialDivision { pos })?;
        Ok(Word(inv.pow((-n) as u32)))
    }
}

/// Sorts every `L` to the right of every `M` using `L^a M^b = q^(ab) M^b L^a`.
pub fn normal_order(w: &WeylWord) -> Result<WeylElement, WeylError> {
    Ok(w.expr.eval::<Word>(WORD_VARS.len())?.0)
}

/// Random access to sequence values `f_n(q)`.
pub trait Sequence {
    fn value(&self, n: i64) -> Option<RationalFunction>;
}

impl Sequence for [RationalFunction] {
    fn value(&self, n: i64) -> Option<RationalFunction> {
        usize::try_from(n).ok().and_then(|i| self.get(i).cloned())
    }
}

impl Sequence for Vec<RationalFunction> {
    fn value(&self, n: i64) -> Option<RationalFunction> {
        self.as_slice().value(n)
    }
}

/// `c(q^n, q)` for `c` over `[M, q]` (or any alphabet accepted by
/// [`mq_polynomial`]).
pub fn eval_mq(c: &Polynomial, n: i64) -> QLaurent {
    QLaurent::from_terms(
        c.terms()
            .map(|(m, v)| (m.exponent(1) + n * m.exponent(0), v.clone())),
    )
}

/// `(P f)_n = sum a_{ijk} q^(k + j n) f_{n+i}(q)`.
pub fn apply<S: Sequence + ?Sized>(p: &WeylElement, f: &S, n: i64) -> Result<RationalFunction, WeylError> {
    let mut acc = RationalFunction::zero();
    for (i, a) in p.coefficients() {
        let fi = f
            .value(n + i)
            .ok_or(WeylError::WindowUnavailable { index: n + i })?;
        acc = acc.add(&fi.mul_laurent(&eval_mq(&a, n)));
    }
    Ok(acc)
}

/// Integer fast path of [`apply`] for Laurent-polynomial sequence values;
/// `None` when `p` has non-integer coefficients.
pub fn apply_laurent(p: &WeylElement, f: &[ZLaurent], n: i64) -> Result<Option<ZLaurent>, WeylError> {
    let mut acc = ZLaurent::zero();
    for (i, a) in p.coefficients() {
        let idx = n + i;
        let fi = usize::try_from(idx)
            .ok()
            .and_then(|k| f.get(k))
            .ok_or(WeylError::WindowUnavailable { index: idx })?;
        let Some(ai) = eval_mq(&a, n).to_integer() else {
            return Ok(None);
        };
        acc = &acc + &(&ai * fi);
    }
    Ok(Some(acc))
}

/// Clears denominators, removes the content in `(M, q)` and fixes the sign so
/// the graded-lex leading coefficient of `a_d` is positive.
pub fn reduce(p: &WeylElement) -> Result<WeylElement, WeylError> {
    if p.is_zero() {
        return Err(WeylError::ZeroOperator);
    }
    let (_, cleared) = p.normal_form.clear_denominators();
    let content = content_in(&cleared, &["M", "q"])?;
    let mut out = divides(&content, &cleared).expect("content divides");
    let d = out.degree(L).expect("nonzero");
    let lead_negative = out
        .terms()
        .rev()
        .find(|(m, _)| m.exponent(L) == d)
        .map(|(_, c)| c.is_negative())
        .unwrap_or(false);
    if lead_negative {
        out = -out;
    }
    Ok(WeylElement { normal_form: out })
}

/// Clears denominators of `(L - 1) b^-1 P_nh` and reduces; the result
/// annihilates every `f` with `P_nh f = b`. Returns `P_nh` when `b = 0`.
pub fn homogenize(p_nh: &WeylElement, b: &Polynomial) -> Result<WeylElement, WeylError> {
    let b = mq_polynomial(b)?;
    if b.is_zero() {
        return Ok(p_nh.clone());
    }
    if p_nh.is_zero() {
        return Err(WeylError::ZeroOperator);
    }
    let b0 = lift_mq(&b);
    let b1 = shift_m(&b0, 1);
    // D = b(M) b(Mq) / gcd; then D (L - 1) b^-1 = (b(M)/g) L - (b(Mq)/g) after
    // commuting b^-1 past L
    let g = crate::poly::gcd_many(&[b0.clone(), b1.clone()], &[M, Q])?;
    let b0g = divides(&g, &b0).expect("gcd divides");
    let b1g = divides(&g, &b1).expect("gcd divides");
    let mut shifted = Polynomial::zero(&VARS);
    for (m, c) in p_nh.normal_form.terms() {
        let mut e = m.exponents().to_vec();
        e[Q] += e[M];
        e[L] += 1;
        shifted.add_term(Monomial::from_exponents(e), c.clone());
    }
    let out = &(&b0g * &shifted) - &(&b1g * &p_nh.normal_form);
    reduce(&WeylElement { normal_form: out })
}

/// `Q` with `P = (L - 1) Q`, if it exists.
pub fn is_l_minus_1_divisible(p: &WeylElement) -> Option<WeylElement> {
    if p.is_zero() {
        return Some(WeylElement::zero());
    }
    let coeffs: BTreeMap<i64, Polynomial> = p
        .coefficients()
        .into_iter()
        .map(|(i, a)| (i, lift_mq(&a)))
        .collect();
    let d = *coeffs.keys().next_back()?;
    let lo = *coeffs.keys().next()?;
    let zero = Polynomial::zero(&VARS);
    let get = |i: i64| coeffs.get(&i).cloned().unwrap_or_else(|| zero.clone());
    // (L - 1) sum e_i L^i = sum e_i(Mq) L^(i+1) - e_i L^i
    let mut e: BTreeMap<i64, Polynomial> = BTreeMap::new();
    let mut carry = Polynomial::zero(&VARS);
    for i in (lo..=d).rev() {
        let s = &get(i) + &carry;
        if i == lo {
            if !s.is_zero() {
                return None;
            }
            break;
        }
        let ei = shift_m(&s, -1);
        carry = ei.clone();
        e.insert(i - 1, ei);
    }
    let mut out = Polynomial::zero(&VARS);
    for (i, c) in e {
        let mut m = vec![0; 3];
        m[L] = i;
        out = &out + &c.shift(&Monomial::from_exponents(m));
    }
    Some(WeylElement { normal_form: out })
}

/// Leading coefficient `a_d(M, q)`.
pub fn leading_coefficient(p: &WeylElement) -> Option<Polynomial> {
    p.order().map(|d| p.coefficient(d))
}

/// True when all coefficients are integers.
pub fn is_integral(p: &WeylElement) -> bool {
    p.normal_form.is_integral()
}

/// Gcd over the integers of all coefficients of `a_i(M, q)`; `1` for
/// reduced operators.
pub fn integer_content(p: &WeylElement) -> BigInt {
    let c = p.normal_form.integer_content();
    if c.is_zero() {
        BigInt::one()
    } else {
        c
    }
}
