//! Dense univariate Laurent polynomials in `q` and rational functions in `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use super::rational::Rational;
use super::PolyError;

/// Coefficient ring for [`Laurent`].
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// `self / d` when the quotient lies in the ring.
    fn div_exact(&self, d: &Self) -> Option<Self>;
    fn to_rational(&self) -> Rational;
}

impl Coeff for BigInt {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
    fn to_rational(&self) -> Rational {
        Rational::from_integer(self.clone())
    }
}

impl Coeff for Rational {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

/// `sum_i coeffs[i] q^(low + i)`; the zero polynomial has no coefficients,
/// otherwise both end coefficients are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent<C> {
    low: i64,
    coeffs: Vec<C>,
}

pub type ZLaurent = Laurent<BigInt>;
pub type QLaurent = Laurent<Rational>;

impl<C: Coeff> Laurent<C> {
    pub fn zero() -> Self {
        Laurent {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    pub fn monomial(c: C, e: i64) -> Self {
        Self::from_coeffs(e, vec![c])
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<C>) -> Self {
        let mut p = Laurent { low, coeffs };
        p.trim();
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let terms: Vec<(i64, C)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap_or(lo);
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.clone() + &c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Highest exponent; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Lowest exponent; `None` for zero.
    pub fn low_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn coeff(&self, e: i64) -> C {
        let i = e - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            C::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Laurent {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.low, self.coeffs.iter().map(|x| x.clone() * c).collect())
    }

    /// Substitutes `q -> q^k` for `k >= 1`.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k >= 1);
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`
    /// in the Laurent ring over `C`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dn = d.coeffs.len();
        let n = self.coeffs.len();
        if n < dn {
            return None;
        }
        let dl = d.coeffs.last().expect("nonzero");
        let mut r = self.coeffs.clone();
        let qn = n - dn + 1;
        let mut q = vec![C::zero(); qn];
        for i in (0..qn).rev() {
            let top = &r[i + dn - 1];
            if top.is_zero() {
                continue;
            }
            let c = top.div_exact(dl)?;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].clone() - &(c.clone() * dc);
            }
            q[i] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.low - d.low, q))
    }

    pub fn to_rational(&self) -> QLaurent {
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c.to_rational()).collect(),
        }
    }

    /// As a one-variable [`Polynomial`] over `[var]`.
    pub fn to_polynomial(&self, var: &str) -> Polynomial {
        Polynomial::from_terms(&[var], self.terms().map(|(e, c)| (vec![e], c.to_rational())))
    }
}

impl QLaurent {
    /// Reads a polynomial in a single variable.
    pub fn from_polynomial(p: &Polynomial) -> Result<QLaurent, PolyError> {
        if p.vars().len() != 1 {
            return Err(PolyError::NotUnivariate {
                vars: p.vars().to_vec(),
            });
        }
        Ok(Self::from_terms(
            p.terms().map(|(m, c)| (m.exponent(0), c.clone())),
        ))
    }

    /// Integer coefficients, if they all are.
    pub fn to_integer(&self) -> Option<ZLaurent> {
        if self.coeffs.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c.numer().clone()).collect(),
        })
    }

    fn monic(&self) -> QLaurent {
        match self.leading_coeff() {
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Remainder of ordinary polynomial division (exponents read from `low`).
    fn rem(&self, d: &QLaurent) -> QLaurent {
        let mut r = self.clone();
        let dd = d.degree().expect("nonzero");
        let dl = d.leading_coeff().expect("nonzero").clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.leading_coeff().expect("nonzero").clone() / &dl;
            r = &r - &d.shift(rd - dd).scale(&c);
        }
        r
    }

    /// Monic gcd of two ordinary polynomials (`low >= 0`).
    pub fn gcd(&self, other: &QLaurent) -> QLaurent {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

impl<C: Coeff> Add for &Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, o: &Laurent<C>) -> Laurent<C> {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.degree().unwrap().max(o.degree().unwrap());
        let mut coeffs = vec![C::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = (self.low - low) as usize + i;
            coeffs[k] = coeffs[k].clone() + c;
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            let k = (o.low - low) as usize + i;
            coeffs[k] = coeffs[k].clone() + c;
        }
        Laurent::from_coeffs(low, coeffs)
    }
}

impl<C: Coeff> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<C: Coeff> Sub for &Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, o: &Laurent<C>) -> Laurent<C> {
        self + &(-o)
    }
}

impl<C: Coeff> Mul for &Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, o: &Laurent<C>) -> Laurent<C> {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + &(a.clone() * b);
            }
        }
        Laurent::from_coeffs(self.low + o.low, coeffs)
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for Laurent<C> {
    /// Descending order in `q`, e.g. `q^2 - 3*q + 1 - q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_rational().to_polynomial("q");
        write!(f, "{p}")
    }
}

/// Element of Q(q): `num / den` with `den` a monic polynomial with nonzero
/// constant term and `gcd(num, den) = 1`. Powers of `q` live in `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: QLaurent,
    den: QLaurent,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: QLaurent::zero(),
            den: QLaurent::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(QLaurent::one())
    }

    pub fn from_laurent(num: QLaurent) -> Self {
        RationalFunction {
            num,
            den: QLaurent::one(),
        }
    }

    pub fn from_integer_laurent(num: &ZLaurent) -> Self {
        Self::from_laurent(num.to_rational())
    }

    /// Normalizes `num / den`.
    pub fn new(num: QLaurent, den: QLaurent) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero { pos: 0 });
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        // move powers of q into the numerator
        let dlow = den.low;
        let num = num.shift(-dlow);
        let den = den.shift(-dlow);
        if den.coeffs.len() == 1 {
            let inv = den.coeffs[0].recip();
            return Ok(RationalFunction {
                num: num.scale(&inv),
                den: QLaurent::one(),
            });
        }
        let nlow = num.low;
        let num0 = num.shift(-nlow);
        let g = num0.gcd(&den);
        let num0 = num0.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let lc = den.leading_coeff().expect("nonzero").clone();
        Ok(RationalFunction {
            num: num0.shift(nlow).scale(&lc.recip()),
            den: den.scale(&lc.recip()),
        })
    }

    /// Builds from one-variable polynomials (any variable name).
    pub fn from_polynomials(num: &Polynomial, den: &Polynomial) -> Result<Self, PolyError> {
        Self::new(QLaurent::from_polynomial(num)?, QLaurent::from_polynomial(den)?)
    }

    pub fn numerator(&self) -> &QLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &QLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The value as an integer Laurent polynomial, when it is one.
    pub fn as_integer_laurent(&self) -> Option<ZLaurent> {
        if self.is_laurent() {
            self.num.to_integer()
        } else {
            None
        }
    }

    /// `deg(num) - deg(den)`.
    pub fn deg_q(&self) -> Result<i64, PolyError> {
        match (self.num.degree(), self.den.degree()) {
            (Some(a), Some(b)) => Ok(a - b),
            _ => Err(PolyError::ZeroFunction),
        }
    }

    /// Order of vanishing at `q = 0`.
    pub fn min_deg_q(&self) -> Result<i64, PolyError> {
        self.num.low_degree().ok_or(PolyError::ZeroFunction)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone()).expect("nonzero den");
        }
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero den")
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero den")
    }

    pub fn mul_laurent(&self, l: &QLaurent) -> Self {
        Self::new(&self.num * l, self.den.clone()).expect("nonzero den")
    }

    pub fn div(&self, o: &Self) -> Result<Self, PolyError> {
        if o.is_zero() {
            return Err(PolyError::DivisionByZero { pos: 0 });
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Evaluates a polynomial in `(M, q)` at `M = q^n`, as a Laurent polynomial
/// in `q`. Variables other than `m` and `q` must not occur.
pub fn specialize_m(p: &Polynomial, m: usize, q: usize, n: i64) -> QLaurent {
    QLaurent::from_terms(p.terms().map(|(mono, c)| {
        debug_assert!(mono
            .exponents()
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || i == m || i == q));
        (mono.exponent(q) + n * mono.exponent(m), c.clone())
    }))
}
