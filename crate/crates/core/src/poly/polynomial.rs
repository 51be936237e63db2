use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::rational::{fmt_rational, gcd_integers, lcm_denominators, Rational};
use super::PolyError;

/// Multivariate Laurent polynomial with exact rational coefficients over a
/// declared, ordered variable alphabet.
///
/// Zero coefficients are never stored. Terms are kept in graded-lex order,
/// so equality and printing are canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Polynomial {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        Polynomial {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(p.vars.len()), c);
        }
        p
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self, PolyError> {
        let mut p = Self::zero(vars);
        let idx = p.var_index(name).ok_or_else(|| PolyError::UndeclaredVariable {
            name: name.to_string(),
            pos: 0,
        })?;
        let mut e = vec![0; p.vars.len()];
        e[idx] = 1;
        p.terms.insert(Monomial(e), Rational::one());
        Ok(p)
    }

    /// Single term `c * prod vars[i]^exps[i]`.
    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: Vec<i64>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        assert_eq!(exps.len(), p.vars.len(), "exponent vector length");
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Vec<i64>, Rational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub(crate) fn from_map(vars: Vec<String>, terms: BTreeMap<Monomial, Rational>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Polynomial { vars, terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.vars.len()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_alphabet(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::AlphabetMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_alphabet(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_alphabet(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_alphabet(other)?;
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Polynomial::from_map(self.vars.clone(), terms))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        Polynomial::from_map(self.vars.clone(), terms)
    }

    /// Multiplies every term by the monomial `m`.
    pub fn shift(&self, m: &Monomial) -> Polynomial {
        let terms = self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect();
        Polynomial::from_map(self.vars.clone(), terms)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Inverse of a single-term polynomial.
    pub fn monomial_inverse(&self) -> Option<Polynomial> {
        if !self.is_monomial() {
            return None;
        }
        let (m, c) = self.leading_term()?;
        Some(Polynomial::monomial(&self.vars, m.pow(-1).0, c.recip()))
    }

    /// Integer power; negative exponents require a monomial.
    pub fn pow_i(&self, n: i64) -> Option<Polynomial> {
        if n >= 0 {
            Some(self.pow(n as u32))
        } else {
            self.monomial_inverse().map(|inv| inv.pow((-n) as u32))
        }
    }

    pub fn degree(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn min_degree(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|m| m.0[var]).min()
    }

    pub fn degree_in(&self, name: &str) -> Option<i64> {
        self.var_index(name).and_then(|i| self.degree(i))
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.gcd(m)))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Returns `(d, d * self)` with `d` the least common denominator.
    pub fn clear_denominators(&self) -> (BigInt, Polynomial) {
        let d = lcm_denominators(self.terms.values());
        let p = self.scale(&Rational::from_integer(d.clone()));
        (d, p)
    }

    /// Gcd of the integer coefficients (after clearing denominators).
    pub fn integer_content(&self) -> BigInt {
        let (_, p) = self.clear_denominators();
        gcd_integers(p.terms.values())
    }

    /// Makes an integral polynomial with coprime coefficients and a positive
    /// graded-lex leading coefficient. Zero stays zero.
    pub fn integer_primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let (_, p) = self.clear_denominators();
        let g = gcd_integers(p.terms.values());
        let mut r = p.scale(&Rational::new(BigInt::one(), g));
        if r.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            r = -r;
        }
        r
    }

    /// Same polynomial over a different alphabet; each variable of `self`
    /// must occur in `vars` (by name).
    pub fn embed<S: AsRef<str>>(&self, vars: &[S]) -> Result<Polynomial, PolyError> {
        let target: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut map = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let idx = target.iter().position(|t| t == v);
            map.push(idx);
        }
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = x,
                    None => {
                        return Err(PolyError::UndeclaredVariable {
                            name: self.vars[i].clone(),
                            pos: 0,
                        })
                    }
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Simultaneous substitution of variables by polynomials.
    ///
    /// All assigned values must share one alphabet; variables of `self`
    /// without an assignment are carried over by name into that alphabet.
    /// A variable occurring with a negative exponent can only be replaced
    /// by a single monomial.
    pub fn substitute(&self, assignments: &HashMap<String, Polynomial>) -> Result<Polynomial, PolyError> {
        let target: Vec<String> = match assignments.values().next() {
            Some(v) => v.vars.clone(),
            None => return Ok(self.clone()),
        };
        for v in assignments.values() {
            if v.vars != target {
                return Err(PolyError::AlphabetMismatch {
                    left: target.clone(),
                    right: v.vars.clone(),
                });
            }
        }
        let mut images = Vec::with_capacity(self.vars.len());
        for name in &self.vars {
            let img = match assignments.get(name) {
                Some(p) => p.clone(),
                None => Polynomial::var(&target, name)?,
            };
            images.push(img);
        }
        for (i, name) in self.vars.iter().enumerate() {
            if self.min_degree(i).unwrap_or(0) < 0 && !images[i].is_monomial() {
                return Err(PolyError::NonInvertibleSubstitution { var: name.clone() });
            }
        }
        // cache powers per variable
        let mut cache: Vec<HashMap<i64, Polynomial>> = vec![HashMap::new(); self.vars.len()];
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = match cache[i].get(&e) {
                    Some(p) => p.clone(),
                    None => {
                        let p = images[i]
                            .pow_i(e)
                            .ok_or_else(|| PolyError::NonInvertibleSubstitution {
                                var: self.vars[i].clone(),
                            })?;
                        cache[i].insert(e, p.clone());
                        p
                    }
                };
                term = &term * &pw;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Splits `self` as a polynomial in the variables *not* in `keep`, with
    /// coefficients that are polynomials in the `keep` variables (over the
    /// same alphabet, so they multiply back directly).
    pub fn coefficients_outside(&self, keep: &[usize]) -> BTreeMap<Vec<i64>, Polynomial> {
        let mut out: BTreeMap<Vec<i64>, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut outer = m.0.clone();
            let mut inner = vec![0; m.0.len()];
            for &k in keep {
                inner[k] = m.0[k];
                outer[k] = 0;
            }
            out.entry(outer)
                .or_insert_with(|| Polynomial::zero(&self.vars))
                .add_term(Monomial(inner), c.clone());
        }
        out
    }

    /// Maps every coefficient through `f`, dropping zeros.
    pub fn map_coefficients(&self, f: impl Fn(&Rational) -> Rational) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Polynomial::from_map(self.vars.clone(), terms)
    }

    /// Maps every exponent vector through `f`, merging collisions.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }
}

/// `a op b` with an explicit alphabet check.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial, PolyError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on mismatched alphabets; use the `checked_*` form to handle that.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial alphabet mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.map_coefficients(|c| -c.clone())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.map_coefficients(|c| -c.clone())
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: terms in descending graded-lex order, coefficients as
    /// `p` or `p/q`, factors joined with `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(fmt_rational(&abs));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::poly::rational::{int, rat};

    fn p(s: &str, vars: &[&str]) -> Polynomial {
        parse_poly(s, vars).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let v = ["M", "L"];
        let a = p("M+L", &v);
        let b = p("M-L", &v);
        assert_eq!(&a * &b, p("M^2-L^2", &v));
    }

    #[test]
    fn add_zero_is_identity() {
        let v = ["M", "L", "q"];
        let a = p("3*M*L - q^-2 + 1/2", &v);
        assert_eq!(&a + &Polynomial::zero(&v), a);
    }

    #[test]
    fn alphabet_mismatch_is_reported() {
        let a = p("x", &["x"]);
        let b = p("y", &["y"]);
        assert!(matches!(
            poly_arith(&a, &b, ArithOp::Add),
            Err(PolyError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn canonical_printing() {
        let v = ["M", "L", "q"];
        let a = p("q - 2*M^2*L + 1/3 - M", &v);
        assert_eq!(a.to_string(), "-2*M^2*L - M + q + 1/3");
        assert_eq!(p("q^-1*M", &v).to_string(), "M*q^-1");
        assert_eq!(Polynomial::zero(&v).to_string(), "0");
    }

    #[test]
    fn relabel_monomial() {
        let src = p("q*M*L", &["M", "L", "q"]);
        let vars = ["x", "y", "t"];
        let mut a = HashMap::new();
        a.insert("M".to_string(), p("y", &vars));
        a.insert("L".to_string(), p("x", &vars));
        a.insert("q".to_string(), p("t^-1", &vars));
        assert_eq!(src.substitute(&a).unwrap(), p("x*y/t", &vars));
    }

    #[test]
    fn identity_substitution() {
        let v = ["M", "L", "q"];
        let src = p("q^-3*M*L^2 - 7*M + 2", &v);
        let a: HashMap<String, Polynomial> = v.iter().map(|n| (n.to_string(), p(n, &v))).collect();
        assert_eq!(src.substitute(&a).unwrap(), src);
        assert_eq!(src.substitute(&HashMap::new()).unwrap(), src);
    }

    #[test]
    fn negative_exponent_needs_monomial_image() {
        let v = ["q"];
        let src = p("q^-1", &v);
        let mut a = HashMap::new();
        a.insert("q".to_string(), p("1+q", &v));
        assert!(matches!(
            src.substitute(&a),
            Err(PolyError::NonInvertibleSubstitution { .. })
        ));
    }

    #[test]
    fn specialize_to_one() {
        let v = ["M", "L", "q"];
        let src = p("L + (q-1)*M", &v);
        let mut a = HashMap::new();
        a.insert("q".to_string(), Polynomial::one(&v));
        assert_eq!(src.substitute(&a).unwrap(), p("L", &v));
    }

    #[test]
    fn primitive_form() {
        let v = ["M"];
        let a = p("-1/2*M + 3/4", &v);
        assert_eq!(a.integer_primitive(), p("2*M - 3", &v));
        assert_eq!(a.clear_denominators().0, 4.into());
        assert_eq!(p("6*M+4", &v).integer_content(), 2.into());
        assert_eq!(a.coeff(&Monomial(vec![1])), rat(-1, 2));
        assert_eq!(a.constant_term(), rat(3, 4));
        assert_eq!(p("5", &v).as_constant(), Some(int(5)));
    }
}
