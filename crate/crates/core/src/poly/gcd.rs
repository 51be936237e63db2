//! Exact division, integer multivariate gcd and content.

use num_integer::Integer;
use num_traits::{One, Signed};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::rational::Rational;
use super::PolyError;

fn has_negative_exponent(p: &Polynomial) -> bool {
    p.terms().any(|(m, _)| m.0.iter().any(|&e| e < 0))
}

/// Exact quotient `p / d`, if one exists.
///
/// Laurent inputs divide in the Laurent ring (monomials are units); when both
/// inputs are ordinary polynomials the quotient must be one too.
pub fn divides(d: &Polynomial, p: &Polynomial) -> Option<Polynomial> {
    assert!(!d.is_zero(), "division by the zero polynomial");
    if d.vars() != p.vars() {
        return None;
    }
    if p.is_zero() {
        return Some(p.clone());
    }
    let laurent = has_negative_exponent(d) || has_negative_exponent(p);
    let (dl, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
    // Lowest terms multiply, so the quotient cannot go below this bound.
    let lowest_q = {
        let (pm, _) = p.terms().next()?;
        let (dm, _) = d.terms().next()?;
        pm.div(dm)
    };
    let mut r = p.clone();
    let mut q = Polynomial::zero(p.vars());
    while let Some((rm, rc)) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let qm = rm.div(&dl);
        if qm < lowest_q {
            return None;
        }
        if !laurent && qm.0.iter().any(|&e| e < 0) {
            return None;
        }
        let qc = rc / &dc;
        r = &r - &d.shift(&qm).scale(&qc);
        q.add_term(qm, qc);
    }
    Some(q)
}

/// Gcd over the integers of the coefficient polynomials of `p` viewed as a
/// polynomial in the variables outside `vars`.
///
/// Monomial factors are part of the content (so `q*M*L + q*M` has content
/// `q*M` in `{M, q}`); the polynomial part is normalized to a positive
/// graded-lex leading coefficient.
pub fn content_in(p: &Polynomial, vars: &[&str]) -> Result<Polynomial, PolyError> {
    if p.is_zero() {
        return Err(PolyError::Empty);
    }
    if !p.is_integral() {
        return Err(PolyError::NonIntegral);
    }
    let mut keep = Vec::new();
    for v in vars {
        let idx = p.var_index(v).ok_or_else(|| PolyError::UndeclaredVariable {
            name: v.to_string(),
            pos: 0,
        })?;
        keep.push(idx);
    }
    keep.sort_unstable();
    keep.dedup();
    let coeffs: Vec<Polynomial> = p.coefficients_outside(&keep).into_values().collect();
    gcd_many(&coeffs, &keep)
}

/// Gcd of integral Laurent polynomials involving only the variables in `vars`,
/// including the monomial part (componentwise minimum exponent).
pub fn gcd_many(ps: &[Polynomial], vars: &[usize]) -> Result<Polynomial, PolyError> {
    let nonzero: Vec<&Polynomial> = ps.iter().filter(|p| !p.is_zero()).collect();
    let first = nonzero.first().ok_or(PolyError::Empty)?;
    let n = first.vars().len();
    let mut mono = first.min_exponents().expect("nonzero");
    for p in &nonzero[1..] {
        mono = mono.gcd(&p.min_exponents().expect("nonzero"));
    }
    let inv = mono.pow(-1);
    let mut shifted: Vec<Polynomial> = nonzero.iter().map(|p| p.shift(&inv)).collect();
    // small inputs first: the gcd shrinks fastest that way
    shifted.sort_by_key(|p| p.len());
    let mut g = shifted[0].clone();
    for p in &shifted[1..] {
        if g.is_constant() && g.constant_term().abs().is_one() {
            break;
        }
        g = gcd(&g, p, vars);
    }
    let g = normalize(&g);
    debug_assert_eq!(mono.0.len(), n);
    Ok(g.shift(&mono))
}

fn normalize(p: &Polynomial) -> Polynomial {
    match p.leading_term() {
        Some((_, c)) if c.is_negative() => -p,
        _ => p.clone(),
    }
}

/// Gcd of two integral polynomials (nonnegative exponents) over Z, with a
/// positive leading coefficient. `vars` lists the variables that may occur.
pub fn gcd(a: &Polynomial, b: &Polynomial, vars: &[usize]) -> Polynomial {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let live: Vec<usize> = vars
        .iter()
        .copied()
        .filter(|&v| a.degree(v).unwrap_or(0) > 0 || b.degree(v).unwrap_or(0) > 0)
        .collect();
    let Some((&v, rest)) = live.split_first() else {
        let g = a.constant_term().numer().gcd(b.constant_term().numer());
        return Polynomial::constant(a.vars(), Rational::from_integer(g));
    };
    let ua = Univ::split(a, v);
    let ub = Univ::split(b, v);
    let ca = ua.content(rest);
    let cb = ub.content(rest);
    let c = gcd(&ca, &cb, rest);
    let mut pa = ua.div_scalar(&ca);
    let mut pb = ub.div_scalar(&cb);
    if pa.degree() < pb.degree() {
        std::mem::swap(&mut pa, &mut pb);
    }
    while pb.degree() > 0 {
        let r = pa.prem(&pb);
        if r.is_zero() {
            break;
        }
        let cr = r.content(rest);
        pa = pb;
        pb = r.div_scalar(&cr);
    }
    let g = if pb.degree() == 0 {
        Polynomial::one(a.vars())
    } else {
        let cg = pb.content(rest);
        pb.div_scalar(&cg).join(v)
    };
    normalize(&(&c * &g))
}

/// Polynomial in one variable with coefficients in the others (same alphabet).
#[derive(Clone)]
struct Univ {
    coeffs: Vec<Polynomial>,
}

impl Univ {
    fn split(p: &Polynomial, v: usize) -> Univ {
        let deg = p.degree(v).unwrap_or(0).max(0) as usize;
        let mut coeffs = vec![Polynomial::zero(p.vars()); deg + 1];
        for (m, c) in p.terms() {
            let e = m.0[v] as usize;
            let mut rest = m.0.clone();
            rest[v] = 0;
            coeffs[e].add_term(Monomial(rest), c.clone());
        }
        Univ { coeffs }
    }

    fn join(&self, v: usize) -> Polynomial {
        let vars = self.coeffs[0].vars().to_vec();
        let mut out = Polynomial::zero(&vars);
        for (e, c) in self.coeffs.iter().enumerate() {
            let mut m = vec![0; vars.len()];
            m[v] = e as i64;
            out = &out + &c.shift(&Monomial(m));
        }
        out
    }

    fn trim(mut self) -> Univ {
        while self.coeffs.len() > 1 && self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn content(&self, rest: &[usize]) -> Polynomial {
        let mut g = Polynomial::zero(self.coeffs[0].vars());
        for c in &self.coeffs {
            g = gcd(&g, c, rest);
            if g.is_constant() && g.constant_term().is_one() {
                break;
            }
        }
        g
    }

    fn div_scalar(&self, c: &Polynomial) -> Univ {
        Univ {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| divides(c, x).expect("content divides every coefficient"))
                .collect(),
        }
    }

    /// Pseudo-remainder of `self` by `other`.
    fn prem(&self, other: &Univ) -> Univ {
        let n = other.degree();
        let lb = &other.coeffs[n];
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= n {
            let m = r.degree();
            let lr = r.coeffs[m].clone();
            let mut next: Vec<Polynomial> = r.coeffs.iter().map(|c| c * lb).collect();
            for (i, bc) in other.coeffs.iter().enumerate() {
                let t = &lr * bc;
                next[i + m - n] = &next[i + m - n] - &t;
            }
            next.pop();
            if next.is_empty() {
                next.push(Polynomial::zero(lb.vars()));
            }
            r = Univ { coeffs: next }.trim();
            if n == 0 {
                break;
            }
        }
        r
    }
}

impl Polynomial {
    /// Shorthand for [`divides`] with `self` as the dividend.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        divides(d, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str, v: &[&str]) -> Polynomial {
        parse_poly(s, v).unwrap()
    }

    #[test]
    fn simple_division() {
        let v = ["y"];
        assert_eq!(divides(&p("y-1", &v), &p("y^2-1", &v)), Some(p("y+1", &v)));
        assert_eq!(divides(&p("y-1", &v), &p("y+1", &v)), None);
        assert_eq!(divides(&p("y", &v), &p("1", &v)), None);
        assert_eq!(divides(&p("y", &v), &p("y^-1", &v)), Some(p("y^-2", &v)));
    }

    #[test]
    fn multivariate_division() {
        let v = ["x", "y", "q"];
        let a = p("x*y - q^-1 + 3*x^2", &v);
        let b = p("y^3 - 2*x*q + 1/2", &v);
        assert_eq!(divides(&a, &(&a * &b)), Some(b.clone()));
        assert_eq!(divides(&a, &(&(&a * &b) + &p("1", &v))), None);
    }

    #[test]
    fn content_examples() {
        let v = ["M", "L", "q"];
        assert_eq!(
            content_in(&p("q*M*L + q*M", &v), &["M", "q"]).unwrap(),
            p("q*M", &v)
        );
        assert_eq!(
            content_in(&p("(1+M)*L - q", &v), &["M", "q"]).unwrap(),
            p("1", &v)
        );
        let d = p("(1 - M*q)*(1 + q)", &v);
        let rest = p("M*L^2 + (q - 1)*L + 2*M", &v);
        let lm1 = p("L - 1", &v);
        let full = &(&lm1 * &d) * &rest;
        let c_rest = content_in(&(&lm1 * &rest), &["M", "q"]).unwrap();
        assert_eq!(
            content_in(&full, &["M", "q"]).unwrap(),
            normalize(&(&d * &c_rest))
        );
        assert!(matches!(
            content_in(&Polynomial::zero(&v), &["M"]),
            Err(PolyError::Empty)
        ));
    }

    #[test]
    fn bivariate_gcd() {
        let v = ["M", "q"];
        let g = p("M*q + 1", &v);
        let a = &g * &p("M - q^2", &v);
        let b = &g * &p("M^2 + q + 3", &v);
        assert_eq!(gcd(&a, &b, &[0, 1]), g);
        let c = p("6*M + 4", &v);
        assert_eq!(gcd(&c, &p("9*M + 6", &v), &[0, 1]), p("3*M + 2", &v));
    }
}
