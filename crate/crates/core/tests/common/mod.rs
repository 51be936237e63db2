#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use qtrop::poly::rational::rat;
use qtrop::poly::{parse_rational, Rational, ZLaurent};
use qtrop::tropical::RPoint;

/// Laurent polynomial in q as exponent -> coefficient, no zero entries.
pub type Lp = BTreeMap<i64, BigInt>;

fn norm(mut a: Lp) -> Lp {
    a.retain(|_, c| !c.is_zero());
    a
}

fn add(a: &Lp, b: &Lp, s: i64) -> Lp {
    let mut r = a.clone();
    for (e, c) in b {
        *r.entry(*e).or_insert_with(BigInt::zero) += c * s;
    }
    norm(r)
}

fn mul(a: &Lp, b: &Lp) -> Lp {
    let mut r = Lp::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            *r.entry(e1 + e2).or_insert_with(BigInt::zero) += c1 * c2;
        }
    }
    norm(r)
}

fn lp(terms: &[(i64, i64)]) -> Lp {
    norm(terms.iter().map(|&(e, c)| (e, BigInt::from(c))).collect())
}

fn shift(a: &Lp, k: i64) -> Lp {
    a.iter().map(|(e, c)| (e + k, c.clone())).collect()
}

/// Exact quotient by `1 - q^i`.
fn div_one_minus(a: &Lp, i: i64) -> Lp {
    let (Some(&lo), Some(&hi)) = (a.keys().next(), a.keys().next_back()) else {
        return Lp::new();
    };
    let mut g = Lp::new();
    for e in lo..=hi - i {
        let v = a.get(&e).cloned().unwrap_or_default() + g.get(&(e - i)).cloned().unwrap_or_default();
        if !v.is_zero() {
            g.insert(e, v);
        }
    }
    assert_eq!(add(&g, &shift(&g, i), -1), *a, "inexact division by 1 - q^{i}");
    g
}

fn qpoch_range(lo: i64, hi: i64) -> Lp {
    let mut r = lp(&[(0, 1)]);
    for i in lo..=hi {
        r = mul(&r, &lp(&[(0, 1), (i, -1)]));
    }
    r
}

/// Cyclotomic coefficient of the twist knot K_p at level n.
fn habiro_coeff(n: i64, p: i64) -> Lp {
    let mut total = Lp::new();
    for k in 0..=n {
        let e2 = k * (k + 1) * p + k * (k - 1) / 2;
        let s = if k % 2 == 0 { 1 } else { -1 };
        let mut t = lp(&[(e2, s), (e2 + 2 * k + 1, -s)]);
        t = mul(&t, &qpoch_range(n + k + 2, 2 * n + 1));
        t = mul(&t, &qpoch_range(n - k + 1, n));
        total = add(&total, &t, 1);
    }
    for i in 1..=2 * n + 1 {
        total = div_one_minus(&total, i);
    }
    shift(&total, n * (n + 3) / 2)
}

/// Colored Jones polynomial J_{K_p}(N) normalized to 1 on the unknot, with
/// J(0) = 0 and J(1) = 1. K_-1 = 4_1, K_2 = 5_2, K_-2 = 6_1.
pub fn colored_jones(big_n: i64, p: i64) -> Lp {
    if big_n == 0 {
        return Lp::new();
    }
    let mut tot = Lp::new();
    let mut prod = lp(&[(0, 1)]);
    for n in 0..big_n {
        if n > 0 {
            prod = mul(&prod, &lp(&[(big_n, 1), (-big_n, 1), (n, -1), (-n, -1)]));
        }
        let s = if n % 2 == 0 { 1 } else { -1 };
        tot = add(&tot, &mul(&habiro_coeff(n, p), &prod), s);
    }
    tot
}

pub fn to_zlaurent(a: &Lp) -> ZLaurent {
    ZLaurent::from_terms(a.iter().map(|(e, c)| (*e, c.clone())))
}

pub fn jones_values(p: i64, count: usize) -> Vec<ZLaurent> {
    (0..count as i64)
        .map(|n| to_zlaurent(&colored_jones(n, p)))
        .collect()
}

pub fn is_one(a: &Lp) -> bool {
    a.len() == 1 && a.get(&0).is_some_and(|c| c.is_one())
}

pub fn r(s: &str) -> Rational {
    parse_rational(s).unwrap_or_else(|| panic!("bad rational {s}"))
}

pub fn pt(x: &str, y: &str) -> RPoint {
    (r(x), r(y))
}

pub fn half(n: i64) -> Rational {
    rat(n, 2)
}
