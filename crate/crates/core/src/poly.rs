//! Sparse bivariate polynomials in `p`, `q` with arbitrary-precision integer
//! coefficients.
//!
//! The term map is kept free of zero coefficients after every operation, so
//! the derived structural equality is also mathematical equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exponent pair `(deg_p, deg_q)`.
pub type Monomial = (u32, u32);

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn p() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * p^dp * q^dq`.
    pub fn monomial(c: impl Into<BigInt>, dp: u32, dq: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((dp, dq), c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(deg_p, deg_q, coefficient)` triples, merging
    /// repeated monomials.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (dp, dq, c) in iter {
            out.add_term((dp, dq), c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(deg_p, deg_q)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, dp: u32, dq: u32) -> BigInt {
        self.terms.get(&(dp, dq)).cloned().unwrap_or_default()
    }

    pub fn degree_p(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0).max()
    }

    pub fn degree_q(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0 + m.1).max()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, other: &BiPoly, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(*m, v * c);
        }
    }

    /// Adds `sign * other` with `sign = ±1`, avoiding a multiplication.
    pub fn add_signed(&mut self, other: &BiPoly, sign: i32) {
        for (m, v) in &other.terms {
            if sign >= 0 {
                self.add_term(*m, v.clone());
            } else {
                self.add_term(*m, -v.clone());
            }
        }
    }

    /// Multiplies by the monomial `p^dp q^dq`.
    pub fn shift_degrees(&self, dp: u32, dq: u32) -> BiPoly {
        if dp == 0 && dq == 0 {
            return self.clone();
        }
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((a + dp, b + dq), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> BiPoly {
        let mut base = self.clone();
        let mut acc = BiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates `f(p + 1, q + 1)` by binomial expansion.
    pub fn shift_vars(&self) -> BiPoly {
        let max_p = self.degree_p().unwrap_or(0) as usize;
        let max_q = self.degree_q().unwrap_or(0) as usize;
        let binom = binomial_table(max_p.max(max_q));
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            for i in 0..=a as usize {
                let ci = c * &binom[a as usize][i];
                for j in 0..=b as usize {
                    out.add_term((i as u32, j as u32), &ci * &binom[b as usize][j]);
                }
            }
        }
        out
    }

    /// True iff every stored coefficient is positive. The zero polynomial
    /// is vacuously nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Substitutes the supplied values, leaving `None` variables symbolic.
    pub fn specialize(&self, p_val: Option<i64>, q_val: Option<i64>) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            let mut c = c.clone();
            let mut na = a;
            let mut nb = b;
            if let Some(pv) = p_val {
                c *= BigInt::from(pv).pow(a);
                na = 0;
            }
            if let Some(qv) = q_val {
                c *= BigInt::from(qv).pow(b);
                nb = 0;
            }
            out.add_term((na, nb), c);
        }
        out
    }

    /// Value at `p = q = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Constant term when the polynomial is a constant; `None` otherwise.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Replaces `p` by `q`, giving a polynomial in `q` alone.
    pub fn collapse_p_into_q(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term((0, a + b), c.clone());
        }
        out
    }

    /// The set of p-degrees present.
    pub fn p_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(|m| m.0).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn binomial_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(mut self, rhs: BiPoly) -> BiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(mut self, rhs: BiPoly) -> BiPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&BiPoly> for BiPoly {
    fn sub_assign(&mut self, rhs: &BiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -self.clone()
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl From<i64> for BiPoly {
    fn from(c: i64) -> Self {
        BiPoly::constant(c)
    }
}

impl fmt::Display for BiPoly {
    /// Canonical ascending term order, e.g. `2 + 3*q + q^2 + p*q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || (a == 0 && b == 0) {
                factors.push(abs.to_string());
            }
            match a {
                0 => {}
                1 => factors.push("p".into()),
                e => factors.push(format!("p^{e}")),
            }
            match b {
                0 => {}
                1 => factors.push("q".into()),
                e => factors.push(format!("q^{e}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("cannot parse polynomial term `{0}`")]
pub struct ParsePolyError(String);

impl FromStr for BiPoly {
    type Err = ParsePolyError;

    /// Parses the output of `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(BiPoly::zero());
        }
        let mut out = BiPoly::zero();
        let normalized = s.replace(" - ", " + -").replace(' ', "");
        for raw in normalized.split('+').filter(|t| !t.is_empty()) {
            let (neg, body) = match raw.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, raw),
            };
            let mut c = BigInt::one();
            let (mut a, mut b) = (0u32, 0u32);
            for factor in body.split('*') {
                let err = || ParsePolyError(raw.to_string());
                if let Some(rest) = factor.strip_prefix('p') {
                    a += parse_exponent(rest).ok_or_else(err)?;
                } else if let Some(rest) = factor.strip_prefix('q') {
                    b += parse_exponent(rest).ok_or_else(err)?;
                } else {
                    c *= factor.parse::<BigInt>().map_err(|_| err())?;
                }
            }
            if neg {
                c = -c;
            }
            out.add_term((a, b), c);
        }
        Ok(out)
    }
}

fn parse_exponent(rest: &str) -> Option<u32> {
    if rest.is_empty() {
        Some(1)
    } else {
        rest.strip_prefix('^')?.parse().ok()
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    p: u32,
    q: u32,
    c: String,
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(&(p, q), c)| TermRecord {
                p,
                q,
                c: c.to_string(),
            })
            .collect();
        records.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let mut out = BiPoly::zero();
        for r in records {
            let c: BigInt = r.c.parse().map_err(D::Error::custom)?;
            out.add_term((r.p, r.q), c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(terms: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn add_examples() {
        assert_eq!(&BiPoly::p() + &BiPoly::q(), poly(&[(1, 0, 1), (0, 1, 1)]));
        let p_plus_one = poly(&[(1, 0, 1), (0, 0, 1)]);
        assert_eq!(&p_plus_one + &BiPoly::constant(-1), BiPoly::p());
        assert_eq!(
            &poly(&[(1, 1, 2)]) + &poly(&[(1, 1, 3)]),
            poly(&[(1, 1, 5)])
        );
    }

    #[test]
    fn mul_examples() {
        let p1 = poly(&[(1, 0, 1), (0, 0, 1)]);
        let q1 = poly(&[(0, 1, 1), (0, 0, 1)]);
        assert_eq!(
            &p1 * &q1,
            poly(&[(1, 1, 1), (1, 0, 1), (0, 1, 1), (0, 0, 1)])
        );
        let f = poly(&[(3, 1, -7), (0, 2, 4)]);
        assert_eq!(&f * &BiPoly::one(), f);
        let a = poly(&[(1, 0, 1), (0, 1, 1)]);
        let b = poly(&[(1, 0, 1), (0, 1, -1)]);
        assert_eq!(&a * &b, poly(&[(2, 0, 1), (0, 2, -1)]));
    }

    #[test]
    fn shift_vars_examples() {
        assert_eq!(BiPoly::p().shift_vars(), poly(&[(1, 0, 1), (0, 0, 1)]));
        assert_eq!(
            poly(&[(0, 2, 1), (0, 1, 1)]).shift_vars(),
            poly(&[(0, 2, 1), (0, 1, 3), (0, 0, 2)])
        );
        assert_eq!(
            poly(&[(1, 1, 1)]).shift_vars(),
            poly(&[(1, 1, 1), (1, 0, 1), (0, 1, 1), (0, 0, 1)])
        );
    }

    #[test]
    fn nonnegativity_examples() {
        assert!(poly(&[(0, 2, 1), (0, 1, 1)]).is_nonnegative());
        assert!(!poly(&[(1, 0, 1), (0, 1, -1)]).is_nonnegative());
        assert!(BiPoly::zero().is_nonnegative());
    }

    #[test]
    fn specialize_examples() {
        let f = poly(&[(1, 1, 1), (0, 1, 1)]);
        assert_eq!(f.specialize(Some(1), None), poly(&[(0, 1, 2)]));
        let g = poly(&[(0, 2, 1), (0, 1, 1)]);
        assert_eq!(g.specialize(None, Some(1)), BiPoly::constant(2));
        let h = poly(&[(1, 0, 1), (0, 1, 1)]);
        assert_eq!(h.specialize(Some(0), Some(0)), BiPoly::zero());
        assert_eq!(h.specialize(None, None), h);
    }

    #[test]
    fn display_and_parse() {
        let f = poly(&[(0, 0, 2), (0, 1, 3), (0, 2, 1), (1, 1, -1), (2, 0, 5)]);
        let s = f.to_string();
        assert_eq!(s, "2 + 3*q + q^2 - p*q + 5*p^2");
        assert_eq!(s.parse::<BiPoly>().unwrap(), f);
        assert_eq!("0".parse::<BiPoly>().unwrap(), BiPoly::zero());
        assert_eq!(BiPoly::constant(-1).to_string(), "-1");
    }

    #[test]
    fn json_is_sorted_ascending() {
        let f = poly(&[(1, 0, 1), (0, 2, -3), (0, 0, 1)]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"[{"p":0,"q":0,"c":"1"},{"p":0,"q":2,"c":"-3"},{"p":1,"q":0,"c":"1"}]"#
        );
        let back: BiPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn big_coefficients_stay_exact() {
        let f = poly(&[(1, 0, i64::MAX), (0, 1, i64::MAX)]);
        let sq = &f * &f;
        let expected = BigInt::from(i64::MAX) * BigInt::from(i64::MAX) * 2;
        assert_eq!(sq.coeff(1, 1), expected);
    }

    fn shift_back(f: &BiPoly) -> BiPoly {
        // substitute p -> p - 1, q -> q - 1 by Horner on binomial expansions
        let pm1 = &BiPoly::p() - &BiPoly::one();
        let qm1 = &BiPoly::q() - &BiPoly::one();
        let mut out = BiPoly::zero();
        for ((a, b), c) in f.terms() {
            out.add_scaled(&(&pm1.pow(a) * &qm1.pow(b)), c);
        }
        out
    }

    fn arb_poly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec((0u32..4, 0u32..4, -20i64..20), 0..6).prop_map(BiPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn shift_vars_inverts(a in arb_poly()) {
            prop_assert_eq!(shift_back(&a.shift_vars()), a.clone());
            prop_assert_eq!(a.shift_vars().total_degree(), a.total_degree());
        }

        #[test]
        fn specialize_one_one_is_coefficient_sum(a in arb_poly()) {
            prop_assert_eq!(a.specialize(Some(1), Some(1)), BiPoly::constant(a.coefficient_sum()));
        }

        #[test]
        fn display_parses_back(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<BiPoly>().unwrap(), a);
        }
    }
}
