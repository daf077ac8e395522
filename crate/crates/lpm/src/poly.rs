use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A sparse two-variable polynomial with exact big-integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality. Terms are keyed by the exponent pair `(i, j)` of `x^i y^j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly::default()
    }

    pub fn one() -> Self {
        BivariatePoly::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(i: u32, j: u32, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((i, j), coeff);
        }
        BivariatePoly { terms }
    }

    pub fn x() -> Self {
        BivariatePoly::monomial(1, 0, BigInt::one())
    }

    pub fn y() -> Self {
        BivariatePoly::monomial(0, 1, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, i: u32, j: u32, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Terms in ascending lexicographic order of `(i, j)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    /// `(i, j, coefficient-as-decimal-string)` triples, lexicographic by
    /// `(i, j)`.
    pub fn to_triples(&self) -> Vec<(u32, u32, String)> {
        self.terms().map(|(i, j, c)| (i, j, c.to_string())).collect()
    }

    pub fn max_degrees(&self) -> (u32, u32) {
        let dx = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let dy = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        (dx, dy)
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Exact evaluation at an integer point.
    pub fn eval(&self, x: i64, y: i64) -> BigInt {
        let (dx, dy) = self.max_degrees();
        let xp = power_table(BigInt::from(x), dx);
        let yp = power_table(BigInt::from(y), dy);
        let mut acc = BigInt::zero();
        for (i, j, c) in self.terms() {
            acc += c * &xp[i as usize] * &yp[j as usize];
        }
        acc
    }

    /// The polynomial with the roles of x and y exchanged.
    pub fn swap_vars(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            terms.insert((j, i), c.clone());
        }
        BivariatePoly { terms }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return BivariatePoly::zero();
        }
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, c * factor))
                .collect(),
        }
    }
}

fn power_table(base: BigInt, max: u32) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(max as usize + 1);
    out.push(BigInt::one());
    for _ in 0..max {
        let next = out.last().unwrap() * &base;
        out.push(next);
    }
    out
}

impl Add<&BivariatePoly> for &BivariatePoly {
    type Output = BivariatePoly;

    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, c);
        }
        out
    }
}

impl Mul<&BivariatePoly> for &BivariatePoly {
    type Output = BivariatePoly;

    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in rhs.terms() {
                out.add_term(i1 + i2, j1 + j2, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for BivariatePoly {
    /// Renders like `x^2 + 2 x + 2 y + y^2`: descending x-degree, then
    /// ascending y-degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<(u32, u32)> = self.terms.keys().cloned().collect();
        keys.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (idx, (i, j)) in keys.iter().enumerate() {
            let c = &self.terms[&(*i, *j)];
            if idx == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (*i == 0 && *j == 0) {
                parts.push(mag.to_string());
            }
            match i {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{j}")),
            }
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        let xy = &BivariatePoly::x() + &BivariatePoly::y();
        assert_eq!(xy.eval(1, 1), BigInt::from(2));

        let mut p = xy.clone();
        p.add_term(0, 2, &BigInt::one()); // x + y + y^2
        assert_eq!(p.eval(0, 2), BigInt::from(6));
        assert_eq!(p.eval(2, 0), BigInt::from(2));
    }

    #[test]
    fn display_orders_terms() {
        let mut p = BivariatePoly::x();
        p.add_term(0, 1, &BigInt::one());
        p.add_term(0, 2, &BigInt::one());
        assert_eq!(p.to_string(), "x + y + y^2");

        let mut t = BivariatePoly::monomial(2, 0, BigInt::one());
        t.add_term(1, 0, &BigInt::one());
        t.add_term(0, 1, &BigInt::one());
        assert_eq!(t.to_string(), "x^2 + x + y");

        let mut u = BivariatePoly::monomial(2, 0, BigInt::one());
        u.add_term(1, 0, &BigInt::from(2));
        u.add_term(0, 1, &BigInt::from(2));
        u.add_term(0, 2, &BigInt::one());
        assert_eq!(u.to_string(), "x^2 + 2 x + 2 y + y^2");
        assert_eq!(BivariatePoly::zero().to_string(), "0");
    }

    #[test]
    fn mul_expands_products() {
        let xy = &BivariatePoly::x() + &BivariatePoly::y();
        let sq = &xy * &xy;
        assert_eq!(sq.coeff(2, 0), BigInt::one());
        assert_eq!(sq.coeff(1, 1), BigInt::from(2));
        assert_eq!(sq.coeff(0, 2), BigInt::one());
        assert_eq!(sq.num_terms(), 3);
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = BivariatePoly::x();
        p.add_term(1, 0, &BigInt::from(-1));
        assert!(p.is_zero());
    }

    #[test]
    fn triples_are_sorted_lexicographically() {
        let mut p = BivariatePoly::monomial(1, 0, BigInt::one());
        p.add_term(0, 2, &BigInt::from(3));
        p.add_term(0, 1, &BigInt::one());
        assert_eq!(
            p.to_triples(),
            vec![
                (0, 1, "1".to_string()),
                (0, 2, "3".to_string()),
                (1, 0, "1".to_string())
            ]
        );
    }

    #[test]
    fn swap_vars_transposes() {
        let mut p = BivariatePoly::monomial(2, 1, BigInt::from(5));
        p.add_term(0, 1, &BigInt::one());
        let q = p.swap_vars();
        assert_eq!(q.coeff(1, 2), BigInt::from(5));
        assert_eq!(q.coeff(1, 0), BigInt::one());
        assert_eq!(q.swap_vars(), p);
    }
}
