use std::cmp::Ordering;
use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use super::Coefficient;

/// Exponent pair `x^i y^j`, ordered graded-lexicographically: total degree
/// first, then the `x` exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub const fn new(i: u32, j: u32) -> Self {
        Monomial { i, j }
    }

    pub fn degree(self) -> u32 {
        self.i + self.j
    }

    pub fn swapped(self) -> Self {
        Monomial {
            i: self.j,
            j: self.i,
        }
    }

    /// Multiplies by `x^di y^dj`; `None` if an exponent would become negative.
    pub fn shifted(self, di: i64, dj: i64) -> Option<Self> {
        let i = i64::from(self.i) + di;
        let j = i64::from(self.j) + dj;
        (i >= 0 && j >= 0).then_some(Monomial {
            i: i as u32,
            j: j as u32,
        })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.i).cmp(&(other.degree(), other.i))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `x, y` with exact coefficients. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    terms: BTreeMap<Monomial, Coefficient>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Coefficient::one())
    }

    pub fn constant(c: Coefficient) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Coefficient) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(i, j), c);
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, Coefficient)>,
    {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(Monomial::new(i, j), c);
        }
        p
    }

    /// Accumulates `c · x^i y^j`, dropping the entry if it cancels.
    pub(crate) fn add_term(&mut self, m: Monomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, m: Monomial, c: &Coefficient) {
        match self.terms.entry(m) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
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

    pub fn coeff(&self, i: u32, j: u32) -> Coefficient {
        self.terms
            .get(&Monomial::new(i, j))
            .cloned()
            .unwrap_or_default()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Coefficient)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term_ref(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| -c)
    }

    pub fn scale(&self, s: &Coefficient) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        self.map_coefficients(|c| c * s)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        self.mul_acc(other, &mut out);
        out
    }

    /// `out += self * other`
    pub(crate) fn mul_acc(&self, other: &Self, out: &mut Self) {
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(Monomial::new(ma.i + mb.i, ma.j + mb.j), ca * cb);
            }
        }
    }

    pub fn swap_xy(&self) -> Self {
        BivariatePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swapped(), c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `x^di y^dj`; `None` if any exponent would become negative.
    pub fn shift(&self, di: i64, dj: i64) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.shifted(di, dj)?, c.clone());
        }
        Some(BivariatePolynomial { terms })
    }

    /// Keeps the terms with `i == 0` (substitution `x = 0`).
    pub fn at_x_zero(&self) -> Self {
        self.filter(|m| m.i == 0)
    }

    /// Keeps the terms with `j == 0` (substitution `y = 0`).
    pub fn at_y_zero(&self) -> Self {
        self.filter(|m| m.j == 0)
    }

    /// Substitutes `x = 1, y = 1`.
    pub fn at_ones(&self) -> Coefficient {
        let mut sum = Coefficient::zero();
        for c in self.terms.values() {
            sum += c;
        }
        sum
    }

    pub fn filter(&self, keep: impl Fn(Monomial) -> bool) -> Self {
        BivariatePolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Drops every term of total degree above `degree`.
    pub fn truncate_degree(&self, degree: u32) -> Self {
        self.filter(|m| m.degree() <= degree)
    }

    /// The homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        self.filter(|m| m.degree() == degree)
    }

    pub fn derivative_x(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.i > 0 {
                out.add_term(
                    Monomial::new(m.i - 1, m.j),
                    c * &Coefficient::from(i64::from(m.i)),
                );
            }
        }
        out
    }

    pub fn derivative_y(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.j > 0 {
                out.add_term(
                    Monomial::new(m.i, m.j - 1),
                    c * &Coefficient::from(i64::from(m.j)),
                );
            }
        }
        out
    }

    fn map_coefficients(&self, f: impl Fn(&Coefficient) -> Coefficient) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} * x^{} y^{}", c, m.i, m.j)?;
        }
        Ok(())
    }
}
