//! Exact trivariate power series in `x, y, t`, truncated in `t` only.
//!
//! A [`TruncatedSeries`] of order `N` stores one [`BivariatePolynomial`] per
//! `t`-degree `0..=N`. The `x` and `y` degrees are never truncated: every
//! quantity built from walks of length `n` is a polynomial in `x, y` on the
//! `t^n` slice.
//!
//! Binary operations return a series of order `min(a.order, b.order)`.

mod coefficient;
mod poly;

pub use coefficient::Coefficient;
pub use poly::{BivariatePolynomial, Monomial};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("t-degree {n} exceeds the truncation order {order}")]
    OrderExceeded { n: usize, order: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("negative exponent after multiplying by x^{di} y^{dj}")]
    NegativeExponent { di: i64, dj: i64 },
    #[error("cannot parse coefficient `{0}`")]
    Parse(String),
}

/// A substitution producing one of the boundary series of a walk model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Section {
    /// `x = 0`: walks ending on the vertical axis.
    #[serde(rename = "x=0")]
    XZero,
    /// `y = 0`: walks ending on the horizontal axis.
    #[serde(rename = "y=0")]
    YZero,
    /// `x = y = 0`: excursions.
    #[serde(rename = "x=y=0")]
    Origin,
    /// `x = y = 1`: all walks counted by length.
    #[serde(rename = "x=y=1")]
    Ones,
}

impl Section {
    pub const ALL: [Section; 4] = [
        Section::XZero,
        Section::YZero,
        Section::Origin,
        Section::Ones,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Section::XZero => "x=0",
            Section::YZero => "y=0",
            Section::Origin => "x=y=0",
            Section::Ones => "x=y=1",
        }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Section {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let normalized: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_ascii_lowercase();
        match normalized.as_str() {
            "x=0" => Ok(Section::XZero),
            "y=0" => Ok(Section::YZero),
            "x=y=0" | "y=x=0" | "x=0,y=0" | "origin" => Ok(Section::Origin),
            "x=y=1" | "x=1,y=1" | "ones" => Ok(Section::Ones),
            _ => Err(format!("unknown section `{s}`")),
        }
    }
}

/// One stored term `c · x^i y^j t^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub i: u32,
    pub j: u32,
    pub n: usize,
    pub coeff: Coefficient,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "SeriesRecord", try_from = "SeriesRecord")]
pub struct TruncatedSeries {
    order: usize,
    slices: Vec<BivariatePolynomial>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            slices: vec![BivariatePolynomial::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Coefficient::one(), order)
    }

    pub fn constant(c: Coefficient, order: usize) -> Self {
        Self::monomial(c, 0, 0, 0, order)
    }

    /// `c · x^i y^j t^n`, or zero when `n > order`.
    pub fn monomial(c: Coefficient, i: u32, j: u32, n: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.slices[n] = BivariatePolynomial::monomial(i, j, c);
        }
        s
    }

    /// Builds a series from its `t`-slices; missing slices are zero and
    /// slices beyond `order` are dropped.
    pub fn from_slices(
        order: usize,
        slices: impl IntoIterator<Item = BivariatePolynomial>,
    ) -> Self {
        let mut slices: Vec<_> = slices.into_iter().take(order + 1).collect();
        slices.resize(order + 1, BivariatePolynomial::zero());
        TruncatedSeries { order, slices }
    }

    pub fn from_terms<I>(order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, usize, Coefficient)>,
    {
        let mut s = Self::zero(order);
        for (i, j, n, c) in terms {
            if n <= order {
                s.slices[n].add_term(Monomial::new(i, j), c);
            }
        }
        s
    }

    /// `Σ_n c_n t^n` with no `x, y` dependence.
    pub fn from_t_coefficients(
        order: usize,
        coeffs: impl IntoIterator<Item = Coefficient>,
    ) -> Self {
        Self::from_slices(order, coeffs.into_iter().map(BivariatePolynomial::constant))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn slice(&self, n: usize) -> Option<&BivariatePolynomial> {
        self.slices.get(n)
    }

    pub fn slices(&self) -> &[BivariatePolynomial] {
        &self.slices
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(BivariatePolynomial::is_zero)
    }

    /// Exact coefficient of `x^i y^j t^n`.
    pub fn coeff(&self, i: u32, j: u32, n: usize) -> Result<Coefficient, SeriesError> {
        self.slices
            .get(n)
            .map(|p| p.coeff(i, j))
            .ok_or(SeriesError::OrderExceeded {
                n,
                order: self.order,
            })
    }

    /// All stored terms in canonical order: ascending `t`-degree, then
    /// graded-lexicographic in `(i, j)`.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.slices.iter().enumerate().flat_map(|(n, p)| {
            p.terms().map(move |(m, c)| Term {
                i: m.i,
                j: m.j,
                n,
                coeff: c.clone(),
            })
        })
    }

    pub fn term_count(&self) -> usize {
        self.slices.iter().map(BivariatePolynomial::len).sum()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_slices(order, self.slices.iter().cloned())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, BivariatePolynomial::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, BivariatePolynomial::sub)
    }

    pub fn neg(&self) -> Self {
        self.map_slices(BivariatePolynomial::neg)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        self.map_slices(|p| p.scale(c))
    }

    /// Cauchy product in `t`, truncated at `min(a.order, b.order)`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut slices = vec![BivariatePolynomial::zero(); order + 1];
        for (n, out) in slices.iter_mut().enumerate() {
            for k in 0..=n {
                let (a, b) = (&self.slices[k], &other.slices[n - k]);
                if !a.is_zero() && !b.is_zero() {
                    a.mul_acc(b, out);
                }
            }
        }
        TruncatedSeries { order, slices }
    }

    /// Substitution of a boundary section; the `t`-order is unchanged.
    pub fn section(&self, which: Section) -> Self {
        self.map_slices(|p| match which {
            Section::XZero => p.at_x_zero(),
            Section::YZero => p.at_y_zero(),
            Section::Origin => p.at_x_zero().at_y_zero(),
            Section::Ones => BivariatePolynomial::constant(p.at_ones()),
        })
    }

    pub fn swap_xy(&self) -> Self {
        self.map_slices(BivariatePolynomial::swap_xy)
    }

    /// Multiplies by `x^di y^dj`, failing if a negative exponent would be stored.
    pub fn shift(&self, di: i64, dj: i64) -> Result<Self, SeriesError> {
        let slices = self
            .slices
            .iter()
            .map(|p| {
                p.shift(di, dj)
                    .ok_or(SeriesError::NegativeExponent { di, dj })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries {
            order: self.order,
            slices,
        })
    }

    /// Multiplies by `t^k`; the order is kept, so the top `k` slices fall off.
    pub fn shift_t(&self, k: usize) -> Self {
        let slices = std::iter::repeat_with(BivariatePolynomial::zero)
            .take(k)
            .chain(self.slices.iter().cloned());
        Self::from_slices(self.order, slices)
    }

    pub fn derivative_x(&self) -> Self {
        self.map_slices(BivariatePolynomial::derivative_x)
    }

    pub fn derivative_y(&self) -> Self {
        self.map_slices(BivariatePolynomial::derivative_y)
    }

    /// Formal `d/dt`. The `t^N` slice only determines the `t^{N-1}` slice
    /// of the derivative, so the result has order `N - 1` (order 0 stays 0).
    pub fn derivative_t(&self) -> Self {
        let order = self.order.saturating_sub(1);
        let slices = self
            .slices
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, p)| p.scale(&Coefficient::from(n as i64)));
        Self::from_slices(order, slices)
    }

    /// `true` when the two series coincide up to `min(self.order, other.order)`.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let order = self.order.min(other.order);
        self.slices[..=order] == other.slices[..=order]
    }

    /// `true` when every term has `j = 0`.
    pub fn is_free_of_y(&self) -> bool {
        self.terms().all(|t| t.j == 0)
    }

    /// `true` when every term has `i = 0`.
    pub fn is_free_of_x(&self) -> bool {
        self.terms().all(|t| t.i == 0)
    }

    /// Coefficients of `t^0..=t^order` of a series without `x, y` dependence.
    /// Returns `None` if some term carries a power of `x` or `y`.
    pub fn t_coefficients(&self) -> Option<Vec<Coefficient>> {
        self.slices
            .iter()
            .map(|p| {
                if p.terms().all(|(m, _)| m.i == 0 && m.j == 0) {
                    Some(p.coeff(0, 0))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Text form `c * x^i y^j t^n` joined by ` + ` in canonical order.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .terms()
            .map(|t| format!("{} * x^{} y^{} t^{}", t.coeff, t.i, t.j, t.n))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&BivariatePolynomial, &BivariatePolynomial) -> BivariatePolynomial,
    ) -> Self {
        let order = self.order.min(other.order);
        let slices = self.slices[..=order]
            .iter()
            .zip(&other.slices[..=order])
            .map(|(a, b)| f(a, b))
            .collect();
        TruncatedSeries { order, slices }
    }

    fn map_slices(&self, f: impl Fn(&BivariatePolynomial) -> BivariatePolynomial) -> Self {
        TruncatedSeries {
            order: self.order,
            slices: self.slices.iter().map(f).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Structured form of one term. Numerator and denominator are decimal strings
/// so arbitrary precision survives JSON transport.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub i: u32,
    pub j: u32,
    pub n: usize,
    pub num: String,
    pub den: String,
}

impl From<&Term> for TermRecord {
    fn from(t: &Term) -> Self {
        TermRecord {
            i: t.i,
            j: t.j,
            n: t.n,
            num: t.coeff.numer().to_string(),
            den: t.coeff.denom().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub order: usize,
    pub terms: Vec<TermRecord>,
}

impl From<TruncatedSeries> for SeriesRecord {
    fn from(s: TruncatedSeries) -> Self {
        SeriesRecord::from(&s)
    }
}

impl From<&TruncatedSeries> for SeriesRecord {
    fn from(s: &TruncatedSeries) -> Self {
        SeriesRecord {
            order: s.order,
            terms: s.terms().map(|t| TermRecord::from(&t)).collect(),
        }
    }
}

impl TryFrom<SeriesRecord> for TruncatedSeries {
    type Error = SeriesError;

    fn try_from(record: SeriesRecord) -> Result<Self, Self::Error> {
        let mut terms = Vec::with_capacity(record.terms.len());
        for t in record.terms {
            if t.n > record.order {
                return Err(SeriesError::OrderExceeded {
                    n: t.n,
                    order: record.order,
                });
            }
            let c: Coefficient = format!("{}/{}", t.num, t.den).parse()?;
            terms.push((t.i, t.j, t.n, c));
        }
        Ok(TruncatedSeries::from_terms(record.order, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> Coefficient {
        Coefficient::from(v)
    }

    fn s(order: usize, terms: &[(u32, u32, usize, i64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(order, terms.iter().map(|&(i, j, n, v)| (i, j, n, c(v))))
    }

    #[test]
    fn add_cancels_and_has_identity() {
        let a = s(3, &[(0, 0, 0, 1), (1, 1, 1, 1)]);
        let b = s(3, &[(1, 1, 1, -1)]);
        assert_eq!(a.add(&b), TruncatedSeries::one(3));
        assert_eq!(a.add(&TruncatedSeries::zero(3)), a);
    }

    #[test]
    fn add_and_mul_take_min_order() {
        let a = TruncatedSeries::one(5);
        let b = TruncatedSeries::one(2);
        assert_eq!(a.add(&b).order(), 2);
        assert_eq!(a.mul(&b).order(), 2);
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = s(2, &[(0, 0, 0, 1), (1, 1, 1, 1)]);
        let b = s(2, &[(0, 0, 0, 1), (1, 1, 1, -1)]);
        assert_eq!(a.mul(&b), s(2, &[(0, 0, 0, 1), (2, 2, 2, -1)]));
    }

    #[test]
    fn mul_by_one_and_telescoping_geometric() {
        let k = s(4, &[(1, 1, 0, 1), (0, 0, 1, -1)]);
        assert_eq!(k.mul(&TruncatedSeries::one(4)), k);

        let n = 7;
        let one_minus = s(n, &[(0, 0, 0, 1), (1, 1, 1, -1)]);
        let geometric =
            TruncatedSeries::from_terms(n, (0..=n).map(|k| (k as u32, k as u32, k, c(1))));
        assert_eq!(one_minus.mul(&geometric), TruncatedSeries::one(n));
    }

    #[test]
    fn coeff_reads_and_bounds() {
        let a = s(1, &[(0, 0, 0, 1), (1, 1, 1, 1)]);
        assert_eq!(a.coeff(1, 1, 1).unwrap(), c(1));
        assert_eq!(a.coeff(0, 1, 1).unwrap(), c(0));
        assert_eq!(
            a.coeff(0, 0, 2),
            Err(SeriesError::OrderExceeded { n: 2, order: 1 })
        );
    }

    #[test]
    fn sections() {
        let a = s(1, &[(0, 0, 0, 1), (1, 0, 1, 1), (0, 1, 1, 1)]);
        assert_eq!(
            a.section(Section::XZero),
            s(1, &[(0, 0, 0, 1), (0, 1, 1, 1)])
        );
        assert_eq!(a.section(Section::Origin), TruncatedSeries::one(1));
        assert_eq!(
            a.section(Section::Ones),
            s(1, &[(0, 0, 0, 1), (0, 0, 1, 2)])
        );
        assert_eq!(a.section(Section::Ones).order(), 1);
    }

    #[test]
    fn swap_xy_exchanges_exponents() {
        assert_eq!(s(1, &[(2, 1, 1, 1)]).swap_xy(), s(1, &[(1, 2, 1, 1)]));
    }

    #[test]
    fn derivative_t_drops_one_order() {
        let a = s(3, &[(0, 0, 0, 4), (1, 0, 1, 2), (0, 0, 3, 5)]);
        let d = a.derivative_t();
        assert_eq!(d.order(), 2);
        assert_eq!(d, s(2, &[(1, 0, 0, 2), (0, 0, 2, 15)]));
    }

    #[test]
    fn text_form_is_canonical() {
        let a = TruncatedSeries::from_terms(
            2,
            [
                (1, 1, 1, c(1)),
                (0, 0, 0, c(1)),
                (0, 1, 1, Coefficient::new(-1, 2).unwrap()),
            ],
        );
        assert_eq!(
            a.to_text(),
            "1 * x^0 y^0 t^0 + -1/2 * x^0 y^1 t^1 + 1 * x^1 y^1 t^1"
        );
        assert_eq!(TruncatedSeries::zero(3).to_text(), "0");
    }

    #[test]
    fn structured_form() {
        let a = TruncatedSeries::from_terms(1, [(0, 1, 1, Coefficient::new(3, 2).unwrap())]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"order":1,"terms":[{"i":0,"j":1,"n":1,"num":"3","den":"2"}]}"#
        );
        let back: TruncatedSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);

        let bad = r#"{"order":0,"terms":[{"i":0,"j":0,"n":1,"num":"1","den":"1"}]}"#;
        assert!(serde_json::from_str::<TruncatedSeries>(bad).is_err());
    }

    #[test]
    fn section_parsing() {
        for sec in Section::ALL {
            assert_eq!(sec.as_str().parse::<Section>(), Ok(sec));
        }
        assert_eq!("X = 1, Y = 1".parse::<Section>(), Ok(Section::Ones));
        assert!("z=0".parse::<Section>().is_err());
    }
}
