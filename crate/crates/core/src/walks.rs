//! Small-step models and the brute-force quadrant walk enumerator.
//!
//! The enumerator is the oracle every other module is checked against, so it
//! is deliberately the most direct thing possible: a dense dynamic program
//! over end points.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{BivariatePolynomial, Coefficient, TruncatedSeries};

/// One of the eight unit steps, in canonical token order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    N,
    NE,
    E,
    SE,
    S,
    SW,
    W,
    NW,
}

impl Step {
    pub const ALL: [Step; 8] = [
        Step::N,
        Step::NE,
        Step::E,
        Step::SE,
        Step::S,
        Step::SW,
        Step::W,
        Step::NW,
    ];

    pub fn vector(self) -> (i32, i32) {
        match self {
            Step::N => (0, 1),
            Step::NE => (1, 1),
            Step::E => (1, 0),
            Step::SE => (1, -1),
            Step::S => (0, -1),
            Step::SW => (-1, -1),
            Step::W => (-1, 0),
            Step::NW => (-1, 1),
        }
    }

    pub fn from_vector(a: i32, b: i32) -> Option<Step> {
        Step::ALL.into_iter().find(|s| s.vector() == (a, b))
    }

    pub fn token(self) -> &'static str {
        match self {
            Step::N => "N",
            Step::NE => "NE",
            Step::E => "E",
            Step::SE => "SE",
            Step::S => "S",
            Step::SW => "SW",
            Step::W => "W",
            Step::NW => "NW",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }

    /// Image under the diagonal reflection `(a, b) ↦ (b, a)`.
    pub fn mirrored(self) -> Step {
        let (a, b) = self.vector();
        Step::from_vector(b, a).expect("reflection of a unit step is a unit step")
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepParseError {
    #[error("unknown step token `{0}` (expected one of N, NE, E, SE, S, SW, W, NW)")]
    UnknownToken(String),
    #[error("empty step set")]
    Empty,
}

impl FromStr for Step {
    type Err = StepParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        Step::ALL
            .into_iter()
            .find(|step| step.token() == upper)
            .ok_or_else(|| StepParseError::UnknownToken(s.trim().to_string()))
    }
}

/// A set of unit steps, stored as a bitmask over the canonical token order
/// `[N, NE, E, SE, S, SW, W, NW]` (bit 0 is `N`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct StepSet(u8);

impl StepSet {
    pub const fn from_bits(bits: u8) -> Self {
        StepSet(bits)
    }

    pub const fn bits(self) -> u8 {
        self.0
    }

    pub fn from_steps(steps: impl IntoIterator<Item = Step>) -> Self {
        StepSet(steps.into_iter().fold(0, |acc, s| acc | s.bit()))
    }

    /// All 255 nonempty step sets in bitmask order.
    pub fn all_nonempty() -> impl Iterator<Item = StepSet> {
        (1..=u8::MAX).map(StepSet)
    }

    pub fn contains(self, step: Step) -> bool {
        self.0 & step.bit() != 0
    }

    pub fn contains_vector(self, a: i32, b: i32) -> bool {
        Step::from_vector(a, b).is_some_and(|s| self.contains(s))
    }

    pub fn steps(self) -> impl Iterator<Item = Step> {
        Step::ALL.into_iter().filter(move |s| self.contains(*s))
    }

    pub fn vectors(self) -> impl Iterator<Item = (i32, i32)> {
        self.steps().map(Step::vector)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, step: Step) -> Self {
        StepSet(self.0 | step.bit())
    }

    /// Image under the diagonal reflection `(a, b) ↦ (b, a)`.
    pub fn mirrored(self) -> Self {
        StepSet::from_steps(self.steps().map(Step::mirrored))
    }

    pub fn is_diagonally_symmetric(self) -> bool {
        self.mirrored() == self
    }

    pub fn tokens(self) -> Vec<&'static str> {
        self.steps().map(Step::token).collect()
    }
}

impl fmt::Display for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens().join(","))
    }
}

impl fmt::Debug for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StepSet({self})")
    }
}

impl FromStr for StepSet {
    type Err = StepParseError;

    /// Case-insensitive comma-separated tokens, e.g. `"w,s,NE"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut set = StepSet::default();
        for token in s.split(',').filter(|t| !t.trim().is_empty()) {
            set = set.with(token.parse()?);
        }
        if set.is_empty() {
            return Err(StepParseError::Empty);
        }
        Ok(set)
    }
}

impl From<StepSet> for String {
    fn from(s: StepSet) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for StepSet {
    type Error = StepParseError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Dense table of walk counts by end point for a fixed length.
struct CountGrid {
    side: usize,
    cells: Vec<BigInt>,
}

impl CountGrid {
    fn origin(side: usize) -> Self {
        let mut cells = vec![BigInt::zero(); side * side];
        cells[0] = BigInt::from(1);
        CountGrid { side, cells }
    }

    fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.cells[i * self.side + j]
    }

    /// Counts after one more step; `reach` bounds the coordinates that can be
    /// nonzero after the new step.
    fn advance(&self, steps: &[(i32, i32)], reach: usize) -> Self {
        let mut next = vec![BigInt::zero(); self.side * self.side];
        let bound = reach.min(self.side - 1);
        for i in 0..=bound {
            for j in 0..=bound {
                let cell = &mut next[i * self.side + j];
                for &(a, b) in steps {
                    let (pi, pj) = (i as i64 - a as i64, j as i64 - b as i64);
                    if pi < 0 || pj < 0 || pi as usize >= self.side || pj as usize >= self.side {
                        continue;
                    }
                    let prev = &self.cells[pi as usize * self.side + pj as usize];
                    if !prev.is_zero() {
                        *cell += prev;
                    }
                }
            }
        }
        CountGrid {
            side: self.side,
            cells: next,
        }
    }

    fn to_polynomial(&self) -> BivariatePolynomial {
        let mut terms = Vec::new();
        for i in 0..self.side {
            for j in 0..self.side {
                let v = self.get(i, j);
                if !v.is_zero() {
                    terms.push((i as u32, j as u32, Coefficient::from(v.clone())));
                }
            }
        }
        BivariatePolynomial::from_terms(terms)
    }
}

/// `Q(x, y, t)` truncated at `t`-order `order`: the coefficient of
/// `x^i y^j t^n` counts length-`n` walks with steps in `steps` from the
/// origin to `(i, j)` that never leave the quarter plane.
pub fn enumerate(steps: StepSet, order: usize) -> TruncatedSeries {
    let vectors: Vec<_> = steps.vectors().collect();
    let mut grid = CountGrid::origin(order + 1);
    let mut slices = Vec::with_capacity(order + 1);
    slices.push(grid.to_polynomial());
    for n in 1..=order {
        grid = grid.advance(&vectors, n);
        slices.push(grid.to_polynomial());
    }
    TruncatedSeries::from_slices(order, slices)
}

/// Number of length-`n` quadrant walks ending at `(i, j)`.
pub fn count(steps: StepSet, i: u32, j: u32, n: usize) -> Coefficient {
    if i as usize > n || j as usize > n {
        return Coefficient::zero();
    }
    let vectors: Vec<_> = steps.vectors().collect();
    let mut grid = CountGrid::origin(n + 1);
    for len in 1..=n {
        grid = grid.advance(&vectors, len);
    }
    Coefficient::from(grid.get(i as usize, j as usize).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> StepSet {
        s.parse().unwrap()
    }

    #[test]
    fn tokens_parse_case_insensitively_in_canonical_order() {
        let s = set("sw, ne ,E,n");
        assert_eq!(s.to_string(), "N,NE,E,SW");
        assert_eq!(s.bits(), 0b0010_0111);
        assert_eq!(set("N").bits(), 1);
        assert_eq!(set("NW").bits(), 0x80);
    }

    #[test]
    fn bad_tokens_are_echoed() {
        assert_eq!(
            "N,XX".parse::<StepSet>(),
            Err(StepParseError::UnknownToken("XX".into()))
        );
        assert_eq!("".parse::<StepSet>(), Err(StepParseError::Empty));
    }

    #[test]
    fn bitmask_and_vectors_agree() {
        for s in StepSet::all_nonempty() {
            assert_eq!(StepSet::from_steps(s.steps()), s);
            assert!(!s.contains_vector(0, 0));
            assert_eq!(s.vectors().count(), s.len());
            assert_eq!(s.to_string().parse::<StepSet>().unwrap(), s);
        }
    }

    #[test]
    fn mirror_is_an_involution() {
        for s in StepSet::all_nonempty() {
            assert_eq!(s.mirrored().mirrored(), s);
        }
        assert_eq!(set("N").mirrored(), set("E"));
        assert!(set("N,E").is_diagonally_symmetric());
        assert!(!set("N").is_diagonally_symmetric());
    }

    #[test]
    fn forced_and_blocked_walks() {
        let ne = enumerate(set("NE"), 2);
        let expected = TruncatedSeries::from_terms(
            2,
            (0..=2).map(|k| (k as u32, k as u32, k, Coefficient::one())),
        );
        assert_eq!(ne, expected);
        assert_eq!(enumerate(set("SW"), 5), TruncatedSeries::one(5));
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(set("NE"), 3, 3, 3), Coefficient::one());
        assert_eq!(count(set("SW"), 0, 0, 1), Coefficient::zero());
        assert_eq!(count(set("W,S,NE,SW"), 0, 0, 2), Coefficient::one());
        assert_eq!(
            enumerate(set("NE"), 3).coeff(2, 2, 2).unwrap(),
            Coefficient::one()
        );
    }
}
