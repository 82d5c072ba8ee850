//! Guessing algebraic equations and linear ODEs for truncated series.
//!
//! A returned candidate always annihilates the sample through every
//! coefficient it was fitted to. A `found: false` result only says that no
//! candidate exists within the stated bounds at the stated truncation: it is
//! evidence, never a proof of transcendence or non-D-finiteness.

mod linalg;

pub use linalg::nullspace_vector;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{Coefficient, Section, TruncatedSeries};
use crate::walks::{enumerate, StepSet};

pub const EVIDENCE_NOTE: &str =
    "no candidate within these bounds; this is evidence only, not a proof of transcendence";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuessError {
    #[error("underdetermined system: {unknowns} unknowns need more than {order} sample terms")]
    Underdetermined { unknowns: usize, order: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub steps: StepSet,
    pub section: Section,
}

/// Coefficients `c_0..=c_N` of a univariate series in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateSample {
    coefficients: Vec<Coefficient>,
    provenance: Option<Provenance>,
}

impl UnivariateSample {
    pub fn from_coefficients(
        coefficients: Vec<Coefficient>,
        provenance: Option<Provenance>,
    ) -> Self {
        assert!(!coefficients.is_empty(), "a sample needs at least c_0");
        UnivariateSample {
            coefficients,
            provenance,
        }
    }

    pub fn coefficients(&self) -> &[Coefficient] {
        &self.coefficients
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    /// Truncation order `N` (the sample holds `N + 1` coefficients).
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn to_series(&self) -> TruncatedSeries {
        TruncatedSeries::from_t_coefficients(self.order(), self.coefficients.iter().cloned())
    }
}

/// Boundary series of `Q` as a series in `t` alone.
///
/// `x = 0` and `y = 0` leave a bivariate series (`Q(0,y,t)`, `Q(x,0,t)`);
/// the remaining spatial variable is then set to 1, giving `Q(0,1,t)` and
/// `Q(1,0,t)`.
pub fn sample(steps: StepSet, section: Section, order: usize) -> UnivariateSample {
    let q = enumerate(steps, order)
        .section(section)
        .section(Section::Ones);
    let coefficients = q.t_coefficients().expect("x = y = 1 leaves a series in t");
    UnivariateSample::from_coefficients(coefficients, Some(Provenance { steps, section }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GuessKind {
    Algebraic,
    Ode,
}

/// Search bounds, and the shape of a found candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Bounds {
    /// `Σ_{k ≤ deg_f} p_k(t) f^k` with `deg p_k ≤ deg_t`.
    Algebraic { deg_f: usize, deg_t: usize },
    /// `Σ_{k ≤ order} p_k(t) f^{(k)}` with `deg p_k ≤ degree`.
    Ode { order: usize, degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessResult {
    pub kind: GuessKind,
    pub bounds: Bounds,
    pub sample_order: usize,
    pub provenance: Option<Provenance>,
    /// Shape of the candidate (smallest found), if any.
    pub shape: Option<Bounds>,
    /// `candidate[k][m]` is the coefficient of `t^m` in `p_k`.
    pub candidate: Option<Vec<Vec<Coefficient>>>,
    /// Highest `t`-degree through which the residual was forced to vanish.
    pub verified_to: usize,
}

impl GuessResult {
    pub fn found(&self) -> bool {
        self.candidate.is_some()
    }

    pub fn to_record(&self) -> GuessRecord {
        GuessRecord {
            kind: self.kind,
            found: self.found(),
            bounds: self.bounds,
            sample_order: self.sample_order,
            steps: self.provenance.map(|p| p.steps.to_string()),
            section: self.provenance.map(|p| p.section),
            shape: self.shape,
            verified_to: self.verified_to,
            candidate: self.candidate.as_ref().map(|c| {
                c.iter()
                    .map(|p| p.iter().map(Coefficient::to_string).collect())
                    .collect()
            }),
            note: (!self.found()).then(|| EVIDENCE_NOTE.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessRecord {
    pub kind: GuessKind,
    pub found: bool,
    pub bounds: Bounds,
    pub sample_order: usize,
    pub steps: Option<String>,
    pub section: Option<Section>,
    pub shape: Option<Bounds>,
    pub verified_to: usize,
    pub candidate: Option<Vec<Vec<String>>>,
    pub note: Option<String>,
}

impl Serialize for GuessResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(serializer)
    }
}

/// A linear system whose unknowns are the coefficients of `p_0..=p_K`.
trait Ansatz {
    /// Number of equations (coefficients of `t^0..`) for polynomial index bound `k`.
    fn equations(&self, k: usize) -> usize;
    /// `[t^e] basis_k(t)` multiplied into `t^m`: the entry for unknown `(k, m)` in row `e`.
    fn entry(&self, k: usize, m: usize, e: usize) -> &BigInt;
}

/// Series data scaled to integers: `basis[k][e]` is `[t^e]` of the `k`th
/// basis series (`f^k` or `f^{(k)}`), all multiplied by a common denominator.
struct IntegerBasis {
    basis: Vec<Vec<BigInt>>,
    zero: BigInt,
    fitted: Box<dyn Fn(usize) -> usize>,
}

impl IntegerBasis {
    fn new(series: Vec<Vec<Coefficient>>, fitted: Box<dyn Fn(usize) -> usize>) -> Self {
        let lcm = series
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let basis = series
            .into_iter()
            .map(|s| {
                s.into_iter()
                    .map(|c| c.numer() * (&lcm / c.denom()))
                    .collect()
            })
            .collect();
        IntegerBasis {
            basis,
            zero: BigInt::zero(),
            fitted,
        }
    }
}

impl Ansatz for IntegerBasis {
    fn equations(&self, k: usize) -> usize {
        (self.fitted)(k) + 1
    }

    fn entry(&self, k: usize, m: usize, e: usize) -> &BigInt {
        if e < m {
            return &self.zero;
        }
        self.basis[k].get(e - m).unwrap_or(&self.zero)
    }
}

/// Nullspace vector for `Σ_{k ≤ kmax} p_k · basis_k` with `deg p_k ≤ dmax`.
fn solve(ansatz: &dyn Ansatz, kmax: usize, dmax: usize) -> Option<Vec<Vec<Coefficient>>> {
    let cols = (kmax + 1) * (dmax + 1);
    let rows = ansatz.equations(kmax);
    let matrix: Vec<Vec<BigInt>> = (0..rows)
        .map(|e| {
            let mut row = Vec::with_capacity(cols);
            for k in 0..=kmax {
                for m in 0..=dmax {
                    row.push(ansatz.entry(k, m, e).clone());
                }
            }
            row
        })
        .collect();
    let mut v = nullspace_vector(&matrix, cols)?;
    // Sign: the lowest nonzero coefficient of the last nonzero p_k is positive.
    let lead = v
        .chunks(dmax + 1)
        .rev()
        .find_map(|p| p.iter().find(|c| !c.is_zero()))
        .cloned();
    if lead.is_some_and(|c| c < BigInt::zero()) {
        v.iter_mut().for_each(|c| *c = -&*c);
    }
    Some(
        v.chunks(dmax + 1)
            .map(|p| p.iter().map(|c| Coefficient::from(c.clone())).collect())
            .collect(),
    )
}

/// Lexicographically smallest `(k, d)` with `kmin ≤ k ≤ kmax`, `d ≤ dmax`
/// admitting a solution. Solutions at `(k, d)` persist to `(k, d + 1)`, so
/// `d` is found by bisection.
fn smallest(
    ansatz: &dyn Ansatz,
    kmin: usize,
    kmax: usize,
    dmax: usize,
) -> Option<(usize, usize, Vec<Vec<Coefficient>>)> {
    solve(ansatz, kmax, dmax)?;
    for k in kmin..=kmax {
        if solve(ansatz, k, dmax).is_none() {
            continue;
        }
        let (mut lo, mut hi) = (0, dmax);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if solve(ansatz, k, mid).is_some() {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let best = solve(ansatz, k, hi).expect("bisection ends on a solvable degree");
        return Some((k, hi, best));
    }
    None
}

fn check_precondition(unknowns: usize, order: usize) -> Result<(), GuessError> {
    if unknowns >= order {
        return Err(GuessError::Underdetermined { unknowns, order });
    }
    Ok(())
}

fn trim_degree(candidate: Vec<Vec<Coefficient>>, degree: usize) -> Vec<Vec<Coefficient>> {
    candidate
        .into_iter()
        .map(|mut p| {
            p.truncate(degree + 1);
            p
        })
        .collect()
}

/// Searches for `P(t, f) = Σ_{k ≤ deg_f} p_k(t) f^k ≡ 0 mod t^{N+1}` with
/// `deg p_k ≤ deg_t`, returning the lexicographically smallest `(deg_f, deg_t)`.
pub fn guess_algebraic(
    f: &UnivariateSample,
    deg_f: usize,
    deg_t: usize,
) -> Result<GuessResult, GuessError> {
    let order = f.order();
    check_precondition((deg_f + 1) * (deg_t + 1), order)?;
    let series = f.to_series();
    let mut powers = vec![TruncatedSeries::one(order)];
    for k in 1..=deg_f {
        powers.push(powers[k - 1].mul(&series));
    }
    let basis = powers
        .iter()
        .map(|p| p.t_coefficients().expect("univariate"))
        .collect();
    let ansatz = IntegerBasis::new(basis, Box::new(move |_| order));
    let found = smallest(&ansatz, 1, deg_f, deg_t);
    let (shape, candidate) = match found {
        Some((k, d, c)) => (
            Some(Bounds::Algebraic { deg_f: k, deg_t: d }),
            Some(trim_degree(c, d)),
        ),
        None => (None, None),
    };
    Ok(GuessResult {
        kind: GuessKind::Algebraic,
        bounds: Bounds::Algebraic { deg_f, deg_t },
        sample_order: order,
        provenance: f.provenance(),
        shape,
        candidate,
        verified_to: order,
    })
}

/// Hermite–Padé search for `Σ_{k ≤ r} p_k(t) f^{(k)}(t) ≡ 0` with
/// `deg p_k ≤ d`, fitted through `t^{N−r}` (the derivatives of a sample of
/// order `N` are known only that far).
pub fn guess_ode(
    f: &UnivariateSample,
    max_order: usize,
    max_degree: usize,
) -> Result<GuessResult, GuessError> {
    let order = f.order();
    check_precondition((max_order + 1) * (max_degree + 1), order)?;
    let mut derivs = vec![f.coefficients().to_vec()];
    for k in 1..=max_order {
        let prev = &derivs[k - 1];
        let next: Vec<Coefficient> = prev
            .iter()
            .enumerate()
            .skip(1)
            .map(|(e, c)| c * &Coefficient::from(e as i64))
            .collect();
        derivs.push(next);
    }
    let ansatz = IntegerBasis::new(derivs, Box::new(move |r| order - r));
    let found = smallest(&ansatz, 0, max_order, max_degree);
    let (shape, candidate, verified_to) = match found {
        Some((r, d, c)) => (
            Some(Bounds::Ode {
                order: r,
                degree: d,
            }),
            Some(trim_degree(c, d)),
            order - r,
        ),
        None => (None, None, order - max_order),
    };
    Ok(GuessResult {
        kind: GuessKind::Ode,
        bounds: Bounds::Ode {
            order: max_order,
            degree: max_degree,
        },
        sample_order: order,
        provenance: f.provenance(),
        shape,
        candidate,
        verified_to,
    })
}

fn polynomial_series(p: &[Coefficient], order: usize) -> TruncatedSeries {
    TruncatedSeries::from_t_coefficients(order, p.iter().cloned())
}

/// Recomputes `Σ p_k(t) f^k` with series arithmetic; returns the residual
/// through `t^N`.
pub fn algebraic_residual(f: &UnivariateSample, candidate: &[Vec<Coefficient>]) -> TruncatedSeries {
    let order = f.order();
    let series = f.to_series();
    let mut power = TruncatedSeries::one(order);
    let mut acc = TruncatedSeries::zero(order);
    for p in candidate {
        acc = acc.add(&polynomial_series(p, order).mul(&power));
        power = power.mul(&series);
    }
    acc
}

/// Recomputes `Σ p_k(t) f^{(k)}` with series arithmetic; the residual has
/// order `N − r`.
pub fn ode_residual(f: &UnivariateSample, candidate: &[Vec<Coefficient>]) -> TruncatedSeries {
    let order = f.order();
    let r = candidate.len().saturating_sub(1);
    let mut deriv = f.to_series();
    let mut acc = TruncatedSeries::zero(order - r);
    for p in candidate {
        acc = acc.add(&polynomial_series(p, order).mul(&deriv));
        deriv = deriv.derivative_t();
    }
    acc.truncate(order - r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> StepSet {
        s.parse().unwrap()
    }

    fn ints(values: &[i64]) -> Vec<Coefficient> {
        values.iter().map(|&v| Coefficient::from(v)).collect()
    }

    #[test]
    fn trivial_samples() {
        for section in Section::ALL {
            assert_eq!(
                sample(set("SW"), section, 5).coefficients(),
                ints(&[1, 0, 0, 0, 0, 0])
            );
        }
        assert_eq!(
            sample(set("NE"), Section::Origin, 4).coefficients(),
            ints(&[1, 0, 0, 0, 0])
        );
        assert_eq!(
            sample(set("N,S,E,W"), Section::Origin, 4).coefficients(),
            ints(&[1, 0, 2, 0, 10])
        );
    }

    #[test]
    fn constant_series_is_algebraic_of_degree_one() {
        let f = sample(set("NE"), Section::Origin, 12);
        let g = guess_algebraic(&f, 2, 2).unwrap();
        assert_eq!(g.shape, Some(Bounds::Algebraic { deg_f: 1, deg_t: 0 }));
        // f − 1 = 0, up to sign normalisation
        assert_eq!(g.candidate.unwrap(), vec![ints(&[-1]), ints(&[1])]);
    }

    #[test]
    fn geometric_series() {
        let f = sample(set("NE"), Section::Ones, 10);
        assert_eq!(f.coefficients(), ints(&[1; 11]));
        let alg = guess_algebraic(&f, 2, 2).unwrap();
        assert_eq!(alg.shape, Some(Bounds::Algebraic { deg_f: 1, deg_t: 1 }));
        assert_eq!(
            alg.candidate.clone().unwrap(),
            vec![ints(&[-1, 0]), ints(&[1, -1])]
        );
        assert!(algebraic_residual(&f, &alg.candidate.unwrap()).is_zero());

        let ode = guess_ode(&f, 2, 2).unwrap();
        assert_eq!(
            ode.shape,
            Some(Bounds::Ode {
                order: 1,
                degree: 1
            })
        );
        // (1 − t) f′ − f = 0
        assert_eq!(
            ode.candidate.clone().unwrap(),
            vec![ints(&[-1, 0]), ints(&[1, -1])]
        );
        assert!(ode_residual(&f, &ode.candidate.unwrap()).is_zero());
    }

    #[test]
    fn underdetermined_is_rejected() {
        let f = sample(set("NE"), Section::Ones, 5);
        assert_eq!(
            guess_algebraic(&f, 2, 1),
            Err(GuessError::Underdetermined {
                unknowns: 6,
                order: 5
            })
        );
        assert!(guess_ode(&f, 1, 2).is_err());
    }

    #[test]
    fn none_reports_bounds() {
        let f = sample(set("N,S,E,W"), Section::Ones, 30);
        let g = guess_algebraic(&f, 1, 3).unwrap();
        assert!(!g.found());
        let rec = g.to_record();
        assert_eq!(rec.note.as_deref(), Some(EVIDENCE_NOTE));
        assert_eq!(rec.sample_order, 30);
        assert_eq!(rec.bounds, Bounds::Algebraic { deg_f: 1, deg_t: 3 });
    }
}
