//! The kernel method for quadrant walks.
//!
//! With `P_S(x, y) = Σ_{(a,b)∈S} x^{a+1} y^{b+1}` and kernel
//! `K_S = xy − t·P_S`, the series ring division
//!
//! ```text
//! xy = K_S · l + r,      no monomial of r divisible by xy
//! ```
//!
//! has a unique solution, and `l` is the walk generating function `Q`.
//! [`divide`] computes `(l, r)` slice by slice in `t`; [`boundary_form`]
//! rebuilds `r` from the boundary sections of an independently enumerated
//! `Q`; [`verify_functional_equation`] checks that both routes agree.
//!
//! Sign convention: the `Q(0,0,t)` term of the boundary form enters with a
//! minus sign, `r = ty Σ y^j Q(0,y,t) + tx Σ x^i Q(x,0,t) − ε t Q(0,0,t)`.
//! It is the only sign for which `S = {SW}` (where `Q = 1`, `K = xy − t`)
//! satisfies the identity, and the division itself does not depend on it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{BivariatePolynomial, Coefficient, Section, SeriesError, TruncatedSeries};
use crate::walks::{enumerate, StepSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("series of order {have} cannot supply order {need}")]
    OrderTooLow { have: usize, need: usize },
    #[error("malformed boundary input: {0}")]
    Malformed(#[from] SeriesError),
}

/// `K_S = xy − t·P_S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelPolynomial {
    steps: StepSet,
    step_poly: BivariatePolynomial,
}

impl KernelPolynomial {
    pub fn steps(&self) -> StepSet {
        self.steps
    }

    /// `P_S(x, y) = Σ x^{a+1} y^{b+1}`, exponents in `{0,1,2}²`.
    pub fn step_polynomial(&self) -> &BivariatePolynomial {
        &self.step_poly
    }

    /// The `t^0` slice, `xy`.
    pub fn constant_slice(&self) -> BivariatePolynomial {
        BivariatePolynomial::monomial(1, 1, Coefficient::one())
    }

    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::from_slices(order, [self.constant_slice(), self.step_poly.neg()])
    }
}

pub fn kernel(steps: StepSet) -> KernelPolynomial {
    let step_poly = BivariatePolynomial::from_terms(
        steps
            .vectors()
            .map(|(a, b)| ((a + 1) as u32, (b + 1) as u32, Coefficient::one())),
    );
    KernelPolynomial { steps, step_poly }
}

/// `1` when `(−1,−1) ∈ S`, else `0`.
pub fn epsilon(steps: StepSet) -> u8 {
    u8::from(steps.contains_vector(-1, -1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelDecomposition {
    pub steps: StepSet,
    pub order: usize,
    /// Quotient of `xy` by `K_S`.
    pub l: TruncatedSeries,
    /// Remainder; every monomial has `i = 0` or `j = 0`.
    pub r: TruncatedSeries,
    /// Part of `r` in `(x, t)`: the `j = 0, i ≥ 1` terms plus half the pure-`t` terms.
    pub h: TruncatedSeries,
    /// Part of `r` in `(y, t)`: the `i = 0, j ≥ 1` terms plus half the pure-`t` terms.
    pub g: TruncatedSeries,
    pub epsilon: u8,
}

/// Unique division `xy = K_S·l + r` up to `t`-order `order`.
///
/// `l_0 = 1`, `r_0 = 0`, and for `n ≥ 1` the product `P_S·l_{n−1}` splits
/// into the terms divisible by `xy` (which give `xy·l_n`) and the rest
/// (which give `r_n`).
pub fn divide(steps: StepSet, order: usize) -> KernelDecomposition {
    let k = kernel(steps);
    let mut l_slices = Vec::with_capacity(order + 1);
    let mut r_slices = Vec::with_capacity(order + 1);
    l_slices.push(BivariatePolynomial::one());
    r_slices.push(BivariatePolynomial::zero());
    for n in 1..=order {
        let product = k.step_polynomial().mul(&l_slices[n - 1]);
        let inner = product
            .filter(|m| m.i >= 1 && m.j >= 1)
            .shift(-1, -1)
            .expect("terms with i, j >= 1 divide by xy");
        l_slices.push(inner);
        r_slices.push(product.filter(|m| m.i == 0 || m.j == 0));
    }
    let l = TruncatedSeries::from_slices(order, l_slices);
    let r = TruncatedSeries::from_slices(order, r_slices);
    let (h, g) = split_remainder(&r);
    KernelDecomposition {
        steps,
        order,
        l,
        r,
        h,
        g,
        epsilon: epsilon(steps),
    }
}

/// Splits a remainder into its `(x, t)` and `(y, t)` parts, sharing the
/// pure-`t` terms equally.
pub fn split_remainder(r: &TruncatedSeries) -> (TruncatedSeries, TruncatedSeries) {
    let half_constant =
        |p: &BivariatePolynomial| BivariatePolynomial::constant(p.coeff(0, 0).half());
    let h = r
        .slices()
        .iter()
        .map(|p| p.filter(|m| m.j == 0 && m.i >= 1).add(&half_constant(p)));
    let g = r
        .slices()
        .iter()
        .map(|p| p.filter(|m| m.i == 0 && m.j >= 1).add(&half_constant(p)));
    (
        TruncatedSeries::from_slices(r.order(), h),
        TruncatedSeries::from_slices(r.order(), g),
    )
}

/// `ty Σ_{(−1,j)∈S} y^j Q(0,y,t) + tx Σ_{(i,−1)∈S} x^i Q(x,0,t) − ε t Q(0,0,t)`
/// at `t`-order `order`.
///
/// The `x^{−1}`, `y^{−1}` factors are absorbed into the leading `x`, `y`
/// before shifting, so no negative exponent is ever stored.
pub fn boundary_form(
    steps: StepSet,
    q: &TruncatedSeries,
    order: usize,
) -> Result<TruncatedSeries, KernelError> {
    if q.order() < order {
        return Err(KernelError::OrderTooLow {
            have: q.order(),
            need: order,
        });
    }
    let q = q.truncate(order);
    let on_y_axis = q.section(Section::XZero);
    let on_x_axis = q.section(Section::YZero);
    let mut out = TruncatedSeries::zero(order);
    for (a, b) in steps.vectors() {
        if a == -1 {
            out = out.add(&on_y_axis.shift(0, 1 + i64::from(b))?.shift_t(1));
        }
        if b == -1 {
            out = out.add(&on_x_axis.shift(1 + i64::from(a), 0)?.shift_t(1));
        }
    }
    if epsilon(steps) == 1 {
        out = out.sub(&q.section(Section::Origin).shift_t(1));
    }
    Ok(out)
}

/// Outcome of checking the functional equation against the enumerator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalEquationReport {
    pub steps: StepSet,
    pub order: usize,
    /// `divide(S, N).l == enumerate(S, N)`.
    pub l_matches_oracle: bool,
    /// `divide(S, N).r == boundary_form(S, enumerate(S, N), N)`.
    pub r_matches_boundary: bool,
    /// `K_S·Q + boundary_form = xy` through `t^N`.
    pub identity_holds: bool,
    /// Sign carried by the `ε t Q(0,0,t)` term of the boundary form.
    pub epsilon_sign: i8,
}

impl FunctionalEquationReport {
    pub fn passed(&self) -> bool {
        self.l_matches_oracle && self.r_matches_boundary && self.identity_holds
    }
}

pub fn verify_functional_equation(steps: StepSet, order: usize) -> FunctionalEquationReport {
    let q = enumerate(steps, order);
    let dec = divide(steps, order);
    let boundary =
        boundary_form(steps, &q, order).expect("enumerated series has the requested order");
    let xy = TruncatedSeries::monomial(Coefficient::one(), 1, 1, 0, order);
    let rhs = kernel(steps).to_series(order).mul(&q).add(&boundary);
    FunctionalEquationReport {
        steps,
        order,
        l_matches_oracle: dec.l == q,
        r_matches_boundary: dec.r == boundary,
        identity_holds: rhs == xy,
        epsilon_sign: -1,
    }
}

/// Runs [`verify_functional_equation`] on every nonempty step set, in bitmask order.
pub fn verify_all(order: usize) -> Vec<FunctionalEquationReport> {
    let all: Vec<_> = StepSet::all_nonempty().collect();
    all.into_par_iter()
        .map(|s| verify_functional_equation(s, order))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> StepSet {
        s.parse().unwrap()
    }

    fn c(v: i64) -> Coefficient {
        Coefficient::from(v)
    }

    #[test]
    fn kernel_shapes() {
        let t = |steps: &str| kernel(set(steps)).to_series(1);
        assert_eq!(
            t("SW"),
            TruncatedSeries::from_terms(1, [(1, 1, 0, c(1)), (0, 0, 1, c(-1))])
        );
        assert_eq!(
            t("NE"),
            TruncatedSeries::from_terms(1, [(1, 1, 0, c(1)), (2, 2, 1, c(-1))])
        );
        assert_eq!(
            t("N,S,E,W"),
            TruncatedSeries::from_terms(
                1,
                [
                    (1, 1, 0, c(1)),
                    (2, 1, 1, c(-1)),
                    (1, 0, 1, c(-1)),
                    (1, 2, 1, c(-1)),
                    (0, 1, 1, c(-1)),
                ]
            )
        );
    }

    #[test]
    fn step_polynomial_exponents_are_small() {
        for s in StepSet::all_nonempty() {
            for (m, _) in kernel(s).step_polynomial().terms() {
                assert!(m.i <= 2 && m.j <= 2);
            }
        }
    }

    #[test]
    fn divide_single_sw_step() {
        let d = divide(set("SW"), 6);
        assert_eq!(d.l, TruncatedSeries::one(6));
        assert_eq!(d.r, TruncatedSeries::monomial(c(1), 0, 0, 1, 6));
        assert_eq!(d.epsilon, 1);
        let half = Coefficient::new(1, 2).unwrap();
        assert_eq!(d.h, TruncatedSeries::monomial(half.clone(), 0, 0, 1, 6));
        assert_eq!(d.g, d.h);
    }

    #[test]
    fn divide_ne_is_geometric() {
        let d = divide(set("NE"), 5);
        let geometric =
            TruncatedSeries::from_terms(5, (0..=5).map(|k| (k as u32, k as u32, k, c(1))));
        assert_eq!(d.l, geometric);
        assert!(d.r.is_zero());
        assert_eq!(d.epsilon, 0);
    }

    #[test]
    fn divide_simple_walk_first_step() {
        let d = divide(set("N,S,E,W"), 1);
        assert_eq!(
            d.r,
            TruncatedSeries::from_terms(1, [(1, 0, 1, c(1)), (0, 1, 1, c(1))])
        );
        // Q(0,y,t) = 1 + O(t), Q(x,0,t) = 1 + O(t)
        let q = TruncatedSeries::one(1);
        assert_eq!(boundary_form(set("N,S,E,W"), &q, 1).unwrap(), d.r);
    }

    #[test]
    fn boundary_form_trivial_cases() {
        assert_eq!(
            boundary_form(set("SW"), &TruncatedSeries::one(3), 3).unwrap(),
            TruncatedSeries::monomial(c(1), 0, 0, 1, 3)
        );
        let q = enumerate(set("N,E"), 4);
        assert!(boundary_form(set("NE"), &q, 4).unwrap().is_zero());
        assert_eq!(
            boundary_form(set("N"), &TruncatedSeries::one(2), 3),
            Err(KernelError::OrderTooLow { have: 2, need: 3 })
        );
    }

    #[test]
    fn boundary_form_matches_division_for_simple_walk() {
        let s = set("N,S,E,W");
        let q = enumerate(s, 8);
        assert_eq!(boundary_form(s, &q, 8).unwrap(), divide(s, 8).r);
    }

    #[test]
    fn sw_report() {
        let report = verify_functional_equation(set("SW"), 10);
        assert!(report.passed());
        assert_eq!(report.epsilon_sign, -1);
    }

    #[test]
    fn remainder_split_reassembles() {
        for s in ["N,S,E,W", "W,S,NE", "N,NE,E,SW", "SE,S,SW,W"] {
            let d = divide(set(s), 7);
            assert_eq!(d.h.add(&d.g), d.r);
            assert!(d.h.is_free_of_y());
            assert!(d.g.is_free_of_x());
        }
    }

    #[test]
    fn perturbed_quotient_breaks_remainder_shape() {
        let s = set("N,S,E,W");
        let order = 6;
        let d = divide(s, order);
        let k = kernel(s).to_series(order);
        let xy = TruncatedSeries::monomial(c(1), 1, 1, 0, order);
        for (i, j, n) in [(0, 0, 2), (1, 1, 2), (2, 0, 4), (0, 0, 0)] {
            let bumped = d.l.add(&TruncatedSeries::monomial(c(1), i, j, n, order));
            let r = xy.sub(&k.mul(&bumped));
            assert!(
                r.terms().any(|t| t.i >= 1 && t.j >= 1),
                "perturbation at ({i},{j},{n}) kept the remainder shape"
            );
        }
    }
}
