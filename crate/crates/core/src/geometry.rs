//! The surface `M_S = {K_S(w, w̄, z) = 0}` and the graph-membership
//! certificate.
//!
//! The series engine works in `(x, y, t)`; here `x` plays `w`, `y` plays
//! `w̄` and `t` plays `z`. Renaming happens only at this module's boundary.
//!
//! For a diagonal-symmetric model containing `SW`, let `Γ` be the real
//! hypersurface `|w|² + 2 Re(h) = 0`. A holomorphic `h(z, w)` has its graph
//! over `M_S` inside `Γ` exactly when
//!
//! ```text
//! w·w̄ + h(z, w) + h̄(z, w̄) + K_S(w, w̄, z)·λ = 0
//! ```
//!
//! for some series `λ`. Comparing with the kernel division `xy = K_S·Q + r`
//! gives `λ = −Q` and `h + h̄ = −r`; [`certify`] builds that `h` from the
//! `(x, t)` part of `r` and checks the identity exactly to the requested order.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{reduce, FIGURE1_MODELS};
use crate::group::{order, GroupConfig, GroupError};
use crate::kernel::{divide, kernel};
use crate::series::{BivariatePolynomial, Coefficient, SeriesRecord, TermRecord, TruncatedSeries};
use crate::walks::{enumerate, StepSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("{0} does not contain SW = (-1,-1): M_S is not smooth at the origin")]
    NotSmooth(StepSet),
    #[error("{0} is not diagonally symmetric")]
    NotSymmetric(StepSet),
    #[error("truncation degree must be at least 3, got {0}")]
    DegreeTooSmall(u32),
}

/// `(∂K/∂w, ∂K/∂w̄, ∂K/∂z)` at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OriginPartials {
    pub d_w: Coefficient,
    pub d_wbar: Coefficient,
    pub d_z: Coefficient,
}

/// Formal partial derivatives of `K_S(w, w̄, z)` at the origin.
///
/// The `z` component is reported as `Σ_S w^{a+1} w̄^{b+1}` at `0`, i.e. `ε`,
/// which is `−∂K/∂z`. Only its vanishing matters.
pub fn partials_at_origin(steps: StepSet) -> OriginPartials {
    let k = kernel(steps).to_series(1);
    let at_origin = |s: TruncatedSeries| s.coeff(0, 0, 0).expect("order ≥ 0");
    OriginPartials {
        d_w: at_origin(k.derivative_x()),
        d_wbar: at_origin(k.derivative_y()),
        d_z: -at_origin(k.derivative_t()),
    }
}

/// `M_S` is smooth at the origin iff some partial of `K_S` is nonzero there.
pub fn is_smooth(steps: StepSet) -> bool {
    let p = partials_at_origin(steps);
    !(p.d_w.is_zero() && p.d_wbar.is_zero() && p.d_z.is_zero())
}

/// `(a, b) ∈ S ⇔ (b, a) ∈ S`, i.e. `K_S(w, w̄, z) = K_S(w̄, w, z)`.
pub fn is_diagonally_symmetric(steps: StepSet) -> bool {
    steps.is_diagonally_symmetric()
}

/// Local graph `z = w·w̄·(1 + R)^{-1}` of a smooth `M_S`, truncated at a
/// total degree, with `R = Σ_{S∖{SW}} w^{a+1} w̄^{b+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BishopExpansion {
    pub steps: StepSet,
    pub degree: u32,
    /// In `(w, w̄) = (x, y)`.
    pub graph: BivariatePolynomial,
    pub quadratic: BivariatePolynomial,
    /// `E = w·w̄ − graph`, so that the surface is `z − w·w̄ + E = 0`.
    pub tail: BivariatePolynomial,
    /// Coefficient `γ` of `w²` (and of `w̄²`) in the graph.
    pub bishop_invariant: Coefficient,
}

impl BishopExpansion {
    pub fn quadratic_is_ww_bar(&self) -> bool {
        self.quadratic == BivariatePolynomial::monomial(1, 1, Coefficient::one())
    }

    /// Lowest total degree present in `E`, or `None` if `E = 0`.
    pub fn tail_order(&self) -> Option<u32> {
        self.tail.terms().map(|(m, _)| m.degree()).min()
    }

    pub fn tail_vanishes_to_order_three(&self) -> bool {
        self.tail_order().is_none_or(|d| d >= 3)
    }
}

pub fn bishop_expansion(steps: StepSet, degree: u32) -> Result<BishopExpansion, GeometryError> {
    if !is_smooth(steps) {
        return Err(GeometryError::NotSmooth(steps));
    }
    if degree < 3 {
        return Err(GeometryError::DegreeTooSmall(degree));
    }
    let ww_bar = BivariatePolynomial::monomial(1, 1, Coefficient::one());
    // P_S = 1 + R because SW contributes the constant term.
    let rest = kernel(steps)
        .step_polynomial()
        .sub(&BivariatePolynomial::one());
    let inverse_degree = degree - 2;
    let minus_rest = rest.neg();
    let mut inverse = BivariatePolynomial::one();
    let mut power = BivariatePolynomial::one();
    // R has no constant term, so (−R)^k starts in degree ≥ k.
    for _ in 0..inverse_degree {
        power = power.mul(&minus_rest).truncate_degree(inverse_degree);
        if power.is_zero() {
            break;
        }
        inverse = inverse.add(&power);
    }
    let graph = ww_bar.mul(&inverse).truncate_degree(degree);
    let quadratic = graph.homogeneous_part(2);
    let tail = ww_bar.sub(&graph);
    let bishop_invariant = graph.coeff(2, 0);
    Ok(BishopExpansion {
        steps,
        degree,
        graph,
        quadratic,
        tail,
        bishop_invariant,
    })
}

/// The step sets of the seven Bishop-surface models: canonical, infinite
/// group, smooth, diagonal-symmetric. Returned in bitmask order.
pub fn figure1_models(config: &GroupConfig) -> Result<Vec<StepSet>, GroupError> {
    let candidates: Vec<StepSet> = StepSet::all_nonempty()
        .filter(|s| reduce(*s).is_ok())
        .filter(|s| is_smooth(*s) && is_diagonally_symmetric(*s))
        .collect();
    let verdicts: Vec<_> = candidates
        .par_iter()
        .map(|s| order(*s, config).map(|r| (*s, r.is_unbounded())))
        .collect::<Result<_, _>>()?;
    Ok(verdicts
        .into_iter()
        .filter_map(|(s, unbounded)| unbounded.then_some(s))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NashCertificate {
    pub steps: StepSet,
    pub order: usize,
    /// Enumerated walk series.
    pub q: TruncatedSeries,
    /// Quotient of the kernel division.
    pub l: TruncatedSeries,
    /// Remainder of the kernel division.
    pub r: TruncatedSeries,
    /// `h(z, w)` stored in `(x, t) = (w, z)`.
    pub h: TruncatedSeries,
    /// `w·w̄ + h + h̄ − K_S·l`, in `(x, y, t) = (w, w̄, z)`.
    pub residual: TruncatedSeries,
    pub identity_holds: bool,
    pub l_matches_walks: bool,
    pub r_symmetric: bool,
    pub r_nonnegative: bool,
    pub h_real_rational: bool,
}

impl NashCertificate {
    pub fn passed(&self) -> bool {
        self.identity_holds
            && self.l_matches_walks
            && self.r_symmetric
            && self.r_nonnegative
            && self.h_real_rational
    }

    /// `h̄(z, w̄)`: conjugate coefficients (real here) with `w̄` in place of `w`.
    pub fn h_bar(&self) -> TruncatedSeries {
        self.h.swap_xy()
    }

    pub fn to_record(&self) -> CertificateRecord {
        CertificateRecord {
            steps: self.steps.to_string(),
            order: self.order,
            identity_holds: self.identity_holds,
            l_matches_walks: self.l_matches_walks,
            r_symmetric: self.r_symmetric,
            r_nonnegative: self.r_nonnegative,
            h_real_rational: self.h_real_rational,
            h_terms: SeriesRecord::from(&self.h).terms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateRecord {
    pub steps: String,
    pub order: usize,
    pub identity_holds: bool,
    pub l_matches_walks: bool,
    pub r_symmetric: bool,
    pub r_nonnegative: bool,
    pub h_real_rational: bool,
    /// Terms of `h` with `i` the power of `w` and `n` the power of `z`.
    pub h_terms: Vec<TermRecord>,
}

impl Serialize for NashCertificate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(serializer)
    }
}

/// Every nonzero coefficient is a positive integer.
fn positive_integer_coefficients(s: &TruncatedSeries) -> bool {
    s.terms()
        .all(|t| t.coeff.is_integer() && t.coeff.is_positive())
}

pub fn certify(steps: StepSet, order: usize) -> Result<NashCertificate, GeometryError> {
    if !is_smooth(steps) {
        return Err(GeometryError::NotSmooth(steps));
    }
    if !is_diagonally_symmetric(steps) {
        return Err(GeometryError::NotSymmetric(steps));
    }
    let q = enumerate(steps, order);
    let dec = divide(steps, order);
    let h = dec.h.neg();
    let ww_bar = TruncatedSeries::monomial(Coefficient::one(), 1, 1, 0, order);
    let k = kernel(steps).to_series(order);
    let residual = ww_bar.add(&h).add(&h.swap_xy()).sub(&k.mul(&dec.l));
    let two = num_bigint::BigInt::from(2);
    let h_real_rational = h
        .terms()
        .all(|t| (&two % t.coeff.denom()) == num_bigint::BigInt::from(0));
    Ok(NashCertificate {
        steps,
        order,
        identity_holds: residual.is_zero() && h.is_free_of_y(),
        l_matches_walks: dec.l == q,
        r_symmetric: dec.r.swap_xy() == dec.r,
        r_nonnegative: positive_integer_coefficients(&dec.r),
        h_real_rational,
        q,
        l: dec.l,
        r: dec.r,
        h,
        residual,
    })
}

/// Certificates for every model in `FIGURE1_MODELS`, in bitmask order.
pub fn certify_figure1(order: usize) -> Vec<NashCertificate> {
    FIGURE1_MODELS
        .par_iter()
        .map(|s| certify(*s, order).expect("figure1 models contain SW and are symmetric"))
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
    fn partials() {
        let sw = partials_at_origin(set("SW"));
        assert_eq!((sw.d_w, sw.d_wbar, sw.d_z), (c(0), c(0), c(1)));
        let ne = partials_at_origin(set("NE"));
        assert_eq!((ne.d_w, ne.d_wbar, ne.d_z), (c(0), c(0), c(0)));
    }

    #[test]
    fn partials_over_all_sets() {
        for s in StepSet::all_nonempty() {
            let p = partials_at_origin(s);
            assert!(p.d_w.is_zero() && p.d_wbar.is_zero(), "{s}");
            let eps = c(s.contains(crate::walks::Step::SW) as i64);
            assert_eq!(p.d_z, eps, "{s}");
        }
    }

    #[test]
    fn smoothness_examples() {
        assert!(is_smooth(set("SW")));
        assert!(!is_smooth(set("N,S,E,W")));
        for s in FIGURE1_MODELS {
            assert!(is_smooth(s));
        }
    }

    #[test]
    fn symmetry_examples() {
        assert!(is_diagonally_symmetric(set("N,E")));
        assert!(!is_diagonally_symmetric(set("N")));
        for s in FIGURE1_MODELS {
            assert!(is_diagonally_symmetric(s));
        }
    }

    #[test]
    fn symmetry_matches_kernel_swap() {
        for s in StepSet::all_nonempty() {
            let k = kernel(s).to_series(1);
            assert_eq!(is_diagonally_symmetric(s), k.swap_xy() == k, "{s}");
        }
    }

    #[test]
    fn bishop_single_step() {
        let b = bishop_expansion(set("SW"), 6).unwrap();
        assert_eq!(b.graph, BivariatePolynomial::monomial(1, 1, c(1)));
        assert!(b.tail.is_zero());
        assert!(b.quadratic_is_ww_bar());
        assert!(b.bishop_invariant.is_zero());
    }

    #[test]
    fn bishop_cubic_tail() {
        // R = w + w̄ + w²w̄²; (1+R)^{-1} = 1 − w − w̄ + …
        let b = bishop_expansion(set("W,S,NE,SW"), 4).unwrap();
        assert_eq!(
            b.tail.homogeneous_part(3),
            BivariatePolynomial::from_terms([(2, 1, c(1)), (1, 2, c(1))])
        );
        // Degree 4: −w w̄ (w + w̄)² contributes to E with a minus sign.
        assert_eq!(
            b.tail.homogeneous_part(4),
            BivariatePolynomial::from_terms([(3, 1, c(-1)), (2, 2, c(-2)), (1, 3, c(-1))])
        );
        assert_eq!(b.tail_order(), Some(3));
    }

    #[test]
    fn bishop_rejects_singular_or_low_degree() {
        assert_eq!(
            bishop_expansion(set("N,S,E,W"), 5),
            Err(GeometryError::NotSmooth(set("N,S,E,W")))
        );
        assert_eq!(
            bishop_expansion(set("SW"), 2),
            Err(GeometryError::DegreeTooSmall(2))
        );
    }

    #[test]
    fn graph_solves_the_surface_equation() {
        // w w̄ − z·P_S(w, w̄) vanishes at z = graph up to terms above the degree.
        for s in FIGURE1_MODELS {
            let d = 7;
            let b = bishop_expansion(s, d).unwrap();
            let p = kernel(s).step_polynomial().clone();
            let defect = BivariatePolynomial::monomial(1, 1, c(1)).sub(&b.graph.mul(&p));
            assert!(defect.truncate_degree(d).is_zero(), "{s}");
        }
    }

    #[test]
    fn certify_w_s_ne_sw() {
        let cert = certify(set("W,S,NE,SW"), 12).unwrap();
        assert!(cert.identity_holds);
        assert!(cert.r_symmetric);
        assert!(cert.r_nonnegative);
        assert!(cert.h_real_rational);
        assert!(cert.passed());
        assert_eq!(cert.h.add(&cert.h_bar()), cert.r.neg());
    }

    #[test]
    fn certify_rejects_hypothesis_violations() {
        assert_eq!(
            certify(set("N,E"), 4),
            Err(GeometryError::NotSmooth(set("N,E")))
        );
        assert_eq!(
            certify(set("N,SW"), 4),
            Err(GeometryError::NotSymmetric(set("N,SW")))
        );
    }

    #[test]
    fn certificate_json_shape() {
        let cert = certify(set("SW"), 2).unwrap();
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["steps"], "SW");
        assert_eq!(json["identity_holds"], true);
        assert_eq!(json["h_terms"][0]["num"], "-1");
        assert_eq!(json["h_terms"][0]["den"], "2");
    }
}
