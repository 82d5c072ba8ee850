use proptest::prelude::*;

use quadwalk::kernel::{divide, split_remainder};
use quadwalk::series::SeriesRecord;
use quadwalk::walks::{count, enumerate};
use quadwalk::{Coefficient, StepSet, TruncatedSeries};

fn coefficient() -> impl Strategy<Value = Coefficient> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Coefficient::new(n, d).unwrap())
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((0u32..4, 0u32..4, 0..=order, coefficient()), 0..10)
        .prop_map(move |terms| TruncatedSeries::from_terms(order, terms))
}

fn step_set() -> impl Strategy<Value = StepSet> {
    (1u8..=255).prop_map(StepSet::from_bits)
}

fn no_stored_zeros(s: &TruncatedSeries) -> bool {
    s.terms().all(|t| !t.coeff.is_zero())
}

proptest! {
    #[test]
    fn ring_axioms(a in series(4), b in series(4), c in series(4)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&TruncatedSeries::one(4)), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn results_never_store_zeros(a in series(4), b in series(4)) {
        for s in [a.add(&b), a.sub(&b), a.mul(&b), a.sub(&a), a.swap_xy(), a.derivative_x()] {
            prop_assert!(no_stored_zeros(&s));
        }
    }

    #[test]
    fn swap_is_an_involution_and_a_ring_map(a in series(4), b in series(4)) {
        prop_assert_eq!(a.swap_xy().swap_xy(), a.clone());
        prop_assert_eq!(a.mul(&b).swap_xy(), a.swap_xy().mul(&b.swap_xy()));
        prop_assert_eq!(a.add(&b).swap_xy(), a.swap_xy().add(&b.swap_xy()));
    }

    #[test]
    fn structured_form_round_trips(a in series(5)) {
        let back = TruncatedSeries::try_from(SeriesRecord::from(&a)).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn leibniz_rule(a in series(3), b in series(3)) {
        let lhs = a.mul(&b).derivative_x();
        let rhs = a.derivative_x().mul(&b).add(&a.mul(&b.derivative_x()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn walk_counts_respect_support_and_mass(s in step_set(), n in 0usize..7) {
        let q = enumerate(s, n);
        let slice = q.slice(n).unwrap();
        for (m, _) in slice.terms() {
            prop_assert!(m.i as usize <= n && m.j as usize <= n);
        }
        let total = slice.at_ones();
        let free = Coefficient::from((s.len() as i64).pow(n as u32));
        let never_leaves = s.vectors().all(|(a, b)| a >= 0 && b >= 0);
        prop_assert!(total.as_rational() <= free.as_rational());
        prop_assert_eq!(total == free, never_leaves || n == 0);
    }

    #[test]
    fn mirror_symmetry_of_counts(s in step_set(), n in 0usize..6) {
        let q = enumerate(s, n);
        let m = enumerate(s.mirrored(), n);
        prop_assert_eq!(q.swap_xy(), m);
    }

    #[test]
    fn adding_a_step_never_loses_walks(s in step_set(), extra in 0u8..8, n in 0usize..6) {
        let bigger = StepSet::from_bits(s.bits() | (1 << extra));
        let small = enumerate(s, n);
        let large = enumerate(bigger, n);
        for t in small.terms() {
            let c = large.coeff(t.i, t.j, t.n).unwrap();
            prop_assert!(t.coeff.as_rational() <= c.as_rational());
        }
    }

    #[test]
    fn count_agrees_with_enumerate(s in step_set(), i in 0u32..4, j in 0u32..4, n in 0usize..6) {
        prop_assert_eq!(count(s, i, j, n), enumerate(s, n).coeff(i, j, n).unwrap());
    }

    #[test]
    fn division_shapes(s in step_set(), n in 1usize..7) {
        let d = divide(s, n);
        prop_assert!(d.l.terms().all(|t| t.coeff.is_integer() && t.coeff.is_positive()));
        prop_assert!(d.r.terms().all(|t| t.i == 0 || t.j == 0));
        prop_assert!(d.r.terms().all(|t| t.coeff.is_integer() && t.coeff.is_positive()));
        let (h, g) = split_remainder(&d.r);
        prop_assert_eq!(h.add(&g), d.r.clone());
        prop_assert!(h.is_free_of_y() && g.is_free_of_x());
    }
}

#[test]
fn remainder_symmetric_iff_diagonal_symmetric() {
    let mut vanishing = Vec::new();
    let nonnegative: Vec<StepSet> = StepSet::all_nonempty()
        .filter(|s| s.vectors().all(|(a, b)| a >= 0 && b >= 0))
        .collect();
    for s in StepSet::all_nonempty() {
        let r = divide(s, 8).r;
        if r.is_zero() {
            vanishing.push(s);
            continue;
        }
        assert_eq!(r.swap_xy() == r, s.is_diagonally_symmetric(), "{s}");
    }
    // Without a negative step every term of P_S·l is divisible by xy, and
    // r = 0 is symmetric whatever S is.
    assert_eq!(vanishing, nonnegative);
}
