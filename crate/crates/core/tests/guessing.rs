use quadwalk::guess::{
    algebraic_residual, guess_algebraic, guess_ode, ode_residual, sample, Bounds,
};
use quadwalk::{Section, StepSet};

fn set(s: &str) -> StepSet {
    s.parse().unwrap()
}

#[test]
fn kreweras_excursions_are_algebraic() {
    let f = sample(set("W,S,NE"), Section::Origin, 80);
    let g = guess_algebraic(&f, 6, 10).unwrap();
    let candidate = g
        .candidate
        .clone()
        .expect("Kreweras excursions satisfy an algebraic equation");
    assert_eq!(g.verified_to, 80);
    assert!(algebraic_residual(&f, &candidate).is_zero());
    println!("{:?}", g.shape);
}

#[test]
fn kreweras_excursions_are_d_finite() {
    let f = sample(set("W,S,NE"), Section::Origin, 100);
    let g = guess_ode(&f, 4, 12).unwrap();
    let candidate = g.candidate.clone().expect("algebraic implies D-finite");
    assert!(ode_residual(&f, &candidate).is_zero());
    println!("{:?}", g.shape);
}

#[test]
fn e_n_ne_sw_x_section_has_no_small_ode() {
    let f = sample(set("E,N,NE,SW"), Section::XZero, 100);
    let g = guess_ode(&f, 4, 12).unwrap();
    assert!(!g.found());
    assert_eq!(
        g.bounds,
        Bounds::Ode {
            order: 4,
            degree: 12
        }
    );
}
