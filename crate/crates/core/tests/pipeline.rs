use compose_solve::homotopy::{homotopy_resolution, HomotopyConfig};
use compose_solve::oracle::{exhaustive_solutions, rational_points_of};
use compose_solve::param::gr_verify;
use compose_solve::slp::{parse_poly_system, parse_poly_system_dense, slp_compose};
use compose_solve::solver::solve_h_circ_g;
use compose_solve::{Error, Field, PrimeField, RationalField};

fn systems<F: Field>(h: &str, g: &str, f: &F) -> (compose_solve::slp::Slp<F::Elem>, compose_solve::slp::Slp<F::Elem>) {
    (
        parse_poly_system(h, &["Y1", "Y2"], f).unwrap(),
        parse_poly_system(g, &["X1", "X2"], f).unwrap(),
    )
}

#[test]
fn final_example_with_random_choices_over_q() {
    let f = RationalField;
    let (h, g) = systems("Y1 - Y2 - 1\nY2^2 + Y2", "X1 + X2\nX1*X2", &f);
    for seed in 0..3 {
        let rep = solve_h_circ_g(&h, &g, &HomotopyConfig::with_seed(seed), &f).unwrap();
        assert_eq!(rep.solution_count, 4);
        assert!(gr_verify(&slp_compose(&h, &g).unwrap(), &rep.resolution, &f));
    }
}

#[test]
fn same_seed_same_answer() {
    let f = PrimeField::default();
    let (h, g) = systems("Y1^2 - 3*Y2 + 1\nY2^2 - Y1", "X1^2 + X2\nX1 - 2*X2^2 + 5", &f);
    let cfg = HomotopyConfig::with_seed(42);
    let a = solve_h_circ_g(&h, &g, &cfg, &f).unwrap();
    let b = solve_h_circ_g(&h, &g, &cfg, &f).unwrap();
    assert_eq!(a.resolution, b.resolution);
    assert_eq!(a.solution_count, 16);
}

#[test]
fn inconsistent_outer_system_is_empty() {
    let f = PrimeField::default();
    let (h, g) = systems("Y1\nY1 + 1", "X1 + X2\nX1 - X2", &f);
    let rep = solve_h_circ_g(&h, &g, &HomotopyConfig::with_seed(1), &f).unwrap();
    assert_eq!(rep.solution_count, 0);
    assert!(rep.resolution.is_empty());
}

#[test]
fn singular_fibres_are_dropped() {
    let f = PrimeField::new_verification(10007).unwrap();
    // X1^2 = 0 has only a double root, X1^2 = 1 two simple ones
    let (h, g) = systems("Y1*(Y1 - 1)\nY2 - Y1", "X1^2\nX2", &f);
    let mut cfg = HomotopyConfig::with_seed(3);
    cfg.max_retries = 20;
    let rep = solve_h_circ_g(&h, &g, &cfg, &f).unwrap();
    assert_eq!(rep.solution_count, 2);
    let pts = rational_points_of(&rep.resolution, &f).unwrap();
    let one = f.modulus() - 1;
    assert_eq!(pts.points.into_iter().collect::<Vec<_>>(), vec![vec![1, 1], vec![one, 1]]);
}

#[test]
fn outer_resolution_matches_enumeration() {
    let f = PrimeField::new_verification(101).unwrap();
    let text = "Y1^2 + 3*Y1*Y2 - 7\nY2^2 - Y1 + 2";
    let h = parse_poly_system(text, &["Y1", "Y2"], &f).unwrap();
    let mut cfg = HomotopyConfig::with_seed(5);
    cfg.max_retries = 20;
    let gr = homotopy_resolution(&h, &cfg, &f).unwrap();
    let dense = parse_poly_system_dense(text, &["Y1", "Y2"], &f).unwrap();
    let want = exhaustive_solutions(&dense, 101, true).unwrap();
    assert_eq!(rational_points_of(&gr, &f).unwrap(), want);
}

#[test]
fn mismatched_arity_is_rejected() {
    let f = PrimeField::default();
    let h = parse_poly_system("Y1", &["Y1"], &f).unwrap();
    let g = parse_poly_system("X1\nX2", &["X1", "X2"], &f).unwrap();
    let r = solve_h_circ_g(&h, &g, &HomotopyConfig::default(), &f);
    assert!(matches!(r, Err(Error::ArityMismatch { .. })));
}
