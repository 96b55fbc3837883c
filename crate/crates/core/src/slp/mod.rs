//! Straight-line programs: parsing, evaluation, Jacobians and composition.

pub mod mpoly;
pub mod parse;
pub mod program;

pub use mpoly::{MPoly, MPolyRing};
pub use parse::{default_vars, parse_poly_system, parse_poly_system_dense};
pub use program::{slp_compose, slp_eval, slp_from_mpolys, slp_jacobian, Instruction, Slp, SlpBuilder};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Field, PrimeField, RationalField};
    use crate::error::Error;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> RationalField {
        RationalField
    }

    fn sys(text: &str, vars: &[&str]) -> Slp<num_rational::BigRational> {
        parse_poly_system(text, vars, &q()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<num_rational::BigRational> {
        v.iter().map(|&x| q().from_i64(x)).collect()
    }

    #[test]
    fn parse_and_evaluate() {
        let p = sys("X1*X2 - T", &["X1", "X2", "T"]);
        assert_eq!(p.eval_field(&q(), &ints(&[2, 3, 1])), ints(&[5]));
        assert_eq!(p.declared_degrees(), &[2]);
        let f1 = sys("X1 + X2 - X1*X2 - 1", &["X1", "X2"]);
        assert_eq!(f1.eval_field(&q(), &ints(&[1, 5])), ints(&[0]));
        let g = sys("X1 + X2\nX1*X2", &["X1", "X2"]);
        assert_eq!(g.eval_field(&q(), &ints(&[1, 0])), ints(&[1, 0]));
        let f2 = sys("X1^2*X2^2 + X1*X2", &["X1", "X2"]);
        assert_eq!(f2.eval_field(&q(), &ints(&[1, -1])), ints(&[0]));
        assert_eq!(f2.declared_degrees(), &[4]);
    }

    #[test]
    fn parse_errors() {
        let vars = ["X1", "X2"];
        assert!(matches!(
            parse_poly_system("X1 + (", &vars, &q()),
            Err(Error::SyntaxError { line: 1, .. })
        ));
        assert!(matches!(
            parse_poly_system("# h\n\nX1 / X2", &vars, &q()),
            Err(Error::SyntaxError { line: 3, column: 4, .. })
        ));
        assert_eq!(
            parse_poly_system("X3", &vars, &q()),
            Err(Error::UnknownVariable("X3".into()))
        );
    }

    #[test]
    fn comments_blank_lines_and_powers() {
        let p = sys("# system\n  (X1 + 1)^5 - X2  # tail\n\n-X1^0 + 2*3", &["X1", "X2"]);
        assert_eq!(p.n_outputs(), 2);
        assert_eq!(p.eval_field(&q(), &ints(&[1, 2])), ints(&[30, 5]));
        // balanced chain: 3 multiplications for the fifth power
        assert!(p.instructions().iter().filter(|i| matches!(i, Instruction::Mul(..))).count() <= 3);
    }

    #[test]
    fn jacobian_examples() {
        let g = sys("X1 + X2\nX1*X2", &["X1", "X2"]);
        let jg = g.jacobian(&q());
        assert_eq!(jg.eval_field(&q(), &ints(&[5, 7])), ints(&[1, 1, 7, 5]));
        assert!(jg.len() <= 4 * 2 * g.len());
        let h = sys("Y1 - Y2 - 1\nY2^2 + Y2", &["Y1", "Y2"]);
        assert_eq!(h.jacobian(&q()).eval_field(&q(), &ints(&[4, 3])), ints(&[1, -1, 0, 7]));
        let c = sys("3\n5", &["Y1", "Y2"]);
        assert_eq!(c.jacobian(&q()).eval_field(&q(), &ints(&[4, 3])), ints(&[0, 0, 0, 0]));
    }

    #[test]
    fn composition_example() {
        let h = sys("Y1 - Y2 - 1\nY2^2 + Y2", &["Y1", "Y2"]);
        let g = sys("X1 + X2\nX1*X2", &["X1", "X2"]);
        let fc = slp_compose(&h, &g).unwrap();
        let expect = parse_poly_system_dense("X1 + X2 - X1*X2 - 1\nX1^2*X2^2 + X1*X2", &["X1", "X2"], &q()).unwrap();
        assert_eq!(fc.expand(&q()), expect);
        assert!(fc.len() <= h.len() + g.len() + 2);
        assert_eq!(fc.declared_degrees(), &[2, 4]);
        let id = sys("Y1\nY2", &["Y1", "Y2"]);
        assert_eq!(slp_compose(&id, &g).unwrap().expand(&q()), g.expand(&q()));
        assert_eq!(slp_compose(&h, &id).unwrap().expand(&q()), h.expand(&q()));
        let one = sys("Y1", &["Y1"]);
        assert_eq!(
            slp_compose(&one, &g).unwrap_err(),
            Error::ArityMismatch { expected: 1, found: 2 }
        );
    }

    fn random_text(rng: &mut ChaCha8Rng, n: usize, m: usize, deg: u32, prefix: &str) -> String {
        let mut lines = Vec::new();
        for _ in 0..m {
            let mut terms = Vec::new();
            for _ in 0..rng.gen_range(1..5) {
                let mut t = format!("{}", rng.gen_range(1..50));
                let mut left = rng.gen_range(0..=deg);
                while left > 0 {
                    let e = rng.gen_range(1..=left);
                    t.push_str(&format!("*{prefix}{}^{e}", rng.gen_range(1..=n)));
                    left -= e;
                }
                terms.push(t);
            }
            lines.push(format!("({})", terms.join(" - ")));
        }
        lines.join("\n")
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn compose_matches_substitution(seed in any::<u64>(), n in 1usize..=3, m in 1usize..=3) {
            let f = PrimeField::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let xs = default_vars("X", n);
            let ys = default_vars("Y", m);
            let xv: Vec<&str> = xs.iter().map(String::as_str).collect();
            let yv: Vec<&str> = ys.iter().map(String::as_str).collect();
            let gt = random_text(&mut rng, n, m, 3, "X");
            let ht = random_text(&mut rng, m, 2, 3, "Y");
            let g = parse_poly_system(&gt, &xv, &f).unwrap();
            let h = parse_poly_system(&ht, &yv, &f).unwrap();
            let gd = parse_poly_system_dense(&gt, &xv, &f).unwrap();
            let hd = parse_poly_system_dense(&ht, &yv, &f).unwrap();
            let composed = slp_compose(&h, &g).unwrap().expand(&f);
            let subst: Vec<_> = hd.iter().map(|p| p.substitute(&gd, &f)).collect();
            prop_assert_eq!(composed, subst);
            for (p, d) in gd.iter().zip(g.declared_degrees()) {
                prop_assert!(p.total_degree().unwrap_or(0) <= *d);
            }
        }

        #[test]
        fn jacobian_matches_symbolic_partials(seed in any::<u64>(), n in 1usize..=3, m in 1usize..=3) {
            let f = PrimeField::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let xs = default_vars("X", n);
            let xv: Vec<&str> = xs.iter().map(String::as_str).collect();
            let text = random_text(&mut rng, n, m, 3, "X");
            let p = parse_poly_system(&text, &xv, &f).unwrap();
            let dense = parse_poly_system_dense(&text, &xv, &f).unwrap();
            let jac = p.jacobian(&f).expand(&f);
            for (j, pj) in dense.iter().enumerate() {
                for i in 0..n {
                    prop_assert_eq!(&jac[j * n + i], &pj.derivative(i, &f));
                }
            }
            prop_assert!(p.jacobian(&f).len() <= 4 * n * p.len());
        }

        #[test]
        fn eval_matches_dense(seed in any::<u64>()) {
            let f = PrimeField::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let xs = default_vars("X", 3);
            let xv: Vec<&str> = xs.iter().map(String::as_str).collect();
            let text = random_text(&mut rng, 3, 3, 3, "X");
            let p = parse_poly_system(&text, &xv, &f).unwrap();
            let dense = parse_poly_system_dense(&text, &xv, &f).unwrap();
            for _ in 0..100 {
                let pt: Vec<_> = (0..3).map(|_| f.random(&mut rng)).collect();
                let got = p.eval_field(&f, &pt);
                let want: Vec<_> = dense.iter().map(|d| d.eval(&pt, &f)).collect();
                prop_assert_eq!(got, want);
            }
        }
    }
}
