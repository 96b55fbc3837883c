//! The full pipeline for `f = h(g(X))`: solve `h`, lift its solutions through
//! `g` along a curve, and merge the two into one resolution.

use std::time::{Duration, Instant};

use log::{debug, warn};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::bipoly::{resultant_in_second_var, BiPoly};
use crate::algebra::field::Field;
use crate::algebra::ring::Algebra;
use crate::algebra::upoly::{squarefree_part, UPoly};
use crate::error::{Error, Result};
use crate::homotopy::{homotopy_attempt, HomotopyConfig};
use crate::parametric::{parametric_attempt, CurveParametrization};
use crate::param::{gr_verify, lambda_form, remove_singular, GeometricResolution};
use crate::quotring::QuotRing;
use crate::slp::{slp_compose, Slp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport<E> {
    pub resolution: GeometricResolution<E>,
    pub solution_count: usize,
    pub lambda_used: Vec<E>,
    /// Seeds of the attempts that produced the result, solving `h` then
    /// lifting through `g`.
    pub seeds_used: Vec<u64>,
    /// Attempts spent per stage, including the successful one.
    pub attempts: (usize, usize),
    pub warnings: Vec<String>,
    pub timings: Vec<(String, Duration)>,
}

/// Seed of attempt `k` of `stage`.
fn attempt_seed(base: u64, stage: u64, k: usize) -> u64 {
    // splitmix64 finalizer
    let mut z = base ^ (stage << 56) ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Polynomials in `T` over `k[U] / P`, lowest degree first.
type TPoly<E> = Vec<UPoly<E>>;

fn trim<E: Clone>(a: &mut TPoly<E>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

/// `a mod b` for `b` with unit leading coefficient `inv_lc^-1`.
fn t_rem<F: Field>(ring: &QuotRing<F>, mut a: TPoly<F::Elem>, b: &TPoly<F::Elem>, inv_lc: &UPoly<F::Elem>) -> TPoly<F::Elem> {
    let db = b.len() - 1;
    trim(&mut a);
    while a.len() > db {
        let k = a.len() - 1 - db;
        let c = ring.mul(a.last().expect("nonempty"), inv_lc);
        for (j, bj) in b.iter().enumerate() {
            a[k + j] = ring.sub(&a[k + j], &ring.mul(&c, bj));
        }
        a.pop();
        trim(&mut a);
    }
    a
}

/// `P` and `tau` with `T = tau(U)` on the solutions of
/// `q_h(T) = Q(U, T) = 0`, `U` separating them.
pub fn merge_bivariate<F: Field>(
    q_h: &UPoly<F::Elem>,
    cp: &CurveParametrization<F::Elem>,
    f: &F,
) -> Result<(UPoly<F::Elem>, UPoly<F::Elem>)> {
    let q_h = q_h.monic(f);
    let res = resultant_in_second_var(&q_h, &cp.q, f)?;
    let p = squarefree_part(&res, f)?;
    if p.is_constant() {
        return Ok((p, UPoly::zero()));
    }
    let ring = QuotRing::new(f.clone(), p.clone())?;
    let mut a: TPoly<F::Elem> = q_h.coeffs().iter().map(|c| ring.embed(c)).collect();
    let mut b: TPoly<F::Elem> = cp.q.transpose(f).rows().iter().map(|r| ring.reduce(r)).collect();
    trim(&mut b);
    // Euclid in T; every leading coefficient must be a unit mod P
    while !b.is_empty() {
        let inv = ring
            .invert_mod(b.last().expect("nonempty"))
            .map_err(|_| Error::SeparationFailure)?;
        let r = t_rem(&ring, a, &b, &inv);
        a = b;
        b = r;
    }
    if a.len() != 2 {
        debug!("merge: gcd in T has degree {}", a.len().saturating_sub(1));
        return Err(Error::SeparationFailure);
    }
    let inv = ring.invert_mod(&a[1]).map_err(|_| Error::SeparationFailure)?;
    let tau = ring.neg(&ring.mul(&a[0], &inv));
    Ok((p, tau))
}

/// `tau^j mod P` for `j < count`.
fn powers<F: Field>(ring: &QuotRing<F>, tau: &UPoly<F::Elem>, count: usize) -> Vec<UPoly<F::Elem>> {
    let mut out = Vec::with_capacity(count);
    let mut x = ring.one();
    for _ in 0..count {
        let next = ring.mul(&x, tau);
        out.push(std::mem::replace(&mut x, next));
    }
    out
}

/// `B(S, tau(S)) mod P` as `sum_j tau^j B_j(S)`, reduced once.
fn eval_at_curve<F: Field>(ring: &QuotRing<F>, b: &BiPoly<F::Elem>, tau_pows: &[UPoly<F::Elem>]) -> UPoly<F::Elem> {
    let f = ring.field();
    let mut acc = UPoly::zero();
    for (j, tj) in tau_pows.iter().enumerate().take(b.deg_t().map_or(0, |d| d + 1)) {
        let col = UPoly::from_coeffs(
            f,
            b.rows().iter().map(|r| r.coeffs().get(j).cloned().unwrap_or_else(|| f.zero())).collect(),
        );
        if !col.is_zero() {
            acc = acc.add(&col.mul(tj, f), f);
        }
    }
    ring.reduce(&acc)
}

/// `W_i = N_i(S, tau) / Q_U(S, tau) mod P`. Points where `Q_U` vanishes are
/// split off; returns the resolution on the rest and the degree split off.
pub fn curve_to_resolution<F: Field>(
    p: &UPoly<F::Elem>,
    tau: &UPoly<F::Elem>,
    cp: &CurveParametrization<F::Elem>,
    f: &F,
) -> Result<(GeometricResolution<F::Elem>, usize)> {
    if p.is_constant() {
        return Ok((GeometricResolution::empty(cp.lambda.clone(), f), 0));
    }
    let ring = QuotRing::new(f.clone(), p.clone())?;
    let t_len = cp.numerators.iter().chain([&cp.q]).filter_map(BiPoly::deg_t).max().unwrap_or(0) + 1;
    let tau_pows = powers(&ring, tau, t_len);
    let qu = eval_at_curve(&ring, &cp.q.derivative_u(f), &tau_pows);
    let bad = p.gcd(&qu, f);
    let (ring, dropped) = if bad.is_constant() {
        (ring, 0)
    } else {
        let good = p.div_exact(&bad, f)?.monic(f);
        if good.is_constant() {
            return Ok((GeometricResolution::empty(cp.lambda.clone(), f), p.degree().unwrap_or(0)));
        }
        (QuotRing::new(f.clone(), good)?, bad.degree().unwrap_or(0))
    };
    let tau_pows: Vec<_> = tau_pows.iter().map(|t| ring.reduce(t)).collect();
    let inv = ring.invert_mod(&ring.reduce(&qu))?;
    let w = cp
        .numerators
        .iter()
        .map(|n| ring.mul(&eval_at_curve(&ring, n, &tau_pows), &inv))
        .collect();
    let gr = GeometricResolution {
        q: ring.modulus().clone(),
        w,
        lambda: cp.lambda.clone(),
    };
    if lambda_form(&ring, &gr.lambda, &gr.w) != ring.var() {
        return Err(Error::SeparationFailure);
    }
    Ok((gr, dropped))
}

/// Geometric resolution of the regular solutions of `h(g(X)) = 0`.
pub fn solve_h_circ_g<F: Field>(
    h: &Slp<F::Elem>,
    g: &Slp<F::Elem>,
    cfg: &HomotopyConfig<F::Elem>,
    f: &F,
) -> Result<SolveReport<F::Elem>> {
    let n = g.n_inputs();
    if g.n_outputs() != n || h.n_inputs() != n || h.n_outputs() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: h.n_inputs(),
        });
    }
    let fsys = slp_compose(h, g)?;
    let retries = cfg.max_retries.max(1);
    let mut timings = Vec::new();
    let mut warnings = Vec::new();
    let mut seeds = Vec::new();

    let clock = Instant::now();
    let mut last = None;
    let mut gr_h = None;
    let mut attempts_h = 0;
    for k in 0..retries {
        attempts_h += 1;
        let seed = attempt_seed(cfg.rng_seed, 1, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cfg = cfg.clone();
        cfg.reject_collisions = k == 0 && retries > 1 && cfg.injected.lambda_h.is_none();
        match homotopy_attempt(h, &cfg, &mut rng, f) {
            Ok(gr) => {
                seeds.push(seed);
                gr_h = Some(gr);
                break;
            }
            Err(e) if e.is_monte_carlo() => {
                warn!("solving h, attempt {}: {e}", k + 1);
                last = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    let Some(gr_h) = gr_h else {
        return Err(Error::RandomnessExhausted {
            attempts: retries,
            last: last.map(|e| e.to_string()).unwrap_or_default(),
        });
    };
    timings.push(("solve_h".to_string(), clock.elapsed()));
    if gr_h.is_empty() {
        let resolution = GeometricResolution::empty(gr_h.lambda.clone(), f);
        return Ok(SolveReport {
            solution_count: 0,
            lambda_used: resolution.lambda.clone(),
            resolution,
            seeds_used: seeds,
            attempts: (attempts_h, 0),
            warnings,
            timings,
        });
    }
    let c = gr_h.degree();
    debug!("solver: h has {c} regular solutions");

    let mut last = None;
    let mut found = None;
    let mut attempts_g = 0;
    let (mut t_param, mut t_merge) = (Duration::ZERO, Duration::ZERO);
    for k in 0..retries {
        attempts_g += 1;
        let seed = attempt_seed(cfg.rng_seed, 2, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let clock = Instant::now();
        let mut cfg = cfg.clone();
        cfg.reject_collisions = k == 0 && retries > 1;
        let attempt = parametric_attempt(g, &gr_h.w, c, &cfg, &mut rng, f);
        t_param += clock.elapsed();
        let clock = Instant::now();
        let merged = attempt.and_then(|cp| {
            let (p, tau) = merge_bivariate(&gr_h.q, &cp, f)?;
            let (gr, dropped) = curve_to_resolution(&p, &tau, &cp, f)?;
            Ok((cp, gr, dropped))
        });
        t_merge += clock.elapsed();
        match merged {
            Ok((cp, gr, dropped)) => {
                // a vanishing Q_U is either a non-separating lambda (retry) or
                // a singular point of g (persistent, dropped)
                let injected = cfg.injected.lambda_g.is_some();
                if dropped > 0 && cfg.reject_collisions && !injected {
                    debug!("solver: {dropped} points with Q_U = 0, retrying");
                    last = Some(Error::SeparationFailure);
                    continue;
                }
                if dropped > 0 {
                    warnings.push(format!("{dropped} points on the branch locus of the curve were dropped"));
                }
                warnings.extend(cp.warnings.iter().cloned());
                seeds.push(seed);
                found = Some(gr);
                break;
            }
            Err(e) if e.is_monte_carlo() => {
                warn!("lifting through g, attempt {}: {e}", k + 1);
                last = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    timings.push(("parametric".to_string(), t_param));
    timings.push(("merge".to_string(), t_merge));
    let Some(gr) = found else {
        return Err(Error::RandomnessExhausted {
            attempts: retries,
            last: last.map(|e| e.to_string()).unwrap_or_default(),
        });
    };

    let clock = Instant::now();
    let resolution = remove_singular(&fsys, &gr, f);
    if resolution.degree() < gr.degree() {
        warnings.push(format!(
            "{} singular points of f removed",
            gr.degree() - resolution.degree()
        ));
    }
    timings.push(("remove_singular".to_string(), clock.elapsed()));
    debug_assert!(gr_verify(&fsys, &resolution, f));
    Ok(SolveReport {
        solution_count: resolution.degree(),
        lambda_used: resolution.lambda.clone(),
        resolution,
        seeds_used: seeds,
        attempts: (attempts_h, attempts_g),
        warnings,
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, RationalField};
    use crate::slp::parse_poly_system;

    fn pinned_cfg<F: Field>(f: &F) -> HomotopyConfig<F::Elem> {
        let mut cfg = HomotopyConfig::default();
        cfg.injected.lambda_h = Some(vec![f.zero(), f.one()]);
        cfg.injected.lambda_g = Some(vec![f.one(), f.from_i64(3)]);
        cfg.injected.s0 = Some(f.zero());
        cfg
    }

    fn ratio<F: Field>(f: &F, a: i64, b: i64) -> F::Elem {
        f.mul(&f.from_i64(a), &f.inv(&f.from_i64(b)).unwrap())
    }

    fn check_final_example<F: Field>(f: &F) {
        let h = parse_poly_system("Y1 - Y2 - 1\nY2^2 + Y2", &["Y1", "Y2"], f).unwrap();
        let g = parse_poly_system("X1 + X2\nX1*X2", &["X1", "X2"], f).unwrap();
        let rep = solve_h_circ_g(&h, &g, &pinned_cfg(f), f).unwrap();
        let gr = &rep.resolution;
        assert_eq!(gr.q, UPoly::from_i64s(f, &[-12, 16, -1, -4, 1]));
        let w1 = UPoly::from_coeffs(f, vec![ratio(f, 18, 5), ratio(f, -21, 10), ratio(f, -9, 10), ratio(f, 2, 5)]);
        let w2 = UPoly::from_coeffs(f, vec![ratio(f, -6, 5), ratio(f, 31, 30), ratio(f, 3, 10), ratio(f, -2, 15)]);
        assert_eq!(gr.w, vec![w1, w2]);
        assert_eq!(rep.solution_count, 4);
        let mut pts: Vec<_> = [-2, 1, 2, 3]
            .iter()
            .map(|&s| gr.w.iter().map(|w| w.eval(&f.from_i64(s), f)).collect::<Vec<_>>())
            .collect();
        pts.sort_by_key(|p| format!("{p:?}"));
        let mut want: Vec<Vec<_>> = [(1, -1), (1, 0), (-1, 1), (0, 1)]
            .iter()
            .map(|&(a, b)| vec![f.from_i64(a), f.from_i64(b)])
            .collect();
        want.sort_by_key(|p| format!("{p:?}"));
        assert_eq!(pts, want);
    }

    #[test]
    fn final_example() {
        check_final_example(&RationalField);
        check_final_example(&PrimeField::default());
    }

    #[test]
    fn merge_examples() {
        let f = RationalField;
        let g = parse_poly_system("X1 + X2\nX1*X2", &["X1", "X2"], &f).unwrap();
        let v = vec![UPoly::from_i64s(&f, &[1, 1]), UPoly::from_i64s(&f, &[0, 1])];
        let cfg = pinned_cfg(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let cp = parametric_attempt(&g, &v, 2, &cfg, &mut rng, &f).unwrap();
        let (p, tau) = merge_bivariate(&UPoly::from_i64s(&f, &[0, 1, 1]), &cp, &f).unwrap();
        assert_eq!(p, UPoly::from_i64s(&f, &[-12, 16, -1, -4, 1]));
        let tau_want = UPoly::from_coeffs(&f, [21, -16, -9, 4].iter().map(|&a| ratio(&f, a, 15)).collect());
        assert_eq!(tau, tau_want);
        for s in [1, 2, 3, -2] {
            let t = tau.eval(&f.from_i64(s), &f);
            assert!(t == f.zero() || t == f.from_i64(-1));
        }

        // q_h = T, Q = U^2 - 4U + 3 constant in T
        let mut cp0 = cp.clone();
        cp0.q = BiPoly::from_i64_grid(&f, &[&[3], &[-4], &[1]]);
        let (p, tau) = merge_bivariate(&UPoly::from_i64s(&f, &[0, 1]), &cp0, &f).unwrap();
        assert_eq!(p, UPoly::from_i64s(&f, &[3, -4, 1]));
        assert!(tau.is_zero());

        // q_h = T - 5, Q = U - T
        cp0.q = BiPoly::from_i64_grid(&f, &[&[0, -1], &[1]]);
        let (p, tau) = merge_bivariate(&UPoly::from_i64s(&f, &[-5, 1]), &cp0, &f).unwrap();
        assert_eq!(p, UPoly::from_i64s(&f, &[-5, 1]));
        assert_eq!(tau, UPoly::from_i64s(&f, &[5]));
    }

    #[test]
    fn identity_and_empty() {
        let f = PrimeField::default();
        let h = parse_poly_system("Y1\nY2", &["Y1", "Y2"], &f).unwrap();
        let g = parse_poly_system("X1\nX2", &["X1", "X2"], &f).unwrap();
        let rep = solve_h_circ_g(&h, &g, &HomotopyConfig::with_seed(3), &f).unwrap();
        assert_eq!(rep.solution_count, 1);
        assert!(rep.resolution.w.iter().all(|w| w.is_zero()));

        let h = parse_poly_system("Y1^2\nY2", &["Y1", "Y2"], &f).unwrap();
        let rep = solve_h_circ_g(&h, &g, &HomotopyConfig::with_seed(3), &f).unwrap();
        assert_eq!(rep.solution_count, 0);
    }

    #[test]
    fn random_quadratics_reach_bezout_count() {
        use rand::Rng;
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut quad = |v: &str| {
            (0..2)
                .map(|_| {
                    let c: Vec<u64> = (0..6).map(|_| rng.gen_range(1..10_000)).collect();
                    format!(
                        "{}*{v}1^2 + {}*{v}1*{v}2 + {}*{v}2^2 + {}*{v}1 + {}*{v}2 + {}",
                        c[0], c[1], c[2], c[3], c[4], c[5]
                    )
                })
                .collect::<Vec<_>>()
                .join("\n")
        };
        let h = parse_poly_system(&quad("Y"), &["Y1", "Y2"], &f).unwrap();
        let g = parse_poly_system(&quad("X"), &["X1", "X2"], &f).unwrap();
        let rep = solve_h_circ_g(&h, &g, &HomotopyConfig::with_seed(1), &f).unwrap();
        assert_eq!(rep.solution_count, 16);
        assert!(gr_verify(&slp_compose(&h, &g).unwrap(), &rep.resolution, &f));
    }
}
