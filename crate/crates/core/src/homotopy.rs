//! Regular solutions of a square system by a symbolic homotopy from a product
//! of random linear forms.

use std::time::Instant;

use log::{debug, warn};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::Field;
use crate::algebra::pade::{pade_reconstruct_bounds, PadeApproximant};
use crate::algebra::ring::Algebra;
use crate::algebra::upoly::{interpolate, UPoly};
use crate::error::{Error, Result};
use crate::lift::gls_lifting;
use crate::param::{remove_singular, GeometricResolution, Rur};
use crate::quotring::{BiSeriesRing, QuotRing};
use crate::slp::{Slp, SlpBuilder};

/// Random choices that can be pinned, for reproducing worked examples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Injected<E> {
    /// Separating form for the solutions of `h`.
    pub lambda_h: Option<Vec<E>>,
    /// Separating form for the curve over `g`.
    pub lambda_g: Option<Vec<E>>,
    /// Base point of the fiber solved before lifting through `g`.
    pub s0: Option<E>,
}

impl<E> Default for Injected<E> {
    fn default() -> Self {
        Injected {
            lambda_h: None,
            lambda_g: None,
            s0: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyConfig<E> {
    pub max_retries: usize,
    /// Replaces the `T`-adic lifting precision `2E + 1`.
    pub precision_override: Option<usize>,
    pub rng_seed: u64,
    pub injected: Injected<E>,
    /// Fail with `SeparationFailure` when multiple roots appear at `T = 1`.
    /// They are dropped as singular limits otherwise, but a form that is
    /// not separating produces them too.
    pub reject_collisions: bool,
}

impl<E> Default for HomotopyConfig<E> {
    fn default() -> Self {
        HomotopyConfig {
            max_retries: 5,
            precision_override: None,
            rng_seed: 0,
            injected: Injected::default(),
            reject_collisions: false,
        }
    }
}

impl<E> HomotopyConfig<E> {
    pub fn with_seed(seed: u64) -> Self {
        HomotopyConfig {
            rng_seed: seed,
            ..Self::default()
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.rng_seed)
    }
}

/// `p_i = prod_j (a_ij0 + a_ij1 Y_1 + ... + a_ijn Y_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StartSystem<E> {
    /// `forms[i][j]` has length `n + 1`, constant term first.
    pub forms: Vec<Vec<Vec<E>>>,
}

impl<E: Clone> StartSystem<E> {
    pub fn n(&self) -> usize {
        self.forms.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.forms.iter().map(Vec::len).collect()
    }

    /// Number of solutions, the product of the degrees.
    pub fn bezout(&self) -> usize {
        self.forms.iter().map(Vec::len).product()
    }

    pub fn to_slp(&self) -> Slp<E> {
        let n = self.n();
        let mut b = SlpBuilder::new(n);
        let outs = self.forms.iter().map(|fs| start_equation(&mut b, fs, &(0..n).collect::<Vec<_>>())).collect();
        b.finish(outs, self.degrees().iter().map(|&d| d as u32).collect())
    }
}

fn start_equation<E: Clone>(b: &mut SlpBuilder<E>, forms: &[Vec<E>], inputs: &[usize]) -> usize {
    let mut prod = None;
    for form in forms {
        let mut acc = b.constant(form[0].clone());
        for (k, c) in form[1..].iter().enumerate() {
            let x = b.input(inputs[k]);
            let t = b.scale(c.clone(), x);
            acc = b.add(acc, t);
        }
        prod = Some(match prod {
            Some(p) => b.mul(p, acc),
            None => acc,
        });
    }
    prod.expect("positive degree")
}

/// Random start system for the given degrees; resamples until all forms are
/// pairwise non-proportional and every selection of one form per equation
/// is uniquely solvable.
pub fn build_start_system<F: Field, R: rand::Rng + ?Sized>(
    degrees: &[usize],
    max_retries: usize,
    rng: &mut R,
    f: &F,
) -> Result<StartSystem<F::Elem>> {
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::DegenerateInput("start system needs positive degrees".into()));
    }
    let n = degrees.len();
    for _ in 0..max_retries.max(1) {
        let forms: Vec<Vec<Vec<F::Elem>>> = degrees
            .iter()
            .map(|&d| (0..d).map(|_| (0..=n).map(|_| f.random(rng)).collect()).collect())
            .collect();
        let sys = StartSystem { forms };
        if forms_distinct(&sys, f) && start_points(&sys, f).is_some() {
            return Ok(sys);
        }
    }
    Err(Error::RandomnessExhausted {
        attempts: max_retries,
        last: "start system forms collide".into(),
    })
}

fn forms_distinct<F: Field>(sys: &StartSystem<F::Elem>, f: &F) -> bool {
    let all: Vec<&Vec<F::Elem>> = sys.forms.iter().flatten().collect();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            // proportional iff every 2x2 minor vanishes
            let k = a.len();
            let prop = (0..k).all(|x| {
                (x + 1..k).all(|y| f.is_zero(&f.sub(&f.mul(&a[x], &b[y]), &f.mul(&a[y], &b[x]))))
            });
            if prop {
                return false;
            }
        }
    }
    true
}

/// Solution of `A y = rhs`, `None` if `A` is singular.
fn solve_linear<F: Field>(mut a: Vec<Vec<F::Elem>>, mut rhs: Vec<F::Elem>, f: &F) -> Option<Vec<F::Elem>> {
    let n = rhs.len();
    for c in 0..n {
        let r = (c..n).find(|&r| !f.is_zero(&a[r][c]))?;
        a.swap(c, r);
        rhs.swap(c, r);
        let inv = f.inv(&a[c][c])?;
        for j in c..n {
            a[c][j] = f.mul(&a[c][j], &inv);
        }
        rhs[c] = f.mul(&rhs[c], &inv);
        for r in 0..n {
            if r != c && !f.is_zero(&a[r][c]) {
                let k = a[r][c].clone();
                for j in c..n {
                    a[r][j] = f.sub(&a[r][j], &f.mul(&k, &a[c][j]));
                }
                rhs[r] = f.sub(&rhs[r], &f.mul(&k, &rhs[c]));
            }
        }
    }
    Some(rhs)
}

/// All intersection points, one per selection of forms.
fn start_points<F: Field>(sys: &StartSystem<F::Elem>, f: &F) -> Option<Vec<Vec<F::Elem>>> {
    let degrees = sys.degrees();
    let n = sys.n();
    let mut idx = vec![0usize; n];
    let mut pts = Vec::with_capacity(sys.bezout());
    loop {
        let a = (0..n).map(|i| sys.forms[i][idx[i]][1..].to_vec()).collect();
        let rhs = (0..n).map(|i| f.neg(&sys.forms[i][idx[i]][0])).collect();
        pts.push(solve_linear(a, rhs, f)?);
        let mut k = 0;
        loop {
            if k == n {
                return Some(pts);
            }
            idx[k] += 1;
            if idx[k] < degrees[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub(crate) fn start_resolution<F: Field>(
    sys: &StartSystem<F::Elem>,
    lambda: &[F::Elem],
    f: &F,
) -> Result<GeometricResolution<F::Elem>> {
    let pts = start_points(sys, f).ok_or(Error::SingularJacobian)?;
    let us: Vec<F::Elem> = pts
        .iter()
        .map(|p| p.iter().zip(lambda).fold(f.zero(), |acc, (x, l)| f.mul_add(&acc, x, l)))
        .collect();
    let q = us
        .iter()
        .fold(UPoly::one(f), |acc, u| acc.mul(&UPoly::linear_root(f, u), f));
    let w = (0..sys.n())
        .map(|i| {
            let data: Vec<_> = us.iter().cloned().zip(pts.iter().map(|p| p[i].clone())).collect();
            interpolate(&data, f)
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| match e {
            Error::DuplicateAbscissa => Error::SeparationFailure,
            e => e,
        })?;
    let ring = QuotRing::new(f.clone(), q.clone())?;
    let w = w.iter().map(|x| ring.reduce(x)).collect();
    Ok(GeometricResolution {
        q,
        w,
        lambda: lambda.to_vec(),
    })
}

/// Rational univariate representation of the start points.
pub fn solve_start_system<F: Field>(sys: &StartSystem<F::Elem>, lambda: &[F::Elem], f: &F) -> Result<Rur<F::Elem>> {
    Ok(start_resolution(sys, lambda, f)?.to_rur(f))
}

/// `r(Y, T) = (1 - T) p(Y) + T h(Y)` with inputs `(Y_1, ..., Y_n, T)`.
pub fn homotopy_system<E: Clone>(start: &StartSystem<E>, h: &Slp<E>) -> Slp<E> {
    let n = h.n_inputs();
    let mut b = SlpBuilder::new(n + 1);
    let ys: Vec<usize> = (0..n).map(|i| b.input(i)).collect();
    let t = b.input(n);
    let hs = b.import(h, &ys);
    let mut outs = Vec::with_capacity(n);
    for (i, hi) in hs.into_iter().enumerate() {
        let pi = start_equation(&mut b, &start.forms[i], &(0..n).collect::<Vec<_>>());
        let diff = b.sub(hi, pi);
        let td = b.mul(t, diff);
        outs.push(b.add(pi, td));
    }
    let degrees = h
        .declared_degrees()
        .iter()
        .zip(start.degrees())
        .map(|(&a, b)| a.max(b as u32) + 1)
        .collect();
    b.finish(outs, degrees)
}

/// A rational univariate representation over `k(T)`: `q` monic in `U` with
/// coefficients `q[0..d]` (the leading 1 implied), and numerators `v[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRur<E> {
    pub q: Vec<PadeApproximant<E>>,
    pub v: Vec<Vec<PadeApproximant<E>>>,
    pub lambda: Vec<E>,
}

/// Multiplicity of the root 1 of a nonzero polynomial.
fn order_at_one<F: Field>(p: &UPoly<F::Elem>, f: &F) -> usize {
    let lin = UPoly::linear_root(f, &f.one());
    let mut p = p.clone();
    let mut k = 0;
    while !p.is_zero() && f.is_zero(&p.eval(&f.one(), f)) {
        p = p.div_exact(&lin, f).expect("root divides");
        k += 1;
    }
    k
}

/// Value of `(T - 1)^e a(T)` at `T = 1`, `None` if it has a pole there.
fn scaled_value_at_one<F: Field>(a: &PadeApproximant<F::Elem>, e: usize, f: &F) -> Option<F::Elem> {
    if a.numerator.is_zero() {
        return Some(f.zero());
    }
    let m = order_at_one(&a.denominator, f);
    let z = order_at_one(&a.numerator, f);
    if e + z < m {
        return None;
    }
    if e + z > m {
        return Some(f.zero());
    }
    let lin = UPoly::linear_root(f, &f.one());
    let strip = |p: &UPoly<F::Elem>, k: usize| (0..k).fold(p.clone(), |acc, _| acc.div_exact(&lin, f).unwrap());
    let num = strip(&a.numerator, z).eval(&f.one(), f);
    let den = strip(&a.denominator, m).eval(&f.one(), f);
    Some(f.mul(&num, &f.inv(&den)?))
}

/// Evaluates a `k(T)`-representation at `T = 1`. Branches escaping to
/// infinity are dropped by clearing the common pole of `q`; roots of the
/// specialized `q` that are multiple are singular limits and dropped too.
pub fn specialize_t1<F: Field>(r: &RationalRur<F::Elem>, f: &F) -> Result<GeometricResolution<F::Elem>> {
    specialize_counting(r, f).map(|(gr, _)| gr)
}

/// As [`specialize_t1`], also returning the number of dropped multiple roots
/// counted with multiplicity.
fn specialize_counting<F: Field>(r: &RationalRur<F::Elem>, f: &F) -> Result<(GeometricResolution<F::Elem>, usize)> {
    let e = r
        .q
        .iter()
        .filter(|a| !a.numerator.is_zero())
        .map(|a| order_at_one(&a.denominator, f))
        .max()
        .unwrap_or(0);
    let lead = if e == 0 { f.one() } else { f.zero() };
    let mut qc = Vec::with_capacity(r.q.len() + 1);
    for a in &r.q {
        qc.push(scaled_value_at_one(a, e, f).ok_or_else(|| Error::SpecializationFailure("pole in q".into()))?);
    }
    qc.push(lead);
    let q1 = UPoly::from_coeffs(f, qc);
    let v1 = r
        .v
        .iter()
        .map(|vi| {
            let cs = vi
                .iter()
                .map(|a| scaled_value_at_one(a, e, f))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::SpecializationFailure("numerator pole exceeds the pole of q".into()))?;
            Ok(UPoly::from_coeffs(f, cs))
        })
        .collect::<Result<Vec<_>>>()?;
    if q1.degree().unwrap_or(0) == 0 {
        return Ok((GeometricResolution::empty(r.lambda.clone(), f), 0));
    }
    let q1 = {
        let lc_inv = f.inv(q1.leading().unwrap()).unwrap();
        let v1: Vec<_> = v1.iter().map(|v| v.scale(&lc_inv, f)).collect();
        (q1.scale(&lc_inv, f), v1)
    };
    let (q1, v1) = q1;
    let dq = q1.derivative(f);
    let g = q1.gcd(&dq, f);
    let mut simple = q1.clone();
    loop {
        let c = simple.gcd(&g, f);
        if c.is_constant() {
            break;
        }
        simple = simple.div_exact(&c, f)?;
    }
    let multiple = q1.degree().unwrap_or(0) - simple.degree().unwrap_or(0);
    if simple.degree().unwrap_or(0) == 0 {
        return Ok((GeometricResolution::empty(r.lambda.clone(), f), multiple));
    }
    let ring = QuotRing::new(f.clone(), simple.clone())?;
    let dq_inv = ring.invert_mod(&dq).map_err(|_| Error::NotSquarefree)?;
    let w = v1.iter().map(|v| ring.mul(&ring.reduce(v), &dq_inv)).collect();
    let gr = GeometricResolution {
        q: simple,
        w,
        lambda: r.lambda.clone(),
    };
    if !gr.invariants_hold(f) {
        return Err(Error::SpecializationFailure("separating form relation lost at T = 1".into()));
    }
    Ok((gr, multiple))
}

/// Bound on the `T`-degree of the eliminant of the homotopy curve and of its
/// Kronecker numerators: the bidegree `sum_i prod_{j != i} d_j` of the curve in
/// `P^n x P^1`, each `r_i` having bidegree `(d_i, 1)`. Never exceeds
/// `prod (d_i + 1)`.
pub fn curve_degree_bound(degrees: &[u32]) -> usize {
    (0..degrees.len())
        .map(|i| {
            degrees
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &d)| d as usize)
                .product::<usize>()
        })
        .sum()
}

/// One attempt with fresh randomness drawn from `rng`.
pub fn homotopy_attempt<F: Field, R: rand::Rng + ?Sized>(
    h: &Slp<F::Elem>,
    cfg: &HomotopyConfig<F::Elem>,
    rng: &mut R,
    f: &F,
) -> Result<GeometricResolution<F::Elem>> {
    let n = h.n_inputs();
    if h.n_outputs() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: h.n_outputs(),
        });
    }
    let degrees: Vec<usize> = h.declared_degrees().iter().map(|&d| (d as usize).max(1)).collect();
    let start = build_start_system(&degrees, cfg.max_retries, rng, f)?;
    let lambda = match &cfg.injected.lambda_h {
        Some(l) => l.clone(),
        None => (0..n).map(|_| f.random(rng)).collect(),
    };
    let start_gr = start_resolution(&start, &lambda, f)?;
    let r = homotopy_system(&start, h);
    let e = curve_degree_bound(&degrees.iter().map(|&d| d as u32).collect::<Vec<_>>());
    let prec = cfg.precision_override.unwrap_or(2 * e + 1);
    debug!("homotopy: C = {}, lifting to precision {prec}", start.bezout());
    let clock = Instant::now();
    let lifted = gls_lifting(&r, &start_gr.q, &start_gr.w, &lambda, prec, f)?;
    debug!("homotopy: lifted in {:?}", clock.elapsed());
    let rat = rational_rur(&lifted.q, &lifted.v, &lambda, prec, f)?;
    let (gr, multiple) = specialize_counting(&rat, f)?;
    if multiple > 0 && cfg.reject_collisions {
        debug!("homotopy: {multiple} colliding roots at T = 1, retrying");
        return Err(Error::SeparationFailure);
    }
    debug!("homotopy: specialized at T = 1 after {:?}", clock.elapsed());
    let good = remove_singular(h, &gr, f);
    if good.degree() < gr.degree() {
        debug!("homotopy: removed {} singular points", gr.degree() - good.degree());
    }
    Ok(good)
}

/// Kronecker numerators `Q_U V_i mod Q` and Pade reconstruction of every
/// `T`-coefficient.
pub(crate) fn rational_rur<F: Field>(
    q: &BiPoly<F::Elem>,
    v: &[BiPoly<F::Elem>],
    lambda: &[F::Elem],
    prec: usize,
    f: &F,
) -> Result<RationalRur<F::Elem>> {
    let ring = BiSeriesRing::new(f.clone(), q, prec)?;
    let d = ring.degree();
    let qu = ring.from_bipoly(&q.derivative_u(f));
    let bound = (prec - 1) / 2;
    let pade = |s: &UPoly<F::Elem>| pade_reconstruct_bounds(s, prec, bound, bound, f);
    let qc = (0..d).map(|k| pade(&q.row(k))).collect::<Result<Vec<_>>>()?;
    let vc = v
        .iter()
        .map(|vi| {
            let num = ring.to_bipoly(&ring.mul(&qu, &ring.from_bipoly(vi)));
            (0..d).map(|k| pade(&num.row(k))).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalRur {
        q: qc,
        v: vc,
        lambda: lambda.to_vec(),
    })
}

/// Geometric resolution of the regular solutions of the square system `h`,
/// retrying Monte Carlo failures with fresh randomness.
pub fn homotopy_resolution<F: Field>(
    h: &Slp<F::Elem>,
    cfg: &HomotopyConfig<F::Elem>,
    f: &F,
) -> Result<GeometricResolution<F::Elem>> {
    let mut rng = cfg.rng();
    let mut last = None;
    let retries = cfg.max_retries.max(1);
    for attempt in 0..retries {
        let mut cfg = cfg.clone();
        cfg.reject_collisions = attempt == 0 && retries > 1 && cfg.injected.lambda_h.is_none();
        match homotopy_attempt(h, &cfg, &mut rng, f) {
            Ok(gr) => return Ok(gr),
            Err(e) if e.is_monte_carlo() => {
                warn!("homotopy attempt {} failed: {e}", attempt + 1);
                last = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::RandomnessExhausted {
        attempts: cfg.max_retries.max(1),
        last: last.map(|e| e.to_string()).unwrap_or_default(),
    })
}

/// Rational univariate representation of the regular solutions of `h`.
pub fn homotopy_nonsingular<F: Field>(h: &Slp<F::Elem>, cfg: &HomotopyConfig<F::Elem>, f: &F) -> Result<Rur<F::Elem>> {
    Ok(homotopy_resolution(h, cfg, f)?.to_rur(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, RationalField};
    use crate::param::{gr_verify, rur_to_gr};
    use crate::slp::parse_poly_system;

    #[test]
    fn start_system_shapes() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (degs, c) in [(vec![1, 2], 2), (vec![2, 2], 4), (vec![1, 1], 1)] {
            let s = build_start_system(&degs, 5, &mut rng, &f).unwrap();
            assert_eq!(s.bezout(), c);
            let lambda: Vec<_> = (0..2).map(|_| f.random(&mut rng)).collect();
            let gr = rur_to_gr(&solve_start_system(&s, &lambda, &f).unwrap(), &f).unwrap();
            assert_eq!(gr.degree(), c);
            assert!(gr_verify(&s.to_slp(), &gr, &f));
        }
    }

    #[test]
    fn start_rur_example() {
        let f = RationalField;
        let i = |x: i64| f.from_i64(x);
        // X1 - 1, X2 (X2 - 1)
        let s = StartSystem {
            forms: vec![
                vec![vec![i(-1), i(1), i(0)]],
                vec![vec![i(0), i(0), i(1)], vec![i(-1), i(0), i(1)]],
            ],
        };
        let r = solve_start_system(&s, &[i(1), i(3)], &f).unwrap();
        assert_eq!(r.q, UPoly::from_i64s(&f, &[4, -5, 1]));
        let single = StartSystem { forms: vec![vec![vec![i(-1), i(1), i(0)]], vec![vec![i(-1), i(0), i(1)]]] };
        assert_eq!(solve_start_system(&single, &[i(1), i(0)], &f).unwrap().q, UPoly::from_i64s(&f, &[-1, 1]));
        // both points have the same value under lambda = (1, 0)
        assert_eq!(solve_start_system(&s, &[i(1), i(0)], &f), Err(Error::SeparationFailure));
    }

    fn sample_h<F: Field>(f: &F) -> Slp<F::Elem> {
        parse_poly_system("Y1 - Y2 - 1\nY2^2 + Y2", &["Y1", "Y2"], f).unwrap()
    }

    fn check_sample_h<F: Field>(f: &F, seed: u64) {
        let mut cfg = HomotopyConfig::with_seed(seed);
        cfg.injected.lambda_h = Some(vec![f.zero(), f.one()]);
        let gr = rur_to_gr(&homotopy_nonsingular(&sample_h(f), &cfg, f).unwrap(), f).unwrap();
        assert_eq!(gr.q, UPoly::from_i64s(f, &[0, 1, 1]));
        assert_eq!(gr.w, vec![UPoly::from_i64s(f, &[1, 1]), UPoly::from_i64s(f, &[0, 1])]);
    }

    #[test]
    fn sample_h_with_injected_form() {
        check_sample_h(&RationalField, 0);
        for seed in 0..5 {
            check_sample_h(&PrimeField::default(), seed);
        }
    }

    #[test]
    fn small_systems() {
        let f = PrimeField::default();
        let lin = parse_poly_system("Y1\nY2", &["Y1", "Y2"], &f).unwrap();
        let gr = homotopy_resolution(&lin, &HomotopyConfig::default(), &f).unwrap();
        assert_eq!(gr.degree(), 1);
        assert!(gr.w.iter().all(|w| w.is_zero()));

        let two = parse_poly_system("Y1^2 - 1\nY2 - 1", &["Y1", "Y2"], &f).unwrap();
        let mut cfg = HomotopyConfig::default();
        cfg.injected.lambda_h = Some(vec![f.one(), f.zero()]);
        let gr = homotopy_resolution(&two, &cfg, &f).unwrap();
        assert_eq!(gr.q, UPoly::from_i64s(&f, &[-1, 0, 1]));
        assert_eq!(gr.w, vec![UPoly::from_i64s(&f, &[0, 1]), UPoly::from_i64s(&f, &[1])]);
    }

    #[test]
    fn deficient_and_singular_systems() {
        let f = PrimeField::default();
        // Bezout count 4, only 2 finite solutions
        let h = parse_poly_system("Y1*Y2 - 1\nY1*Y2 + Y1 - 3", &["Y1", "Y2"], &f).unwrap();
        let gr = homotopy_resolution(&h, &HomotopyConfig::default(), &f).unwrap();
        assert_eq!(gr.degree(), 1);
        assert!(gr_verify(&h, &gr, &f));
        // (0, 0) is a singular zero of Y1^2, regular zero (0, 1) of the other
        let s = parse_poly_system("Y1^2*(Y1 - 1)\nY2 - Y1", &["Y1", "Y2"], &f).unwrap();
        let gr = homotopy_resolution(&s, &HomotopyConfig::default(), &f).unwrap();
        assert_eq!(gr.degree(), 1);
        assert!(gr_verify(&s, &gr, &f));
        let none = parse_poly_system("Y1^2\nY2", &["Y1", "Y2"], &f).unwrap();
        assert!(homotopy_resolution(&none, &HomotopyConfig::default(), &f).unwrap().is_empty());
    }

    #[test]
    fn specialization_cases() {
        let f = RationalField;
        let c = |x: i64| PadeApproximant::polynomial(UPoly::from_i64s(&f, &[x]), &f);
        // constant data passes through
        let r = RationalRur { q: vec![c(-1), c(0)], v: vec![vec![c(2), c(0)]], lambda: vec![f.one()] };
        let gr = specialize_t1(&r, &f).unwrap();
        assert_eq!(gr.q, UPoly::from_i64s(&f, &[-1, 0, 1]));
        assert_eq!(gr.w, vec![UPoly::from_i64s(&f, &[0, 1])]);
        // (1 + T) / (1 - T) in a numerator while q is regular at T = 1
        let pole = PadeApproximant { numerator: UPoly::from_i64s(&f, &[-1, -1]), denominator: UPoly::from_i64s(&f, &[-1, 1]) };
        let bad = RationalRur { q: vec![c(-1), c(0)], v: vec![vec![c(0), pole]], lambda: vec![f.one()] };
        assert!(matches!(specialize_t1(&bad, &f), Err(Error::SpecializationFailure(_))));
    }
}
