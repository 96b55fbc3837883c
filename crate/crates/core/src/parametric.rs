//! Parametric lifting: from one generic fiber `g(X) = v(s0)` to the curve
//! `g(X) = v(T)`.

use log::{debug, warn};
use rand::Rng;

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::Field;
use crate::algebra::pade::pade_reconstruct_bounds;
use crate::algebra::ring::Algebra;
use crate::algebra::upoly::{is_squarefree, UPoly};
use crate::error::{Error, Result};
use crate::homotopy::{homotopy_attempt, HomotopyConfig};
use crate::lift::{lift_resuming, LiftOutput};
use crate::param::{lambda_form, GeometricResolution};
use crate::quotring::{matrix_invert, BiSeries, BiSeriesRing, QuotRing, RingMatrix};
use crate::slp::{Slp, SlpBuilder};

/// The points of `g(X) = v(T)` over `k(T)`: roots `u` of `Q(U, T)` and
/// coordinates `X_i = N_i(u, T) / Q_U(u, T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveParametrization<E> {
    /// Monic in `U`, exact in `T`.
    pub q: BiPoly<E>,
    /// `Q_U V_i mod Q`, exact in `T`.
    pub numerators: Vec<BiPoly<E>>,
    /// `V_i` when they are polynomial in `T`.
    pub v: Option<Vec<BiPoly<E>>>,
    pub lambda: Vec<E>,
    pub s0: E,
    pub c: usize,
    /// The start fiber at `T = s0`.
    pub fiber: GeometricResolution<E>,
    pub warnings: Vec<String>,
}

impl<E: Clone + PartialEq> CurveParametrization<E> {
    /// `V` as a power series around `T = 0`, modulo `T^prec`.
    pub fn v_series<F: Field<Elem = E>>(&self, prec: usize, f: &F) -> Result<Vec<BiPoly<E>>> {
        let ring = BiSeriesRing::new(f.clone(), &self.q, prec)?;
        let qu = ring.from_bipoly(&self.q.derivative_u(f));
        let inv = series_unit_inverse(&ring, &qu)?;
        Ok(self
            .numerators
            .iter()
            .map(|n| ring.to_bipoly(&ring.mul(&ring.from_bipoly(n), &inv)))
            .collect())
    }
}

/// Inverse of a unit of `k[U, T] / <Q, T^m>`: invert at `T = 0` then Newton.
fn series_unit_inverse<F: Field>(
    ring: &BiSeriesRing<F>,
    a: &BiSeries<F::Elem>,
) -> Result<BiSeries<F::Elem>> {
    let m = RingMatrix::from_rows(vec![vec![a.clone()]]);
    Ok(matrix_invert(ring, &m)?.get(0, 0).clone())
}

/// `g_i(X) - v_i(S + s0)`, inputs `(X_1, ..., X_n, S)`.
fn shifted_system<F: Field>(g: &Slp<F::Elem>, v: &[UPoly<F::Elem>], s0: &F::Elem, f: &F) -> Slp<F::Elem> {
    let n = g.n_inputs();
    let mut b = SlpBuilder::new(n + 1);
    let xs: Vec<usize> = (0..n).map(|i| b.input(i)).collect();
    let s = b.input(n);
    let gs = b.import(g, &xs);
    let mut outs = Vec::with_capacity(n);
    for (gi, vi) in gs.into_iter().zip(v) {
        let shifted = vi.shift(s0, f);
        let mut acc = b.constant(shifted.leading().cloned().unwrap_or_else(|| f.zero()));
        for c in shifted.coeffs().iter().rev().skip(1) {
            let m = b.mul(acc, s);
            let k = b.constant(c.clone());
            acc = b.add(m, k);
        }
        outs.push(b.sub(gi, acc));
    }
    let degrees = g
        .declared_degrees()
        .iter()
        .zip(v)
        .map(|(&d, vi)| d.max(vi.degree().unwrap_or(0) as u32))
        .collect();
    b.finish(outs, degrees)
}

/// `g_i(X) - c_i`.
fn fiber_system<F: Field>(g: &Slp<F::Elem>, c: &[F::Elem], f: &F) -> Slp<F::Elem> {
    let n = g.n_inputs();
    let mut b = SlpBuilder::new(n);
    let xs: Vec<usize> = (0..n).map(|i| b.input(i)).collect();
    let gs = b.import(g, &xs);
    let outs = gs
        .into_iter()
        .zip(c)
        .map(|(gi, ci)| {
            let k = b.constant(f.neg(ci));
            b.add(gi, k)
        })
        .collect();
    b.finish(outs, g.declared_degrees().to_vec())
}

/// True when every `T`-coefficient of `p` has degree below `bound`.
fn t_degree_below<E: Clone>(p: &BiPoly<E>, bound: usize) -> bool {
    p.deg_t().is_none_or(|d| d < bound)
}

/// `X(U, t) = N(U, t) / Q_U(U, t)` solves `g(X) = v(t)` with `lambda . X = U`
/// modulo `Q(U, t)`, at a few random `t` where `Q(U, t)` is squarefree.
fn check_at_random_fibers<F: Field, R: Rng + ?Sized>(
    g: &Slp<F::Elem>,
    v: &[UPoly<F::Elem>],
    q: &BiPoly<F::Elem>,
    nums: &[BiPoly<F::Elem>],
    lambda: &[F::Elem],
    rng: &mut R,
    f: &F,
) -> bool {
    let qu = q.derivative_u(f);
    let mut checked = 0;
    for _ in 0..12 {
        if checked == 3 {
            break;
        }
        let t = f.random(rng);
        let qt = q.eval_t(&t, f);
        if !is_squarefree(&qt, f) {
            continue;
        }
        let Ok(ring) = QuotRing::new(f.clone(), qt) else {
            return false;
        };
        let Ok(inv) = ring.invert_mod(&qu.eval_t(&t, f)) else {
            continue;
        };
        let x: Vec<_> = nums.iter().map(|n| ring.mul(&ring.reduce(&n.eval_t(&t, f)), &inv)).collect();
        let res = g.eval(&ring, &x);
        let ok = res
            .iter()
            .zip(v)
            .all(|(r, vi)| ring.sub(r, &ring.embed(&vi.eval(&t, f))).is_zero());
        if !ok || lambda_form(&ring, lambda, &x) != ring.var() {
            return false;
        }
        checked += 1;
    }
    checked > 0
}

/// Curve of solutions of `g(X) = v(T)` for a square `g`, from the fiber at a
/// random (or injected) base point `s0`.
pub fn parametric_attempt<F: Field, R: Rng + ?Sized>(
    g: &Slp<F::Elem>,
    v: &[UPoly<F::Elem>],
    c: usize,
    cfg: &HomotopyConfig<F::Elem>,
    rng: &mut R,
    f: &F,
) -> Result<CurveParametrization<F::Elem>> {
    let n = g.n_inputs();
    if g.n_outputs() != n || v.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: v.len(),
        });
    }
    let mut warnings = Vec::new();
    let s0 = cfg.injected.s0.clone().unwrap_or_else(|| f.random(rng));
    let lambda = match &cfg.injected.lambda_g {
        Some(l) => l.clone(),
        None => (0..n).map(|_| f.random(rng)).collect(),
    };
    let values: Vec<_> = v.iter().map(|vi| vi.eval(&s0, f)).collect();
    let mut fiber_cfg = cfg.clone();
    fiber_cfg.injected.lambda_h = Some(lambda.clone());
    fiber_cfg.reject_collisions = cfg.reject_collisions && cfg.injected.lambda_g.is_none();
    let clock = std::time::Instant::now();
    let fiber = homotopy_attempt(&fiber_system(g, &values, f), &fiber_cfg, rng, f)?;
    debug!("parametric: fiber of degree {} in {:?}", fiber.degree(), clock.elapsed());
    let bezout: usize = g.declared_degrees().iter().map(|&d| d.max(1) as usize).product();
    if fiber.degree() < bezout {
        let msg = format!("fiber at s0 has {} points, fewer than the Bezout number {bezout}", fiber.degree());
        debug!("{msg}");
        warnings.push(msg);
    }
    if fiber.is_empty() {
        return Ok(CurveParametrization {
            q: BiPoly::from_rows(vec![UPoly::one(f)]),
            numerators: vec![BiPoly::zero(); n],
            v: Some(vec![BiPoly::zero(); n]),
            lambda,
            s0,
            c,
            fiber,
            warnings,
        });
    }

    let sys = shifted_system(g, v, &s0, f);
    let d = fiber.degree();
    let cap = 4 * (c.max(1) * d + 2);
    let mut state = LiftOutput {
        q: BiPoly::from_u_poly(&fiber.q, f),
        v: fiber.w.iter().map(|w| BiPoly::from_u_poly(w, f)).collect(),
        precision: 1,
    };
    let mut delta = 2 * c.max(1);
    let mut jinv = None;
    let (q_s, n_s, v_exact) = loop {
        let clock = std::time::Instant::now();
        state = lift_resuming(&sys, state, &mut jinv, &lambda, delta, f, None)?;
        debug!("parametric: lifted to {delta} in {:?}", clock.elapsed());
        let ring = BiSeriesRing::new(f.clone(), &state.q, delta)?;
        let qu = ring.from_bipoly(&state.q.derivative_u(f));
        let nums: Vec<_> = state
            .v
            .iter()
            .map(|x| ring.to_bipoly(&ring.mul(&qu, &ring.from_bipoly(x))))
            .collect();
        let half = delta / 2;
        let stable = t_degree_below(&state.q, half) && nums.iter().all(|p| t_degree_below(p, half));
        if stable {
            let v_exact = state.v.iter().all(|p| t_degree_below(p, half)).then(|| state.v.clone());
            break (state.q.clone(), nums, v_exact);
        }
        if delta >= cap {
            // not polynomial within the bound: see whether it is rational
            let bound = (delta - 1) / 2;
            let rational = (0..d).all(|k| {
                pade_reconstruct_bounds(&state.q.row(k), delta, bound, bound, f).is_ok()
            });
            debug!("parametric: no polynomial curve up to precision {delta} (rational: {rational})");
            return Err(Error::NonPolynomialBranch);
        }
        delta *= 2;
    };
    debug!("parametric: curve of U-degree {d} stable at precision {delta}");

    // back from S = T - s0 to T
    let minus_s0 = f.neg(&s0);
    let q = q_s.shift_t(&minus_s0, f);
    let numerators: Vec<_> = n_s.iter().map(|p| p.shift_t(&minus_s0, f)).collect();
    let v_exact = v_exact.map(|vs| vs.iter().map(|p| p.shift_t(&minus_s0, f)).collect());
    if !check_at_random_fibers(g, v, &q, &numerators, &lambda, rng, f) {
        warn!("parametric: curve failed the random fiber check");
        return Err(Error::NonPolynomialBranch);
    }
    Ok(CurveParametrization {
        q,
        numerators,
        v: v_exact,
        lambda,
        s0,
        c,
        fiber,
        warnings,
    })
}

/// [`parametric_attempt`] with the retry policy of `cfg`.
pub fn parametric<F: Field>(
    g: &Slp<F::Elem>,
    v: &[UPoly<F::Elem>],
    c: usize,
    cfg: &HomotopyConfig<F::Elem>,
    f: &F,
) -> Result<CurveParametrization<F::Elem>> {
    let mut rng = cfg.rng();
    let mut last = None;
    let retries = cfg.max_retries.max(1);
    for attempt in 0..retries {
        let mut cfg = cfg.clone();
        cfg.reject_collisions = attempt == 0 && retries > 1;
        match parametric_attempt(g, v, c, &cfg, &mut rng, f) {
            Ok(cp) => return Ok(cp),
            Err(e) if e.is_monte_carlo() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(Error::RandomnessExhausted {
        attempts: cfg.max_retries.max(1),
        last: last.map(|e| e.to_string()).unwrap_or_default(),
    })
}

/// `g(V) - v(T) = 0` and `lambda . V = U` modulo `<T^prec, Q>`, with `V` the
/// series expansion at `T = 0`.
pub fn curve_invariants_hold<F: Field>(
    g: &Slp<F::Elem>,
    v: &[UPoly<F::Elem>],
    cp: &CurveParametrization<F::Elem>,
    prec: usize,
    f: &F,
) -> bool {
    let Ok(vs) = cp.v_series(prec, f) else {
        return false;
    };
    let Ok(ring) = BiSeriesRing::new(f.clone(), &cp.q, prec) else {
        return false;
    };
    let x: Vec<_> = vs.iter().map(|p| ring.from_bipoly(p)).collect();
    let res = g.eval(&ring, &x);
    let ok = res.iter().zip(v).all(|(r, vi)| {
        let vt = ring.from_bipoly(&BiPoly::from_t_poly(vi.clone()));
        ring.is_zero(&ring.sub(r, &vt))
    });
    let lv = x
        .iter()
        .zip(&cp.lambda)
        .fold(ring.zero(), |acc, (xi, l)| ring.add(&acc, &ring.scale(l, xi)));
    ok && ring.is_zero(&ring.sub(&lv, &ring.u_var()))
}
