//! Global Newton-Hensel lifting of a parametrization along the parameter `T`.

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::Field;
use crate::algebra::ring::Algebra;
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};
use crate::quotring::{matrix_invert, BiSeries, BiSeriesRing, RingMatrix};
use crate::slp::Slp;

/// `Q(U, T)` monic in `U` and `V_i(U, T)` with `sys(V, T) = 0` and
/// `lambda . V = U` modulo `<T^precision, Q>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftOutput<E> {
    pub q: BiPoly<E>,
    pub v: Vec<BiPoly<E>>,
    pub precision: usize,
}

/// Called after every precision doubling with the new state.
pub type LiftObserver<'a, E> = dyn FnMut(&LiftOutput<E>) + 'a;

/// Lifts `(q, v)`, a solution of `sys(X, 0)` with `lambda . v = U mod q`, to
/// precision `delta` in `T`. `sys` has inputs `(X_1, ..., X_n, T)`.
pub fn gls_lifting<F: Field>(
    sys: &Slp<F::Elem>,
    q: &UPoly<F::Elem>,
    v: &[UPoly<F::Elem>],
    lambda: &[F::Elem],
    delta: usize,
    f: &F,
) -> Result<LiftOutput<F::Elem>> {
    let start = LiftOutput {
        q: BiPoly::from_u_poly(q, f),
        v: v.iter().map(|p| BiPoly::from_u_poly(p, f)).collect(),
        precision: 1,
    };
    gls_lifting_from(sys, start, lambda, delta, f, None)
}

/// Lifting from an arbitrary starting precision, reporting each iteration
/// to `observer`.
pub fn gls_lifting_from<F: Field>(
    sys: &Slp<F::Elem>,
    start: LiftOutput<F::Elem>,
    lambda: &[F::Elem],
    delta: usize,
    f: &F,
    observer: Option<&mut LiftObserver<'_, F::Elem>>,
) -> Result<LiftOutput<F::Elem>> {
    lift_resuming(sys, start, &mut None, lambda, delta, f, observer)
}

/// Inverse Jacobian carried between lifting calls on the same system.
pub(crate) type JacobianInverse<E> = Option<RingMatrix<BiPoly<E>>>;

/// As [`gls_lifting_from`], reusing and updating `jinv`, the inverse Jacobian
/// left by an earlier call that ended at `start`.
pub(crate) fn lift_resuming<F: Field>(
    sys: &Slp<F::Elem>,
    start: LiftOutput<F::Elem>,
    jinv: &mut JacobianInverse<F::Elem>,
    lambda: &[F::Elem],
    delta: usize,
    f: &F,
    mut observer: Option<&mut LiftObserver<'_, F::Elem>>,
) -> Result<LiftOutput<F::Elem>> {
    let n = start.v.len();
    if sys.n_inputs() != n + 1 || sys.n_outputs() != n || lambda.len() != n {
        return Err(Error::ArityMismatch {
            expected: n + 1,
            found: sys.n_inputs(),
        });
    }
    if !start.q.is_monic_in_u(f) || start.q.deg_u().unwrap_or(0) == 0 {
        return Err(Error::DegenerateInput("lifting needs a monic modulus of positive degree".into()));
    }
    let vars: Vec<usize> = (0..n).collect();
    let jac_prog = sys.jacobian_wrt(&vars, f);
    let LiftOutput { mut q, mut v, precision: mut k } = start;
    // halving down from delta so that the last step ends exactly there
    let mut schedule = vec![delta];
    while let Some(&last) = schedule.last() {
        let prev = last.div_ceil(2);
        if prev <= k {
            break;
        }
        schedule.push(prev);
    }
    for k2 in schedule.into_iter().rev() {
        if k2 <= k {
            break;
        }
        let ring = BiSeriesRing::new(f.clone(), &q, k2)?;
        let half = BiSeriesRing::new(f.clone(), &q, k)?;
        let mut point: Vec<BiSeries<F::Elem>> = v.iter().map(|p| ring.from_bipoly(p)).collect();
        point.push(ring.t_var());
        let values = sys.eval(&ring, &point);

        // the correction is O(T^k), so the Jacobian is only needed mod T^k
        let mut hpoint: Vec<BiSeries<F::Elem>> = v.iter().map(|p| half.from_bipoly(p)).collect();
        hpoint.push(half.t_var());
        let jac = jac_prog.eval(&half, &hpoint);
        let jm = RingMatrix::from_fn(n, |i, j| jac[i * n + j].clone());
        let inv = match jinv.take() {
            // one Newton step X <- X + X (I - J X) doubles its precision
            Some(prev) => {
                let x = prev.map(|p| half.from_bipoly(p));
                let jx = jm.mul(&x, &half);
                let r = RingMatrix::from_fn(n, |i, j| {
                    let id = if i == j { half.one() } else { half.zero() };
                    half.sub(&id, jx.get(i, j))
                });
                let xr = x.mul(&r, &half);
                RingMatrix::from_fn(n, |i, j| half.add(x.get(i, j), xr.get(i, j)))
            }
            None => matrix_invert(&half, &jm)?,
        };
        let inv_poly = inv.map(|e| half.to_bipoly(e));
        let step = inv_poly.map(|p| ring.from_bipoly(p)).mul_vec(&values, &ring);
        *jinv = Some(inv_poly);
        point.pop();
        let mut vs: Vec<_> = point.iter().zip(&step).map(|(a, s)| ring.sub(a, s)).collect();

        // restore lambda . V = U by moving both V and Q along Delta
        let lv = vs
            .iter()
            .zip(lambda)
            .fold(ring.zero(), |acc, (x, l)| ring.add(&acc, &ring.scale(l, x)));
        let delta_e = ring.sub(&lv, &ring.u_var());
        for x in vs.iter_mut() {
            let corr = ring.mul(&ring.derivative_u(x), &delta_e);
            *x = ring.sub(x, &corr);
        }
        let qu = ring.from_bipoly(&q.derivative_u(f));
        let q_corr = ring.to_bipoly(&ring.mul(&qu, &delta_e));
        q = q.truncate_t(k2, f).sub(&q_corr, f);
        v = vs.iter().map(|x| ring.to_bipoly(x)).collect();
        k = k2;
        if let Some(obs) = observer.as_deref_mut() {
            obs(&LiftOutput {
                q: q.clone(),
                v: v.clone(),
                precision: k,
            });
        }
    }
    Ok(LiftOutput { q, v, precision: k })
}

/// Checks `sys(V, T) = 0` and `lambda . V = U` modulo `<T^k, Q>`.
pub fn lift_invariants_hold<F: Field>(
    sys: &Slp<F::Elem>,
    out: &LiftOutput<F::Elem>,
    lambda: &[F::Elem],
    f: &F,
) -> bool {
    let Ok(ring) = BiSeriesRing::new(f.clone(), &out.q, out.precision) else {
        return false;
    };
    let mut point: Vec<_> = out.v.iter().map(|p| ring.from_bipoly(p)).collect();
    point.push(ring.t_var());
    if !sys.eval(&ring, &point).iter().all(|r| ring.is_zero(r)) {
        return false;
    }
    point.pop();
    let lv = point
        .iter()
        .zip(lambda)
        .fold(ring.zero(), |acc, (x, l)| ring.add(&acc, &ring.scale(l, x)));
    ring.is_zero(&ring.sub(&lv, &ring.u_var()))
}
