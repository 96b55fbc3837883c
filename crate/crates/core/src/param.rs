//! Zero-dimensional parametrizations: rational univariate representations and
//! geometric resolutions.

use crate::algebra::field::Field;
use crate::algebra::ring::Algebra;
use crate::algebra::upoly::{is_squarefree, UPoly};
use crate::error::{Error, Result};
use crate::quotring::QuotRing;
use crate::slp::Slp;

/// `q` squarefree, `lambda . v = T q' mod q`; the points are `v(t) / q'(t)`
/// over the roots `t` of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rur<E> {
    pub q: UPoly<E>,
    pub v: Vec<UPoly<E>>,
    pub lambda: Vec<E>,
}

/// `q` monic squarefree, `deg w_i < deg q`, `lambda . w = T mod q`; the
/// points are `w(t)` over the roots `t` of `q`. `q = 1` is the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricResolution<E> {
    pub q: UPoly<E>,
    pub w: Vec<UPoly<E>>,
    pub lambda: Vec<E>,
}

impl<E: Clone + PartialEq> GeometricResolution<E> {
    pub fn empty<F: Field<Elem = E>>(lambda: Vec<E>, f: &F) -> Self {
        GeometricResolution {
            q: UPoly::one(f),
            w: vec![UPoly::zero(); lambda.len()],
            lambda,
        }
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.degree().unwrap_or(0) == 0
    }

    pub fn degree(&self) -> usize {
        self.q.degree().unwrap_or(0)
    }

    /// The ring `k[T] / <q>`, `None` for the empty resolution.
    pub fn ring<F: Field<Elem = E>>(&self, f: &F) -> Option<QuotRing<F>> {
        if self.is_empty() {
            None
        } else {
            QuotRing::new(f.clone(), self.q.clone()).ok()
        }
    }

    /// `q` monic squarefree, degree bounds and `lambda . w = T mod q`.
    pub fn invariants_hold<F: Field<Elem = E>>(&self, f: &F) -> bool {
        if self.lambda.len() != self.w.len() {
            return false;
        }
        let Some(ring) = self.ring(f) else {
            return self.q.is_monic(f) && self.w.iter().all(UPoly::is_zero);
        };
        if !is_squarefree(&self.q, f) || self.w.iter().any(|w| w.len() > self.degree()) {
            return false;
        }
        lambda_form(&ring, &self.lambda, &self.w) == ring.var()
    }

    /// Keeps the points where `d` does not vanish: `q / gcd(q, d)`.
    pub fn discard_vanishing<F: Field<Elem = E>>(&self, d: &UPoly<E>, f: &F) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let g = self.q.gcd(d, f);
        if g.is_constant() {
            return self.clone();
        }
        self.restrict(&self.q.div_exact(&g, f).expect("gcd divides q"), f)
    }

    /// Restriction to the points on a monic factor `q2` of `q`.
    pub fn restrict<F: Field<Elem = E>>(&self, q2: &UPoly<E>, f: &F) -> Self {
        if q2.degree().unwrap_or(0) == 0 {
            return Self::empty(self.lambda.clone(), f);
        }
        let r = GeometricResolution {
            q: q2.clone(),
            w: self.w.iter().map(|w| w.rem(q2, f).expect("nonzero")).collect(),
            lambda: self.lambda.clone(),
        };
        debug_assert!(r.invariants_hold(f), "a factor of a separated set stays separated");
        r
    }

    /// Lifts to the rational univariate form `v_i = q' w_i mod q`.
    pub fn to_rur<F: Field<Elem = E>>(&self, f: &F) -> Rur<E> {
        let qd = self.q.derivative(f);
        let v = match self.ring(f) {
            Some(ring) => self.w.iter().map(|w| ring.mul(&qd, w)).collect(),
            None => self.w.clone(),
        };
        Rur {
            q: self.q.clone(),
            v,
            lambda: self.lambda.clone(),
        }
    }
}

pub(crate) fn lambda_form<F: Field>(ring: &QuotRing<F>, lambda: &[F::Elem], w: &[UPoly<F::Elem>]) -> UPoly<F::Elem> {
    w.iter()
        .zip(lambda)
        .fold(ring.zero(), |acc, (wi, l)| ring.add(&acc, &ring.scale(l, wi)))
}

/// `w_i = v_i / q' mod q`, with `q` made monic.
pub fn rur_to_gr<F: Field>(r: &Rur<F::Elem>, f: &F) -> Result<GeometricResolution<F::Elem>> {
    if r.q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if r.q.is_constant() {
        return Ok(GeometricResolution::empty(r.lambda.clone(), f));
    }
    let q = r.q.monic(f);
    let ring = QuotRing::new(f.clone(), q.clone())?;
    let qd_inv = ring
        .invert_mod(&r.q.derivative(f))
        .map_err(|_| Error::NotSquarefree)?;
    Ok(GeometricResolution {
        q,
        w: r.v.iter().map(|v| ring.mul(v, &qd_inv)).collect(),
        lambda: r.lambda.clone(),
    })
}

/// `sys(w) = 0 mod q` and the resolution invariants.
pub fn gr_verify<F: Field>(sys: &Slp<F::Elem>, gr: &GeometricResolution<F::Elem>, f: &F) -> bool {
    if sys.n_inputs() != gr.n() || !gr.invariants_hold(f) {
        return false;
    }
    match gr.ring(f) {
        None => true,
        Some(ring) => sys.eval(&ring, &gr.w).iter().all(|r| r.is_zero()),
    }
}

/// Drops the points of `gr` where the Jacobian of the square system `sys` is
/// singular.
pub fn remove_singular<F: Field>(
    sys: &Slp<F::Elem>,
    gr: &GeometricResolution<F::Elem>,
    f: &F,
) -> GeometricResolution<F::Elem> {
    let Some(ring) = gr.ring(f) else {
        return gr.clone();
    };
    let n = gr.n();
    let jac = sys.jacobian(f).eval(&ring, &gr.w);
    let rows: Vec<Vec<_>> = (0..sys.n_outputs()).map(|j| jac[j * n..(j + 1) * n].to_vec()).collect();
    let good = nonsingular_part(&gr.q, rows, f);
    if good == gr.q {
        gr.clone()
    } else {
        gr.restrict(&good, f)
    }
}

/// The factor of the squarefree `q` over whose roots the square matrix `rows`
/// has nonzero determinant. Elimination modulo `q`; a pivot that is a zero
/// divisor splits `q` into coprime factors handled separately.
fn nonsingular_part<F: Field>(q: &UPoly<F::Elem>, mut rows: Vec<Vec<UPoly<F::Elem>>>, f: &F) -> UPoly<F::Elem> {
    if q.degree().unwrap_or(0) == 0 {
        return UPoly::one(f);
    }
    let ring = QuotRing::new(f.clone(), q.clone()).expect("monic");
    for r in rows.iter_mut() {
        for e in r.iter_mut() {
            *e = ring.reduce(e);
        }
    }
    let n = rows.len();
    for c in 0..n {
        let mut split = None;
        let mut pivot = None;
        for (r, row) in rows.iter().enumerate().skip(c) {
            if row[c].is_zero() {
                continue;
            }
            match ring.invert_mod(&row[c]) {
                Ok(inv) => {
                    pivot = Some((r, inv));
                    break;
                }
                Err(z) => split = split.or(Some(z.witness)),
            }
        }
        let (r, inv) = match (pivot, split) {
            (Some(p), _) => p,
            (None, Some(g)) => {
                let co = q.div_exact(&g, f).expect("witness divides q");
                let a = nonsingular_part(&g, rows.clone(), f);
                let b = nonsingular_part(&co, rows, f);
                return a.mul(&b, f);
            }
            (None, None) => return UPoly::one(f),
        };
        rows.swap(c, r);
        for j in c..n {
            rows[c][j] = ring.mul(&rows[c][j], &inv);
        }
        for r in c + 1..n {
            if rows[r][c].is_zero() {
                continue;
            }
            let factor = rows[r][c].clone();
            for j in c..n {
                let t = ring.mul(&factor, &rows[c][j]);
                rows[r][j] = ring.sub(&rows[r][j], &t);
            }
        }
    }
    q.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, RationalField};
    use crate::slp::parse_poly_system;
    use num_rational::BigRational;

    fn p(cs: &[i64]) -> UPoly<BigRational> {
        UPoly::from_i64s(&RationalField, cs)
    }

    fn h() -> Slp<BigRational> {
        parse_poly_system("Y1 - Y2 - 1\nY2^2 + Y2", &["Y1", "Y2"], &RationalField).unwrap()
    }

    fn h_gr() -> GeometricResolution<BigRational> {
        let f = RationalField;
        GeometricResolution {
            q: p(&[0, 1, 1]),
            w: vec![p(&[1, 1]), p(&[0, 1])],
            lambda: vec![f.zero(), f.one()],
        }
    }

    #[test]
    fn rur_to_gr_start_resolution() {
        let f = RationalField;
        let r = Rur {
            q: p(&[3, -4, 1]),
            v: vec![p(&[-3, 1]), p(&[-1, 1])],
            lambda: vec![f.one(), f.from_i64(3)],
        };
        let gr = rur_to_gr(&r, &f).unwrap();
        assert_eq!(gr.w[0], UPoly::from_coeffs(&f, vec![f.frac(3, 2), f.frac(-1, 2)]));
        assert_eq!(gr.w[1], UPoly::from_coeffs(&f, vec![f.frac(-1, 2), f.frac(1, 2)]));
        assert!(gr.invariants_hold(&f));
        assert_eq!(rur_to_gr(&gr.to_rur(&f), &f).unwrap(), gr);

        let origin = Rur { q: p(&[0, 1]), v: vec![p(&[]), p(&[])], lambda: vec![f.one(), f.one()] };
        assert_eq!(rur_to_gr(&origin, &f).unwrap().w, vec![p(&[]), p(&[])]);

        let double = Rur { q: p(&[1, -2, 1]), v: vec![p(&[])], lambda: vec![f.one()] };
        assert_eq!(rur_to_gr(&double, &f), Err(Error::NotSquarefree));
    }

    #[test]
    fn verify_examples() {
        let f = RationalField;
        assert!(gr_verify(&h(), &h_gr(), &f));
        let mut bad = h_gr();
        bad.w[1] = p(&[1, 1]);
        assert!(!gr_verify(&h(), &bad, &f));
        let empty = GeometricResolution::empty(vec![f.zero(), f.one()], &f);
        assert!(gr_verify(&h(), &empty, &f));
    }

    #[test]
    fn remove_examples() {
        let f = RationalField;
        assert_eq!(remove_singular(&h(), &h_gr(), &f), h_gr());

        let sq = parse_poly_system("Y1^2\nY2", &["Y1", "Y2"], &f).unwrap();
        let origin = GeometricResolution { q: p(&[0, 1]), w: vec![p(&[]), p(&[])], lambda: vec![f.one(), f.one()] };
        assert!(gr_verify(&sq, &origin, &f));
        assert!(remove_singular(&sq, &origin, &f).is_empty());

        let two = GeometricResolution { q: p(&[0, -1, 1]), w: vec![p(&[0, 1])], lambda: vec![f.one()] };
        assert_eq!(two.discard_vanishing(&p(&[0, 1]), &f).q, p(&[-1, 1]));
    }

    #[test]
    fn remove_splits_on_zero_divisor_pivot() {
        // Y1 (Y1 - 1) = 0, Y2 - Y1^2 = 0 has regular points (0,0), (1,1);
        // Y1^2 (Y1 - 2) = 0 adds a singular one at Y1 = 0
        let f = PrimeField::default();
        let sys = parse_poly_system("Y1^2*(Y1 - 2)\nY2 - Y1", &["Y1", "Y2"], &f).unwrap();
        let q = UPoly::from_i64s(&f, &[0, -2, 1]);
        let x = UPoly::from_i64s(&f, &[0, 1]);
        let gr = GeometricResolution { q, w: vec![x.clone(), x], lambda: vec![f.one(), f.zero()] };
        assert!(gr_verify(&sys, &gr, &f));
        let good = remove_singular(&sys, &gr, &f);
        assert_eq!(good.q, UPoly::from_i64s(&f, &[-2, 1]));
        assert_eq!(remove_singular(&sys, &good, &f), good);
    }
}
