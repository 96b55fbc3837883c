//! Square matrices over a ring, and inversion over the residue rings.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::Field;
use crate::algebra::ring::Algebra;
use crate::error::{Error, Result};
use crate::quotring::quot::QuotRing;
use crate::quotring::series::BiSeriesRing;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E: Clone> RingMatrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RingMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(n: usize, mut g: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(g(i, j));
            }
        }
        RingMatrix { n, entries }
    }

    pub fn identity<R: Algebra<Elem = E>>(ring: &R, n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.entries[i * self.n + j] = v;
    }

    pub fn map<G>(&self, g: impl FnMut(&E) -> G) -> RingMatrix<G> {
        RingMatrix {
            n: self.n,
            entries: self.entries.iter().map(g).collect(),
        }
    }

    pub fn mul<R: Algebra<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        let n = self.n;
        Self::from_fn(n, |i, j| {
            let row: Vec<&E> = (0..n).map(|k| self.get(i, k)).collect();
            let col: Vec<&E> = (0..n).map(|k| other.get(k, j)).collect();
            ring.dot(&row, &col)
        })
    }

    pub fn mul_vec<R: Algebra<Elem = E>>(&self, v: &[E], ring: &R) -> Vec<E> {
        let v: Vec<&E> = v.iter().collect();
        (0..self.n)
            .map(|i| {
                let row: Vec<&E> = (0..self.n).map(|k| self.get(i, k)).collect();
                ring.dot(&row, &v)
            })
            .collect()
    }
}

/// Rings in which square matrices can be inverted.
pub trait MatrixInvert: Algebra {
    fn invert_matrix(&self, m: &RingMatrix<Self::Elem>) -> Result<RingMatrix<Self::Elem>>;
}

pub fn matrix_invert<R: MatrixInvert>(ring: &R, m: &RingMatrix<R::Elem>) -> Result<RingMatrix<R::Elem>> {
    ring.invert_matrix(m)
}

const COMBINATION_ATTEMPTS: usize = 6;

impl<F: Field> MatrixInvert for QuotRing<F> {
    /// Gauss-Jordan elimination. A column whose entries are all zero divisors
    /// can still span the unit ideal, so before giving up random combinations
    /// of the remaining rows are tried as pivot.
    fn invert_matrix(&self, m: &RingMatrix<Self::Elem>) -> Result<RingMatrix<Self::Elem>> {
        let n = m.size();
        let mut a: Vec<Vec<_>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
        let mut inv: Vec<Vec<_>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { self.one() } else { self.zero() }).collect())
            .collect();
        let f = self.field();
        let mut rng = ChaCha8Rng::seed_from_u64(0x0005_eed0_f1a7);
        for c in 0..n {
            let mut pivot = (c..n).find_map(|r| self.invert_mod(&a[r][c]).ok().map(|i| (r, i)));
            let mut attempt = 0;
            while pivot.is_none() && attempt < COMBINATION_ATTEMPTS && c + 1 < n {
                attempt += 1;
                for r in c + 1..n {
                    let w = f.random(&mut rng);
                    for j in 0..n {
                        let ta = self.scale(&w, &a[r][j]);
                        a[c][j] = self.add(&a[c][j], &ta);
                        let ti = self.scale(&w, &inv[r][j]);
                        inv[c][j] = self.add(&inv[c][j], &ti);
                    }
                }
                pivot = self.invert_mod(&a[c][c]).ok().map(|i| (c, i));
            }
            let Some((r, pinv)) = pivot else {
                return Err(Error::SingularJacobian);
            };
            a.swap(c, r);
            inv.swap(c, r);
            for j in 0..n {
                a[c][j] = self.mul(&a[c][j], &pinv);
                inv[c][j] = self.mul(&inv[c][j], &pinv);
            }
            for r in 0..n {
                if r == c || self.is_zero(&a[r][c]) {
                    continue;
                }
                let factor = a[r][c].clone();
                for j in 0..n {
                    let ta = self.mul(&factor, &a[c][j]);
                    a[r][j] = self.sub(&a[r][j], &ta);
                    let ti = self.mul(&factor, &inv[c][j]);
                    inv[r][j] = self.sub(&inv[r][j], &ti);
                }
            }
        }
        Ok(RingMatrix::from_rows(inv))
    }
}

impl<F: Field> MatrixInvert for BiSeriesRing<F> {
    /// Inversion at `T = 0`, then Newton iteration `X <- X (2I - M X)`
    /// doubling the `T`-adic precision.
    fn invert_matrix(&self, m: &RingMatrix<Self::Elem>) -> Result<RingMatrix<Self::Elem>> {
        let n = m.size();
        let base = self.at_zero();
        let m0 = m.map(|e| self.constant_term(e));
        let x0 = base.invert_matrix(&m0)?;
        let full_q = self.modulus().clone();
        let mut k = 1;
        let mut ring_k = self.with_precision(1, &full_q)?;
        let mut x = x0.map(|e| ring_k.from_upoly(e));
        while k < self.precision() {
            k = (2 * k).min(self.precision());
            let next = self.with_precision(k, &full_q)?;
            x = x.map(|e| ring_k.convert(e, &next));
            ring_k = next;
            let mk = m.map(|e| self.convert(e, &ring_k));
            let mx = mk.mul(&x, &ring_k);
            let two = ring_k.embed(&self.field().from_i64(2));
            let corr = RingMatrix::from_fn(n, |i, j| {
                let e = ring_k.neg(mx.get(i, j));
                if i == j {
                    ring_k.add(&e, &two)
                } else {
                    e
                }
            });
            x = x.mul(&corr, &ring_k);
        }
        Ok(x.map(|e| ring_k.convert(e, self)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bipoly::BiPoly;
    use crate::algebra::field::{PrimeField, RationalField};
    use crate::algebra::upoly::UPoly;
    use proptest::prelude::*;

    #[test]
    fn pivot_from_combination_of_zero_divisors() {
        let f = RationalField;
        // modulo (U-1)(U-3), the column (U-1, U-3) has no unit entry
        let ring = QuotRing::new(f.clone(), UPoly::from_i64s(&f, &[3, -4, 1])).unwrap();
        let p = |cs: &[i64]| UPoly::from_i64s(&f, cs);
        let m = RingMatrix::from_rows(vec![vec![p(&[-1, 1]), p(&[1])], vec![p(&[-3, 1]), p(&[1])]]);
        let inv = matrix_invert(&ring, &m).unwrap();
        assert_eq!(m.mul(&inv, &ring), RingMatrix::identity(&ring, 2));
    }

    #[test]
    fn singular_everywhere_is_reported() {
        let f = RationalField;
        let ring = QuotRing::new(f.clone(), UPoly::from_i64s(&f, &[3, -4, 1])).unwrap();
        let p = |cs: &[i64]| UPoly::from_i64s(&f, cs);
        let m = RingMatrix::from_rows(vec![vec![p(&[-1, 1]), p(&[])], vec![p(&[]), p(&[1])]]);
        assert!(matches!(matrix_invert(&ring, &m), Err(Error::SingularJacobian)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn series_inverse_is_two_sided(seed in any::<u64>(), n in 1usize..4, d in 1usize..4, prec in 1usize..12) {
            let f = PrimeField::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rows: Vec<UPoly<crate::Fp>> = (0..d)
                .map(|_| UPoly::from_coeffs(&f, (0..3).map(|_| f.random(&mut rng)).collect()))
                .collect();
            rows.push(UPoly::one(&f));
            let ring = BiSeriesRing::new(f.clone(), &BiPoly::from_rows(rows), prec).unwrap();
            let m = RingMatrix::from_fn(n, |_, _| {
                let b = BiPoly::from_rows(
                    (0..d)
                        .map(|_| UPoly::from_coeffs(&f, (0..prec).map(|_| f.random(&mut rng)).collect()))
                        .collect(),
                );
                ring.from_bipoly(&b)
            });
            let inv = matrix_invert(&ring, &m).unwrap();
            let id = RingMatrix::identity(&ring, n);
            prop_assert_eq!(m.mul(&inv, &ring), id.clone());
            prop_assert_eq!(inv.mul(&m, &ring), id);
        }
    }
}
