//! The ring `k[U, T] / <Q(U, T), T^m>` for `Q` monic in `U`.

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::Field;
use crate::algebra::ring::Algebra;
use crate::algebra::upoly::{mul_slices, UPoly};
use crate::error::{Error, Result};
use crate::quotring::quot::QuotRing;

/// Dense `d x m` coefficient grid; entry `i * m + j` is the coefficient of
/// `U^i T^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries<E> {
    data: Vec<E>,
}

impl<E> BiSeries<E> {
    pub fn data(&self) -> &[E] {
        &self.data
    }
}

#[derive(Clone, Debug)]
pub struct BiSeriesRing<F: Field> {
    field: F,
    modulus: BiPoly<F::Elem>,
    /// `q[k][j]`: coefficient of `U^k T^j` in `Q`, for `k < d`, `j < m`.
    q: Vec<Vec<F::Elem>>,
    d: usize,
    m: usize,
    /// Rows of `1 / rev(Q)` modulo `U^(d-1)`, present when reduction goes
    /// through fast division.
    rev_inv: Option<Vec<Vec<F::Elem>>>,
}

/// `U`-degree from which reduction uses fast division.
const FAST_REDUCE_DEGREE: usize = 16;

/// Product of two row-major bivariate grids (rows in `U`, entries in `T`),
/// keeping `rows` rows and `T`-precision `m`.
fn bi_mul<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>], rows: usize, m: usize) -> Vec<Vec<F::Elem>> {
    let s = 2 * m - 1;
    let pack = |x: &[Vec<F::Elem>]| {
        let r = x.len().min(rows);
        if r == 0 {
            return Vec::new();
        }
        let mut v = vec![f.zero(); (r - 1) * s + m];
        for (i, row) in x.iter().take(r).enumerate() {
            for (j, c) in row.iter().take(m).enumerate() {
                v[i * s + j] = c.clone();
            }
        }
        v
    };
    let prod = mul_slices(f, &pack(a), &pack(b));
    (0..rows)
        .map(|i| {
            (0..m)
                .map(|j| prod.get(i * s + j).cloned().unwrap_or_else(|| f.zero()))
                .collect()
        })
        .collect()
}

/// `1 / h mod <U^n, T^m>` for `h` with constant term 1, by Newton iteration.
fn bi_series_inverse<F: Field>(f: &F, h: &[Vec<F::Elem>], n: usize, m: usize) -> Vec<Vec<F::Elem>> {
    let mut one = vec![f.zero(); m];
    one[0] = f.one();
    let mut g = vec![one];
    let mut k = 1;
    while k < n {
        k = (2 * k).min(n);
        // g <- g + g (1 - h g)
        let hg = bi_mul(f, h, &g, k, m);
        let mut e: Vec<Vec<F::Elem>> = hg.into_iter().map(|r| r.iter().map(|x| f.neg(x)).collect()).collect();
        e[0][0] = f.add(&e[0][0], &f.one());
        let corr = bi_mul(f, &g, &e, k, m);
        g.resize(k, vec![f.zero(); m]);
        for (gr, cr) in g.iter_mut().zip(corr) {
            for (x, y) in gr.iter_mut().zip(cr) {
                *x = f.add(x, &y);
            }
        }
    }
    g.truncate(n);
    g
}

impl<F: Field> BiSeriesRing<F> {
    pub fn new(field: F, modulus: &BiPoly<F::Elem>, m: usize) -> Result<Self> {
        let d = match modulus.deg_u() {
            Some(d) if d >= 1 && modulus.is_monic_in_u(&field) => d,
            _ => {
                return Err(Error::DegenerateInput(
                    "series modulus must be monic in U of positive degree".into(),
                ))
            }
        };
        if m == 0 {
            return Err(Error::DegenerateInput("series precision must be positive".into()));
        }
        let q: Vec<Vec<F::Elem>> = (0..d)
            .map(|k| (0..m).map(|j| modulus.coeff(&field, k, j)).collect())
            .collect();
        let rev_inv = (d >= FAST_REDUCE_DEGREE).then(|| {
            let mut lead = vec![field.zero(); m];
            lead[0] = field.one();
            let rev: Vec<Vec<F::Elem>> = std::iter::once(lead).chain(q.iter().rev().cloned()).collect();
            bi_series_inverse(&field, &rev, d - 1, m)
        });
        Ok(BiSeriesRing {
            modulus: modulus.truncate_t(m, &field),
            field,
            q,
            d,
            m,
            rev_inv,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// `Q mod T^m`.
    pub fn modulus(&self) -> &BiPoly<F::Elem> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn precision(&self) -> usize {
        self.m
    }

    pub fn with_precision(&self, m: usize, full_modulus: &BiPoly<F::Elem>) -> Result<Self> {
        Self::new(self.field.clone(), full_modulus, m)
    }

    /// The residue ring `k[U] / <Q(U, 0)>`.
    pub fn at_zero(&self) -> QuotRing<F> {
        let mut q0: Vec<_> = self.q.iter().map(|r| r[0].clone()).collect();
        q0.push(self.field.one());
        QuotRing::new(self.field.clone(), UPoly::from_coeffs(&self.field, q0))
            .expect("monic modulus")
    }

    pub fn get(&self, a: &BiSeries<F::Elem>, i: usize, j: usize) -> F::Elem {
        a.data[i * self.m + j].clone()
    }

    /// Reduces an arbitrary bivariate polynomial.
    pub fn from_bipoly(&self, p: &BiPoly<F::Elem>) -> BiSeries<F::Elem> {
        let f = &self.field;
        let rows: Vec<Vec<F::Elem>> = p
            .rows()
            .iter()
            .map(|r| (0..self.m).map(|j| r.coeff(f, j)).collect())
            .collect();
        self.reduce_rows(rows)
    }

    pub fn to_bipoly(&self, a: &BiSeries<F::Elem>) -> BiPoly<F::Elem> {
        BiPoly::from_rows(
            a.data
                .chunks(self.m)
                .map(|r| UPoly::from_coeffs(&self.field, r.to_vec()))
                .collect(),
        )
    }

    /// A polynomial in `U` only, reduced modulo `Q`.
    pub fn from_upoly(&self, p: &UPoly<F::Elem>) -> BiSeries<F::Elem> {
        self.from_bipoly(&BiPoly::from_u_poly(p, &self.field))
    }

    /// The `T^0` slice, an element of [`Self::at_zero`].
    pub fn constant_term(&self, a: &BiSeries<F::Elem>) -> UPoly<F::Elem> {
        UPoly::from_coeffs(
            &self.field,
            (0..self.d).map(|i| a.data[i * self.m].clone()).collect(),
        )
    }

    pub fn u_var(&self) -> BiSeries<F::Elem> {
        self.from_upoly(&UPoly::x(&self.field))
    }

    pub fn t_var(&self) -> BiSeries<F::Elem> {
        self.from_bipoly(&BiPoly::from_t_poly(UPoly::x(&self.field)))
    }

    /// Formal derivative in `U` of the canonical representative.
    pub fn derivative_u(&self, a: &BiSeries<F::Elem>) -> BiSeries<F::Elem> {
        let f = &self.field;
        let mut data = vec![f.zero(); self.d * self.m];
        for i in 1..self.d {
            let c = f.from_u64(i as u64);
            for j in 0..self.m {
                data[(i - 1) * self.m + j] = f.mul(&c, &a.data[i * self.m + j]);
            }
        }
        BiSeries { data }
    }

    /// Moves an element to another precision over the same `Q`, padding
    /// with zeros or truncating.
    pub fn convert(&self, a: &BiSeries<F::Elem>, target: &BiSeriesRing<F>) -> BiSeries<F::Elem> {
        let f = &self.field;
        let mut data = vec![f.zero(); target.d * target.m];
        for i in 0..self.d.min(target.d) {
            for j in 0..self.m.min(target.m) {
                data[i * target.m + j] = a.data[i * self.m + j].clone();
            }
        }
        BiSeries { data }
    }

    /// Unreduced product: `2d - 1` rows modulo `T^m`.
    fn raw_mul(&self, a: &BiSeries<F::Elem>, b: &BiSeries<F::Elem>) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (d, m) = (self.d, self.m);
        // Kronecker substitution: U -> Z^(2m-1) keeps the T-blocks apart.
        let s = 2 * m - 1;
        let pack = |x: &BiSeries<F::Elem>| {
            let mut v = vec![f.zero(); (d - 1) * s + m];
            for i in 0..d {
                v[i * s..i * s + m].clone_from_slice(&x.data[i * m..(i + 1) * m]);
            }
            v
        };
        let prod = mul_slices(f, &pack(a), &pack(b));
        (0..2 * d - 1)
            .map(|i| {
                (0..m)
                    .map(|j| prod.get(i * s + j).cloned().unwrap_or_else(|| f.zero()))
                    .collect()
            })
            .collect()
    }

    fn reduce_rows(&self, mut rows: Vec<Vec<F::Elem>>) -> BiSeries<F::Elem> {
        let f = &self.field;
        let (d, m) = (self.d, self.m);
        if let Some(rev_inv) = self.rev_inv.as_ref().filter(|_| rows.len() > d && rows.len() < 2 * d) {
            // quotient from the reversed product, remainder from the low rows
            let nq = rows.len() - d;
            let rev_a: Vec<Vec<F::Elem>> = rows.iter().rev().take(nq).cloned().collect();
            let mut quot = bi_mul(f, &rev_a, rev_inv, nq, m);
            quot.reverse();
            let qb = bi_mul(f, &self.q, &quot, d, m);
            let mut data = Vec::with_capacity(d * m);
            for (i, qr) in qb.iter().enumerate() {
                for (j, c) in qr.iter().enumerate() {
                    let a = rows[i].get(j).cloned().unwrap_or_else(|| f.zero());
                    data.push(f.sub(&a, c));
                }
            }
            return BiSeries { data };
        }
        for i in (d..rows.len()).rev() {
            let c = std::mem::take(&mut rows[i]);
            if c.iter().all(|x| f.is_zero(x)) {
                continue;
            }
            for k in 0..d {
                sub_mul_trunc(f, &mut rows[i - d + k], &c, &self.q[k], m);
            }
        }
        rows.truncate(d);
        let mut data = Vec::with_capacity(d * m);
        for i in 0..d {
            match rows.get_mut(i) {
                Some(r) => data.append(r),
                None => data.resize(data.len() + m, f.zero()),
            }
            data.resize((i + 1) * m, f.zero());
        }
        BiSeries { data }
    }
}

/// `dst -= a * b mod T^m`, treating missing entries as zero.
fn sub_mul_trunc<F: Field>(f: &F, dst: &mut Vec<F::Elem>, a: &[F::Elem], b: &[F::Elem], m: usize) {
    if dst.len() < m {
        dst.resize(m, f.zero());
    }
    for (x, ax) in a.iter().enumerate().take(m) {
        if f.is_zero(ax) {
            continue;
        }
        for (y, by) in b.iter().enumerate().take(m - x) {
            if f.is_zero(by) {
                continue;
            }
            dst[x + y] = f.sub(&dst[x + y], &f.mul(ax, by));
        }
    }
}

/// `p mod <Q, T^m>` as a bivariate polynomial.
pub fn bi_reduce<F: Field>(
    p: &BiPoly<F::Elem>,
    q: &BiPoly<F::Elem>,
    m: usize,
    f: &F,
) -> Result<BiPoly<F::Elem>> {
    let ring = BiSeriesRing::new(f.clone(), q, m)?;
    Ok(ring.to_bipoly(&ring.from_bipoly(p)))
}

impl<F: Field> Algebra for BiSeriesRing<F> {
    type Base = F;
    type Elem = BiSeries<F::Elem>;

    fn base(&self) -> &F {
        &self.field
    }

    fn zero(&self) -> Self::Elem {
        BiSeries {
            data: vec![self.field.zero(); self.d * self.m],
        }
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.field.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.field;
        BiSeries {
            data: a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect(),
        }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.field;
        BiSeries {
            data: a.data.iter().zip(&b.data).map(|(x, y)| f.sub(x, y)).collect(),
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        let f = &self.field;
        BiSeries {
            data: a.data.iter().map(|x| f.neg(x)).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce_rows(self.raw_mul(a, b))
    }

    fn dot(&self, a: &[&Self::Elem], b: &[&Self::Elem]) -> Self::Elem {
        let f = &self.field;
        let mut acc: Option<Vec<Vec<F::Elem>>> = None;
        for (x, y) in a.iter().zip(b) {
            let p = self.raw_mul(x, y);
            acc = Some(match acc {
                None => p,
                Some(mut s) => {
                    for (r, pr) in s.iter_mut().zip(p) {
                        for (c, pc) in r.iter_mut().zip(pr) {
                            *c = f.add(c, &pc);
                        }
                    }
                    s
                }
            });
        }
        acc.map_or_else(|| self.zero(), |rows| self.reduce_rows(rows))
    }

    fn embed(&self, c: &F::Elem) -> Self::Elem {
        let mut z = self.zero();
        z.data[0] = c.clone();
        z
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.data.iter().all(|x| self.field.is_zero(x))
    }

    fn scale(&self, c: &F::Elem, a: &Self::Elem) -> Self::Elem {
        let f = &self.field;
        BiSeries {
            data: a.data.iter().map(|x| f.mul(c, x)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, RationalField};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reduces_by_both_relations() {
        let f = RationalField;
        // Q = U^2 - 4U + 3 + T(10 - 4U)
        let q = BiPoly::from_i64_grid(&f, &[&[3, 10], &[-4, -4], &[1]]);
        let ring = BiSeriesRing::new(f.clone(), &q, 2).unwrap();
        let u = ring.u_var();
        let u2 = Algebra::mul(&ring, &u, &u);
        // U^2 = 4U - 3 - T(10 - 4U)
        let expect = BiPoly::from_i64_grid(&f, &[&[-3, -10], &[4, 4]]);
        assert_eq!(ring.to_bipoly(&u2), expect);
        let t = ring.t_var();
        assert!(Algebra::is_zero(&ring, &Algebra::mul(&ring, &t, &t)));
        assert!(Algebra::is_zero(&ring, &ring.from_bipoly(&q)));
    }

    fn random_bipoly(f: &PrimeField, rng: &mut ChaCha8Rng, du: usize, dt: usize) -> BiPoly<crate::Fp> {
        BiPoly::from_rows(
            (0..=du)
                .map(|_| UPoly::from_coeffs(f, (0..=dt).map(|_| f.random(rng)).collect()))
                .collect(),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]
        // reduction is a ring morphism: reduce(ab) = reduce(a) * reduce(b)
        #[test]
        fn product_commutes_with_reduction(seed in any::<u64>(), d in 1usize..5, m in 1usize..7) {
            let f = PrimeField::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut q = random_bipoly(&f, &mut rng, d - 1, m + 1);
            let mut rows = q.rows().to_vec();
            rows.resize(d, UPoly::zero());
            rows.push(UPoly::one(&f));
            q = BiPoly::from_rows(rows);
            let ring = BiSeriesRing::new(f.clone(), &q, m).unwrap();
            let a = random_bipoly(&f, &mut rng, d + 2, m + 2);
            let b = random_bipoly(&f, &mut rng, d + 1, m);
            let lhs = ring.from_bipoly(&a.mul(&b, &f));
            let rhs = Algebra::mul(&ring, &ring.from_bipoly(&a), &ring.from_bipoly(&b));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fast_division_matches_schoolbook() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (d, m) in [(16, 1), (20, 9), (31, 40)] {
            let mut rows = random_bipoly(&f, &mut rng, d - 1, m + 3).rows().to_vec();
            rows.push(UPoly::one(&f));
            let q = BiPoly::from_rows(rows);
            let ring = BiSeriesRing::new(f.clone(), &q, m).unwrap();
            assert!(ring.rev_inv.is_some());
            let a = random_bipoly(&f, &mut rng, d - 1, m - 1);
            let b = random_bipoly(&f, &mut rng, d - 1, m - 1);
            // a * b has 2d - 1 rows (fast path); a * b * U^d has more (schoolbook)
            let fast = Algebra::mul(&ring, &ring.from_bipoly(&a), &ring.from_bipoly(&b));
            let mut shifted = vec![UPoly::zero(); d];
            shifted.extend(a.mul(&b, &f).rows().iter().cloned());
            let qu = ring.from_bipoly(&q.sub(&BiPoly::from_rows({
                let mut r = vec![UPoly::zero(); d];
                r.push(UPoly::one(&f));
                r
            }), &f));
            // U^d = -(Q - U^d)
            let slow = ring.from_bipoly(&BiPoly::from_rows(shifted));
            let via = Algebra::mul(&ring, &Algebra::neg(&ring, &qu), &fast);
            assert_eq!(slow, via);
        }
    }
}
