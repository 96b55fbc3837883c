//! Dense univariate polynomials.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty vector and structural equality is polynomial
//! equality. Every operation takes the coefficient field explicitly.

use crate::algebra::field::Field;
use crate::error::{Error, Result};

/// Below this length products use the schoolbook method.
const KARATSUBA_THRESHOLD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly<E> {
    coeffs: Vec<E>,
}

impl<E> Default for UPoly<E> {
    fn default() -> Self {
        UPoly { coeffs: Vec::new() }
    }
}

impl<E: Clone> UPoly<E> {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elem = E>>(f: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_i64s<F: Field<Elem = E>>(f: &F, cs: &[i64]) -> Self {
        Self::from_coeffs(f, cs.iter().map(|&c| f.from_i64(c)).collect())
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::from_coeffs(f, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(f: &F) -> Self {
        UPoly {
            coeffs: vec![f.one()],
        }
    }

    /// `c * x^k`.
    pub fn monomial<F: Field<Elem = E>>(f: &F, c: E, k: usize) -> Self {
        if f.is_zero(&c) {
            return Self::zero();
        }
        let mut coeffs = vec![f.zero(); k + 1];
        coeffs[k] = c;
        UPoly { coeffs }
    }

    /// The variable `x`.
    pub fn x<F: Field<Elem = E>>(f: &F) -> Self {
        Self::monomial(f, f.one(), 1)
    }

    /// `x - c`.
    pub fn linear_root<F: Field<Elem = E>>(f: &F, c: &E) -> Self {
        UPoly {
            coeffs: vec![f.neg(c), f.one()],
        }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients (degree + 1, or 0).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.leading().is_some_and(|c| f.is_one(c))
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let n = self.len().max(other.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let n = self.len().max(other.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.sub(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => f.neg(b),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, f: &F) -> Self {
        if f.is_zero(c) {
            return Self::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(f, mul_slices(f, &self.coeffs, &other.coeffs))
    }

    /// Product truncated modulo `x^n`.
    pub fn mul_trunc<F: Field<Elem = E>>(&self, other: &Self, n: usize, f: &F) -> Self {
        if self.is_zero() || other.is_zero() || n == 0 {
            return Self::zero();
        }
        let a = &self.coeffs[..self.len().min(n)];
        let b = &other.coeffs[..other.len().min(n)];
        let mut out = if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
            let mut out = vec![f.zero(); (a.len() + b.len() - 1).min(n)];
            for (i, ai) in a.iter().enumerate() {
                if f.is_zero(ai) {
                    continue;
                }
                for (j, bj) in b.iter().enumerate().take(n - i) {
                    out[i + j] = f.mul_add(&out[i + j], ai, bj);
                }
            }
            out
        } else {
            mul_slices(f, a, b)
        };
        out.truncate(n);
        Self::from_coeffs(f, out)
    }

    /// Remainder modulo `x^n`.
    pub fn truncate<F: Field<Elem = E>>(&self, n: usize, f: &F) -> Self {
        Self::from_coeffs(f, self.coeffs[..self.len().min(n)].to_vec())
    }

    /// Multiplication by `x^k`.
    pub fn shift_up<F: Field<Elem = E>>(&self, k: usize, f: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![f.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem<F: Field<Elem = E>>(&self, divisor: &Self, f: &F) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = f.inv(divisor.leading().unwrap()).unwrap();
        if self.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); self.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(&rem[i + dd], &lc_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(&rem[i + j], &f.mul(&c, dj));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(f, quot), Self::from_coeffs(f, rem)))
    }

    pub fn rem<F: Field<Elem = E>>(&self, divisor: &Self, f: &F) -> Result<Self> {
        Ok(self.div_rem(divisor, f)?.1)
    }

    /// Exact division; panics in debug builds if the remainder is nonzero.
    pub fn div_exact<F: Field<Elem = E>>(&self, divisor: &Self, f: &F) -> Result<Self> {
        let (q, r) = self.div_rem(divisor, f)?;
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Ok(q)
    }

    pub fn derivative<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_u64(i as u64)))
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn eval<F: Field<Elem = E>>(&self, x: &E, f: &F) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.mul_add(c, &acc, x))
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if f.is_one(lc) => self.clone(),
            Some(lc) => self.scale(&f.inv(lc).unwrap(), f),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// `p(g(x))` by Horner's rule.
    pub fn compose<F: Field<Elem = E>>(&self, g: &Self, f: &F) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(g, f).add(&Self::constant(f, c.clone()), f)
        })
    }

    /// `p(x + c)` by repeated synthetic division.
    pub fn shift<F: Field<Elem = E>>(&self, c: &E, f: &F) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = f.mul(&a[j + 1], c);
                a[j] = f.add(&a[j], &t);
            }
        }
        Self::from_coeffs(f, a)
    }
}

/// Full product of two nonempty coefficient slices.
pub(crate) fn mul_slices<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    mul_into(f, a, b, &mut out);
    out
}

/// `out[..a.len()+b.len()-1] += a * b`.
fn mul_into<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], out: &mut [F::Elem]) {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.is_empty() {
        return;
    }
    if let Some(prod) = f.mul_poly_fast(a, b) {
        for (o, c) in out.iter_mut().zip(&prod) {
            *o = f.add(o, c);
        }
        return;
    }
    if b.len() < KARATSUBA_THRESHOLD {
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                out[i + j] = f.mul_add(&out[i + j], ai, bj);
            }
        }
        return;
    }
    if a.len() >= 2 * b.len() {
        // unbalanced: split the long operand into chunks of the short length
        for (k, chunk) in a.chunks(b.len()).enumerate() {
            mul_into(f, chunk, b, &mut out[k * b.len()..]);
        }
        return;
    }
    let h = a.len() / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h.min(b.len()));
    let z0 = mul_slices(f, a0, b0);
    let z2 = mul_slices(f, a1, b1);
    let sa = add_slices(f, a0, a1);
    let sb = add_slices(f, b0, b1);
    let mut z1 = mul_slices(f, &sa, &sb);
    for (i, c) in z0.iter().enumerate() {
        z1[i] = f.sub(&z1[i], c);
    }
    for (i, c) in z2.iter().enumerate() {
        z1[i] = f.sub(&z1[i], c);
    }
    for (i, c) in z0.iter().enumerate() {
        out[i] = f.add(&out[i], c);
    }
    for (i, c) in z1.iter().enumerate() {
        out[i + h] = f.add(&out[i + h], c);
    }
    for (i, c) in z2.iter().enumerate() {
        out[i + 2 * h] = f.add(&out[i + 2 * h], c);
    }
}

fn add_slices<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

/// Extended Euclid: `(g, s, t)` with `g = s*a + t*b` and `g` the monic gcd.
pub fn upoly_xgcd<F: Field>(
    a: &UPoly<F::Elem>,
    b: &UPoly<F::Elem>,
    f: &F,
) -> Result<(UPoly<F::Elem>, UPoly<F::Elem>, UPoly<F::Elem>)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UPoly::one(f), UPoly::zero());
    let (mut t0, mut t1) = (UPoly::zero(), UPoly::one(f));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1, f)?;
        let s = s0.sub(&q.mul(&s1, f), f);
        let t = t0.sub(&q.mul(&t1, f), f);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    let lc_inv = f.inv(r0.leading().unwrap()).unwrap();
    Ok((
        r0.scale(&lc_inv, f),
        s0.scale(&lc_inv, f),
        t0.scale(&lc_inv, f),
    ))
}

/// Monic `a / gcd(a, a')`. Requires the characteristic to exceed `deg(a)`.
pub fn squarefree_part<F: Field>(a: &UPoly<F::Elem>, f: &F) -> Result<UPoly<F::Elem>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = a.gcd(&a.derivative(f), f);
    Ok(a.div_exact(&g, f)?.monic(f))
}

/// `gcd(a, a') = 1`.
pub fn is_squarefree<F: Field>(a: &UPoly<F::Elem>, f: &F) -> bool {
    !a.is_zero() && a.gcd(&a.derivative(f), f).is_constant()
}

/// Unique polynomial of degree `< points.len()` through the given points
/// (Newton divided differences).
pub fn interpolate<F: Field>(points: &[(F::Elem, F::Elem)], f: &F) -> Result<UPoly<F::Elem>> {
    let n = points.len();
    let xs: Vec<_> = points.iter().map(|(x, _)| x.clone()).collect();
    let mut dd: Vec<_> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let den = f.sub(&xs[i], &xs[i - level]);
            let inv = f.inv(&den).ok_or(Error::DuplicateAbscissa)?;
            dd[i] = f.mul(&f.sub(&dd[i], &dd[i - 1]), &inv);
        }
    }
    let mut acc = UPoly::zero();
    for i in (0..n).rev() {
        acc = acc
            .mul(&UPoly::linear_root(f, &xs[i]), f)
            .add(&UPoly::constant(f, dd[i].clone()), f);
    }
    Ok(acc)
}

/// Resultant of two univariate polynomials by the Euclidean remainder
/// sequence (exact over a field).
pub fn resultant<F: Field>(a: &UPoly<F::Elem>, b: &UPoly<F::Elem>, f: &F) -> F::Elem {
    let (Some(mut da), Some(mut db)) = (a.degree(), b.degree()) else {
        return f.zero();
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = f.one();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        if da % 2 == 1 && db % 2 == 1 {
            acc = f.neg(&acc);
        }
    }
    loop {
        if db == 0 {
            // res(a, c) = c^deg(a)
            return f.mul(&acc, &f.pow(b.leading().unwrap(), da as u64));
        }
        let r = a.rem(&b, f).expect("nonzero divisor");
        let Some(dr) = r.degree() else {
            return f.zero();
        };
        // res(a, b) = (-1)^(da db) lc(b)^(da - dr) res(b, r)
        if da % 2 == 1 && db % 2 == 1 {
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &f.pow(b.leading().unwrap(), (da - dr) as u64));
        a = b;
        b = r;
        da = db;
        db = dr;
    }
}
