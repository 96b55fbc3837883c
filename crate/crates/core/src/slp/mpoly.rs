//! Sparse multivariate polynomials, the expanded form used to cross-check
//! straight-line programs.

use std::collections::BTreeMap;

use crate::algebra::field::Field;
use crate::algebra::ring::{Algebra, Scalars};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<E> {
    nvars: usize,
    /// exponent vector -> nonzero coefficient
    terms: BTreeMap<Vec<u32>, E>,
}

impl<E: Clone> MPoly<E> {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<F: Field<Elem = E>>(nvars: usize, c: E, f: &F) -> Self {
        let mut p = Self::zero(nvars);
        if !f.is_zero(&c) {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var<F: Field<Elem = E>>(nvars: usize, i: usize, f: &F) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, f.one());
        p
    }

    pub fn from_terms<F: Field<Elem = E>>(nvars: usize, terms: Vec<(Vec<u32>, E)>, f: &F) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c, f);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &E)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, e: &[u32], f: &F) -> E {
        self.terms.get(e).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term<F: Field<Elem = E>>(&mut self, e: Vec<u32>, c: E, f: &F) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !f.is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = f.add(o.get(), &c);
                if f.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone(), f);
        }
        p
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        self.add(&other.neg(f), f)
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, f: &F) -> Self {
        if f.is_zero(c) {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), f.mul(c, x))).collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let mut p = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                p.add_term(e, f.mul(ca, cb), f);
            }
        }
        p
    }

    pub fn pow<F: Field<Elem = E>>(&self, mut k: u32, f: &F) -> Self {
        let mut acc = Self::constant(self.nvars, f.one(), f);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    pub fn derivative<F: Field<Elem = E>>(&self, i: usize, f: &F) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                p.add_term(e2, f.mul(&f.from_u64(e[i] as u64), c), f);
            }
        }
        p
    }

    pub fn eval<F: Field<Elem = E>>(&self, point: &[E], f: &F) -> E {
        self.eval_in(&Scalars(f.clone()), point)
    }

    /// Evaluation at a point of any ring containing the coefficients.
    pub fn eval_in<R: Algebra>(&self, ring: &R, point: &[R::Elem]) -> R::Elem
    where
        R::Base: Field<Elem = E>,
    {
        let mut acc = ring.zero();
        for (e, c) in &self.terms {
            let mut t = ring.embed(c);
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = ring.mul(&t, x);
                }
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }

    /// `self(subs[0], ..., subs[nvars-1])`; all substitutes share one
    /// variable count.
    pub fn substitute<F: Field<Elem = E>>(&self, subs: &[MPoly<E>], f: &F) -> Self {
        let m = subs.first().map_or(0, |s| s.nvars);
        let ring = MPolyRing::new(f.clone(), m);
        self.eval_in(&ring, subs)
    }
}

/// `k[X_1, ..., X_n]` as an evaluation target.
#[derive(Clone, Debug)]
pub struct MPolyRing<F: Field> {
    field: F,
    nvars: usize,
}

impl<F: Field> MPolyRing<F> {
    pub fn new(field: F, nvars: usize) -> Self {
        MPolyRing { field, nvars }
    }

    pub fn var(&self, i: usize) -> MPoly<F::Elem> {
        MPoly::var(self.nvars, i, &self.field)
    }

    pub fn vars(&self) -> Vec<MPoly<F::Elem>> {
        (0..self.nvars).map(|i| self.var(i)).collect()
    }
}

impl<F: Field> Algebra for MPolyRing<F> {
    type Base = F;
    type Elem = MPoly<F::Elem>;

    fn base(&self) -> &F {
        &self.field
    }

    fn zero(&self) -> Self::Elem {
        MPoly::zero(self.nvars)
    }

    fn one(&self) -> Self::Elem {
        MPoly::constant(self.nvars, self.field.one(), &self.field)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b, &self.field)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(b, &self.field)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.field)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b, &self.field)
    }

    fn embed(&self, c: &F::Elem) -> Self::Elem {
        MPoly::constant(self.nvars, c.clone(), &self.field)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn scale(&self, c: &F::Elem, a: &Self::Elem) -> Self::Elem {
        a.scale(c, &self.field)
    }
}
