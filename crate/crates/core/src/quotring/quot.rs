//! The residue ring `k[U] / <q>` for a monic modulus `q`.

use std::fmt;

use crate::algebra::field::Field;
use crate::algebra::ring::Algebra;
use crate::algebra::upoly::{upoly_xgcd, UPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct QuotRing<F: Field> {
    field: F,
    modulus: UPoly<F::Elem>,
}

/// `a` shares the factor `witness` with the modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDivisor<E> {
    pub witness: UPoly<E>,
}

impl<E: Clone> fmt::Display for ZeroDivisor<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zero divisor (witness of degree {})", self.witness.len().saturating_sub(1))
    }
}

impl<E: fmt::Debug + Clone> std::error::Error for ZeroDivisor<E> {}

impl<E: Clone> From<ZeroDivisor<E>> for Error {
    fn from(z: ZeroDivisor<E>) -> Self {
        Error::ZeroDivisor {
            witness_degree: z.witness.len().saturating_sub(1),
        }
    }
}

impl<F: Field> QuotRing<F> {
    /// `modulus` must be monic of positive degree; squarefreeness is the
    /// caller's contract.
    pub fn new(field: F, modulus: UPoly<F::Elem>) -> Result<Self> {
        if modulus.degree().unwrap_or(0) == 0 || !modulus.is_monic(&field) {
            return Err(Error::DegenerateInput(
                "quotient modulus must be monic of positive degree".into(),
            ));
        }
        Ok(QuotRing { field, modulus })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn modulus(&self) -> &UPoly<F::Elem> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn reduce(&self, a: &UPoly<F::Elem>) -> UPoly<F::Elem> {
        if a.len() <= self.degree() {
            return a.clone();
        }
        a.rem(&self.modulus, &self.field).expect("nonzero modulus")
    }

    /// The class of `U`.
    pub fn var(&self) -> UPoly<F::Elem> {
        self.reduce(&UPoly::x(&self.field))
    }

    /// Inverse modulo `q`, or the common factor `gcd(a, q)` when `a` is a zero
    /// divisor.
    pub fn invert_mod(&self, a: &UPoly<F::Elem>) -> std::result::Result<UPoly<F::Elem>, ZeroDivisor<F::Elem>> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Err(ZeroDivisor {
                witness: self.modulus.clone(),
            });
        }
        let (g, s, _) = upoly_xgcd(&a, &self.modulus, &self.field).expect("nonzero input");
        if g.is_constant() {
            Ok(self.reduce(&s))
        } else {
            Err(ZeroDivisor { witness: g })
        }
    }

    pub fn is_unit(&self, a: &UPoly<F::Elem>) -> bool {
        let a = self.reduce(a);
        !a.is_zero() && a.gcd(&self.modulus, &self.field).is_constant()
    }

    pub fn pow(&self, a: &UPoly<F::Elem>, mut e: u64) -> UPoly<F::Elem> {
        let mut base = self.reduce(a);
        let mut acc = Algebra::one(self);
        while e > 0 {
            if e & 1 == 1 {
                acc = Algebra::mul(self, &acc, &base);
            }
            base = Algebra::mul(self, &base, &base);
            e >>= 1;
        }
        acc
    }
}

impl<F: Field> Algebra for QuotRing<F> {
    type Base = F;
    type Elem = UPoly<F::Elem>;

    fn base(&self) -> &F {
        &self.field
    }

    fn zero(&self) -> Self::Elem {
        UPoly::zero()
    }

    fn one(&self) -> Self::Elem {
        UPoly::one(&self.field)
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
        self.reduce(&a.mul(b, &self.field))
    }

    fn dot(&self, a: &[&Self::Elem], b: &[&Self::Elem]) -> Self::Elem {
        let f = &self.field;
        let sum = a.iter().zip(b).fold(UPoly::zero(), |acc, (x, y)| acc.add(&x.mul(y, f), f));
        self.reduce(&sum)
    }

    fn embed(&self, c: &F::Elem) -> Self::Elem {
        UPoly::constant(&self.field, c.clone())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn scale(&self, c: &F::Elem, a: &Self::Elem) -> Self::Elem {
        a.scale(c, &self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, RationalField};
    use crate::algebra::upoly::is_squarefree;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qp(cs: &[i64]) -> UPoly<num_rational::BigRational> {
        UPoly::from_i64s(&RationalField, cs)
    }

    #[test]
    fn inverse_via_crt_values() {
        let f = RationalField;
        let r = QuotRing::new(f.clone(), qp(&[3, -4, 1])).unwrap();
        let inv = r.invert_mod(&qp(&[-4, 2])).unwrap();
        // (U - 2) / 2
        let expect = UPoly::from_coeffs(&f, vec![f.from_i64(-1), f.frac(1, 2)]);
        assert_eq!(inv, expect);
        assert_eq!(Algebra::mul(&r, &inv, &qp(&[-4, 2])), qp(&[1]));
        assert_eq!(r.invert_mod(&qp(&[1])).unwrap(), qp(&[1]));
    }

    #[test]
    fn zero_divisor_reports_shared_factor() {
        let r = QuotRing::new(RationalField, qp(&[3, -4, 1])).unwrap();
        let err = r.invert_mod(&qp(&[-1, 1])).unwrap_err();
        assert_eq!(err.witness, qp(&[-1, 1]));
        assert_eq!(r.invert_mod(&qp(&[])).unwrap_err().witness, qp(&[3, -4, 1]));
    }

    #[test]
    fn rejects_non_monic_modulus() {
        assert!(QuotRing::new(RationalField, qp(&[1, 2])).is_err());
        assert!(QuotRing::new(RationalField, qp(&[5])).is_err());
    }

    fn random_squarefree(f: &PrimeField, rng: &mut ChaCha8Rng, deg: usize) -> UPoly<crate::Fp> {
        loop {
            let mut cs: Vec<_> = (0..deg).map(|_| f.random(rng)).collect();
            cs.push(Field::one(f));
            let q = UPoly::from_coeffs(f, cs);
            if is_squarefree(&q, f) {
                return q;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn random_units_invert(seed in any::<u64>(), deg in 1usize..=20) {
            let f = PrimeField::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ring = QuotRing::new(f.clone(), random_squarefree(&f, &mut rng, deg)).unwrap();
            for _ in 0..5 {
                let a = UPoly::from_coeffs(&f, (0..deg).map(|_| f.random(&mut rng)).collect());
                match ring.invert_mod(&a) {
                    Ok(inv) => prop_assert_eq!(Algebra::mul(&ring, &a, &inv), Algebra::one(&ring)),
                    Err(z) => prop_assert!(a.is_zero() || !z.witness.is_constant()),
                }
            }
        }

        #[test]
        fn witness_is_proper_factor(seed in any::<u64>(), d1 in 1usize..6, d2 in 1usize..6) {
            let f = PrimeField::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_squarefree(&f, &mut rng, d1);
            let b = random_squarefree(&f, &mut rng, d2);
            let q = a.mul(&b, &f);
            prop_assume!(is_squarefree(&q, &f));
            let ring = QuotRing::new(f.clone(), q.clone()).unwrap();
            let z = ring.invert_mod(&a).unwrap_err();
            prop_assert!(!z.witness.is_constant());
            prop_assert!(z.witness.degree() < q.degree());
            prop_assert!(q.rem(&z.witness, &f).unwrap().is_zero());
        }
    }
}
