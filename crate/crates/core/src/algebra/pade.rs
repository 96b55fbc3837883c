//! Rational function reconstruction from truncated power series.

use crate::algebra::field::Field;
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};

/// `numerator / denominator` in lowest terms with a monic denominator whose
/// constant term is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadeApproximant<E> {
    pub numerator: UPoly<E>,
    pub denominator: UPoly<E>,
}

impl<E: Clone> PadeApproximant<E> {
    pub fn polynomial<F: Field<Elem = E>>(p: UPoly<E>, f: &F) -> Self {
        PadeApproximant {
            numerator: p,
            denominator: UPoly::one(f),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_constant()
    }

    /// Power series expansion modulo `T^n`.
    pub fn expand<F: Field<Elem = E>>(&self, n: usize, f: &F) -> UPoly<E> {
        let inv = series_inverse(&self.denominator, n, f)
            .expect("denominator has a nonzero constant term");
        self.numerator.mul_trunc(&inv, n, f)
    }
}

/// Power series inverse of `a` modulo `T^n` by Newton iteration.
pub fn series_inverse<F: Field>(a: &UPoly<F::Elem>, n: usize, f: &F) -> Option<UPoly<F::Elem>> {
    let c0 = f.inv(&a.coeff(f, 0))?;
    let mut inv = UPoly::constant(f, c0);
    let mut k = 1;
    while k < n {
        k = (2 * k).min(n);
        // inv <- inv (2 - a inv)
        let e = a.mul_trunc(&inv, k, f);
        let two_minus = UPoly::constant(f, f.from_i64(2)).sub(&e, f);
        inv = inv.mul_trunc(&two_minus, k, f);
    }
    Some(inv.truncate(n, f))
}

/// Reconstructs `a / b` with `deg a <= num_bound`, `deg b <= den_bound` and
/// `a / b = series mod T^precision`, by the extended Euclidean scheme on
/// `(T^precision, series)` stopped at the first remainder of degree at most
/// `num_bound`. Requires `num_bound + den_bound < precision`.
pub fn pade_reconstruct_bounds<F: Field>(
    series: &UPoly<F::Elem>,
    precision: usize,
    num_bound: usize,
    den_bound: usize,
    f: &F,
) -> Result<PadeApproximant<F::Elem>> {
    if num_bound + den_bound >= precision {
        return Err(Error::DegenerateInput(format!(
            "degree bounds {num_bound} + {den_bound} need precision above {precision}"
        )));
    }
    let mut r0 = UPoly::monomial(f, f.one(), precision);
    let mut r1 = series.truncate(precision, f);
    let (mut t0, mut t1) = (UPoly::zero(), UPoly::one(f));
    while r1.degree().is_some_and(|d| d > num_bound) {
        let (q, r) = r0.div_rem(&r1, f)?;
        let t = t0.sub(&q.mul(&t1, f), f);
        (r0, r1) = (r1, r);
        (t0, t1) = (t1, t);
    }
    let (num, den) = (r1, t1);
    if den.degree().unwrap_or(0) > den_bound || f.is_zero(&den.coeff(f, 0)) {
        return Err(Error::ReconstructionFailure);
    }
    if !num.is_zero() && !num.gcd(&den, f).is_constant() {
        return Err(Error::ReconstructionFailure);
    }
    let lc_inv = f.inv(den.leading().unwrap()).unwrap();
    Ok(PadeApproximant {
        numerator: num.scale(&lc_inv, f),
        denominator: den.scale(&lc_inv, f),
    })
}

/// Balanced reconstruction: numerator and denominator of degree at most `d`
/// from the series modulo `T^(2d+1)`.
pub fn pade_reconstruct<F: Field>(
    series: &UPoly<F::Elem>,
    d: usize,
    f: &F,
) -> Result<PadeApproximant<F::Elem>> {
    pade_reconstruct_bounds(series, 2 * d + 1, d, d, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, RationalField};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qp(cs: &[i64]) -> UPoly<num_rational::BigRational> {
        UPoly::from_i64s(&RationalField, cs)
    }

    #[test]
    fn geometric_series() {
        let r = pade_reconstruct(&qp(&[1, 1, 1, 1, 1]), 2, &RationalField).unwrap();
        // 1/(1-T) with a monic denominator is -1/(T-1)
        assert_eq!(r.numerator, qp(&[-1]));
        assert_eq!(r.denominator, qp(&[-1, 1]));
    }

    #[test]
    fn polynomial_is_fixed_point() {
        let r = pade_reconstruct(&qp(&[1, 2]), 2, &RationalField).unwrap();
        assert_eq!(r.numerator, qp(&[1, 2]));
        assert_eq!(r.denominator, qp(&[1]));
        assert!(r.is_polynomial());
    }

    #[test]
    fn one_plus_t_over_one_minus_t() {
        let r = pade_reconstruct(&qp(&[1, 2, 2, 2, 2]), 2, &RationalField).unwrap();
        assert_eq!(r.numerator, qp(&[-1, -1]));
        assert_eq!(r.denominator, qp(&[-1, 1]));
        assert_eq!(r.expand(5, &RationalField), qp(&[1, 2, 2, 2, 2]));
    }

    #[test]
    fn failure_when_no_approximant_fits() {
        // 1 + T^2 mod T^3 has no [1/1] approximant
        assert!(matches!(
            pade_reconstruct(&qp(&[1, 0, 1]), 1, &RationalField),
            Err(Error::ReconstructionFailure)
        ));
    }

    proptest! {
        #[test]
        fn reproduces_random_coprime_pairs(seed in any::<u64>(), dn in 0usize..8, dd in 0usize..8) {
            let f = PrimeField::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let num = UPoly::from_coeffs(&f, (0..=dn).map(|_| f.random(&mut rng)).collect());
            let mut den = UPoly::from_coeffs(&f, (0..=dd).map(|_| f.random(&mut rng)).collect());
            prop_assume!(!f.is_zero(&den.coeff(&f, 0)) && !num.is_zero());
            prop_assume!(num.gcd(&den, &f).is_constant());
            den = den.monic(&f);
            let d = dn.max(dd);
            let target = PadeApproximant { numerator: num.clone(), denominator: den.clone() };
            let series = target.expand(2 * d + 1, &f);
            let got = pade_reconstruct(&series, d, &f).unwrap();
            prop_assert_eq!(got, target);
        }
    }
}
