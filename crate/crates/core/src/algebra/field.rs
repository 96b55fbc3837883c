//! Coefficient fields.
//!
//! All algorithms are written against the [`Field`] trait. Elements are plain
//! values and every operation goes through the field context, so the same code
//! runs over a prime field `F_p` (the default, `p = 2^61 - 1`) and over the
//! rationals (used for exact fixtures).

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::Error;

/// `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Shorter operand length from which products go through transforms.
const NTT_THRESHOLD: usize = 256;

/// Moduli below this bound are only accepted through
/// [`PrimeField::new_verification`].
pub const MIN_SOLVER_MODULUS: u64 = 1 << 40;

pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Zero for the rationals.
    fn characteristic(&self) -> u64;
    /// Canonical decimal text of an element.
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn from_u64(&self, v: u64) -> Self::Elem {
        self.from_bigint(&BigInt::from(v))
    }

    /// `acc + a * b`.
    fn mul_add(&self, acc: &Self::Elem, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(acc, &self.mul(a, b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a * b` for long operands, when the field has a faster method than
    /// Karatsuba.
    fn mul_poly_fast(&self, _a: &[Self::Elem], _b: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        None
    }

    /// A uniformly random nonzero element.
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

/// Canonical residue in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp(u64);

impl Fp {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The prime field `F_p` for a 64-bit prime `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    mersenne: bool,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField {
            p: MERSENNE_61,
            mersenne: true,
        }
    }
}

impl PrimeField {
    /// A solver field: `p` must be prime and larger than `2^40`.
    pub fn new(p: u64) -> Result<Self, Error> {
        if p < MIN_SOLVER_MODULUS {
            return Err(Error::InvalidModulus(format!(
                "{p} is below the solver minimum 2^40"
            )));
        }
        Self::new_verification(p)
    }

    /// Any odd prime. Small moduli are for exhaustive verification runs; the
    /// random choices of the solver fail far more often over them.
    pub fn new_verification(p: u64) -> Result<Self, Error> {
        if p < 3 || !is_prime_u64(p) {
            return Err(Error::InvalidModulus(format!("{p} is not an odd prime")));
        }
        Ok(PrimeField {
            p,
            mersenne: p == MERSENNE_61,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp(v % self.p)
    }

    #[inline]
    fn reduce128(&self, x: u128) -> u64 {
        if self.mersenne {
            // x < 2^123, so x >> 61 fits in 62 bits
            let s = ((x as u64) & MERSENNE_61) + (x >> 61) as u64;
            let s = (s & MERSENNE_61) + (s >> 61);
            if s >= MERSENNE_61 {
                s - MERSENNE_61
            } else {
                s
            }
        } else {
            (x % self.p as u128) as u64
        }
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn mul_poly_fast(&self, a: &[Fp], b: &[Fp]) -> Option<Vec<Fp>> {
        if a.len().min(b.len()) < NTT_THRESHOLD {
            return None;
        }
        let a: Vec<u64> = a.iter().map(|x| x.0).collect();
        let b: Vec<u64> = b.iter().map(|x| x.0).collect();
        Some(super::ntt::mul_mod(&a, &b, self.p).into_iter().map(Fp).collect())
    }

    #[inline]
    fn zero(&self) -> Fp {
        Fp(0)
    }

    #[inline]
    fn one(&self) -> Fp {
        Fp(1)
    }

    #[inline]
    fn is_zero(&self, a: &Fp) -> bool {
        a.0 == 0
    }

    #[inline]
    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        let s = a.0 + b.0;
        Fp(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        Fp(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            a.0 + self.p - b.0
        })
    }

    #[inline]
    fn neg(&self, a: &Fp) -> Fp {
        Fp(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        Fp(self.reduce128(a.0 as u128 * b.0 as u128))
    }

    #[inline]
    fn mul_add(&self, acc: &Fp, a: &Fp, b: &Fp) -> Fp {
        Fp(self.reduce128(a.0 as u128 * b.0 as u128 + acc.0 as u128))
    }

    fn inv(&self, a: &Fp) -> Option<Fp> {
        if a.0 == 0 {
            return None;
        }
        // extended Euclid on i128 to stay exact for 64-bit moduli
        let (mut r0, mut r1) = (self.p as i128, a.0 as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(Fp(t0.rem_euclid(self.p as i128) as u64))
    }

    fn from_i64(&self, v: i64) -> Fp {
        Fp((v as i128).rem_euclid(self.p as i128) as u64)
    }

    fn from_bigint(&self, v: &BigInt) -> Fp {
        let r = v.mod_floor(&BigInt::from(self.p));
        Fp(r.to_u64().expect("residue fits in u64"))
    }

    fn from_u64(&self, v: u64) -> Fp {
        Fp(v % self.p)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        Fp(rng.gen_range(0..self.p))
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn format(&self, a: &Fp) -> String {
        a.0.to_string()
    }

    fn parse(&self, s: &str) -> Option<Fp> {
        let v: u64 = s.trim().parse().ok()?;
        (v < self.p).then_some(Fp(v))
    }
}

/// The field of rational numbers, with exact big-integer fractions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

/// Magnitude bound for random rationals; keeps fixture coefficients readable.
const RATIONAL_SAMPLE_BOUND: i64 = 16;

impl RationalField {
    /// `num / den`.
    pub fn frac(&self, num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse(&self, s: &str) -> Option<BigRational> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(BigRational::new(n.trim().parse().ok()?, d))
            }
            None => Some(BigRational::from_integer(s.parse().ok()?)),
        }
    }
}

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Signed representative in `(-p/2, p/2]`, handy for printing small solutions.
pub fn signed_residue(f: &PrimeField, a: Fp) -> i128 {
    let p = f.modulus() as i128;
    let v = a.value() as i128;
    if v > p / 2 {
        v - p
    } else {
        v
    }
}

/// Maps a rational into `F_p`; `None` when the denominator vanishes mod `p`.
pub fn rational_to_fp(f: &PrimeField, q: &BigRational) -> Option<Fp> {
    f.div(&f.from_bigint(q.numer()), &f.from_bigint(q.denom()))
}
